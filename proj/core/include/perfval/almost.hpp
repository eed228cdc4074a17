#pragma once

#include <optional>
#include <vector>

#include "perfval/presentation.hpp"
#include "perfval/report.hpp"

namespace perfval {

/// The basic setup (V, I) with I the union of the principal ideals
/// generated by the p-power roots of varpi: as a cut, the open cut at 0.
///
/// Unit convention: every exponent in this module (alpha, delta, lift
/// levels) is measured in varpi-units, i.e. "varpi^a" has valuation
/// a * v(varpi).  In char_p mode varpi = t so the units coincide with
/// valuations; in mixed mode varpi = p^(1/p).
struct BasicSetup {
    RingDescriptor desc;

    CutIdeal ideal() const { return CutIdeal{Exponent(0), true}; }
    RingElement varpi() const { return RingElement::varpi(desc); }
    /// varpi^(1/p^n)
    RingElement varpi_root(unsigned n) const {
        return RingElement::varpi_power(desc, Exponent::one_over_p_pow(desc.prime, n));
    }
};

/// M is I-almost zero iff I kills it, iff every cut threshold is 0.
bool is_almost_zero(const CutModule& m);

/// Witness for almost finite generation against I_0 = (varpi^(1/p^n)):
/// per-summand generator valuations g_i such that the cyclic submodules
/// generated there contain varpi^(1/p^n) M.  Closed summands take their
/// own generator (g = 0); open summands take g = min(v(varpi)/p^n, r).
struct FgWitness {
    unsigned index_n = 0;
    std::vector<Exponent> generator_valuations;
    std::vector<CheckReport> verification;

    bool valid() const { return all_passed(verification); }
};

FgWitness almost_fg_witness(const CutModule& m, unsigned n);

/// Almost Nakayama: replays a mod-varpi witness at exact thresholds and
/// lifts it to M.  M must be representably separated (all thresholds < N).
/// Throws WitnessInvalid when the mod-varpi witness fails replay.
FgWitness nakayama_lift(const FgWitness& mod_varpi_witness, const CutModule& m, unsigned n);

/// The reduction M/varpi M as a cut module.
CutModule mod_varpi(const CutModule& m);

/// An almost-splitting problem: phi : V^cols -> V^rows with cokernel
/// killed by varpi^alpha; k is the tolerance index.  When alpha is not
/// supplied it is taken to be the exact minimal annihilator exponent (the
/// maximal elementary divisor in varpi-units).
struct SectionProblem {
    ElementMatrix phi;
    std::optional<Exponent> alpha;  // varpi-units
    unsigned k = 1;
};

struct SectionSolution {
    ElementMatrix g;          // cols x rows, phi * g = varpi^delta_min * id
    Exponent delta_min;       // varpi-units
    Exponent alpha;           // the exponent used (supplied or computed)
    std::vector<CheckReport> reports;
};

/// Solves phi o g = varpi^delta id with minimal delta via the reduction
/// with transforms; delta_min is the maximal elementary divisor valuation
/// in varpi-units.  Reports include the bound delta_min <= 1/p^k + 2*alpha
/// and, for a supplied alpha, the claim that varpi^alpha kills the
/// cokernel (a false claim is a failed verdict, not an input error).
SectionSolution section_solve(const SectionProblem& p);

/// State of the level-by-level splitting lift: s is a section of phi
/// modulo varpi^level with composite = varpi^achieved_defect * id mod
/// varpi^level.  The inductive construction guarantees the defect exponent
/// 2*alpha + 1/p^k at level 1 and 4*alpha + 3/p^k beyond; the achieved
/// defect is reported and must stay within that ceiling.
struct SectionLiftState {
    unsigned level = 1;
    ElementMatrix s;
    Exponent achieved_defect;   // varpi-units
    Exponent guaranteed_bound;  // varpi-units
    // cached solver data driving the defect corrections
    ElementMatrix g;
    Exponent delta_min;
    Exponent alpha;
};

SectionLiftState init_section_lift(const SectionProblem& p);

/// One inductive step: lift the section from level l to level l+1 by
/// correcting the truncation defect through the solver; throws
/// LiftObstructed when the next level leaves the precision cap or the
/// defect is not divisible by varpi^delta.
SectionLiftState lift_section_step(const SectionLiftState& state, const SectionProblem& p);

/// Composite check used by callers: phi * s = varpi^c * id mod varpi^level.
bool lift_composite_ok(const SectionLiftState& state, const SectionProblem& p);

}  // namespace perfval
