#include "perfval/almost.hpp"

#include <algorithm>

namespace perfval {

bool is_almost_zero(const CutModule& m) {
    for (const auto& c : m.summands())
        if (!c.threshold.is_zero()) return false;
    return true;
}

namespace {

// v(varpi^(1/p^n))
Exponent eps_valuation(const RingDescriptor& desc, unsigned n) {
    return desc.varpi_valuation() * Exponent::one_over_p_pow(desc.prime, n);
}

/// In V/I(r, e), the submodule generated in valuation s is S_s = {v >= s}/I
/// = varpi^s * (V/I); vanishing is replayed through scalar_image.
bool cyclic_submodule_is_zero(const RingDescriptor& desc, const CutIdeal& cut,
                              const Exponent& s) {
    RingElement scale = RingElement::monomial(desc, s, 1);
    return scalar_image(scale, CutModule(desc, {cut})).is_zero_module();
}

/// S_{eps} contained in S_{g} inside V/I(r, e).
bool contains_eps_part(const RingDescriptor& desc, const CutIdeal& cut, const Exponent& g,
                       const Exponent& eps) {
    if (cyclic_submodule_is_zero(desc, cut, eps)) return true;
    return g <= eps;
}

}  // namespace

FgWitness almost_fg_witness(const CutModule& m, unsigned n) {
    const Exponent eps = eps_valuation(m.descriptor(), n);
    FgWitness w;
    w.index_n = n;
    for (std::size_t i = 0; i < m.summands().size(); ++i) {
        const CutIdeal& cut = m.summands()[i];
        Exponent g = cut.open ? min(eps, cut.threshold) : Exponent(0);
        w.generator_valuations.push_back(g);
        bool ok = contains_eps_part(m.descriptor(), cut, g, eps);
        w.verification.push_back(make_report(
            "varpi^(1/p^n) M contained in generated submodule (summand " + std::to_string(i) + ")",
            "generator valuation " + g.str(), "<= " + eps.str(), ok));
    }
    return w;
}

CutModule mod_varpi(const CutModule& m) {
    const Exponent vw = m.descriptor().varpi_valuation();
    std::vector<CutIdeal> out;
    for (const auto& c : m.summands()) {
        if (c.threshold < vw)
            out.push_back(c);
        else
            out.push_back(CutIdeal{vw, false});  // the principal ideal (varpi) absorbs the cut
    }
    return CutModule(m.descriptor(), std::move(out));
}

FgWitness nakayama_lift(const FgWitness& mod_varpi_witness, const CutModule& m, unsigned n) {
    const RingDescriptor& desc = m.descriptor();
    for (const auto& c : m.summands())
        if (!(c.threshold < desc.precision))
            throw InvalidInput("module is not representably varpi-adically separated");

    CutModule mbar = mod_varpi(m);
    if (mod_varpi_witness.generator_valuations.size() != mbar.summands().size())
        throw WitnessInvalid("witness arity does not match M/varpi M");

    const Exponent eps = eps_valuation(desc, n);
    // replay the witness on M/varpi M
    for (std::size_t i = 0; i < mbar.summands().size(); ++i) {
        if (!contains_eps_part(desc, mbar.summands()[i], mod_varpi_witness.generator_valuations[i], eps))
            throw WitnessInvalid("mod-varpi witness fails replay at summand " + std::to_string(i));
    }

    // lift the same generator valuations and certify on M, recording the
    // finite stage at which the descending chain varpi^{k(p^n-1)/p^n} M
    // falls inside the span (separatedness makes it finite)
    const long p = desc.prime;
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), n);
    Exponent step(mpq_class(mpq_class(pn - 1) / mpq_class(pn)) * desc.varpi_valuation().value());

    FgWitness lifted;
    lifted.index_n = n;
    lifted.generator_valuations = mod_varpi_witness.generator_valuations;
    for (std::size_t i = 0; i < m.summands().size(); ++i) {
        const CutIdeal& cut = m.summands()[i];
        const Exponent& g = lifted.generator_valuations[i];
        bool ok = contains_eps_part(m.descriptor(), cut, g, eps);
        // smallest k with eps + k*step at or beyond the threshold
        unsigned k = 0;
        if (step > Exponent(0)) {
            Exponent reach = eps;
            while (reach < cut.threshold && k < 100000) {
                reach += step;
                ++k;
            }
        }
        lifted.verification.push_back(make_report(
            "lifted containment varpi^(1/p^n) M in span (summand " + std::to_string(i) + ")",
            "generator valuation " + g.str(), "<= " + eps.str(), ok,
            "descending chain clears the threshold after k = " + std::to_string(k)));
    }
    if (!lifted.valid()) throw WitnessInvalid("lifted witness fails on M");
    return lifted;
}

namespace {

Exponent to_varpi_units(const Exponent& valuation, const RingDescriptor& desc) {
    return Exponent(mpq_class(valuation.value() / desc.varpi_valuation().value()));
}

}  // namespace

SectionSolution section_solve(const SectionProblem& p) {
    const RingDescriptor& desc = p.phi.descriptor();
    const std::size_t r = p.phi.rows(), c = p.phi.cols();
    if (r > c) throw NotAlmostSurjective("more targets than sources");

    SmithTransforms st = [&] {
        try {
            return smith_with_transforms(p.phi);
        } catch (const NotTorsion&) {
            throw NotAlmostSurjective();
        }
    }();

    Exponent delta(0);
    for (const auto& piv : st.pivots)
        delta = max(delta, to_varpi_units(piv.valuation().value(), desc));

    const Exponent alpha = p.alpha.value_or(delta);
    RingElement vd = RingElement::varpi_power(desc, delta);

    // g = w * [diag(varpi^delta / d_i); 0] * u
    ElementMatrix mid(desc, c, r);
    for (std::size_t i = 0; i < r; ++i) mid.at(i, i) = divide(vd, st.pivots[i]);
    ElementMatrix g = st.w * mid * st.u;

    SectionSolution sol{std::move(g), delta, alpha, {}};

    ElementMatrix composite = p.phi * sol.g;
    ElementMatrix target = scalar_mul(vd, ElementMatrix::identity(desc, r));
    sol.reports.push_back(make_report("phi o g = varpi^delta id", "composite", "varpi^delta id",
                                      matrix_equals_below(composite, target, desc.precision)));

    if (p.alpha) {
        bool kills = *p.alpha >= delta;
        sol.reports.push_back(make_report("varpi^alpha kills Coker(phi)", "alpha = " + p.alpha->str(),
                                          "minimal exponent " + delta.str(), kills));
    }

    Exponent bound = Exponent::one_over_p_pow(desc.prime, p.k) + 2 * alpha;
    sol.reports.push_back(make_report("delta_min <= 1/p^k + 2 alpha", delta.str(), bound.str(),
                                      delta <= bound));
    return sol;
}

namespace {

ElementMatrix truncate_matrix(const ElementMatrix& a, const Exponent& cap) {
    ElementMatrix t(a.descriptor(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t.at(i, j) = truncate_below(a.at(i, j), cap);
    return t;
}

Exponent guaranteed_bound_at(const SectionProblem& p, const Exponent& alpha, unsigned level) {
    Exponent kappa = Exponent::one_over_p_pow(p.phi.descriptor().prime, p.k);
    return level <= 1 ? Exponent(2 * alpha + kappa) : Exponent(4 * alpha + 3 * kappa);
}

}  // namespace

SectionLiftState init_section_lift(const SectionProblem& p) {
    const RingDescriptor& desc = p.phi.descriptor();
    if (desc.varpi_valuation() > desc.precision)
        throw LiftObstructed("level 1 already exceeds the precision cap");
    SectionSolution sol = section_solve(p);
    SectionLiftState st{1,
                        truncate_matrix(sol.g, desc.varpi_valuation()),
                        sol.delta_min,
                        guaranteed_bound_at(p, sol.alpha, 1),
                        sol.g,
                        sol.delta_min,
                        sol.alpha};
    return st;
}

SectionLiftState lift_section_step(const SectionLiftState& state, const SectionProblem& p) {
    const RingDescriptor& desc = p.phi.descriptor();
    const unsigned next = state.level + 1;
    const Exponent next_cap = Exponent(static_cast<long>(next)) * desc.varpi_valuation();
    if (next_cap > desc.precision)
        throw LiftObstructed("level " + std::to_string(next) + " exceeds the precision cap");

    RingElement vd = RingElement::varpi_power(desc, state.delta_min);
    ElementMatrix target =
        scalar_mul(vd, ElementMatrix::identity(desc, p.phi.rows()));
    ElementMatrix defect = target - (p.phi * state.s);

    // absorb the defect through the solved section: phi * (g * e) = varpi^delta * e
    ElementMatrix shifted(desc, defect.rows(), defect.cols());
    for (std::size_t i = 0; i < defect.rows(); ++i)
        for (std::size_t j = 0; j < defect.cols(); ++j) {
            try {
                shifted.at(i, j) = divide(defect.at(i, j), vd);
            } catch (const NotDivisible&) {
                throw LiftObstructed("defect not divisible by varpi^delta at level " +
                                     std::to_string(state.level));
            }
        }
    ElementMatrix corrected = state.s + (state.g * shifted);

    SectionLiftState out = state;
    out.level = next;
    out.s = truncate_matrix(corrected, next_cap);
    out.guaranteed_bound = guaranteed_bound_at(p, state.alpha, next);
    return out;
}

bool lift_composite_ok(const SectionLiftState& state, const SectionProblem& p) {
    const RingDescriptor& desc = p.phi.descriptor();
    const Exponent cap = Exponent(static_cast<long>(state.level)) * desc.varpi_valuation();
    RingElement vd = RingElement::varpi_power(desc, state.achieved_defect);
    ElementMatrix target = scalar_mul(vd, ElementMatrix::identity(desc, p.phi.rows()));
    return matrix_equals_below(p.phi * state.s, target, min(cap, desc.precision));
}

}  // namespace perfval
