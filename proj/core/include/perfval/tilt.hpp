#pragma once

#include <cstdint>
#include <vector>

#include "perfval/report.hpp"
#include "perfval/ring.hpp"
#include "perfval/rng.hpp"

namespace perfval {

/// Finite-depth prefix of an element of the tilt of the mixed model: a
/// sequence (x_0, ..., x_d) of residues mod p with x_{i+1}^p = x_i in
/// V/pV.  Components are stored as canonical representatives with
/// exponents below min(N, 1).  Tilt operations require N >= 1 so that the
/// residue ring mod p is fully represented.
class TiltElement {
public:
    int depth() const { return static_cast<int>(comps_.size()) - 1; }
    const std::vector<RingElement>& components() const { return comps_; }
    const RingElement& component(std::size_t i) const { return comps_.at(i); }
    const RingDescriptor& descriptor() const { return desc_; }

    /// Projection onto the zeroth component (the map onto V/varpi V
    /// factors through it).
    const RingElement& pr() const { return comps_.front(); }

    /// Shallower prefix of the same element.
    TiltElement truncated(int new_depth) const;

private:
    TiltElement(RingDescriptor d, std::vector<RingElement> c)
        : desc_(std::move(d)), comps_(std::move(c)) {}
    RingDescriptor desc_;
    std::vector<RingElement> comps_;

    friend TiltElement make_tilt(const std::vector<RingElement>& components);
    friend TiltElement make_tilt_unchecked(RingDescriptor, std::vector<RingElement>);
};

/// Validates a component list (depth = size - 1 >= 1) over the mixed
/// model; throws CompatibilityViolation(i) when x_{i+1}^p != x_i below
/// precision.
TiltElement make_tilt(const std::vector<RingElement>& components);

/// The distinguished pseudo-uniformizer of the tilt at depth d: components
/// (varpi mod p, varpi^(1/p) mod p, ..., varpi^(1/p^d) mod p) built from
/// the model's canonical p-power root system of varpi = p^(1/p).
TiltElement varpi_flat(const RingDescriptor& desc, int depth);

TiltElement tilt_one(const RingDescriptor& desc, int depth);
TiltElement tilt_zero(const RingDescriptor& desc, int depth);

/// Componentwise product (depths aligned by truncation).
TiltElement tilt_mul(const TiltElement& x, const TiltElement& y);

/// Addition via the limit formula at the available depth: with s = x_d +
/// y_d, component i of the sum is Frob^(d-i)(s).  One depth level is spent
/// on the limit, so the result has depth d - 1 (requires depth >= 2).
TiltElement tilt_add(const TiltElement& x, const TiltElement& y);

/// Valuation of the tilt: p^n * v(lift(x_n)) at the smallest n where two
/// consecutive depths agree; BelowPrecision otherwise.  Valuations below
/// v(p) stabilize immediately in the model.
ValResult val_flat(const TiltElement& x);

/// Depth-d approximation of the multiplicative lift: lift(x_d)^(p^d) in
/// the mixed model.  Multiplicative below min(N, d+1).
RingElement sharp(const TiltElement& x);

/// Sample checks for the residue isomorphism V/varpi V = (tilt)/varpi_flat:
/// (a) pr is multiplicative, (b) pr is additive through tilt addition,
/// (c) pr(x) = 0 mod varpi iff val_flat(x) >= 1/p.  k seeded samples.
std::vector<CheckReport> residue_iso_check(const RingDescriptor& desc, int depth, unsigned samples,
                                           std::uint64_t seed);

/// Seeded random tilt: a random residue at depth d, completed backwards by
/// Frobenius (compatible by construction).
TiltElement random_tilt(SplitMix64& rng, const RingDescriptor& desc, int depth);

}  // namespace perfval
