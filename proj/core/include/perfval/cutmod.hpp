#pragma once

#include <vector>

#include "perfval/ring.hpp"

namespace perfval {

/// An ideal of the model valuation ring described as a cut of the value
/// group: {v >= r} (closed) or {v > r} (open).  The open cut at 0 is the
/// maximal ideal m_V; the closed cut at r in Z[1/p] is the principal
/// ideal (varpi-power of valuation r).
struct CutIdeal {
    Exponent threshold;
    bool open = false;

    friend bool operator==(const CutIdeal& a, const CutIdeal& b) {
        return a.threshold == b.threshold && a.open == b.open;
    }
};

/// Finite direct sum of cyclic quotients V/I_i.  Canonical form: summands
/// sorted by (threshold, closed-before-open), zero summands (closed cut at
/// 0, i.e. V/V) dropped.  Note V/m_V (open cut at 0) is a nonzero module
/// and is kept.
class CutModule {
public:
    CutModule() = default;
    CutModule(RingDescriptor desc, std::vector<CutIdeal> summands);

    static CutModule zero(const RingDescriptor& d) { return CutModule(d, {}); }
    static CutModule residue_field(const RingDescriptor& d) {
        return CutModule(d, {CutIdeal{Exponent(0), true}});
    }

    const RingDescriptor& descriptor() const { return desc_; }
    const std::vector<CutIdeal>& summands() const { return summands_; }
    bool is_zero_module() const { return summands_.empty(); }

    std::string str() const;

private:
    RingDescriptor desc_;
    std::vector<CutIdeal> summands_;
};

/// b * M for v(b) exact: each V/I(r, e) becomes V/I(max(r - v(b), 0), e),
/// with summands that collapse to zero dropped.
CutModule scalar_image(const RingElement& b, const CutModule& m);

CutModule direct_sum(const CutModule& a, const CutModule& b);

/// The canonical short exact sequence 0 -> V/aV -> V/abV -> V/bV -> 0
/// (multiplication by b embeds V/aV as bV/abV).
struct ExactTriple {
    CutModule sub;
    CutModule mid;
    CutModule quot;
};

ExactTriple quotient_ses(const RingElement& a, const RingElement& b);

}  // namespace perfval
