#include "perfval/cutmod.hpp"

#include <algorithm>
#include <sstream>

namespace perfval {

namespace {
bool cut_less(const CutIdeal& a, const CutIdeal& b) {
    if (a.threshold != b.threshold) return a.threshold < b.threshold;
    return a.open < b.open;  // closed before open
}
}  // namespace

CutModule::CutModule(RingDescriptor desc, std::vector<CutIdeal> summands)
    : desc_(std::move(desc)) {
    for (auto& c : summands) {
        if (c.threshold.is_negative()) throw InvalidInput("cut threshold must be nonnegative");
        if (c.threshold.is_zero() && !c.open) continue;  // V/V = 0
        summands_.push_back(c);
    }
    std::sort(summands_.begin(), summands_.end(), cut_less);
}

std::string CutModule::str() const {
    if (summands_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& c : summands_) {
        if (!first) os << " (+) ";
        first = false;
        os << "V/(" << (c.open ? "open " : "closed ") << c.threshold.str() << ')';
    }
    return os.str();
}

CutModule scalar_image(const RingElement& b, const CutModule& m) {
    if (!(b.descriptor() == m.descriptor())) throw DescriptorMismatch();
    ValResult v = b.valuation();
    if (!v.is_exact()) throw PrecisionExhausted("scalar has no exact valuation");
    const Exponent& vb = v.value();

    std::vector<CutIdeal> out;
    for (const auto& c : m.summands()) {
        Exponent r = c.threshold - vb;
        if (c.open) {
            // (I : b) stays an open cut; at r = 0 the image is V/m_V
            if (r.is_negative()) continue;
            out.push_back(CutIdeal{r, true});
        } else {
            if (!(r > Exponent(0))) continue;
            out.push_back(CutIdeal{r, false});
        }
    }
    return CutModule(m.descriptor(), std::move(out));
}

CutModule direct_sum(const CutModule& a, const CutModule& b) {
    if (!(a.descriptor() == b.descriptor())) throw DescriptorMismatch();
    std::vector<CutIdeal> out = a.summands();
    out.insert(out.end(), b.summands().begin(), b.summands().end());
    return CutModule(a.descriptor(), std::move(out));
}

ExactTriple quotient_ses(const RingElement& a, const RingElement& b) {
    if (!(a.descriptor() == b.descriptor())) throw DescriptorMismatch();
    ValResult va = a.valuation(), vb = b.valuation();
    if (!va.is_exact() || !vb.is_exact())
        throw PrecisionExhausted("quotient_ses needs exact valuations");
    Exponent ra = va.value(), rb = vb.value();
    if (!(ra + rb < a.descriptor().precision))
        throw PrecisionExhausted("v(a) + v(b) reaches the precision cap");
    const RingDescriptor& d = a.descriptor();
    return ExactTriple{
        CutModule(d, {CutIdeal{ra, false}}),
        CutModule(d, {CutIdeal{ra + rb, false}}),
        CutModule(d, {CutIdeal{rb, false}}),
    };
}

}  // namespace perfval
