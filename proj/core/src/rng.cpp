#include "perfval/rng.hpp"

namespace perfval {

Exponent random_exponent(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par) {
    unsigned j = static_cast<unsigned>(rng.below(par.denom_pow + 1));
    long den = 1;
    for (unsigned i = 0; i < j; ++i) den *= desc.prime;
    // numerator in [0, max_num * den]
    long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(par.max_num * den + 1)));
    Exponent e(num, den);
    if (!(e < desc.precision)) e = Exponent(0);
    return e;
}

RingElement random_element(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par,
                           bool allow_zero) {
    unsigned lo = allow_zero ? 0 : 1;
    unsigned nterms = lo + static_cast<unsigned>(rng.below(par.max_terms + 1 - lo));
    ElementBuilder b(desc, desc.precision);
    for (unsigned t = 0; t < nterms; ++t) {
        Exponent e = random_exponent(rng, desc, par);
        long c = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(desc.prime - 1)));
        b.accumulate(e, c);
    }
    RingElement r = b.build();
    if (!allow_zero && r.is_zero()) {
        // colliding digits cancelled; fall back to a guaranteed unit digit
        return add(r, RingElement::one(desc));
    }
    return r;
}

RingElement random_unit(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par) {
    RingElement r = random_element(rng, desc, par, true);
    ValResult v = r.valuation();
    if (v.is_exact() && v.value().is_zero()) return r;
    long c = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(desc.prime - 1)));
    return add(r, RingElement::monomial(desc, Exponent(0), c));
}

std::vector<std::vector<RingElement>> random_grid(SplitMix64& rng, const RingDescriptor& desc,
                                                  std::size_t n, std::size_t m,
                                                  const CorpusParams& par) {
    std::vector<std::vector<RingElement>> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i].reserve(m);
        for (std::size_t j = 0; j < m; ++j) g[i].push_back(random_element(rng, desc, par, true));
    }
    return g;
}

}  // namespace perfval
