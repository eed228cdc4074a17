#include "perfval/tilt.hpp"

#include <algorithm>
#include <optional>

namespace perfval {

namespace {

void require_tilt_ring(const RingDescriptor& desc) {
    if (desc.mode != Mode::mixed) throw ModeUnsupported("tilting applies to the mixed model");
    if (desc.precision < Exponent(1))
        throw PrecisionExhausted("tilt components need the full residue ring mod p (N >= 1)");
}

RingElement frob_iter(RingElement x, int times) {
    for (int i = 0; i < times; ++i) x = frobenius(x);
    return x;
}

}  // namespace

TiltElement make_tilt_unchecked(RingDescriptor d, std::vector<RingElement> comps) {
    return TiltElement(std::move(d), std::move(comps));
}

TiltElement make_tilt(const std::vector<RingElement>& components) {
    if (components.size() < 2)
        throw InvalidInput("a tilt needs components (x_0, ..., x_d) with depth d >= 1");
    RingDescriptor desc = components.front().descriptor();
    require_tilt_ring(desc);
    std::vector<RingElement> comps;
    comps.reserve(components.size());
    for (const auto& c : components) {
        if (!(c.descriptor() == desc)) throw DescriptorMismatch("tilt component");
        comps.push_back(reduce_mod_p(c));
    }
    const Exponent cap = min(Exponent(1), desc.precision);
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
        if (!equals_below(frobenius(comps[i + 1]), comps[i], cap))
            throw CompatibilityViolation(i);
    }
    return make_tilt_unchecked(std::move(desc), std::move(comps));
}

TiltElement TiltElement::truncated(int new_depth) const {
    if (new_depth < 1 || new_depth > depth()) throw InvalidInput("bad tilt truncation depth");
    std::vector<RingElement> c(comps_.begin(), comps_.begin() + (new_depth + 1));
    return TiltElement(desc_, std::move(c));
}

TiltElement varpi_flat(const RingDescriptor& desc, int depth) {
    require_tilt_ring(desc);
    if (depth < 1) throw InvalidInput("depth must be >= 1");
    std::vector<RingElement> comps;
    comps.reserve(depth + 1);
    for (int i = 0; i <= depth; ++i) {
        // varpi^(1/p^i) = p^(1/p^(i+1))
        comps.push_back(RingElement::monomial(desc, Exponent::one_over_p_pow(desc.prime, i + 1), 1));
    }
    return make_tilt_unchecked(desc, std::move(comps));
}

TiltElement tilt_one(const RingDescriptor& desc, int depth) {
    require_tilt_ring(desc);
    if (depth < 1) throw InvalidInput("depth must be >= 1");
    return make_tilt_unchecked(desc,
                               std::vector<RingElement>(depth + 1, RingElement::one(desc)));
}

TiltElement tilt_zero(const RingDescriptor& desc, int depth) {
    require_tilt_ring(desc);
    if (depth < 1) throw InvalidInput("depth must be >= 1");
    return make_tilt_unchecked(desc,
                               std::vector<RingElement>(depth + 1, RingElement::zero(desc)));
}

TiltElement tilt_mul(const TiltElement& x, const TiltElement& y) {
    if (!(x.descriptor() == y.descriptor())) throw DescriptorMismatch();
    int d = std::min(x.depth(), y.depth());
    std::vector<RingElement> comps;
    comps.reserve(d + 1);
    for (int i = 0; i <= d; ++i)
        comps.push_back(reduce_mod_p(mul(x.component(i), y.component(i))));
    return make_tilt_unchecked(x.descriptor(), std::move(comps));
}

TiltElement tilt_add(const TiltElement& x, const TiltElement& y) {
    if (!(x.descriptor() == y.descriptor())) throw DescriptorMismatch();
    int d = std::min(x.depth(), y.depth());
    if (d < 2) throw InvalidInput("tilt addition spends one depth level; need depth >= 2");
    RingElement s = reduce_mod_p(add(x.component(d), y.component(d)));
    std::vector<RingElement> comps(d, RingElement::zero(x.descriptor()));
    for (int i = d - 1; i >= 0; --i) comps[i] = frob_iter(s, d - i);
    return make_tilt_unchecked(x.descriptor(), std::move(comps));
}

ValResult val_flat(const TiltElement& x) {
    const long p = x.descriptor().prime;
    const Exponent N = x.descriptor().precision;
    std::vector<std::optional<Exponent>> r(x.depth() + 1);
    for (int n = 0; n <= x.depth(); ++n) {
        ValResult v = x.component(n).valuation();
        if (v.is_exact()) {
            mpz_class pn;
            mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(n));
            r[n] = Exponent(mpq_class(pn * v.value().value()));
        }
    }
    for (int n = 0; n + 1 <= x.depth(); ++n)
        if (r[n] && r[n + 1] && *r[n] == *r[n + 1]) return ValResult::exact(*r[n]);
    return ValResult::below_precision(N);
}

RingElement sharp(const TiltElement& x) {
    unsigned long pd = 1;
    for (int i = 0; i < x.depth(); ++i) pd *= static_cast<unsigned long>(x.descriptor().prime);
    return pow(x.component(x.depth()), pd);
}

TiltElement random_tilt(SplitMix64& rng, const RingDescriptor& desc, int depth) {
    require_tilt_ring(desc);
    CorpusParams par;
    par.denom_pow = static_cast<unsigned>(depth + 1);
    par.max_num = 1;
    par.max_terms = 2;
    // deepest residue with small valuation so that several components stay
    // visible below the cap
    RingElement deep = random_element(rng, desc, par, true);
    deep = reduce_mod_p(scale_exponents(deep, Exponent::one_over_p_pow(desc.prime, depth + 1)));
    std::vector<RingElement> comps(depth + 1, RingElement::zero(desc));
    comps[depth] = deep;
    for (int i = depth - 1; i >= 0; --i) comps[i] = frobenius(comps[i + 1]);
    return make_tilt_unchecked(desc, std::move(comps));
}

std::vector<CheckReport> residue_iso_check(const RingDescriptor& desc, int depth, unsigned samples,
                                           std::uint64_t seed) {
    require_tilt_ring(desc);
    if (depth < 2) throw InvalidInput("residue checks need depth >= 2 for tilt addition");
    SplitMix64 rng(seed);
    const Exponent cap = min(Exponent(1), desc.precision);
    const Exponent kernel_threshold = Exponent(1, desc.prime);
    std::vector<CheckReport> out;

    for (unsigned s = 0; s < samples; ++s) {
        TiltElement x = random_tilt(rng, desc, depth);
        TiltElement y = random_tilt(rng, desc, depth);
        std::string tag = "sample " + std::to_string(s);

        RingElement pm = reduce_mod_p(mul(x.pr(), y.pr()));
        bool mul_ok = equals_below(tilt_mul(x, y).pr(), pm, cap);
        out.push_back(make_report("pr(x*y) = pr(x)*pr(y)", "componentwise", "direct", mul_ok,
                                  mul_ok ? "" : tag));

        RingElement ps = reduce_mod_p(add(x.pr(), y.pr()));
        bool add_ok = equals_below(tilt_add(x, y).pr(), ps, cap);
        out.push_back(make_report("pr(x+y) = pr(x)+pr(y) (limit addition)", "componentwise",
                                  "direct", add_ok, add_ok ? "" : tag));

        // kernel of pr onto V/varpi V: pr(x) in varpi*(V/pV) iff val >= 1/p
        bool pr_in_kernel = true;
        for (const Term& t : x.pr().terms())
            if (t.exponent < kernel_threshold) pr_in_kernel = false;
        ValResult vf = val_flat(x);
        bool val_at_least = !vf.is_exact() || vf.value() >= kernel_threshold;
        bool ker_ok = (pr_in_kernel == val_at_least);
        out.push_back(make_report("pr(x) = 0 mod varpi iff val_flat(x) >= 1/p",
                                  pr_in_kernel ? "kernel" : "nonkernel",
                                  val_at_least ? "kernel" : "nonkernel", ker_ok,
                                  ker_ok ? "" : tag + ": x_0 = " + x.pr().str()));
    }
    return out;
}

}  // namespace perfval
