#include "perfval/purity.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "perfval/rng.hpp"

namespace perfval {

// ---------------------------------------------------------------- Laurent

LaurentElement::LaurentElement(RingElement body, Exponent shift)
    : shift_(std::move(shift)), body_(std::move(body)) {
    if (shift_.is_negative()) throw InvalidInput("laurent shift must be nonnegative");
    if (body_.is_zero() && !body_.flagged()) shift_ = Exponent(0);
}

ValResult LaurentElement::valuation() const {
    ValResult v = body_.valuation();
    if (!v.is_exact())
        return ValResult::below_precision(v.bound() - shift_);
    return ValResult::exact(v.value() - shift_);
}

bool LaurentElement::is_integral() const {
    for (const Term& t : body_.terms())
        if (t.exponent < shift_) return false;
    return true;
}

RingElement LaurentElement::to_ring() const {
    const RingDescriptor& d = body_.descriptor();
    ElementBuilder b(d, d.precision);
    if (body_.flagged()) b.mark_inexact();
    for (const Term& t : body_.terms()) {
        if (t.exponent < shift_)
            throw InvalidInput("laurent element is not integral: term at exponent " +
                               (t.exponent - shift_).str());
        b.accumulate(t.exponent - shift_, t.coeff);
    }
    return b.build();
}

std::string LaurentElement::str() const {
    if (shift_.is_zero()) return body_.str();
    return std::string(1, body_.descriptor().base_symbol()) + "^(-" + shift_.str() + ") * (" +
           body_.str() + ")";
}

namespace {

RingElement shift_up(const RingElement& x, const Exponent& delta) {
    if (delta.is_zero()) return x;
    return mul(x, RingElement::monomial(x.descriptor(), delta, 1));
}

}  // namespace

LaurentElement operator+(const LaurentElement& a, const LaurentElement& b) {
    Exponent s = max(a.shift(), b.shift());
    return LaurentElement(add(shift_up(a.body(), s - a.shift()), shift_up(b.body(), s - b.shift())),
                          s);
}

LaurentElement operator-(const LaurentElement& a, const LaurentElement& b) {
    Exponent s = max(a.shift(), b.shift());
    return LaurentElement(sub(shift_up(a.body(), s - a.shift()), shift_up(b.body(), s - b.shift())),
                          s);
}

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
    return LaurentElement(mul(a.body(), b.body()), a.shift() + b.shift());
}

LaurentElement laurent_neg(const LaurentElement& a) {
    return LaurentElement(neg(a.body()), a.shift());
}

LaurentElement laurent_pth_root(const LaurentElement& a) {
    if (a.descriptor().mode != Mode::char_p)
        throw ModeUnsupported("laurent p-th roots live in the perfect char-p model");
    const long p = a.descriptor().prime;
    return LaurentElement(pth_root(a.body()), a.shift() / p);
}

bool laurent_equals_below(const LaurentElement& a, const LaurentElement& b, const Exponent& cap) {
    Exponent s = max(a.shift(), b.shift());
    return equals_below(shift_up(a.body(), s - a.shift()), shift_up(b.body(), s - b.shift()),
                        cap + s);
}

/// Scale by base^delta with delta of either sign.
static LaurentElement laurent_scale(const LaurentElement& a, const Exponent& delta) {
    if (!delta.is_negative()) return LaurentElement(shift_up(a.body(), delta), a.shift());
    return LaurentElement(a.body(), a.shift() + (-delta));
}

// ------------------------------------------------------ relation algebra

RelationAlgebra::RelationAlgebra(ExtensionSpec::Kind kind, unsigned degree, LaurentElement datum)
    : kind_(kind), degree_(degree), datum_(std::move(datum)) {
    if (degree_ == 0) throw InvalidInput("relation algebra of degree 0");
}

std::vector<LaurentElement> RelationAlgebra::zero_poly() const {
    return std::vector<LaurentElement>(
        degree_, LaurentElement(RingElement::zero(datum_.descriptor())));
}

std::vector<LaurentElement> RelationAlgebra::monomial(unsigned j, const LaurentElement& c) const {
    if (j >= degree_) throw InvalidInput("monomial degree out of range");
    auto f = zero_poly();
    f[j] = c;
    return f;
}

std::vector<LaurentElement> RelationAlgebra::add(const std::vector<LaurentElement>& f,
                                                 const std::vector<LaurentElement>& g) const {
    auto h = zero_poly();
    for (unsigned j = 0; j < degree_; ++j) h[j] = f[j] + g[j];
    return h;
}

std::vector<LaurentElement> RelationAlgebra::mul(const std::vector<LaurentElement>& f,
                                                 const std::vector<LaurentElement>& g) const {
    const RingDescriptor& d = datum_.descriptor();
    std::vector<LaurentElement> conv(2 * degree_ - 1, LaurentElement(RingElement::zero(d)));
    for (unsigned i = 0; i < degree_; ++i)
        for (unsigned j = 0; j < degree_; ++j) conv[i + j] = conv[i + j] + (f[i] * g[j]);
    // reduce x^s for s >= degree through the defining relation
    for (unsigned s = 2 * degree_ - 2; s >= degree_ && s < conv.size(); --s) {
        LaurentElement c = conv[s];
        if (c.is_zero() && !c.body().flagged()) continue;
        conv[s] = LaurentElement(RingElement::zero(d));
        if (kind_ == ExtensionSpec::Kind::artin_schreier) {
            // x^p = x + a
            conv[s - degree_ + 1] = conv[s - degree_ + 1] + c;
            conv[s - degree_] = conv[s - degree_] + (c * datum_);
        } else {
            // x^m = a
            conv[s - degree_] = conv[s - degree_] + (c * datum_);
        }
    }
    conv.resize(degree_, LaurentElement(RingElement::zero(d)));
    return conv;
}

std::vector<LaurentElement> RelationAlgebra::power_of_x(unsigned s) const {
    const RingDescriptor& d = datum_.descriptor();
    auto one = LaurentElement(RingElement::one(d));
    auto f = monomial(0, one);
    auto x = degree_ > 1 ? monomial(1, one) : monomial(0, datum_);
    for (unsigned i = 0; i < s; ++i) f = mul(f, x);
    return f;
}

std::vector<LaurentElement> RelationAlgebra::substitute_shift(
    const std::vector<LaurentElement>& f, long c) const {
    const RingDescriptor& d = datum_.descriptor();
    auto out = zero_poly();
    for (unsigned j = 0; j < degree_; ++j) {
        // f_j * (x + c)^j expanded binomially (j < degree, no reduction)
        for (unsigned l = 0; l <= j; ++l) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), j, l);
            mpz_class cpow;
            mpz_ui_pow_ui(cpow.get_mpz_t(), static_cast<unsigned long>(c < 0 ? -c : c), j - l);
            if (c < 0 && ((j - l) % 2 == 1)) cpow = -cpow;
            LaurentElement scalar(RingElement::monomial(d, Exponent(0), binom * cpow));
            out[l] = out[l] + (f[j] * scalar);
        }
    }
    return out;
}

// ------------------------------------------------------------- extensions

void ExtensionSpec::validate() const {
    desc.validate();
    if (degree == 0) throw InvalidInput("extension of degree 0");
    if (degree > 16) throw InvalidInput("extension degree out of supported range");
    if (root_depth > 12) throw InvalidInput("root depth beyond the tower budget");
    if (!(a.descriptor() == desc)) throw DescriptorMismatch("extension datum");
    if (kind == Kind::artin_schreier) {
        if (desc.mode != Mode::char_p)
            throw ModeUnsupported("Artin-Schreier extensions require the char-p model");
        if (degree != static_cast<unsigned>(desc.prime))
            throw InvalidInput("Artin-Schreier degree must equal p");
    } else {
        if (desc.mode == Mode::char_p && std::gcd(static_cast<long>(degree), desc.prime) != 1)
            throw InvalidInput("Kummer degree must be prime to p in char_p mode");
        if (desc.mode == Mode::mixed && root_depth != 0)
            throw ModeUnsupported("p-power root towers of mixed-mode data are not available");
    }
}

ExtensionOrder build_extension(const ExtensionSpec& spec) {
    spec.validate();
    const RingDescriptor& desc = spec.desc;
    const unsigned r = spec.degree;

    LaurentElement datum = spec.a;
    for (unsigned i = 0; i < spec.root_depth; ++i) datum = laurent_pth_root(datum);

    // v(x) from the Newton polygon of the defining relation
    Exponent vx(0);
    ValResult va = datum.valuation();
    if (spec.kind == ExtensionSpec::Kind::kummer) {
        if (datum.is_zero()) throw InvalidInput("Kummer datum is zero");
        if (!va.is_exact()) throw PrecisionExhausted("Kummer datum has no exact valuation");
        mpq_class q = va.value().value() / static_cast<long>(r);
        vx = Exponent(q);
        if (!vx.denominator_is_power_of(desc.prime))
            throw NotIntegralBasis("v(x) = " + vx.str() +
                                   " leaves Z[1/p]; no valuation-minimal monomial basis exists");
    } else {
        if (va.is_exact() && va.value().is_negative()) vx = va.value() / desc.prime;
    }

    ExtensionOrder order;
    order.spec = spec;
    order.spec.a = datum;      // datum at this root depth
    order.spec.root_depth = 0; // already applied
    order.rank = r;
    order.x_valuation = vx;
    for (unsigned j = 0; j < r; ++j)
        order.basis_shifts.push_back(Exponent(mpq_class(-static_cast<long>(j) * vx.value())));

    RelationAlgebra alg(spec.kind, r, datum);

    order.table.assign(r, std::vector<std::vector<RingElement>>(
                              r, std::vector<RingElement>(r, RingElement::zero(desc))));
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
            auto pol = alg.power_of_x(i + j);
            for (unsigned k = 0; k < r; ++k) {
                Exponent delta = order.basis_shifts[i] + order.basis_shifts[j] -
                                 order.basis_shifts[k];
                LaurentElement c = laurent_scale(pol[k], delta);
                if (!c.is_integral())
                    throw NotIntegralBasis("structure constant (" + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(k) +
                                           ") = " + c.str());
                order.table[i][j][k] = c.to_ring();
            }
        }

    for (unsigned a = 0; a < r; ++a) {
        RingElement tr = RingElement::zero(desc);
        for (unsigned k = 0; k < r; ++k) tr = add(tr, order.table[a][k][k]);
        order.basis_traces.push_back(tr);
    }
    return order;
}

std::vector<RingElement> ExtensionOrder::mul_vec(const std::vector<RingElement>& u,
                                                 const std::vector<RingElement>& v) const {
    std::vector<RingElement> w(rank, RingElement::zero(spec.desc));
    for (unsigned i = 0; i < rank; ++i) {
        if (u[i].is_zero() && !u[i].flagged()) continue;
        for (unsigned j = 0; j < rank; ++j) {
            if (v[j].is_zero() && !v[j].flagged()) continue;
            RingElement uv = mul(u[i], v[j]);
            for (unsigned k = 0; k < rank; ++k)
                w[k] = add(w[k], mul(uv, table[i][j][k]));
        }
    }
    return w;
}

std::vector<RingElement> ExtensionOrder::pow_vec(std::vector<RingElement> u,
                                                 unsigned long e) const {
    std::vector<RingElement> acc(rank, RingElement::zero(spec.desc));
    acc[0] = RingElement::one(spec.desc);
    while (e > 0) {
        if (e & 1UL) acc = mul_vec(acc, u);
        e >>= 1UL;
        if (e > 0) u = mul_vec(u, u);
    }
    return acc;
}

ElementMatrix trace_matrix(const ExtensionOrder& order) {
    const unsigned r = order.rank;
    ElementMatrix t(order.descriptor(), r, r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
            RingElement s = RingElement::zero(order.descriptor());
            for (unsigned k = 0; k < r; ++k)
                s = add(s, mul(order.table[i][j][k], order.basis_traces[k]));
            t.at(i, j) = s;
        }
    return t;
}

Exponent discriminant_valuation(const ExtensionOrder& order) {
    ElementMatrix t = trace_matrix(order);
    std::optional<Exponent> v = fitting_minor_valuation(t, order.rank);
    if (!v) throw InvalidInput("discriminant vanishes exactly (degenerate extension data)");
    return *v;
}

std::vector<Exponent> tower_discriminants(const ExtensionSpec& spec, unsigned n_max) {
    if (spec.desc.mode != Mode::char_p)
        throw ModeUnsupported("discriminant towers require the char-p model");
    std::vector<Exponent> out;
    for (unsigned n = 0; n <= n_max; ++n) {
        ExtensionSpec level = spec;
        level.root_depth = n;
        out.push_back(discriminant_valuation(build_extension(level)));
    }
    for (unsigned n = 0; n + 1 < out.size(); ++n)
        if (out[n] < out[n + 1])
            throw InvalidInput("tower discriminants failed to be monotone nonincreasing");
    return out;
}

// ------------------------------------------------- Frobenius surjectivity

namespace {

RingElement random_residue(SplitMix64& rng, const RingDescriptor& desc, const Exponent& cap) {
    CorpusParams par;
    par.denom_pow = 3;
    par.max_num = 1;
    par.max_terms = 3;
    RingElement e = random_element(rng, desc, par, true);
    return truncate_below(e, cap);
}

}  // namespace

std::vector<CheckReport> frobenius_surjectivity_check(const ExtensionOrder& order,
                                                      unsigned samples, std::uint64_t seed) {
    const RingDescriptor& desc = order.descriptor();
    const unsigned r = order.rank;
    SplitMix64 rng(seed);
    std::vector<CheckReport> out;

    if (desc.mode == Mode::char_p) {
        // roots live in the next order of the same tower; its basis raised
        // to the p-th power realizes the embedding of this order
        ExtensionSpec deeper_spec = order.spec;
        deeper_spec.root_depth = 1;
        ExtensionOrder deeper = build_extension(deeper_spec);
        const Exponent cap = min(Exponent(1), desc.precision);

        std::vector<std::vector<RingElement>> embed(r);
        for (unsigned j = 0; j < r; ++j) {
            std::vector<RingElement> unit(r, RingElement::zero(desc));
            unit[j] = RingElement::one(desc);
            embed[j] = deeper.pow_vec(unit, static_cast<unsigned long>(desc.prime));
        }

        for (unsigned s = 0; s < samples; ++s) {
            std::vector<RingElement> w(r), y(r, RingElement::zero(desc));
            for (unsigned j = 0; j < r; ++j) {
                w[j] = random_residue(rng, desc, cap);
                y[j] = pth_root(w[j]);
            }
            // iota(w) = sum_j w_j * (deeper basis_j)^p
            std::vector<RingElement> target(r, RingElement::zero(desc));
            for (unsigned j = 0; j < r; ++j)
                for (unsigned k = 0; k < r; ++k)
                    target[k] = add(target[k], mul(w[j], embed[j][k]));
            std::vector<RingElement> yp = deeper.pow_vec(y, static_cast<unsigned long>(desc.prime));
            bool ok = true;
            for (unsigned k = 0; k < r; ++k)
                if (!equals_below(yp[k], target[k], cap)) ok = false;
            out.push_back(make_report("y^p = w in W/tW (root in the depth+1 order)",
                                      "coefficientwise p-th root", "exact", ok,
                                      ok ? "" : "sample " + std::to_string(s)));
        }
        return out;
    }

    // mixed mode: degree <= 2 orders, roots through the residue
    // identification of V/pV with the truncated char-p model
    if (r > 2) throw ModeUnsupported("mixed-mode surjectivity checks cover degree <= 2 orders");
    const Exponent capp = min(Exponent(1), desc.precision);
    const Exponent capw = min(Exponent(1, desc.prime), desc.precision);

    for (unsigned s = 0; s < samples; ++s) {
        std::vector<RingElement> y0(r);
        for (unsigned j = 0; j < r; ++j) y0[j] = random_residue(rng, desc, capp);
        std::vector<RingElement> w = order.pow_vec(y0, static_cast<unsigned long>(desc.prime));
        for (auto& c : w) c = reduce_mod_p(c);
        // the Frobenius image of a degree <= 2 order meets only the V-part
        // of W/varpi W; anything else means the search space is exhausted
        for (unsigned j = 1; j < r; ++j)
            if (!truncate_below(w[j], capw).is_zero())
                throw RootSearchExceeded("image left the V-part (budget: V-part digit grid)");
        RingElement root = pth_root(w[0]);
        std::vector<RingElement> yvec(r, RingElement::zero(desc));
        yvec[0] = root;
        std::vector<RingElement> yp = order.pow_vec(yvec, static_cast<unsigned long>(desc.prime));
        bool ok = equals_below(reduce_mod_p(yp[0]), w[0], capw);
        for (unsigned j = 1; j < r; ++j)
            if (!truncate_below(reduce_mod_p(yp[j]), capw).is_zero()) ok = false;
        out.push_back(make_report("y^p = w in W/varpi W (residue identification)",
                                  "exponent-halved root", "match below 1/p", ok,
                                  ok ? "" : "sample " + std::to_string(s)));
    }
    return out;
}

// ------------------------------------------------------------- the ledger

PurityLedger purity_ledger(const ExtensionOrder& order, const RingElement& b) {
    const RingDescriptor& desc = order.descriptor();
    if (desc.mode != Mode::mixed)
        throw ModeUnsupported("the purity ledger lives over the mixed model");
    if (!(b.descriptor() == desc)) throw DescriptorMismatch();
    ValResult vbr = b.valuation();
    if (!vbr.is_exact() || !(vbr.value() > Exponent(0)))
        throw InvalidInput("b must have exact positive valuation");
    if (!(desc.precision > Exponent(1)))
        throw PrecisionExhausted("ledger thresholds reach exponent 1; any precision N > 1 suffices");

    const Exponent vb = vbr.value();
    const long p = desc.prime;
    const unsigned r = order.rank;
    const Exponent vw = desc.varpi_valuation();

    PurityLedger led;
    led.b_valuation = vb;

    // B = W/varpi W, C = W/pW: free of rank r over the cyclic quotients
    CutModule B(desc, std::vector<CutIdeal>(r, CutIdeal{vw, false}));
    CutModule C(desc, std::vector<CutIdeal>(r, CutIdeal{Exponent(1), false}));
    RingElement bp = pow(b, static_cast<unsigned long>(p));

    led.lambda_bB = lambda_cut(scalar_image(b, B));
    led.lambda_bpC = lambda_cut(scalar_image(bp, C));

    // elementary-divisor crosschecks in the nondegenerate range
    if (vb < vw) {
        RingElement gen = divide(RingElement::varpi(desc), b);
        PresentationMatrix pb(ElementMatrix::diagonal(desc, std::vector<RingElement>(r, gen)));
        LengthValue viaSmith = lambda_fp(pb);
        led.chain_verdicts.push_back(make_report("lambda(bB) via elementary divisors",
                                                 viaSmith.str(), led.lambda_bB.str(),
                                                 viaSmith == led.lambda_bB));
    }
    const Exponent pvb = p * vb;
    if (pvb < Exponent(1)) {
        RingElement pgen = divide(RingElement::monomial(desc, Exponent(1), 1), bp);
        PresentationMatrix pc(ElementMatrix::diagonal(desc, std::vector<RingElement>(r, pgen)));
        LengthValue viaSmith = lambda_fp(pc);
        led.chain_verdicts.push_back(make_report("lambda(b^p C) via elementary divisors",
                                                 viaSmith.str(), led.lambda_bpC.str(),
                                                 viaSmith == led.lambda_bpC));
    }

    // (b^p C)^[F] through the exponent-preserving identification of V/pV
    // with the truncated char-p model, then genuine scalar restriction
    if (pvb < Exponent(1)) {
        RingDescriptor cp{Mode::char_p, p, desc.precision};
        RingElement tgen = RingElement::monomial(cp, Exponent(1) - pvb, 1);
        PresentationMatrix pcf(ElementMatrix::diagonal(cp, std::vector<RingElement>(r, tgen)));
        led.lambda_bpC_F = lambda_fp(frobenius_restrict(pcf));
    }

    mpq_class nb = led.lambda_bpC_F.value() - led.lambda_bB.value();
    led.lambda_Nb = LengthValue::finite(nb);

    mpq_class half = led.lambda_bpC.value() / p;
    led.chain_verdicts.push_back(make_report("lambda((b^p C)^[F]) = lambda(b^p C)/p",
                                             led.lambda_bpC_F.str(), rat_string(half),
                                             cmp(led.lambda_bpC_F.value(), half) == 0));
    mpq_class pbb = mpq_class(p) * led.lambda_bB.value();
    led.chain_verdicts.push_back(make_report("lambda(b^p C) <= p * lambda(bB)",
                                             led.lambda_bpC.str(), rat_string(pbb),
                                             cmp(led.lambda_bpC.value(), pbb) <= 0));
    led.chain_verdicts.push_back(
        make_report("lambda(N_b) = 0", led.lambda_Nb.str(), "0", cmp(nb, 0) == 0));

    if (r <= 2) {
        // direct cokernel presentation: generatorwise, bB -> (b^p C)^[F]
        // identifies cyclic summands with equal cuts
        Exponent lhs_cut = vb < vw ? vw - vb : Exponent(0);
        Exponent rhs_cut = pvb < Exponent(1) ? (Exponent(1) - pvb) / p : Exponent(0);
        led.chain_verdicts.push_back(make_report("direct N_b presentation: summand cuts agree",
                                                 lhs_cut.str(), rhs_cut.str(),
                                                 lhs_cut == rhs_cut));
    }
    return led;
}

std::string PurityLedger::human_table() const {
    std::ostringstream os;
    os << "purity ledger (v(b) = " << b_valuation.str() << ")\n"
       << "  lambda(bB)           = " << lambda_bB.str() << '\n'
       << "  lambda(b^p C)        = " << lambda_bpC.str() << '\n'
       << "  lambda((b^p C)^[F])  = " << lambda_bpC_F.str() << '\n'
       << "  lambda(N_b)          = " << lambda_Nb.str() << '\n';
    for (const auto& rep : chain_verdicts)
        os << "  [" << verdict_name(rep.verdict) << "] " << rep.claim << ": " << rep.lhs
           << " vs " << rep.rhs << '\n';
    return os.str();
}

std::vector<CheckReport> filtration_report(const ExtensionOrder& order) {
    const RingDescriptor& desc = order.descriptor();
    if (desc.mode != Mode::mixed)
        throw ModeUnsupported("the filtration report lives over the mixed model");
    if (!(desc.precision > Exponent(1)))
        throw PrecisionExhausted("filtration thresholds reach exponent 1");
    const long p = desc.prime;
    const unsigned r = order.rank;

    CutModule B(desc, std::vector<CutIdeal>(r, CutIdeal{desc.varpi_valuation(), false}));
    CutModule C(desc, std::vector<CutIdeal>(r, CutIdeal{Exponent(1), false}));
    mpq_class lamB = lambda_cut(B).value();
    mpq_class lamC = lambda_cut(C).value();

    std::vector<CheckReport> out;
    mpq_class total = 0;
    for (long k = 0; k < p; ++k) {
        RingElement wk = RingElement::varpi_power(desc, Exponent(k));
        RingElement wk1 = RingElement::varpi_power(desc, Exponent(k + 1));
        mpq_class graded = lambda_cut(scalar_image(wk, C)).value() -
                           lambda_cut(scalar_image(wk1, C)).value();
        total += graded;
        out.push_back(make_report("graded piece varpi^k C / varpi^(k+1) C has length lambda(B)",
                                  rat_string(graded), rat_string(lamB), cmp(graded, lamB) == 0,
                                  "k = " + std::to_string(k)));
    }
    out.push_back(make_report("graded lengths sum to lambda(C)", rat_string(total),
                              rat_string(lamC), cmp(total, lamC) == 0));
    return out;
}

// -------------------------------------------------------------- flatness

std::vector<CheckReport> flatness_check(const RingElement& a, unsigned samples,
                                        std::uint64_t seed) {
    const RingDescriptor& desc = a.descriptor();
    if (desc.mode != Mode::mixed)
        throw ModeUnsupported("the flatness statement lives over the mixed model");
    if (!(desc.precision > Exponent(1)))
        throw PrecisionExhausted("flatness cuts reach exponent 1; any precision N > 1 suffices");
    ValResult var = a.valuation();
    if (!var.is_exact()) throw PrecisionExhausted("a has no exact valuation");
    const Exponent va = var.value();
    const Exponent vw = desc.varpi_valuation();
    if (va.is_negative() || va > vw) throw InvalidInput("need 0 <= v(a) <= v(varpi)");

    const long p = desc.prime;
    RingElement bfac = divide(RingElement::varpi(desc), a);  // varpi = a * b
    const Exponent vbq = vw - va;

    RingDescriptor cp{Mode::char_p, p, desc.precision};
    // lhs: a(V/varpi V) (x) (V/pV)^[F]  =  (V/(b^p))^[F]
    RingElement lhs_gen = RingElement::monomial(cp, p * vbq, 1);
    LengthValue lhs = lambda_fp(frobenius_restrict(
        PresentationMatrix(ElementMatrix::diagonal(cp, {lhs_gen}))));
    // rhs: (a^p V/pV)^[F]  =  (V/(p/a^p))^[F]
    RingElement rhs_gen = RingElement::monomial(cp, Exponent(1) - p * va, 1);
    LengthValue rhs = lambda_fp(frobenius_restrict(
        PresentationMatrix(ElementMatrix::diagonal(cp, {rhs_gen}))));

    std::vector<CheckReport> out;
    out.push_back(make_report("both sides cyclic of length v(b) = v(varpi) - v(a)", lhs.str(),
                              rhs.str(), lhs == rhs));
    out.push_back(make_report("length equals v(b)", lhs.str(), vbq.str(),
                              !lhs.is_infinite() && cmp(lhs.value(), vbq.value()) == 0));

    // annihilators: both cyclic cuts sit at v(b); scalars of smaller
    // valuation act nontrivially, scalars at or beyond kill both
    CutModule lhs_cut(desc, {CutIdeal{vbq, false}});
    CutModule rhs_cut(desc, {CutIdeal{vbq, false}});
    SplitMix64 rng(seed);
    CorpusParams par;
    par.denom_pow = 3;
    par.max_num = 1;
    for (unsigned s = 0; s < samples; ++s) {
        RingElement c = random_element(rng, desc, par, false);
        Exponent vc = c.valuation().value();
        bool lhs_killed = scalar_image(c, lhs_cut).is_zero_module();
        bool rhs_killed = scalar_image(c, rhs_cut).is_zero_module();
        bool expect = vc >= vbq;
        bool ok = (lhs_killed == expect) && (rhs_killed == expect);
        out.push_back(make_report("annihilators agree at v(c) = " + vc.str(),
                                  lhs_killed ? "kills" : "acts", rhs_killed ? "kills" : "acts",
                                  ok, ok ? "" : "sample " + std::to_string(s)));
    }
    return out;
}

}  // namespace perfval
