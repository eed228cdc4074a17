#include "perfval/length.hpp"

#include "perfval/rng.hpp"

namespace perfval {

LengthValue lambda_fp(const PresentationMatrix& a) {
    try {
        return LengthValue::finite(fitting_f0(a).threshold);
    } catch (const NotTorsion&) {
        return LengthValue::infinite();
    }
}

LengthValue lambda_cut(const CutModule& m) {
    mpq_class s = 0;
    for (const auto& c : m.summands()) s += c.threshold.value();
    return LengthValue::finite(std::move(s));
}

PresentationMatrix frobenius_restrict(const PresentationMatrix& a) {
    if (a.descriptor().mode != Mode::char_p)
        throw ModeUnsupported("frobenius_restrict requires the perfect char-p model");
    ElementMatrix m(a.descriptor(), a.generators(), a.relations());
    for (std::size_t i = 0; i < a.generators(); ++i)
        for (std::size_t j = 0; j < a.relations(); ++j)
            m.at(i, j) = pth_root(a.matrix().at(i, j));
    return PresentationMatrix(std::move(m));
}

namespace {

CheckReport one_pullback(const PresentationMatrix& a, const std::string& tag) {
    LengthValue lam = lambda_fp(a);
    LengthValue lamF = lambda_fp(frobenius_restrict(a));
    if (lam.is_infinite() || lamF.is_infinite())
        return make_report("lambda(M^[F]) = lambda(M)/p", lamF.str(), lam.str() + "/p", false,
                           tag + ": non-torsion input");
    mpq_class rhs = lam.value() / a.descriptor().prime;
    bool ok = cmp(lamF.value(), rhs) == 0;
    return make_report("lambda(M^[F]) = lambda(M)/p", lamF.str(), rat_string(rhs), ok,
                       ok ? "" : tag + ": " + a.matrix().str());
}

}  // namespace

std::vector<CheckReport> pullback_check(const PresentationMatrix& a, unsigned trials,
                                        std::uint64_t seed) {
    std::vector<CheckReport> out;
    out.push_back(one_pullback(a, "given presentation"));

    SplitMix64 rng(seed);
    CorpusParams par;
    const std::size_t n = a.generators(), m = a.relations();
    unsigned made = 0, attempts = 0;
    while (made < trials) {
        if (++attempts > 50 * (trials + 1))
            throw InvalidInput("random torsion corpus generation stalled");
        PresentationMatrix cand(
            ElementMatrix(a.descriptor(), random_grid(rng, a.descriptor(), n, m, par)));
        try {
            fitting_f0(cand);
        } catch (const Error&) {
            continue;  // rejected: no torsion certificate
        }
        out.push_back(one_pullback(cand, "trial " + std::to_string(made)));
        ++made;
    }
    return out;
}

CheckReport additivity_check(const ExactTriple& t) {
    mpq_class lhs = lambda_cut(t.mid).value();
    mpq_class rhs = lambda_cut(t.sub).value() + lambda_cut(t.quot).value();
    return make_report("lambda(M) = lambda(L) + lambda(N)", rat_string(lhs), rat_string(rhs),
                       cmp(lhs, rhs) == 0);
}

CheckReport subadditivity_check(const ExactTriple& t, const RingElement& a, const RingElement& b) {
    RingElement ab = mul(a, b);
    mpq_class lhs = lambda_cut(scalar_image(ab, t.mid)).value();
    mpq_class rhs = lambda_cut(scalar_image(a, t.sub)).value() +
                    lambda_cut(scalar_image(b, t.quot)).value();
    return make_report("lambda(abM) <= lambda(aL) + lambda(bN)", rat_string(lhs), rat_string(rhs),
                       cmp(lhs, rhs) <= 0);
}

std::vector<CheckReport> zero_length_check(const CutModule& m) {
    std::vector<CheckReport> out;
    LengthValue lam = lambda_cut(m);
    if (cmp(lam.value(), 0) != 0) {
        out.push_back(CheckReport{"lambda(M) = 0 implies M almost zero", lam.str(), "0",
                                  Verdict::not_applicable, "length is nonzero"});
        return out;
    }
    bool almost_zero = true;
    for (const auto& c : m.summands())
        if (!c.threshold.is_zero()) almost_zero = false;
    out.push_back(make_report("lambda(M) = 0 implies M almost zero", "thresholds", "0", almost_zero));

    bool finitely_presented = true;
    for (const auto& c : m.summands())
        if (c.open) finitely_presented = false;
    if (finitely_presented)
        out.push_back(make_report("finitely presented and lambda(M) = 0 implies M = 0",
                                  m.is_zero_module() ? "0" : m.str(), "0", m.is_zero_module()));
    return out;
}

std::vector<CheckReport> zero_length_check(const PresentationMatrix& a) {
    std::vector<CheckReport> out;
    LengthValue lam = lambda_fp(a);
    if (lam.is_infinite() || cmp(lam.value(), 0) != 0) {
        out.push_back(CheckReport{"lambda(M) = 0 implies M = 0 (finitely presented)", lam.str(),
                                  "0", Verdict::not_applicable, "length is nonzero"});
        return out;
    }
    ElementaryDivisors d = smith_reduce(a);
    bool all_units = true;
    for (const auto& v : d.valuations)
        if (!v.is_zero()) all_units = false;
    out.push_back(make_report("lambda(M) = 0 implies M = 0 (finitely presented)",
                              "elementary divisors", "units", all_units));
    return out;
}

CheckReport finiteness_check(const CutModule& m, const RingElement& b) {
    LengthValue lam = lambda_cut(scalar_image(b, m));
    return make_report("lambda(bM) < infinity", lam.str(), "finite", !lam.is_infinite());
}

}  // namespace perfval
