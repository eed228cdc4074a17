#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perfval/length.hpp"
#include "perfval/rng.hpp"

using namespace perfval;

namespace {

RingDescriptor charp(long p, long n = 4) { return RingDescriptor{Mode::char_p, p, Exponent(n)}; }

RingElement el(const RingDescriptor& d, const std::string& s) { return parse_element(s, d); }

PresentationMatrix pres(const RingDescriptor& d, std::vector<std::vector<std::string>> rows) {
    std::vector<std::vector<RingElement>> g;
    for (auto& r : rows) {
        std::vector<RingElement> row;
        for (auto& s : r) row.push_back(el(d, s));
        g.push_back(std::move(row));
    }
    return PresentationMatrix(ElementMatrix(d, std::move(g)));
}

mpq_class q(long n, long den = 1) { return mpq_class(n, den); }

}  // namespace

TEST_CASE("lambda_fp on the worked examples") {
    auto d = charp(2);
    CHECK(lambda_fp(pres(d, {{"1*t^(1/2)", "0"}, {"0", "1*t^(1/4)"}})) ==
          LengthValue::finite(q(3, 4)));
    CHECK(lambda_fp(pres(d, {{"1*t^(1)"}})) == LengthValue::finite(q(1)));
    CHECK(lambda_fp(pres(d, {{"1*t^(1)", "1*t^(1/2)"}, {"1*t^(1/2)", "1*t^(1)"}})) ==
          LengthValue::finite(q(1)));
}

TEST_CASE("lambda_fp returns the explicit value infinity off the torsion category") {
    auto d = charp(2);
    ElementMatrix m(d, 2, 2);
    m.at(0, 0) = el(d, "1*t^(1)");
    CHECK(lambda_fp(PresentationMatrix(m)).is_infinite());
}

TEST_CASE("lambda_cut: the residue field has length zero but is nonzero") {
    auto d = charp(2);
    CutModule k = CutModule::residue_field(d);
    CHECK(lambda_cut(k) == LengthValue::finite(q(0)));
    CHECK_FALSE(k.is_zero_module());
}

TEST_CASE("lambda_cut sums thresholds regardless of endpoints") {
    auto d = charp(2);
    CutModule m(d, {CutIdeal{Exponent(1, 2), false}, CutIdeal{Exponent(1, 4), true}});
    CHECK(lambda_cut(m) == LengthValue::finite(q(3, 4)));
    CHECK(lambda_cut(CutModule::zero(d)) == LengthValue::finite(q(0)));

    // cut thresholds live in the completed value group, so they are not
    // bound to the p-power grid: closed 1/2 (+) open 1/3 has length 5/6
    CutModule w(d, {CutIdeal{Exponent(1, 2), false}, CutIdeal{Exponent(1, 3), true}});
    CHECK(lambda_cut(w) == LengthValue::finite(q(5, 6)));
}

TEST_CASE("lambda_cut agrees with the sup over generated submodules on a grid") {
    // sup over cyclic images generated in valuation s of (r - s): the grid
    // approaches the threshold, which itself lies on the grid
    auto d = charp(2);
    Exponent r(3, 4);
    CutModule m(d, {CutIdeal{r, false}});
    mpq_class best = 0;
    for (int k = 3 * 8; k >= 0; --k) {
        mpq_class s(k, 8);
        if (s > r.value()) continue;
        best = std::max(best, mpq_class(r.value() - s));
    }
    CHECK(lambda_cut(m).value() == best);
}

TEST_CASE("frobenius_restrict: entrywise p-th root presentations") {
    auto d = charp(2);
    auto a = pres(d, {{"1*t^(1)"}});
    CHECK(frobenius_restrict(a).matrix().at(0, 0) == el(d, "1*t^(1/2)"));

    auto b = pres(d, {{"1*t^(1)", "0"}, {"0", "1*t^(1/2)"}});
    auto bf = frobenius_restrict(b);
    CHECK(bf.matrix().at(0, 0) == el(d, "1*t^(1/2)"));
    CHECK(bf.matrix().at(1, 1) == el(d, "1*t^(1/4)"));

    auto c = pres(d, {{"1*t^(1)", "1*t^(1/2)"}, {"1*t^(1/2)", "1*t^(1)"}});
    auto cf = frobenius_restrict(c);
    CHECK(cf.matrix().at(0, 1) == el(d, "1*t^(1/4)"));

    RingDescriptor m{Mode::mixed, 2, Exponent(4)};
    ElementMatrix mm(m, 1, 1);
    mm.at(0, 0) = parse_element("1*p^(1)", m);
    CHECK_THROWS_AS(frobenius_restrict(PresentationMatrix(mm)), ModeUnsupported);
}

TEST_CASE("pullback: cyclic example at p = 3 and the zero module") {
    auto d = charp(3);
    CHECK(lambda_fp(frobenius_restrict(pres(d, {{"1*t^(1)"}}))) == LengthValue::finite(q(1, 3)));
    // unit relation: M = 0, both sides zero
    auto z = pres(d, {{"1"}});
    CHECK(lambda_fp(frobenius_restrict(z)) == LengthValue::finite(q(0)));
    CHECK(lambda_fp(z) == LengthValue::finite(q(0)));
}

TEST_CASE("pullback_check: 200 seeded 3x4 presentations at p = 2, seed 7") {
    auto d = charp(2);
    ElementMatrix seedm(d, 3, 4);
    for (int i = 0; i < 3; ++i) seedm.at(i, i) = el(d, "1*t^(1/2)");
    auto reports = pullback_check(PresentationMatrix(seedm), 200, 7);
    CHECK(reports.size() == 201);
    CHECK(all_passed(reports));
}

TEST_CASE("additivity on quotient triples") {
    auto d = charp(2);
    auto t = quotient_ses(el(d, "1*t^(1/2)"), el(d, "1*t^(1/4)"));
    CHECK(additivity_check(t).passed());

    // L = 0 case
    auto u = quotient_ses(RingElement::one(d), el(d, "1*t^(1/4)"));
    CHECK(additivity_check(u).passed());

    SplitMix64 rng(211);
    CorpusParams par;
    int done = 0;
    while (done < 100) {
        RingElement a = random_element(rng, d, par, false);
        RingElement b = random_element(rng, d, par, false);
        if (!(a.valuation().value() + b.valuation().value() < d.precision)) continue;
        CHECK(additivity_check(quotient_ses(a, b)).passed());
        ++done;
    }
}

TEST_CASE("subadditivity: worked example and unit degeneration") {
    auto d = charp(2);
    auto t = quotient_ses(el(d, "1*t^(1/2)"), el(d, "1*t^(1/4)"));
    // v(a) = v(b) = 1/4: lambda(abM) = max(3/4 - 1/2, 0) = 1/4
    auto r = subadditivity_check(t, el(d, "1*t^(1/4)"), el(d, "1*t^(1/4)"));
    CHECK(r.passed());

    CHECK(subadditivity_check(t, RingElement::one(d), RingElement::one(d)).passed());
    // v(a) + v(b) >= lambda(M): left side collapses to zero
    CHECK(subadditivity_check(t, el(d, "1*t^(1)"), el(d, "1*t^(1)")).passed());

    SplitMix64 rng(213);
    CorpusParams par;
    int done = 0;
    while (done < 100) {
        RingElement a = random_element(rng, d, par, false);
        RingElement b = random_element(rng, d, par, false);
        if (!(a.valuation().value() + b.valuation().value() < d.precision)) continue;
        RingElement c = random_element(rng, d, par, false);
        RingElement e = random_element(rng, d, par, false);
        CHECK(subadditivity_check(quotient_ses(a, b), c, e).passed());
        ++done;
    }
}

TEST_CASE("zero_length_check: residue field, unit presentation, inapplicable case") {
    auto d = charp(2);
    auto rs = zero_length_check(CutModule::residue_field(d));
    CHECK(all_passed(rs));

    auto rp = zero_length_check(pres(d, {{"1"}}));
    CHECK(all_passed(rp));

    auto rn = zero_length_check(CutModule(d, {CutIdeal{Exponent(1, 8), false}}));
    REQUIRE(rn.size() == 1);
    CHECK(rn[0].verdict == Verdict::not_applicable);
}

TEST_CASE("finiteness_check over seeded cut corpora") {
    auto d = charp(2);
    SplitMix64 rng(217);
    CorpusParams par;
    for (int i = 0; i < 60; ++i) {
        CutModule m(d, {CutIdeal{Exponent(1 + (long)rng.below(2), 2), rng.below(2) == 0},
                        CutIdeal{Exponent((long)rng.below(3), 2), true}});
        RingElement b = random_element(rng, d, par, false);
        CHECK(finiteness_check(m, b).passed());
    }
    CHECK(finiteness_check(CutModule::residue_field(d), RingElement::one(d)).passed());
}

TEST_CASE("length is additive over direct sums and invariant under presentation moves") {
    auto d = charp(2);
    CutModule a(d, {CutIdeal{Exponent(1, 2), false}});
    CutModule b(d, {CutIdeal{Exponent(1, 4), true}});
    CHECK(lambda_cut(direct_sum(a, b)).value() == lambda_cut(a).value() + lambda_cut(b).value());

    // row operation: add t^(1/4) * row1 to row0; the module is unchanged
    auto p0 = pres(d, {{"1*t^(1)", "1*t^(1/2)"}, {"0", "1*t^(1/2)"}});
    ElementMatrix m2 = p0.matrix();
    for (int j = 0; j < 2; ++j)
        m2.at(0, j) = add(m2.at(0, j), mul(el(d, "1*t^(1/4)"), m2.at(1, j)));
    CHECK(lambda_fp(p0) == lambda_fp(PresentationMatrix(m2)));
}

TEST_CASE("lambda(scalar_image(b, M)) clamps at zero per summand") {
    auto d = charp(2);
    CutModule m(d, {CutIdeal{Exponent(1, 2), false}, CutIdeal{Exponent(2), false}});
    RingElement b = el(d, "1*t^(1)");
    CHECK(lambda_cut(scalar_image(b, m)).value() == q(1));  // max(1/2-1,0) + max(2-1,0)
}
