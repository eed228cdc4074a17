#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perfval/almost.hpp"
#include "perfval/length.hpp"
#include "perfval/rng.hpp"

using namespace perfval;

namespace {

RingDescriptor charp(long p, long n = 8) { return RingDescriptor{Mode::char_p, p, Exponent(n)}; }

RingElement el(const RingDescriptor& d, const std::string& s) { return parse_element(s, d); }

ElementMatrix mat(const RingDescriptor& d, std::vector<std::vector<std::string>> rows) {
    std::vector<std::vector<RingElement>> g;
    for (auto& r : rows) {
        std::vector<RingElement> row;
        for (auto& s : r) row.push_back(el(d, s));
        g.push_back(std::move(row));
    }
    return ElementMatrix(d, std::move(g));
}

/// Seeded full-row-rank problem with every divisor at varpi-exponent <= 1.
SectionProblem random_problem(SplitMix64& rng, const RingDescriptor& d, std::size_t r,
                              std::size_t c, unsigned k) {
    CorpusParams par;
    for (int tries = 0; tries < 2000; ++tries) {
        ElementMatrix cand(d, random_grid(rng, d, r, c, par));
        try {
            SectionProblem p{cand, std::nullopt, k};
            SectionSolution sol = section_solve(p);
            if (sol.delta_min <= Exponent(1)) return p;
        } catch (const Error&) {
            continue;
        }
    }
    throw std::runtime_error("problem corpus generation stalled");
}

/// Independent route to the minimal annihilator exponent of Coker(phi):
/// the valuation gap between the 0-th and 1-st Fitting ideals, by pure
/// minor expansion (no division, no diagonalization).
Exponent annihilator_by_fitting(const ElementMatrix& phi) {
    const RingDescriptor& d = phi.descriptor();
    auto f0 = fitting_minor_valuation(phi, phi.rows());
    auto f1 = fitting_minor_valuation(phi, phi.rows() - 1);
    REQUIRE(f0.has_value());
    REQUIRE(f1.has_value());
    Exponent gap = *f0 - *f1;
    return Exponent(mpq_class(gap.value() / d.varpi_valuation().value()));
}

}  // namespace

TEST_CASE("is_almost_zero") {
    auto d = charp(2);
    CHECK(is_almost_zero(CutModule::residue_field(d)));
    CHECK_FALSE(is_almost_zero(CutModule(d, {CutIdeal{Exponent(1, 4), false}})));
    CHECK(is_almost_zero(CutModule::zero(d)));
}

TEST_CASE("is_almost_zero iff scalars of arbitrarily small valuation kill M") {
    auto d = charp(2);
    std::vector<CutModule> corpus = {
        CutModule::residue_field(d),
        CutModule(d, {CutIdeal{Exponent(0), true}, CutIdeal{Exponent(0), true}}),
        CutModule(d, {CutIdeal{Exponent(1, 8), false}}),
        CutModule(d, {CutIdeal{Exponent(0), true}, CutIdeal{Exponent(1, 2), true}}),
        CutModule::zero(d),
    };
    for (const auto& m : corpus) {
        bool all_zero = true;
        for (unsigned j = 1; j <= 6; ++j) {
            RingElement eps = RingElement::monomial(d, Exponent::one_over_p_pow(2, j), 1);
            if (cmp(lambda_cut(scalar_image(eps, m)).value(), 0) != 0) all_zero = false;
        }
        CHECK(is_almost_zero(m) == all_zero);
    }
}

TEST_CASE("almost_fg_witness: open cut shrinks, closed cuts take themselves") {
    auto d = charp(2);
    // M = V/(open 1/2), n = 2: generator at valuation 1/4 suffices
    auto w = almost_fg_witness(CutModule(d, {CutIdeal{Exponent(1, 2), true}}), 2);
    REQUIRE(w.generator_valuations.size() == 1);
    CHECK(w.generator_valuations[0] == Exponent(1, 4));
    CHECK(w.valid());

    // finitely presented module: the witness is M itself
    auto wf = almost_fg_witness(
        CutModule(d, {CutIdeal{Exponent(1, 2), false}, CutIdeal{Exponent(2), false}}), 3);
    for (const auto& g : wf.generator_valuations) CHECK(g == Exponent(0));
    CHECK(wf.valid());

    CHECK(almost_fg_witness(CutModule::zero(d), 1).generator_valuations.empty());
}

TEST_CASE("nakayama_lift: lifts a valid witness, rejects a broken one") {
    auto d = charp(2);
    CutModule m(d, {CutIdeal{Exponent(3, 2), false}});
    auto wbar = almost_fg_witness(mod_varpi(m), 2);
    auto lifted = nakayama_lift(wbar, m, 2);
    CHECK(lifted.valid());
    CHECK(lifted.generator_valuations[0] == Exponent(0));

    CHECK(nakayama_lift(almost_fg_witness(mod_varpi(CutModule::zero(d)), 1),
                        CutModule::zero(d), 1)
              .generator_valuations.empty());

    FgWitness broken = wbar;
    broken.generator_valuations[0] = Exponent(3, 4);  // beyond varpi^(1/p^n)
    CHECK_THROWS_AS(nakayama_lift(broken, m, 2), WitnessInvalid);
}

TEST_CASE("section_solve: diagonal example") {
    auto d = charp(2);
    SectionProblem p{mat(d, {{"1*t^(1/2)", "0"}, {"0", "1*t^(1/4)"}}), std::nullopt, 1};
    auto sol = section_solve(p);
    CHECK(sol.delta_min == Exponent(1, 2));
    CHECK(all_passed(sol.reports));
    // g = diag(1, varpi^(1/4))
    CHECK(sol.g.at(0, 0) == RingElement::one(d));
    CHECK(sol.g.at(1, 1) == el(d, "1*t^(1/4)"));
}

TEST_CASE("section_solve: identity and the lemma bound with supplied alpha") {
    auto d = charp(2);
    SectionProblem p{ElementMatrix::identity(d, 3), std::nullopt, 2};
    auto sol = section_solve(p);
    CHECK(sol.delta_min == Exponent(0));
    CHECK(all_passed(sol.reports));

    // alpha = 1/2, any k: delta <= 1/p^k + 1 holds
    SectionProblem q{mat(d, {{"1*t^(1/2)", "0"}, {"0", "1*t^(1/4)"}}), Exponent(1, 2), 5};
    auto sq = section_solve(q);
    CHECK(all_passed(sq.reports));

    // a supplied alpha below the minimal annihilator is a failed verdict
    SectionProblem bad{mat(d, {{"1*t^(1/2)", "0"}, {"0", "1*t^(1/4)"}}), Exponent(1, 8), 1};
    auto sb = section_solve(bad);
    CHECK_FALSE(all_passed(sb.reports));
}

TEST_CASE("section_solve: degenerate shapes") {
    auto d = charp(2);
    ElementMatrix z(d, 2, 2);
    CHECK_THROWS_AS(section_solve(SectionProblem{z, std::nullopt, 1}), NotAlmostSurjective);
    ElementMatrix tall(d, 3, 2);
    CHECK_THROWS_AS(section_solve(SectionProblem{tall, std::nullopt, 1}), NotAlmostSurjective);
}

TEST_CASE("delta_min equals the Fitting-gap annihilator and obeys the bound, 200 seeds") {
    for (Mode mode : {Mode::char_p, Mode::mixed}) {
        RingDescriptor d{mode, 2, Exponent(8)};
        SplitMix64 rng(401);
        for (int i = 0; i < 100; ++i) {
            std::size_t r = 1 + rng.below(3);
            std::size_t c = r + rng.below(3);
            auto p = random_problem(rng, d, r, c, 1);
            auto sol = section_solve(p);
            CHECK(sol.delta_min == annihilator_by_fitting(p.phi));
            for (unsigned k = 1; k <= 5; ++k) {
                Exponent bound = Exponent::one_over_p_pow(2, k) + 2 * sol.alpha;
                CHECK(sol.delta_min <= bound);
            }
        }
    }
}

TEST_CASE("lift: worked diagonal to level 3 within the bound") {
    auto d = charp(2);
    SectionProblem p{mat(d, {{"1*t^(1/2)", "0"}, {"0", "1*t^(1/4)"}}), std::nullopt, 2};
    auto st = init_section_lift(p);
    CHECK(st.level == 1);
    CHECK(lift_composite_ok(st, p));
    for (int l = 1; l < 3; ++l) {
        st = lift_section_step(st, p);
        CHECK(lift_composite_ok(st, p));
    }
    CHECK(st.level == 3);
    // achieved defect within the guaranteed ceiling 4 alpha + 3/p^k
    CHECK(st.achieved_defect <= st.guaranteed_bound);
}

TEST_CASE("lift: invertible phi keeps defect zero at every level") {
    auto d = charp(2);
    SectionProblem p{ElementMatrix::identity(d, 2), std::nullopt, 1};
    auto st = init_section_lift(p);
    CHECK(st.achieved_defect == Exponent(0));
    for (int l = 1; l < 4; ++l) {
        st = lift_section_step(st, p);
        CHECK(st.achieved_defect == Exponent(0));
        CHECK(lift_composite_ok(st, p));
    }
}

TEST_CASE("lift: level beyond the precision cap is obstructed") {
    RingDescriptor d{Mode::char_p, 2, Exponent(3)};
    SectionProblem p{ElementMatrix::identity(d, 1), std::nullopt, 1};
    auto st = init_section_lift(p);
    st = lift_section_step(st, p);
    st = lift_section_step(st, p);
    CHECK(st.level == 3);
    CHECK_THROWS_AS(lift_section_step(st, p), LiftObstructed);
}

TEST_CASE("lift to level 4 agrees with the direct solve modulo varpi^4, 50 seeds") {
    SplitMix64 rng(419);
    for (int i = 0; i < 50; ++i) {
        Mode mode = (i % 2 == 0) ? Mode::char_p : Mode::mixed;
        RingDescriptor d{mode, 2, Exponent(8)};
        std::size_t r = 1 + rng.below(2);
        std::size_t c = r + rng.below(3);
        auto p = random_problem(rng, d, r, c, 2);
        auto sol = section_solve(p);

        auto st = init_section_lift(p);
        while (st.level < 4) st = lift_section_step(st, p);
        CHECK(lift_composite_ok(st, p));

        // composites agree mod varpi^4: phi s_4 = varpi^delta id = phi g
        Exponent cap = Exponent(4) * d.varpi_valuation();
        CHECK(matrix_equals_below(p.phi * st.s, p.phi * sol.g, min(cap, d.precision)));
    }
}
