#include <benchmark/benchmark.h>

#include "perfval/almost.hpp"
#include "perfval/length.hpp"
#include "perfval/purity.hpp"
#include "perfval/rng.hpp"

using namespace perfval;

namespace {

RingDescriptor charp{Mode::char_p, 2, Exponent(4)};
RingDescriptor mixedd{Mode::mixed, 3, Exponent(4)};

std::vector<RingElement> sample_elements(const RingDescriptor& d, unsigned n) {
    SplitMix64 rng(2718);
    CorpusParams par;
    par.max_terms = 6;
    par.denom_pow = 3;
    std::vector<RingElement> out;
    for (unsigned i = 0; i < n; ++i) out.push_back(random_element(rng, d, par, false));
    return out;
}

PresentationMatrix sample_presentation(const RingDescriptor& d, std::size_t n, std::size_t m) {
    SplitMix64 rng(314);
    CorpusParams par;
    while (true) {
        ElementMatrix cand(d, random_grid(rng, d, n, m, par));
        try {
            PresentationMatrix p(cand);
            fitting_f0(p);
            return p;
        } catch (const Error&) {
        }
    }
}

void BM_mixed_mul(benchmark::State& state) {
    auto xs = sample_elements(mixedd, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        RingElement r = mul(xs[i % 64], xs[(i + 17) % 64]);
        benchmark::DoNotOptimize(r);
        ++i;
    }
}
BENCHMARK(BM_mixed_mul);

void BM_divide(benchmark::State& state) {
    auto xs = sample_elements(charp, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        RingElement prod = mul(xs[i % 64], xs[(i + 5) % 64]);
        RingElement q = divide(prod, xs[(i + 5) % 64]);
        benchmark::DoNotOptimize(q);
        ++i;
    }
}
BENCHMARK(BM_divide);

void BM_smith_4x6(benchmark::State& state) {
    auto p = sample_presentation(charp, 4, 6);
    for (auto _ : state) {
        auto d = smith_reduce(p);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_smith_4x6);

void BM_fitting_4x6(benchmark::State& state) {
    auto p = sample_presentation(charp, 4, 6);
    for (auto _ : state) {
        auto f = fitting_f0(p);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_fitting_4x6);

void BM_purity_ledger(benchmark::State& state) {
    ExtensionSpec spec;
    spec.kind = ExtensionSpec::Kind::kummer;
    spec.desc = mixedd;
    spec.a = LaurentElement(parse_element("1*p^(0) + 1*p^(1)", mixedd));
    spec.degree = 2;
    auto order = build_extension(spec);
    RingElement b = RingElement::monomial(mixedd, Exponent(1, 9), 1);
    for (auto _ : state) {
        auto led = purity_ledger(order, b);
        benchmark::DoNotOptimize(led);
    }
}
BENCHMARK(BM_purity_ledger);

void BM_tower_depth3(benchmark::State& state) {
    ExtensionSpec spec;
    spec.kind = ExtensionSpec::Kind::artin_schreier;
    spec.desc = RingDescriptor{Mode::char_p, 2, Exponent(8)};
    spec.a = LaurentElement(RingElement::one(spec.desc), Exponent(1));
    spec.degree = 2;
    for (auto _ : state) {
        auto discs = tower_discriminants(spec, 3);
        benchmark::DoNotOptimize(discs);
    }
}
BENCHMARK(BM_tower_depth3);

}  // namespace

BENCHMARK_MAIN();
