#pragma once

#include <cstdint>
#include <vector>

#include "perfval/ring.hpp"

namespace perfval {

/// Deterministic 64-bit mixing PRNG (splitmix64, Steele-Lea-Flood
/// constants).  Reproducibility across platforms is part of the external
/// contract: every seeded corpus below is a pure function of the seed and
/// the documented parameters.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform-ish draw in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

/// Default seed for every CLI command and checker; can be overridden per
/// invocation (flag or PERFVAL_SEED).
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Corpus generators.  Parameters:
///   denom_pow: exponent denominators are p^j with j <= denom_pow
///   max_num:   exponents are <= max_num (and always < the precision cap)
///   max_terms: support size is <= max_terms
struct CorpusParams {
    unsigned denom_pow = 2;
    long max_num = 1;
    unsigned max_terms = 3;
};

Exponent random_exponent(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par);

/// Random canonical element; may be zero when allow_zero.
RingElement random_element(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par,
                           bool allow_zero = true);

/// Random unit (valuation exactly zero).
RingElement random_unit(SplitMix64& rng, const RingDescriptor& desc, const CorpusParams& par);

/// Random n x m grid of elements (no torsion guarantee).
std::vector<std::vector<RingElement>> random_grid(SplitMix64& rng, const RingDescriptor& desc,
                                                  std::size_t n, std::size_t m,
                                                  const CorpusParams& par);

}  // namespace perfval
