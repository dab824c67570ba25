#pragma once
// Deterministic distribution generation for the verification harnesses: a
// seeded generator with platform-stable output, a structured battery of
// distribution shapes, and bounded-denominator random pmfs.

#include <cstdint>
#include <random>
#include <vector>

#include "finabel/distribution.hpp"

namespace finabel {

/// Seeded generator whose output is identical on every platform.
/// std::mt19937_64 has a fully specified word sequence; the bounded draw is
/// rejection-sampled by hand because std::uniform_int_distribution is
/// implementation-defined.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    /// Next raw 64-bit word of the engine.
    std::uint64_t next() { return engine_(); }

    /// Uniform draw from {0, ..., bound-1}; bound must be positive.
    std::int64_t below(std::int64_t bound);

  private:
    std::mt19937_64 engine_;
};

/// Deterministic battery of at least 20 pairwise distinct distributions on g:
/// every point mass, Haar on every subgroup, a shifted Haar and two
/// Haar-with-subgroup mixtures per proper subgroup, two-point masses, a
/// triangular-weight pmf, and a fixed-seed rational top-up. Throws
/// invalid_parameters for the trivial group, which carries only one
/// distribution.
std::vector<Distribution> distribution_battery(const Group& g);

/// Empirical measure of d uniform draws from g, where d itself is drawn
/// uniformly from {1, ..., max_den}: every mass is a count over d, so all
/// denominators are bounded by max_den.
Distribution random_distribution(DetRng& rng, const Group& g,
                                 std::int64_t max_den = 12);

}  // namespace finabel
