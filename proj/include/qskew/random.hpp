#pragma once

#include <cstdint>
#include <random>

#include "qskew/linalg.hpp"

namespace qskew {

// Seeded generator with a platform-independent integer mapping, so the same
// seed yields the same rational data everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    // Uniform integer in [lo, hi].
    long integer(long lo, long hi);
    // p/q with |p| <= range and 1 <= q <= denominators.
    Q rational(long range = 5, long denominators = 3);
    // Nonzero variant of rational().
    Q nonzero_rational(long range = 5, long denominators = 3);
    double real(double lo, double hi);
    Vec vector(int dim, long range = 5, long denominators = 3);
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace qskew
