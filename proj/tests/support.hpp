#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "qskew/linalg.hpp"
#include "qskew/model_space.hpp"
#include "qskew/torsion.hpp"

namespace qskew::test {

// Seed for randomized properties: QSKEW_TEST_SEED when set, else a fixed value.
inline std::uint64_t seed(std::uint64_t salt = 0)
{
    std::uint64_t s = 20261019;
    if (const char* env = std::getenv("QSKEW_TEST_SEED")) s = std::strtoull(env, nullptr, 10);
    return s + salt;
}

inline Mat omega0(int n) { return standard_omega(n).to_matrix(); }

inline std::string samples_dir() { return QSKEW_SAMPLES_DIR; }

// Brute-force matrix of J_a written from its action on quaternionic
// coordinates: left multiplication by i, j, k on each coordinate.
inline Mat left_multiplication(int n, int a)
{
    // Products of the basis units (1, i, j, k): unit[a] * basis[s] = sign * basis[t].
    static const int target[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[3][4] = {{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    int N = 4 * n;
    Mat J(N, N);
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) J(real_index(n, c, target[a][s]), real_index(n, c, s)) = sign[a][s];
    return J;
}

} // namespace qskew::test
