#include <doctest.h>

#include "qskew/symmetric_spaces.hpp"
#include "qskew/torsion_lab.hpp"
#include "support.hpp"

using namespace qskew;

namespace {

struct Case {
    const char* family;
    int k, l, m;
    int lambda;
};

const Case kCases[] = {{"so_star:2", 15, 7, 8, -1}, {"so_star:3", 28, 16, 12, -1}, {"su:1,0", 8, 4, 4, -1},
                       {"su:2,0", 15, 7, 8, -1},    {"su:1,1", 15, 7, 8, -1},      {"sl_quat:1", 15, 7, 8, 1},
                       {"sl_quat:2", 35, 19, 16, 1}};

// [a, b] lies in span(basis), by an exact solve over vectorized matrices.
bool bracket_in(const Mat& a, const Mat& b, const std::vector<Mat>& basis)
{
    std::vector<SVec> vs;
    int N = a.rows();
    for (const auto& x : basis) vs.push_back(vectorize(x));
    return span_contains(vs, {vectorize(commutator(a, b))}, N * N);
}

} // namespace

TEST_SUITE("symmetric_spaces")
{
    TEST_CASE("pairs, Cartan relations and invariant structures")
    {
        for (const auto& c : kCases) {
            CAPTURE(c.family);
            auto pair = build_pair(parse_family(c.family));
            CHECK(static_cast<int>(pair.k.size()) == c.k);
            CHECK(static_cast<int>(pair.l.size()) == c.l);
            CHECK(static_cast<int>(pair.m.size()) == c.m);
            CHECK(pair.cartan_ok);
            CHECK(pair.killing_nondegenerate_on_m);
            auto cert = invariant_structure(pair);
            CHECK(cert.normalized);
            CHECK(cert.lambda == c.lambda);
            CHECK(cert.triple_ok);
            CHECK(cert.omega_invariant);
            CHECK(cert.q_invariant);
            CHECK(cert.scalar);
            CHECK(cert.isotropy_in_stabilizer);
            CHECK(cert.passed());
            CHECK(cert.omega == -cert.omega.transpose());
            CHECK(sgn(det(cert.omega)) != 0);
            auto control = invariant_structure(pair, true);
            CHECK_FALSE(control.passed());
        }
    }

    TEST_CASE("Cartan relations re-checked by direct brackets for so*(6)")
    {
        auto pair = build_pair(parse_family("so_star:2"));
        for (const auto& a : pair.m)
            for (const auto& b : pair.m) CHECK(bracket_in(a, b, pair.l));
        for (const auto& a : pair.l)
            for (const auto& b : pair.m) CHECK(bracket_in(a, b, pair.m));
        for (const auto& a : pair.l) CHECK(commutator(a, pair.U).is_zero());
    }

    TEST_CASE("the canonical connection is torsion-free at the origin")
    {
        // T(X, Y) = -[X, Y]_m vanishes because [m, m] lies in l.
        auto pair = build_pair(parse_family("so_star:2"));
        REQUIRE(pair.cartan_ok);
        int n = pair.quaternionic_dim();
        auto cache = type_bases(n, TorsionGroup::SoStarSp1);
        CHECK(classify(ModelTensor::torsion(n), *cache).label == "torsion-free");
    }

    TEST_CASE("family parsing")
    {
        CHECK(parse_family("su:2,0").p == 2);
        CHECK(parse_family("sl_quat:2").n == 2);
        CHECK(parse_family("so_star").n == 2);
        CHECK_THROWS_AS(parse_family("so_star:0"), ValidationError);
        CHECK_THROWS_AS(parse_family("g2:1"), ValidationError);
        CHECK_THROWS_AS(parse_family("su:x,1"), ValidationError);
    }
}
