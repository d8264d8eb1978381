#include <doctest.h>

#include "qskew/random.hpp"
#include "support.hpp"

using namespace qskew;

namespace {

Q eval2(const ModelTensor& g, const Vec& x, const Vec& y)
{
    Mat M = g.to_matrix();
    return dot(x, M * y);
}

Q eval4(const ModelTensor& t, const Vec& x, const Vec& y, const Vec& z, const Vec& w)
{
    int N = t.dim();
    Q s = 0;
    for (int a = 0; a < N; ++a) {
        if (sgn(x[a]) == 0) continue;
        for (int b = 0; b < N; ++b) {
            if (sgn(y[b]) == 0) continue;
            for (int c = 0; c < N; ++c) {
                if (sgn(z[c]) == 0) continue;
                for (int d = 0; d < N; ++d)
                    if (sgn(w[d]) != 0) s += t.at({a, b, c, d}) * x[a] * y[b] * z[c] * w[d];
            }
        }
    }
    return s;
}

Vec unit(int N, int i)
{
    Vec v(N);
    v[i] = 1;
    return v;
}

} // namespace

TEST_SUITE("model_space")
{
    TEST_CASE("standard triple is left multiplication by i, j, k")
    {
        for (int n = 1; n <= 4; ++n) {
            auto h = standard_triple(n);
            for (int a = 0; a < 3; ++a) CHECK(h.J[a] == test::left_multiplication(n, a));
            CHECK(satisfies_quaternion_relations(h));
            CHECK(h.J[0] * h.J[1] == h.J[2]);
            Mat minus = -Mat::identity(4 * n);
            for (int a = 0; a < 3; ++a) CHECK(h.J[a] * h.J[a] == minus);
            CHECK(h.J[0] * h.J[1] * h.J[2] == minus);
        }
        // J1 e1 = e2 at n = 1.
        auto h1 = standard_triple(1);
        CHECK(h1.J[0](1, 0) == 1);
        // J1(e_c) = e_{c+n}, J2(e_c) = f_c, J3(e_c) = f_{c+n} at n = 2.
        auto h2 = standard_triple(2);
        for (int c = 0; c < 2; ++c) {
            CHECK(h2.J[0](c + 2, c) == 1);
            CHECK(h2.J[1](4 + c, c) == 1);
            CHECK(h2.J[2](6 + c, c) == 1);
        }
        auto bad = h2;
        bad.J[2] = -bad.J[2];
        CHECK_FALSE(satisfies_quaternion_relations(bad));
    }

    TEST_CASE("standard omega entries")
    {
        auto w = standard_omega(2);
        CHECK(w.at({0, 4}) == 1);   // omega(e1, f1)
        CHECK(w.at({0, 1}) == 0);   // omega(e1, e2)
        CHECK(w.at({4, 0}) == -1);  // omega(f1, e1)
        CHECK(w.is_antisymmetric());
        CHECK(is_scalar_2form(w, standard_triple(2)).scalar);
    }

    TEST_CASE("metrics g_a(X, Y) = omega(X, J_a Y)")
    {
        for (int n = 1; n <= 3; ++n) {
            auto h = standard_triple(n);
            auto w = standard_omega(n);
            auto g = metrics_from(w, h);
            Mat W = w.to_matrix();
            for (int a = 0; a < 3; ++a) {
                CHECK(g[a].to_matrix() == W * h.J[a]);
                CHECK(g[a].is_symmetric());
                auto s = signature(g[a].to_matrix());
                CHECK(s.pos == 2 * n);
                CHECK(s.neg == 2 * n);
                // J_a-invariance, and failure of J_b-invariance for b != a.
                Mat G = g[a].to_matrix();
                CHECK(h.J[a].transpose() * G * h.J[a] == G);
                for (int b = 0; b < 3; ++b)
                    if (b != a) CHECK(h.J[b].transpose() * G * h.J[b] != G);
            }
        }
        auto g1 = metrics_from(standard_omega(1), standard_triple(1));
        CHECK(g1[1].at({0, 0}) == 1);
        CHECK(g1[0].at({0, 0}) == 0);
    }

    TEST_CASE("metric for a combination at n = 1 has the displayed first row")
    {
        auto w = standard_omega(1);
        auto h = standard_triple(1);
        Rng rng(test::seed(10));
        for (int t = 0; t < 10; ++t) {
            std::array<Q, 3> mu = {rng.rational(), rng.rational(), rng.rational()};
            auto G = metric_for_J(w, h, mu).to_matrix();
            CHECK(G(0, 0) == mu[1]);
            CHECK(G(0, 1) == mu[2]);
            CHECK(G(0, 2) == 0);
            CHECK(G(0, 3) == -mu[0]);
        }
        CHECK(metric_for_J(w, h, {Q(0), Q(1), Q(0)}) == metrics_from(w, h)[1]);
        CHECK_THROWS(metric_for_J(w, h, {Q(0), Q(0), Q(0)}));
    }

    TEST_CASE("signature (2n, 2n) for random combinations")
    {
        for (int n = 2; n <= 3; ++n) {
            auto w = standard_omega(n);
            auto h = standard_triple(n);
            Rng rng(test::seed(11 + n));
            for (int t = 0; t < 25; ++t) {
                std::array<Q, 3> mu{};
                do {
                    mu = {rng.rational(), rng.rational(), rng.rational()};
                } while (sgn(mu[0]) == 0 && sgn(mu[1]) == 0 && sgn(mu[2]) == 0);
                auto s = signature(metric_for_J(w, h, mu).to_matrix());
                CHECK(s.pos == 2 * n);
                CHECK(s.neg == 2 * n);
                CHECK(s.zero == 0);
            }
            auto s = signature(metric_for_J(w, h, {Q(3), Q(4), Q(0)}).to_matrix());
            CHECK(s.pos == 2 * n);
            CHECK(s.neg == 2 * n);
        }
    }

    TEST_CASE("skew-Hermitian form")
    {
        int n = 2, N = 8;
        auto hf = skew_hermitian_form(standard_omega(n), standard_triple(n));
        CHECK(hf(unit(N, 0), unit(N, 4)).re == 1);
        Rng rng(test::seed(12));
        for (int t = 0; t < 20; ++t) {
            Vec x = rng.vector(N), y = rng.vector(N);
            CHECK(hf(x, x).re == 0);
            auto a = hf(x, y), b = hf(y, x);
            CHECK(a.re == -b.re);
            for (int c = 0; c < 3; ++c) CHECK(a.im[c] == b.im[c]);
        }
        auto h1 = skew_hermitian_form(standard_omega(1), standard_triple(1));
        auto v = h1(unit(4, 0), unit(4, 0));
        CHECK(v.im[1] == 1);
        CHECK(v.im[0] == 0);
        CHECK(v.im[2] == 0);
    }

    TEST_CASE("fundamental 4-tensor")
    {
        auto phi1 = fundamental_4tensor(standard_omega(1), standard_triple(1));
        CHECK(phi1.at({0, 0, 0, 0}) == 1);

        int n = 2, N = 8;
        auto w = standard_omega(n);
        auto h = standard_triple(n);
        auto phi = fundamental_4tensor(w, h);
        CHECK(phi.is_symmetric());
        auto g = metrics_from(w, h);
        Rng rng(test::seed(13));
        for (int t = 0; t < 10; ++t) {
            Vec X = rng.vector(N), Y = rng.vector(N), Z = rng.vector(N), W = rng.vector(N);
            Q rhs = 0;
            for (int a = 0; a < 3; ++a)
                rhs += eval2(g[a], X, Y) * eval2(g[a], Z, W) + eval2(g[a], X, Z) * eval2(g[a], Y, W) +
                       eval2(g[a], X, W) * eval2(g[a], Y, Z);
            CHECK(eval4(phi, X, Y, Z, W) == rhs / 3);
        }
    }

    TEST_CASE("scalar 2-form detection")
    {
        auto h = standard_triple(2);
        auto w = standard_omega(2);
        auto bad = w;
        bad.at({0, 1}) += 1;
        bad.at({1, 0}) -= 1;
        auto r = is_scalar_2form(bad, h);
        CHECK_FALSE(r.scalar);
        CHECK(r.condition == 5);
        CHECK(r.x >= 0);
        CHECK(r.y >= 0);
        auto g2 = metrics_from(w, h)[1];
        CHECK_THROWS_AS(is_scalar_2form(g2, h), ValidationError);
        ModelTensor zero(2, {Slot::Co, Slot::Co});
        auto z = is_scalar_2form(zero, h);
        CHECK_FALSE(z.scalar);
        CHECK(z.condition == 0);
    }

    TEST_CASE("symplectic transpose")
    {
        int n = 2;
        Mat W = test::omega0(n);
        auto h = standard_triple(n);
        for (int a = 0; a < 3; ++a) CHECK(symplectic_transpose(h.J[a], W) == h.J[a]);
        CHECK(symplectic_transpose(W, W) == W);
        Rng rng(test::seed(14));
        Mat A(8, 8), B(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                A(i, j) = rng.rational();
                B(i, j) = rng.rational();
            }
        CHECK(symplectic_transpose(A + B, W) == symplectic_transpose(A, W) + symplectic_transpose(B, W));
        Mat At = symplectic_transpose(A, W);
        // omega(A^T x, y) = -omega(x, A y) for all basis pairs.
        CHECK((At.transpose() * W) == -(W * A));
    }

    TEST_CASE("lower and raise are inverse")
    {
        int n = 2;
        Mat W = test::omega0(n);
        Rng rng(test::seed(15));
        ModelTensor phi = ModelTensor::torsion(n);
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                for (int k = 0; k < 8; ++k) {
                    Q x = rng.rational();
                    phi.at({i, j, k}) = x;
                    phi.at({j, i, k}) = -x;
                }
        CHECK(raise(lower(phi, W), W) == phi);
        CHECK(lower(ModelTensor::torsion(n), W).is_zero());
        // lower(delta(e1* (x) J1)) at (e1, e2, f2) = omega(J1 e2, f2) = 0.
        auto h = standard_triple(n);
        EndForm alpha(8, Mat(8, 8));
        alpha[0] = h.J[0];
        auto l = lower(spencer_delta(alpha), W);
        CHECK(l.at({0, 1, 5}) == 0);
    }

    TEST_CASE("change of basis transforms covariant and contravariant slots")
    {
        int n = 1, N = 4;
        Rng rng(test::seed(16));
        Mat G(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) G(i, j) = rng.rational(3, 2);
        REQUIRE(inverse(G));
        auto w = standard_omega(n);
        CHECK(change_basis(w, G).to_matrix() == G.transpose() * w.to_matrix() * G);
        auto J = ModelTensor::from_matrix(n, standard_triple(n).J[0], Slot::Contra, Slot::Co);
        CHECK(change_basis(J, G).to_matrix() == *inverse(G) * J.to_matrix() * G);
    }
}
