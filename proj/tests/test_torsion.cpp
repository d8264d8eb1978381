#include <doctest.h>

#include "qskew/random.hpp"
#include "qskew/samples.hpp"
#include "support.hpp"

using namespace qskew;

namespace {

std::vector<SVec> columns(const SparseMat& M) { return M.col; }

int op_rank(const SparseMat& M) { return rank_of(columns(M), M.rows); }

// The scalar c with v = c * zeta, checked on every coordinate.
Q proportionality(const Vec& v, const Vec& zeta)
{
    int k = -1;
    for (std::size_t i = 0; i < zeta.size(); ++i)
        if (sgn(zeta[i]) != 0) k = static_cast<int>(i);
    REQUIRE(k >= 0);
    Q c = v[k] / zeta[k];
    for (std::size_t i = 0; i < zeta.size(); ++i) CHECK(v[i] == c * zeta[i]);
    return c;
}

// Columns zeta_1, Z_2, Z_3, zeta_4 of the four components for the covector zeta.
std::array<EndForm, 4> components(const Vec& zeta, int n)
{
    auto h = standard_triple(n);
    Mat W = test::omega0(n);
    Vec Z = raise_covector(zeta, W);
    return {component_A(zeta, n), component_B(Z, W, h), component_C(Z, W, h), component_D(zeta, h)};
}

Mat trace_matrix(int n, Rng& rng, bool of_delta)
{
    auto h = standard_triple(n);
    Mat W = test::omega0(n);
    Vec zeta = rng.vector(4 * n);
    zeta[0] = 1;
    auto comps = components(zeta, n);
    Mat M(4, 4);
    for (int c = 0; c < 4; ++c) {
        auto t = of_delta ? spencer_delta(comps[c]) : to_tensor(n, comps[c]);
        auto tr = traces(t, W, h);
        M(0, c) = proportionality(tr.tr1, zeta);
        M(1, c) = proportionality(tr.tr2, zeta);
        M(2, c) = proportionality(tr.tr3, zeta);
        M(3, c) = proportionality(tr.tr4, zeta);
    }
    return M;
}

ModelTensor random_phi(int n, Rng& rng) { return random_torsion(n, rng); }

} // namespace

TEST_SUITE("torsion")
{
    TEST_CASE("packing round trip")
    {
        Rng rng(test::seed(30));
        auto phi = random_phi(2, rng);
        CHECK(unpack(2, pack(phi)) == phi);
        CHECK(torsion_dim(2) == 224);
        CHECK(torsion_dim(3) == 792);
    }

    TEST_CASE("pi_H is an idempotent of rank 96 that kills delta(V* (x) gl(n, H))")
    {
        int n = 2;
        auto h = standard_triple(n);
        Rng rng(test::seed(31));
        for (int t = 0; t < 10; ++t) {
            auto p = proj_H(random_phi(n, rng), h);
            CHECK(proj_H(p, h) == p);
        }
        auto P = torsion_operator(n, [&](const ModelTensor& phi) { return proj_H(phi, h); });
        CHECK(op_rank(P) == 96);
        CHECK(P.compose(P).col == P.col);
        auto gl = build_subalgebra("gl_quat", n);
        for (int t = 0; t < 10; ++t) CHECK(proj_H(spencer_delta(random_end_form(gl, rng)), h).is_zero());
    }

    TEST_CASE("pi_J agrees with its defining formula")
    {
        int n = 2, N = 8;
        auto h = standard_triple(n);
        Rng rng(test::seed(32));
        auto phi = random_phi(n, rng);
        const Mat& J = h.J[1];
        auto p = proj_Ja(phi, J);
        // Evaluate 1/4 (phi(X,Y) + J(phi(JX,Y) + phi(X,JY)) - phi(JX,JY)) on basis pairs.
        auto ev = [&](const Vec& X, const Vec& Y) {
            Vec out(N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    for (int k = 0; k < N; ++k) out[k] += X[i] * Y[j] * phi.at({i, j, k});
            return out;
        };
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y) {
                Vec X(N), Y(N);
                X[x] = 1;
                Y[y] = 1;
                Vec JX = J * X, JY = J * Y;
                Vec a = ev(X, Y), b = ev(JX, Y), c = ev(X, JY), d = ev(JX, JY);
                Vec bc(N);
                for (int k = 0; k < N; ++k) bc[k] = b[k] + c[k];
                Vec Jbc = J * bc;
                for (int k = 0; k < N; ++k) CHECK(p.at({x, y, k}) == (a[k] + Jbc[k] - d[k]) / 4);
            }
    }

    TEST_CASE("alternation projection")
    {
        int n = 2;
        Mat W = test::omega0(n);
        Rng rng(test::seed(33));
        auto theta = random_raised_3form(n, W, rng);
        CHECK(alt_project(theta, W) == theta);
        auto sp = build_subalgebra("sp_real", n);
        for (int t = 0; t < 5; ++t) CHECK(alt_project(spencer_delta(random_end_form(sp, rng)), W).is_zero());
        for (int t = 0; t < 5; ++t) {
            auto phi = random_phi(n, rng);
            auto a = alt_project(phi, W);
            CHECK(alt_project(a, W) == a);
            CHECK(alt_operator(phi, W) == a);
            auto l = lower(a, W);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    for (int k = 0; k < 8; ++k) CHECK(l.at({i, j, k}) == l.at({j, k, i}));
        }
    }

    TEST_CASE("traces of single components")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        Rng rng(test::seed(34));
        Vec zeta = rng.vector(8);
        zeta[0] = 1;
        auto t1 = traces(spencer_delta(component_A(zeta, n)), W, h);
        for (int k = 0; k < 8; ++k) CHECK(t1.tr1[k] == Q(1 - 4 * n) * zeta[k]);
        auto t4 = traces(spencer_delta(component_D(zeta, h)), W, h);
        for (int k = 0; k < 8; ++k) CHECK(t4.tr4[k] == Q(4 * n + 1) * zeta[k]);
    }

    TEST_CASE("trace matrix of the four components")
    {
        Rng rng(test::seed(35));
        for (int n = 2; n <= 4; ++n) {
            CAPTURE(n);
            Mat M = trace_matrix(n, rng, false);
            Q a = Q(2 * n + 1, 4), b = Q(2 * n - 1, 4);
            Mat E(4, 4);
            Q rows[4][4] = {{1, -a, b, -3}, {4 * n, -1, 0, 0}, {-1, a, b, -3}, {0, 0, 0, 4 * n}};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) E(i, j) = rows[i][j];
            CHECK(M == E);
            CHECK(det(M) == Q(2 * n * (n + 1) * (2 * n - 1) * (2 * n - 1)));
        }
        Mat M2 = trace_matrix(2, rng, false);
        CHECK(det(M2) == 108);
        CHECK(M2(0, 1) == Q(-5, 4));
        CHECK(M2(0, 2) == Q(3, 4));
    }

    TEST_CASE("transition matrix of delta of the four components")
    {
        Rng rng(test::seed(36));
        for (int n = 2; n <= 3; ++n) {
            Mat M = trace_matrix(n, rng, true);
            for (int c = 0; c < 4; ++c) CHECK(M(0, c) == -M(1, c));
            Q r1[4] = {Q(1 - 4 * n), -Q(2 * n - 3, 4), Q(2 * n - 1, 4), -3};
            Q r3[4] = {-2, Q(2 * n + 1, 2), Q(2 * n - 1, 2), -6};
            Q r4[4] = {1, -Q(2 * n + 1, 4), Q(2 * n - 1, 4), Q(4 * n + 1)};
            for (int c = 0; c < 4; ++c) {
                CHECK(M(0, c) == r1[c]);
                CHECK(M(2, c) == r3[c]);
                CHECK(M(3, c) == r4[c]);
            }
        }
    }

    TEST_CASE("kernel law of delta on the component family")
    {
        for (int n = 2; n <= 3; ++n) {
            CAPTURE(n);
            int N = 4 * n;
            std::vector<SVec> images;
            for (int slot = 0; slot < 4; ++slot)
                for (int l = 0; l < N; ++l) {
                    Vec zeta(N);
                    zeta[l] = 1;
                    images.push_back(spencer_delta_packed(components(zeta, n)[slot]));
                }
            CHECK(rank_of(images, torsion_dim(n)) == 3 * N);
            // zeta_1 = -zeta_4 = -1/4 Z_2^T = 1/4 Z_3^T
            Rng rng(test::seed(37 + n));
            auto h = standard_triple(n);
            Mat W = test::omega0(n);
            for (int t = 0; t < 5; ++t) {
                Vec z = rng.vector(N);
                Vec m4(N), p4(N), mz(N);
                for (int k = 0; k < N; ++k) {
                    m4[k] = -4 * z[k];
                    p4[k] = 4 * z[k];
                    mz[k] = -z[k];
                }
                auto K = component_A(z, n) + component_B(raise_covector(m4, W), W, h) +
                         component_C(raise_covector(p4, W), W, h) + component_D(mz, h);
                CHECK(spencer_delta(K).is_zero());
                CHECK(flat_of(raise_covector(m4, W), W) == m4);
            }
        }
    }

    TEST_CASE("Casimir spectrum on the torsion space")
    {
        int n = 2;
        auto h = standard_triple(n);
        auto C = torsion_operator(n, [&](const ModelTensor& phi) { return casimir(phi, h); });
        auto A = C.plus_identity(3), B = C.plus_identity(15);
        CHECK(A.compose(B).is_zero());
        CHECK(op_rank(A) == 96);    // dim Eig(-15)
        CHECK(op_rank(B) == 128);   // dim Eig(-3)
        Rng rng(test::seed(38));
        auto phi = random_phi(n, rng);
        auto split = casimir_split(phi, h);
        CHECK(split.spin32 + split.spin12 == phi);
        CHECK(casimir(split.spin32, h) == Q(-15) * split.spin32);
        CHECK(casimir(split.spin12, h) == Q(-3) * split.spin12);
        auto s2e = build_subalgebra("s2e", n);
        auto d = spencer_delta(random_end_form(s2e, rng));
        auto sd = casimir_split(d, h);
        CHECK(sd.spin32.is_zero());
        CHECK(sd.spin12 == d);
    }

    TEST_CASE("Tr1 is sp(1)-equivariant and vanishes on Eig(-15)")
    {
        int n = 2, N = 8;
        auto h = standard_triple(n);
        Rng rng(test::seed(39));
        auto phi = random_phi(n, rng);
        for (const auto& J : h.J) {
            Vec lhs = trace1(rho(J, phi));
            Vec t = trace1(phi);
            // Tr1(phi)(J X) as a covector: (J^T t).
            Vec rhs = J.transpose() * t;
            for (int k = 0; k < N; ++k) CHECK(lhs[k] == -rhs[k]);
        }
        auto split = casimir_split(phi, h);
        for (const auto& x : trace1(split.spin32)) CHECK(sgn(x) == 0);
    }

    TEST_CASE("Tr4 outside the analyzed family is rejected")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        Rng rng(test::seed(40));
        bool rejected = false;
        for (int t = 0; t < 5 && !rejected; ++t) {
            try {
                traces(random_phi(n, rng), W, h);
            } catch (const PreconditionError&) {
                rejected = true;
            }
        }
        CHECK(rejected);
    }
}
