#include <doctest.h>

#include "qskew/quaternion.hpp"
#include "qskew/random.hpp"
#include "support.hpp"

using namespace qskew;

TEST_SUITE("linalg")
{
    TEST_CASE("rational parsing and printing")
    {
        CHECK(parse_rational("-6/4") == Q(-3, 2));
        CHECK(to_string(Q(-3, 2)) == "-3/2");
        CHECK(parse_rational("7") == Q(7));
        CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
        CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
        CHECK(rational_from_double(0.375) == Q(3, 8));
    }

    TEST_CASE("scalar modes do not mix")
    {
        Scalar a(Q(1, 3));
        Scalar b = Scalar::real(0.5);
        CHECK_THROWS_AS(a + b, ModeMismatch);
        CHECK_THROWS_AS(a * b, ModeMismatch);
        CHECK((a + Scalar(Q(2, 3))) == Scalar(1));
        CHECK_THROWS_AS(a.sqrt(), ModeMismatch);
        CHECK(Scalar::real(4.0).sqrt().to_double() == 2.0);
    }

    TEST_CASE("quaternion units")
    {
        auto f = Field::Rational;
        auto i = Quaternion::unit_i(f), j = Quaternion::unit_j(f), k = Quaternion::unit_k(f);
        auto m1 = -Quaternion::one(f);
        CHECK(i * i == m1);
        CHECK(j * j == m1);
        CHECK(k * k == m1);
        CHECK(i * j * k == m1);
        CHECK(i * j == k);
        CHECK(j * i == -k);
    }

    TEST_CASE("quaternion conjugation reverses products")
    {
        Rng rng(test::seed(1));
        for (int t = 0; t < 50; ++t) {
            Quaternion p(rng.rational(), rng.rational(), rng.rational(), rng.rational());
            Quaternion q(rng.rational(), rng.rational(), rng.rational(), rng.rational());
            CHECK((p * q).conj() == q.conj() * p.conj());
            CHECK((p * q).norm2() == p.norm2() * q.norm2());
            if (!p.is_zero()) CHECK(p * p.inverse() == Quaternion::one(Field::Rational));
        }
    }

    TEST_CASE("determinant is multiplicative and matches the Hilbert matrix values")
    {
        // det of the n x n Hilbert matrix: 1, 1/12, 1/2160, 1/6048000.
        const Q expected[] = {Q(1), Q(1, 12), Q(1, 2160), Q(1, 6048000)};
        for (int n = 1; n <= 4; ++n) {
            Mat H(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) H(i, j) = Q(1, i + j + 1);
            CHECK(det(H) == expected[n - 1]);
        }
        Rng rng(test::seed(2));
        for (int t = 0; t < 20; ++t) {
            Mat A(5, 5), B(5, 5);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    A(i, j) = rng.rational();
                    B(i, j) = rng.rational();
                }
            CHECK(det(A * B) == det(A) * det(B));
            if (auto inv = inverse(A)) CHECK(A * *inv == Mat::identity(5));
        }
    }

    TEST_CASE("rank, nullspace and the sparse echelon agree")
    {
        Rng rng(test::seed(3));
        for (int t = 0; t < 20; ++t) {
            // A = U V with U 7x3, V 3x6 has rank at most 3.
            Mat U(7, 3), V(3, 6);
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 3; ++j) U(i, j) = rng.rational();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 6; ++j) V(i, j) = rng.rational();
            Mat A = U * V;
            int r = rank(A);
            CHECK(r <= 3);
            auto ns = nullspace(A);
            CHECK(static_cast<int>(ns.size()) == 6 - r);
            for (const auto& v : ns) {
                Vec z = A * v;
                for (const auto& x : z) CHECK(sgn(x) == 0);
            }
            std::vector<SVec> rows;
            for (int i = 0; i < 7; ++i) {
                Vec row(6);
                for (int j = 0; j < 6; ++j) row[j] = A(i, j);
                rows.push_back(sparse(row));
            }
            CHECK(rank_of(rows, 6) == r);
        }
    }

    TEST_CASE("kernel_within, intersect and Decomposer")
    {
        int dim = 6;
        std::vector<SVec> u = {{{0, Q(1)}}, {{1, Q(1)}}, {{2, Q(1)}}};
        std::vector<SVec> w = {{{1, Q(1)}, {2, Q(1)}}, {{3, Q(1)}}};
        auto cap = intersect(u, w, dim);
        REQUIRE(cap.size() == 1);
        CHECK(span_contains(u, cap, dim));
        CHECK(span_contains(w, cap, dim));
        // f(x) = x_0 - x_1 on span(u): kernel spanned by e0 + e1 and e2.
        std::vector<SVec> images = {{{0, Q(1)}}, {{0, Q(-1)}}, {}};
        auto ker = kernel_within(u, images, 1);
        CHECK(ker.size() == 2);
        CHECK(span_contains(ker, {SVec{{0, Q(1)}, {1, Q(1)}}}, dim));
        Decomposer d({{{0, Q(2)}}, {{0, Q(1)}, {1, Q(1)}}}, dim);
        auto c = d.solve({{0, Q(3)}, {1, Q(1)}});
        REQUIRE(c);
        CHECK((*c)[0] == Q(1));
        CHECK((*c)[1] == Q(1));
        CHECK_FALSE(d.solve({{4, Q(1)}}));
    }

    TEST_CASE("Sylvester signature of diagonal and congruent forms")
    {
        Mat D(4, 4);
        D(0, 0) = 2;
        D(1, 1) = -3;
        D(2, 2) = Q(1, 5);
        auto s = signature(D);
        CHECK(s.pos == 2);
        CHECK(s.neg == 1);
        CHECK(s.zero == 1);
        Rng rng(test::seed(4));
        for (int t = 0; t < 20; ++t) {
            Mat P(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) P(i, j) = rng.rational();
            if (sgn(det(P)) == 0) continue;
            auto s2 = signature(P.transpose() * D * P);
            CHECK(s2.pos == 2);
            CHECK(s2.neg == 1);
            CHECK(s2.zero == 1);
        }
        // A zero diagonal needs a pivot from an off-diagonal pair.
        Mat H(2, 2);
        H(0, 1) = H(1, 0) = 1;
        auto sh = signature(H);
        CHECK(sh.pos == 1);
        CHECK(sh.neg == 1);
    }
}
