#include "qskew/samples.hpp"

namespace qskew {

ModelTensor random_torsion(int n, Rng& rng)
{
    SVec v;
    for (int i = 0; i < torsion_dim(n); ++i) {
        Q x = rng.rational();
        if (sgn(x) != 0) v.emplace_back(i, x);
    }
    return unpack(n, v);
}

EndForm random_end_form(const SubalgebraBasis& g, Rng& rng)
{
    int N = 4 * g.n;
    EndForm a(static_cast<std::size_t>(N), Mat(N, N));
    for (int l = 0; l < N; ++l)
        for (const auto& A : g.generators) a[l] += A * rng.rational();
    return a;
}

ModelTensor random_raised_3form(int n, const Mat& omega, Rng& rng)
{
    int N = 4 * n;
    ModelTensor theta(n, {Slot::Co, Slot::Co, Slot::Co});
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = b + 1; c < N; ++c) {
                Q x = rng.rational();
                theta.at({a, b, c}) = x;
                theta.at({b, c, a}) = x;
                theta.at({c, a, b}) = x;
                theta.at({b, a, c}) = -x;
                theta.at({a, c, b}) = -x;
                theta.at({c, b, a}) = -x;
            }
    return raise(theta, omega);
}

std::vector<SVec> admissible_qs_torsion_basis(int n)
{
    auto h = standard_triple(n);
    int D = torsion_dim(n), N = 4 * n;
    std::vector<SVec> image;
    for (int c = 0; c < D; ++c) image.push_back(pack(proj_H(unpack(n, SVec{{c, Q(1)}}), h)));
    image = span_basis(image, D);
    std::vector<SVec> cond;
    for (const auto& v : image) {
        auto M = trace4_family(unpack(n, v), h);
        SVec c;
        int off = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                for (int k = 0; k < N; ++k) {
                    Q x = M[a][b][k] + M[b][a][k];
                    if (sgn(x) != 0) c.emplace_back(off + k, x);
                }
                off += N;
            }
        cond.push_back(c);
    }
    return kernel_within(image, cond, 6 * N);
}

ModelTensor random_from_basis(int n, const std::vector<SVec>& basis, Rng& rng)
{
    Vec c(basis.size());
    for (auto& x : c) x = rng.rational();
    return unpack(n, combine(basis, c));
}

ModelTensor random_hermitian_nabla(int n, const Mat& omega, Rng& rng)
{
    auto s2e = build_subalgebra("s2e", n);
    int N = 4 * n;
    ModelTensor nw(n, {Slot::Co, Slot::Co, Slot::Co});
    for (int x = 0; x < N; ++x) {
        Mat L(N, N);
        for (const auto& g : s2e.generators) L += g * rng.rational();
        Mat B = L.transpose() * omega;
        for (int y = 0; y < N; ++y)
            for (int z = 0; z < N; ++z) nw.at({x, y, z}) = B(y, z);
    }
    return nw;
}

QuatMatrix random_skew_hermitian(int size, Field f, Rng& rng)
{
    auto scalar = [&]() {
        return f == Field::Rational ? Scalar(rng.rational()) : Scalar::real(rng.real(-1.0, 1.0));
    };
    for (;;) {
        QuatMatrix h(size, size, f);
        for (int r = 0; r < size; ++r) {
            h(r, r) = Quaternion(Scalar::zero(f), scalar(), scalar(), scalar());
            for (int c = r + 1; c < size; ++c) {
                h(r, c) = Quaternion(scalar(), scalar(), scalar(), scalar());
                h(c, r) = -h(r, c).conj();
            }
        }
        // Non-degeneracy of the realified matrix.
        Mat R(4 * size, 4 * size);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                const auto& q = h(r, c);
                std::array<Q, 4> a = {rational_from_double(q.w.to_double()), rational_from_double(q.x.to_double()),
                                      rational_from_double(q.y.to_double()), rational_from_double(q.z.to_double())};
                if (f == Field::Rational) a = {q.w.rational(), q.x.rational(), q.y.rational(), q.z.rational()};
                // Left multiplication by q on (1, i, j, k).
                const Q &w = a[0], &x = a[1], &y = a[2], &z = a[3];
                Q L[4][4] = {{w, -x, -y, -z}, {x, w, -z, y}, {y, z, w, -x}, {z, -y, x, w}};
                for (int s = 0; s < 4; ++s)
                    for (int t = 0; t < 4; ++t) R(4 * r + s, 4 * c + t) = L[s][t];
            }
        if (sgn(det(R)) != 0) return h;
    }
}

HypercomplexTriple random_conjugate_triple(const HypercomplexTriple& h, Rng& rng, Mat* G_out)
{
    int N = 4 * h.n;
    for (;;) {
        Mat G(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) G(i, j) = rng.rational(3, 2);
        auto inv = inverse(G);
        if (!inv) continue;
        HypercomplexTriple out;
        out.n = h.n;
        for (int a = 0; a < 3; ++a) out.J[a] = G * h.J[a] * *inv;
        if (G_out) *G_out = G;
        return out;
    }
}

} // namespace qskew
