#include "qskew/torsion.hpp"

namespace qskew {

namespace {

struct Entry {
    int row;
    Q value;
};

// Nonzero entries of each column of A.
std::vector<std::vector<Entry>> columns(const Mat& A)
{
    std::vector<std::vector<Entry>> c(static_cast<std::size_t>(A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (sgn(A(i, j)) != 0) c[j].push_back({i, A(i, j)});
    return c;
}

std::vector<std::vector<Entry>> rows(const Mat& A) { return columns(A.transpose()); }

void require_order3(const ModelTensor& t)
{
    if (t.order() != 3) throw ShapeMismatch("expected an order-3 tensor");
}

std::size_t idx3(int N, int i, int j, int k)
{
    return (static_cast<std::size_t>(i) * N + j) * N + k;
}

ModelTensor blank_like(const ModelTensor& t)
{
    ModelTensor r(t.n(), t.slots(), t.symmetry());
    return r;
}

} // namespace

int torsion_dim(int n)
{
    int N = 4 * n;
    return N * (N - 1) / 2 * N;
}

int torsion_index(int n, int i, int j, int k)
{
    int N = 4 * n;
    if (i >= j) throw ShapeMismatch("torsion_index needs i < j");
    int pair = i * N - i * (i + 1) / 2 + (j - i - 1);
    return pair * N + k;
}

SVec pack(const ModelTensor& phi)
{
    require_order3(phi);
    int n = phi.n(), N = phi.dim();
    SVec v;
    const auto& d = phi.data();
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const Q& x = d[idx3(N, i, j, k)];
                if (sgn(x) != 0) v.emplace_back(torsion_index(n, i, j, k), x);
            }
    return v;
}

ModelTensor unpack(int n, const SVec& v)
{
    ModelTensor t = ModelTensor::torsion(n);
    int N = 4 * n;
    // Inverse of the pair enumeration.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) pairs.emplace_back(i, j);
    auto& d = t.data();
    for (const auto& [f, x] : v) {
        if (f < 0 || f >= torsion_dim(n)) throw ShapeMismatch("packed torsion index out of range");
        auto [i, j] = pairs[f / N];
        int k = f % N;
        d[idx3(N, i, j, k)] = x;
        d[idx3(N, j, i, k)] = -x;
    }
    return t;
}

ModelTensor to_tensor(int n, const EndForm& alpha)
{
    int N = 4 * n;
    if (static_cast<int>(alpha.size()) != N) throw ShapeMismatch("end form needs 4n matrices");
    ModelTensor t(n, {Slot::Co, Slot::Co, Slot::Contra});
    auto& d = t.data();
    for (int l = 0; l < N; ++l) {
        if (alpha[l].rows() != N || alpha[l].cols() != N) throw ShapeMismatch("end form matrix size");
        for (int k = 0; k < N; ++k)
            for (int j = 0; j < N; ++j) d[idx3(N, l, j, k)] = alpha[l](k, j);
    }
    return t;
}

EndForm to_end_form(const ModelTensor& a)
{
    require_order3(a);
    int N = a.dim();
    EndForm alpha(static_cast<std::size_t>(N), Mat(N, N));
    const auto& d = a.data();
    for (int l = 0; l < N; ++l)
        for (int k = 0; k < N; ++k)
            for (int j = 0; j < N; ++j) alpha[l](k, j) = d[idx3(N, l, j, k)];
    return alpha;
}

ModelTensor spencer_delta(const EndForm& alpha)
{
    int N = static_cast<int>(alpha.size());
    if (N == 0 || N % 4 != 0) throw ShapeMismatch("end form needs 4n matrices");
    ModelTensor t = ModelTensor::torsion(N / 4);
    auto& d = t.data();
    for (int l = 0; l < N; ++l)
        for (int m = 0; m < N; ++m) {
            if (l == m) continue;
            for (int k = 0; k < N; ++k) {
                Q x = alpha[l](k, m) - alpha[m](k, l);
                if (sgn(x) != 0) d[idx3(N, l, m, k)] = x;
            }
        }
    return t;
}

SVec spencer_delta_packed(const EndForm& alpha)
{
    int N = static_cast<int>(alpha.size());
    if (N == 0 || N % 4 != 0) throw ShapeMismatch("end form needs 4n matrices");
    int n = N / 4;
    SVec v;
    for (int l = 0; l < N; ++l)
        for (int m = l + 1; m < N; ++m)
            for (int k = 0; k < N; ++k) {
                Q x = alpha[l](k, m) - alpha[m](k, l);
                if (sgn(x) != 0) v.emplace_back(torsion_index(n, l, m, k), x);
            }
    return v;
}

ModelTensor precompose_first(const ModelTensor& phi, const Mat& A)
{
    require_order3(phi);
    int N = phi.dim();
    auto cols = columns(A);
    ModelTensor r = blank_like(phi);
    auto& out = r.data();
    const auto& in = phi.data();
    for (int i = 0; i < N; ++i)
        for (const auto& [p, a] : cols[i])
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k) {
                    const Q& x = in[idx3(N, p, j, k)];
                    if (sgn(x) != 0) out[idx3(N, i, j, k)] += a * x;
                }
    r.set_symmetry(Symmetry::None);
    return r;
}

ModelTensor precompose_second(const ModelTensor& phi, const Mat& A)
{
    require_order3(phi);
    int N = phi.dim();
    auto cols = columns(A);
    ModelTensor r = blank_like(phi);
    auto& out = r.data();
    const auto& in = phi.data();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (const auto& [p, a] : cols[j])
                for (int k = 0; k < N; ++k) {
                    const Q& x = in[idx3(N, i, p, k)];
                    if (sgn(x) != 0) out[idx3(N, i, j, k)] += a * x;
                }
    r.set_symmetry(Symmetry::None);
    return r;
}

ModelTensor postcompose(const Mat& A, const ModelTensor& phi)
{
    require_order3(phi);
    int N = phi.dim();
    auto rws = rows(A);
    ModelTensor r = blank_like(phi);
    auto& out = r.data();
    const auto& in = phi.data();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (const auto& [p, a] : rws[k]) {
                    const Q& x = in[idx3(N, i, j, p)];
                    if (sgn(x) != 0) out[idx3(N, i, j, k)] += a * x;
                }
    return r;
}

ModelTensor proj_Ja(const ModelTensor& phi, const Mat& J)
{
    ModelTensor mixed = precompose_first(phi, J) + precompose_second(phi, J);
    ModelTensor r = phi + postcompose(J, mixed) - precompose_second(precompose_first(phi, J), J);
    r *= Q(1, 4);
    r.set_symmetry(phi.symmetry());
    return r;
}

ModelTensor proj_H(const ModelTensor& phi, const HypercomplexTriple& h)
{
    ModelTensor r = proj_Ja(phi, h.J[0]) + proj_Ja(phi, h.J[1]) + proj_Ja(phi, h.J[2]);
    r *= Q(2, 3);
    r.set_symmetry(phi.symmetry());
    return r;
}

ModelTensor alt_project(const ModelTensor& phi, const Mat& omega)
{
    ModelTensor theta = lower(phi, omega);
    int N = phi.dim();
    ModelTensor c(phi.n(), {Slot::Co, Slot::Co, Slot::Co});
    const auto& t = theta.data();
    auto& d = c.data();
    Q third(1, 3);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                Q s = t[idx3(N, i, j, l)] + t[idx3(N, j, l, i)] + t[idx3(N, l, i, j)];
                if (sgn(s) != 0) d[idx3(N, i, j, l)] = s * third;
            }
    ModelTensor r = raise(c, omega);
    r.set_symmetry(Symmetry::Antisymmetric);
    return r;
}

ModelTensor alt_operator(const ModelTensor& phi, const Mat& omega)
{
    require_order3(phi);
    int N = phi.dim();
    EndForm P = to_end_form(phi);
    EndForm PT(P.size());
    for (int i = 0; i < N; ++i) PT[i] = symplectic_transpose(P[i], omega);
    ModelTensor r = ModelTensor::torsion(phi.n());
    auto& d = r.data();
    Q third(1, 3);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            for (int k = 0; k < N; ++k) {
                Q s = P[x](k, y) - PT[x](k, y) + PT[y](k, x);
                if (sgn(s) != 0) d[idx3(N, x, y, k)] = s * third;
            }
    return r;
}

Vec trace1(const ModelTensor& a)
{
    require_order3(a);
    int N = a.dim();
    Vec t(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m)
        for (int i = 0; i < N; ++i) t[m] += a.data()[idx3(N, i, m, i)];
    return t;
}

Vec trace2(const ModelTensor& a)
{
    require_order3(a);
    int N = a.dim();
    Vec t(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m)
        for (int j = 0; j < N; ++j) t[m] += a.data()[idx3(N, m, j, j)];
    return t;
}

Vec trace3(const ModelTensor& a, const Mat& omega)
{
    require_order3(a);
    int N = a.dim();
    auto inv = inverse(omega);
    if (!inv) throw PreconditionError("omega is degenerate");
    // (A_i^T)_{im} = -sum_{p,q} Winv(i,p) (A_i)_{qp} W(q,m)
    auto wcols = rows(omega);   // wcols[q]: entries W(q, m)
    Vec t(static_cast<std::size_t>(N));
    const auto& d = a.data();
    for (int i = 0; i < N; ++i)
        for (int p = 0; p < N; ++p) {
            const Q& wi = (*inv)(i, p);
            if (sgn(wi) == 0) continue;
            for (int q = 0; q < N; ++q) {
                const Q& x = d[idx3(N, i, p, q)];
                if (sgn(x) == 0) continue;
                for (const auto& [m, w] : wcols[q]) t[m] -= wi * x * w;
            }
        }
    return t;
}

Vec trace4(const ModelTensor& a, const Mat& J)
{
    require_order3(a);
    int N = a.dim();
    const auto& d = a.data();
    // tl[l] = tr(J A_{e_l}) = sum_{j,k} J(j,k) a(l, j, k)
    Vec tl(static_cast<std::size_t>(N));
    for (int l = 0; l < N; ++l)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                if (sgn(J(j, k)) != 0) tl[l] += J(j, k) * d[idx3(N, l, j, k)];
    Vec t(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m)
        for (int l = 0; l < N; ++l)
            if (sgn(J(l, m)) != 0) t[m] += J(l, m) * tl[l];
    return t;
}

std::array<std::array<Vec, 3>, 3> trace4_family(const ModelTensor& a, const HypercomplexTriple& h)
{
    require_order3(a);
    int N = a.dim();
    const auto& d = a.data();
    std::array<std::array<Vec, 3>, 3> M;
    for (int x = 0; x < 3; ++x) {
        const Mat& Ja = h.J[x];
        Vec tl(static_cast<std::size_t>(N));
        for (int l = 0; l < N; ++l)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    if (sgn(Ja(j, k)) != 0) tl[l] += Ja(j, k) * d[idx3(N, l, j, k)];
        for (int y = 0; y < 3; ++y) {
            const Mat& Jb = h.J[y];
            Vec t(static_cast<std::size_t>(N));
            for (int m = 0; m < N; ++m)
                for (int l = 0; l < N; ++l)
                    if (sgn(Jb(l, m)) != 0) t[m] += Jb(l, m) * tl[l];
            M[x][y] = std::move(t);
        }
    }
    return M;
}

Traces traces(const ModelTensor& a, const Mat& omega, const HypercomplexTriple& h)
{
    Traces t;
    t.tr1 = trace1(a);
    t.tr2 = trace2(a);
    t.tr3 = trace3(a, omega);
    t.tr4 = trace4(a, h.J[0]);
    Vec other = trace4(a, combination(h, {Q(3, 5), Q(4, 5), Q(0)}));
    if (other != t.tr4)
        throw PreconditionError("Tr4 depends on the complex structure; input is outside the analyzed family");
    return t;
}

namespace {

Mat outer(const Vec& u, const Vec& v)
{
    Mat m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (sgn(u[i]) == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0) m(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
    }
    return m;
}

Vec row_of(const Mat& m, int i)
{
    Vec r(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    return r;
}

Mat pi11(const Mat& L, const HypercomplexTriple& h)
{
    Mat r = L;
    for (const auto& J : h.J) r -= J * L * J;
    return r * Q(1, 4);
}

EndForm sym_component(const Vec& Z, const Mat& omega, const HypercomplexTriple& h, int sign)
{
    int N = omega.rows();
    if (static_cast<int>(Z.size()) != N) throw ShapeMismatch("vector size does not match 4n");
    EndForm alpha(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        Mat M = pi11(outer(Z, row_of(omega, i)), h);
        Mat T = symplectic_transpose(M, omega);
        alpha[i] = sign > 0 ? (M + T) * Q(1, 2) : (M - T) * Q(1, 2);
    }
    return alpha;
}

} // namespace

EndForm component_A(const Vec& zeta, int n)
{
    int N = 4 * n;
    if (static_cast<int>(zeta.size()) != N) throw ShapeMismatch("covector size does not match 4n");
    EndForm alpha(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) alpha[i] = Mat::identity(N) * zeta[i];
    return alpha;
}

EndForm component_B(const Vec& Z, const Mat& omega, const HypercomplexTriple& h)
{
    return sym_component(Z, omega, h, -1);
}

EndForm component_C(const Vec& Z, const Mat& omega, const HypercomplexTriple& h)
{
    return sym_component(Z, omega, h, +1);
}

EndForm component_D(const Vec& zeta, const HypercomplexTriple& h)
{
    int N = 4 * h.n;
    if (static_cast<int>(zeta.size()) != N) throw ShapeMismatch("covector size does not match 4n");
    EndForm alpha(static_cast<std::size_t>(N), Mat(N, N));
    for (const auto& J : h.J)
        for (int i = 0; i < N; ++i) {
            // (zeta o J)(e_i) = sum_p zeta_p J(p, i)
            Q c = 0;
            for (int p = 0; p < N; ++p)
                if (sgn(J(p, i)) != 0) c += zeta[p] * J(p, i);
            if (sgn(c) != 0) alpha[i] += J * c;
        }
    return alpha;
}

EndForm operator+(const EndForm& a, const EndForm& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("end form sizes differ");
    EndForm r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

EndForm operator*(const Q& s, const EndForm& a)
{
    EndForm r = a;
    for (auto& m : r) m *= s;
    return r;
}

Vec flat_of(const Vec& Z, const Mat& omega) { return lower_vector(Z, omega); }

ModelTensor rho(const Mat& A, const ModelTensor& phi)
{
    ModelTensor r = postcompose(A, phi) - precompose_first(phi, A) - precompose_second(phi, A);
    r.set_symmetry(phi.symmetry());
    return r;
}

ModelTensor casimir(const ModelTensor& phi, const HypercomplexTriple& h)
{
    ModelTensor r = rho(h.J[0], rho(h.J[0], phi));
    r += rho(h.J[1], rho(h.J[1], phi));
    r += rho(h.J[2], rho(h.J[2], phi));
    r.set_symmetry(phi.symmetry());
    return r;
}

CasimirSplit casimir_split(const ModelTensor& phi, const HypercomplexTriple& h)
{
    ModelTensor c = casimir(phi, h);
    ModelTensor p3 = c + Q(3) * phi;
    ModelTensor p15 = c + Q(15) * phi;
    ModelTensor residual = casimir(p15, h) + Q(3) * p15;
    if (!residual.is_zero())
        throw PreconditionError("input has components outside the spin 1/2 and spin 3/2 eigenspaces");
    CasimirSplit s{Q(-1, 12) * p3, Q(1, 12) * p15};
    s.spin32.set_symmetry(phi.symmetry());
    s.spin12.set_symmetry(phi.symmetry());
    return s;
}

SparseMat torsion_operator(int n, const std::function<ModelTensor(const ModelTensor&)>& f)
{
    int d = torsion_dim(n);
    SparseMat m{d, d, {}};
    m.col.reserve(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) m.col.push_back(pack(f(unpack(n, SVec{{c, Q(1)}}))));
    return m;
}

SparseMat covector_operator(int n, int count, const std::function<std::vector<Vec>(const ModelTensor&)>& f)
{
    int d = torsion_dim(n), N = 4 * n;
    SparseMat m{count * N, d, {}};
    m.col.reserve(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        auto covs = f(unpack(n, SVec{{c, Q(1)}}));
        SVec col;
        for (int s = 0; s < count; ++s)
            for (int k = 0; k < N; ++k)
                if (sgn(covs[s][k]) != 0) col.emplace_back(s * N + k, covs[s][k]);
        m.col.push_back(std::move(col));
    }
    return m;
}

} // namespace qskew
