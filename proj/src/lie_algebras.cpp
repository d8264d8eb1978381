#include "qskew/lie_algebras.hpp"

#include <algorithm>
#include <functional>

namespace qskew {

SVec vectorize(const Mat& m)
{
    SVec v;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) v.emplace_back(i * m.cols() + j, m(i, j));
    return v;
}

Mat unvectorize(const SVec& v, int size)
{
    Mat m(size, size);
    for (const auto& [f, x] : v) {
        if (f < 0 || f >= size * size) throw ShapeMismatch("vectorized index out of range");
        m(f / size, f % size) = x;
    }
    return m;
}

namespace {

std::vector<SVec> vectors_of(const std::vector<Mat>& ms)
{
    std::vector<SVec> v;
    v.reserve(ms.size());
    for (const auto& m : ms) v.push_back(vectorize(m));
    return v;
}

std::vector<Mat> matrices_of(const std::vector<SVec>& vs, int N)
{
    std::vector<Mat> m;
    m.reserve(vs.size());
    for (const auto& v : vs) m.push_back(unvectorize(v, N));
    return m;
}

std::vector<Mat> gl_units(int N)
{
    std::vector<Mat> u;
    u.reserve(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) u.push_back(Mat::unit(N, N, i, j));
    return u;
}

// Concatenation of vectorized matrices into one sparse vector.
SVec concat(const std::vector<Mat>& ms)
{
    SVec v;
    int offset = 0;
    for (const auto& m : ms) {
        for (const auto& [f, x] : vectorize(m)) v.emplace_back(offset + f, x);
        offset += m.rows() * m.cols();
    }
    return v;
}

// {A in span(domain) : conditions(A) = 0}; conditions returns a fixed number of N x N matrices.
std::vector<Mat> solve_in(const std::vector<Mat>& domain, int count, const std::function<std::vector<Mat>(const Mat&)>& cond)
{
    if (domain.empty()) return {};
    int N = domain.front().rows();
    std::vector<SVec> images;
    images.reserve(domain.size());
    for (const auto& A : domain) images.push_back(concat(cond(A)));
    auto ker = kernel_within(vectors_of(domain), images, count * N * N);
    // Canonical echelon form for a deterministic basis.
    return matrices_of(span_basis(ker, N * N), N);
}

SubalgebraBasis make(int n, const std::string& name, std::vector<Mat> gens)
{
    SubalgebraBasis g;
    g.n = n;
    g.name = name;
    g.generators = std::move(gens);
    return g;
}

} // namespace

const std::vector<std::string>& subalgebra_names()
{
    static const std::vector<std::string> names = {"so_star", "sp1", "so_star_sp1", "gl_quat", "sl_quat", "sp_real", "s2e"};
    return names;
}

int expected_dimension(const std::string& name, int n)
{
    if (name == "so_star") return n * (2 * n - 1);
    if (name == "sp1") return 3;
    if (name == "so_star_sp1") return n * (2 * n - 1) + 3;
    if (name == "gl_quat") return 4 * n * n;
    if (name == "sl_quat") return 4 * n * n - 1;
    if (name == "sp_real") return 2 * n * (4 * n + 1);
    if (name == "s2e") return n * (2 * n + 1);
    throw ValidationError("unknown algebra name: " + name);
}

SubalgebraBasis build_subalgebra(const std::string& name, int n)
{
    expected_dimension(name, 1);   // validates the name
    if (n < 1) throw ValidationError("n must be positive");
    int N = 4 * n;
    auto h = standard_triple(n);
    Mat W = standard_omega(n).to_matrix();
    auto units = gl_units(N);
    auto commutes = [&](const Mat& A) {
        return std::vector<Mat>{commutator(A, h.J[0]), commutator(A, h.J[1]), commutator(A, h.J[2])};
    };
    if (name == "sp1") return make(n, name, {h.J[0], h.J[1], h.J[2]});
    if (name == "sp_real")
        return make(n, name, solve_in(units, 1, [&](const Mat& A) { return std::vector<Mat>{W * A + A.transpose() * W}; }));
    if (name == "gl_quat") return make(n, name, solve_in(units, 3, commutes));
    auto gl_quat = solve_in(units, 3, commutes);
    if (name == "sl_quat")
        return make(n, name, solve_in(gl_quat, 1, [&](const Mat& A) {
                        Mat t(N, N);
                        t(0, 0) = A.trace();
                        return std::vector<Mat>{t};
                    }));
    if (name == "s2e")
        return make(n, name, solve_in(gl_quat, 1, [&](const Mat& A) { return std::vector<Mat>{W * A - A.transpose() * W}; }));
    auto so = solve_in(gl_quat, 1, [&](const Mat& A) { return std::vector<Mat>{W * A + A.transpose() * W}; });
    if (name == "so_star") return make(n, name, so);
    so.insert(so.end(), h.J.begin(), h.J.end());
    return make(n, name, so);
}

bool generators_independent(const SubalgebraBasis& g)
{
    if (g.generators.empty()) return true;
    int N = g.generators.front().rows();
    return rank_of(vectors_of(g.generators), N * N) == g.dim();
}

bool bracket_closed(const SubalgebraBasis& g)
{
    if (g.generators.empty()) return true;
    int N = g.generators.front().rows();
    Echelon e(N * N);
    for (const auto& m : g.generators) e.insert(vectorize(m));
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        for (std::size_t j = i + 1; j < g.generators.size(); ++j)
            if (!e.contains(vectorize(commutator(g.generators[i], g.generators[j])))) return false;
    return true;
}

bool contains(const SubalgebraBasis& big, const std::vector<Mat>& elements)
{
    if (elements.empty()) return true;
    int N = elements.front().rows();
    return span_contains(vectors_of(big.generators), vectors_of(elements), N * N);
}

bool same_subspace(const SubalgebraBasis& a, const SubalgebraBasis& b)
{
    return contains(a, b.generators) && contains(b, a.generators);
}

SubalgebraBasis stabilizer(const ModelTensor& t, const SubalgebraBasis* within)
{
    int N = t.dim();
    std::vector<Mat> domain = within ? within->generators : gl_units(N);
    std::vector<SVec> images;
    images.reserve(domain.size());
    for (const auto& A : domain) images.push_back(sparse(act(A, t).data()));
    auto ker = kernel_within(vectors_of(domain), images, static_cast<int>(t.data().size()));
    return make(t.n(), "stabilizer", matrices_of(span_basis(ker, N * N), N));
}

SubalgebraBasis normalizer_of_triple(const HypercomplexTriple& h, const SubalgebraBasis* within)
{
    int N = 4 * h.n;
    std::vector<Mat> domain = within ? within->generators : gl_units(N);
    // Orthogonal projection onto span(J) for the trace form <X, Y> = tr(X^t Y).
    Mat G(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) G(a, b) = (h.J[a].transpose() * h.J[b]).trace();
    Mat Ginv = *inverse(G);
    auto residual = [&](const Mat& X) {
        Vec c(3);
        for (int b = 0; b < 3; ++b) c[b] = (h.J[b].transpose() * X).trace();
        Vec coef = Ginv * c;
        Mat r = X;
        for (int b = 0; b < 3; ++b) r -= h.J[b] * coef[b];
        return r;
    };
    return make(h.n, "normalizer", solve_in(domain, 3, [&](const Mat& A) {
                    return std::vector<Mat>{residual(commutator(A, h.J[0])), residual(commutator(A, h.J[1])),
                                            residual(commutator(A, h.J[2]))};
                }));
}

SubalgebraBasis intersection(const SubalgebraBasis& a, const SubalgebraBasis& b)
{
    int N = 4 * a.n;
    auto v = intersect(vectors_of(a.generators), vectors_of(b.generators), N * N);
    return make(a.n, a.name + "_cap_" + b.name, matrices_of(span_basis(v, N * N), N));
}

// ---------------------------------------------------------------------------
// Gradings of so*(2m) in the quaternionic matrix model.

namespace {

using QVec = SVec;   // real coordinates of an m x m quaternionic matrix

int qindex(int m, int r, int c, int comp) { return ((r * m) + c) * 4 + comp; }

QVec qvectorize(const QuatMatrix& X)
{
    QVec v;
    int m = X.rows();
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            const Quaternion& q = X(r, c);
            const Scalar* s[4] = {&q.w, &q.x, &q.y, &q.z};
            for (int k = 0; k < 4; ++k)
                if (!s[k]->is_zero()) v.emplace_back(qindex(m, r, c, k), s[k]->rational());
        }
    return v;
}

QuatMatrix qunvectorize(const QVec& v, int m)
{
    QuatMatrix X(m, m);
    for (const auto& [f, x] : v) {
        int comp = f % 4, rc = f / 4;
        Quaternion& q = X(rc / m, rc % m);
        Scalar* s[4] = {&q.w, &q.x, &q.y, &q.z};
        *s[comp] = Scalar(x);
    }
    return X;
}

QuatMatrix qbracket(const QuatMatrix& a, const QuatMatrix& b) { return quat_matmul(a, b) - quat_matmul(b, a); }

QuatMatrix grading_form(int m, int depth)
{
    QuatMatrix h(m, m);
    Quaternion one = Quaternion::one(Field::Rational);
    if (depth == 1) {
        int k = m / 2;
        for (int r = 0; r < k; ++r) {
            h(r, k + r) = one;
            h(k + r, r) = -one;
        }
    } else {
        int k = (m - 1) / 2;
        for (int r = 0; r < k; ++r) {
            h(r, k + 1 + r) = one;
            h(k + 1 + r, r) = -one;
        }
        h(k, k) = Quaternion::unit_j(Field::Rational);
    }
    return h;
}

// Weight of a row/column index; the degree of entry (r, c) is d(r) - d(c).
int block_weight(int m, int depth, int r)
{
    if (depth == 1) return r < m / 2 ? 1 : 0;
    int k = (m - 1) / 2;
    if (r < k) return 1;
    if (r == k) return 0;
    return -1;
}

} // namespace

bool GradingReport::passed() const
{
    return graded && brackets_ok && cartan_abelian && cartan_self_centralizing && cartan_dim == rank;
}

GradingReport grading_check(int m, int depth)
{
    if (depth != 1 && depth != 2) throw ValidationError("grading depth must be 1 or 2");
    if (m < 2 && depth == 1) throw PreconditionError("depth 1 needs an even quaternionic size m >= 2");
    if (depth == 1 && m % 2 != 0) throw PreconditionError("a |1|-grading needs so*(4k), i.e. even m");
    if (depth == 2 && (m % 2 != 1 || m < 3)) throw PreconditionError("a |2|-grading needs so*(4k+2), i.e. odd m >= 3");
    GradingReport rep;
    rep.m = m;
    rep.depth = depth;
    rep.rank = m;
    QuatMatrix h = grading_form(m, depth);
    rep.form = h;
    int dimR = 4 * m * m;
    auto condition = [&](const QuatMatrix& X) { return qvectorize(quat_matmul(conj_transpose(X), h) + quat_matmul(h, X)); };
    auto unit = [&](int f) { return qunvectorize(QVec{{f, Q(1)}}, m); };
    auto degree_of = [&](int f) {
        int rc = f / 4;
        return block_weight(m, depth, rc / m) - block_weight(m, depth, rc % m);
    };
    // Whole algebra.
    std::vector<SVec> units, images;
    for (int f = 0; f < dimR; ++f) {
        units.push_back(QVec{{f, Q(1)}});
        images.push_back(condition(unit(f)));
    }
    auto algebra = span_basis(kernel_within(units, images, dimR), dimR);
    rep.algebra_dim = static_cast<int>(algebra.size());
    // Layers: kernel restricted to the coordinates of one degree.
    std::vector<std::vector<SVec>> layers;
    int total = 0;
    for (int d = -depth; d <= depth; ++d) {
        std::vector<SVec> u, im;
        for (int f = 0; f < dimR; ++f)
            if (degree_of(f) == d) {
                u.push_back(units[f]);
                im.push_back(images[f]);
            }
        auto layer = span_basis(kernel_within(u, im, dimR), dimR);
        rep.layer_dims.push_back(static_cast<int>(layer.size()));
        total += static_cast<int>(layer.size());
        layers.push_back(std::move(layer));
    }
    std::vector<SVec> all;
    for (const auto& l : layers) all.insert(all.end(), l.begin(), l.end());
    rep.graded = total == rep.algebra_dim && same_span(all, algebra, dimR);
    // Bracket containment.
    Echelon alg(dimR);
    for (const auto& v : algebra) alg.insert(v);
    bool ok = true;
    for (int i = 0; i < static_cast<int>(layers.size()) && ok; ++i)
        for (int j = i; j < static_cast<int>(layers.size()) && ok; ++j) {
            int target = (i - depth) + (j - depth);
            for (const auto& x : layers[i])
                for (const auto& y : layers[j]) {
                    QVec b = qvectorize(qbracket(qunvectorize(x, m), qunvectorize(y, m)));
                    if (b.empty()) continue;
                    if (std::abs(target) > depth || !alg.contains(b)) ok = false;
                    for (const auto& [f, v] : b)
                        if (degree_of(f) != target) ok = false;
                    if (!ok) break;
                }
        }
    rep.brackets_ok = ok;
    // Diagonal Cartan subalgebra: complex diagonal entries, with the middle
    // entry in R j for the |2|-grading.
    int middle = depth == 2 ? (m - 1) / 2 : -1;
    std::vector<SVec> cu, cim;
    for (int r = 0; r < m; ++r) {
        std::vector<int> comps = r == middle ? std::vector<int>{2} : std::vector<int>{0, 1};
        for (int comp : comps) {
            int f = qindex(m, r, r, comp);
            cu.push_back(units[f]);
            cim.push_back(images[f]);
        }
    }
    auto cartan = span_basis(kernel_within(cu, cim, dimR), dimR);
    rep.cartan_dim = static_cast<int>(cartan.size());
    bool abelian = true;
    for (std::size_t i = 0; i < cartan.size(); ++i)
        for (std::size_t j = i + 1; j < cartan.size(); ++j)
            if (!qvectorize(qbracket(qunvectorize(cartan[i], m), qunvectorize(cartan[j], m))).empty()) abelian = false;
    rep.cartan_abelian = abelian;
    std::vector<SVec> ad_images;
    for (const auto& x : algebra) {
        SVec img;
        int offset = 0;
        for (const auto& t : cartan) {
            for (const auto& [f, v] : qvectorize(qbracket(qunvectorize(x, m), qunvectorize(t, m))))
                img.emplace_back(offset + f, v);
            offset += dimR;
        }
        ad_images.push_back(std::move(img));
    }
    auto centralizer = kernel_within(algebra, ad_images, std::max(1, static_cast<int>(cartan.size())) * dimR);
    rep.cartan_self_centralizing = static_cast<int>(centralizer.size()) == rep.cartan_dim &&
                                   same_span(centralizer, cartan, dimR);
    return rep;
}

} // namespace qskew
