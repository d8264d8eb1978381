#include "qskew/model_space.hpp"

#include <algorithm>
#include <map>

#include "qskew/quaternion.hpp"

namespace qskew {

int real_index(int n, int c, int comp)
{
    switch (comp) {
    case 0: return c;
    case 1: return c + n;
    case 2: return 2 * n + c;
    default: return 2 * n + c + n;
    }
}

ModelTensor::ModelTensor(int n, std::vector<Slot> slots, Symmetry sym)
    : n_(n), slots_(std::move(slots)), sym_(sym)
{
    if (n < 1) throw ShapeMismatch("quaternionic dimension must be positive");
    std::size_t size = 1;
    for (std::size_t i = 0; i < slots_.size(); ++i) size *= static_cast<std::size_t>(4 * n);
    a_.assign(size, Q(0));
}

ModelTensor ModelTensor::from_matrix(int n, const Mat& m, Slot a, Slot b)
{
    if (m.rows() != 4 * n || m.cols() != 4 * n) throw ShapeMismatch("matrix does not match 4n");
    ModelTensor t(n, {a, b});
    t.a_ = m.data();
    return t;
}

ModelTensor ModelTensor::torsion(int n)
{
    return ModelTensor(n, {Slot::Co, Slot::Co, Slot::Contra}, Symmetry::Antisymmetric);
}

std::size_t ModelTensor::flat(std::initializer_list<int> idx) const
{
    if (static_cast<int>(idx.size()) != order()) throw ShapeMismatch("wrong number of tensor indices");
    std::size_t f = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim()) throw ShapeMismatch("tensor index out of range");
        f = f * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
    }
    return f;
}

std::size_t ModelTensor::flat(const std::vector<int>& idx) const
{
    if (static_cast<int>(idx.size()) != order()) throw ShapeMismatch("wrong number of tensor indices");
    std::size_t f = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim()) throw ShapeMismatch("tensor index out of range");
        f = f * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
    }
    return f;
}

std::vector<int> ModelTensor::unflat(std::size_t f) const
{
    std::vector<int> idx(slots_.size());
    for (int s = order() - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(f % static_cast<std::size_t>(dim()));
        f /= static_cast<std::size_t>(dim());
    }
    return idx;
}

Mat ModelTensor::to_matrix() const
{
    if (order() != 2) throw ShapeMismatch("to_matrix needs an order-2 tensor");
    Mat m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) m(i, j) = a_[static_cast<std::size_t>(i) * dim() + j];
    return m;
}

bool ModelTensor::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Q& q) { return sgn(q) == 0; });
}

namespace {

std::vector<int> covariant_slots(const ModelTensor& t)
{
    std::vector<int> s;
    for (int i = 0; i < t.order(); ++i)
        if (t.slots()[i] == Slot::Co) s.push_back(i);
    return s;
}

bool check_transpositions(const ModelTensor& t, int sign)
{
    auto cov = covariant_slots(t);
    for (std::size_t f = 0; f < t.data().size(); ++f) {
        const Q& x = t.data()[f];
        auto idx = t.unflat(f);
        for (std::size_t p = 0; p + 1 < cov.size(); ++p) {
            auto j = idx;
            std::swap(j[cov[p]], j[cov[p + 1]]);
            const Q& y = t.data()[t.flat(j)];
            if (sign > 0 ? x != y : x != -y) return false;
        }
    }
    return true;
}

} // namespace

bool ModelTensor::is_symmetric() const { return check_transpositions(*this, 1); }
bool ModelTensor::is_antisymmetric() const { return check_transpositions(*this, -1); }

bool ModelTensor::satisfies_declared_symmetry() const
{
    switch (sym_) {
    case Symmetry::Symmetric: return is_symmetric();
    case Symmetry::Antisymmetric: return is_antisymmetric();
    default: return true;
    }
}

void ModelTensor::same_shape(const ModelTensor& o) const
{
    if (n_ != o.n_ || slots_ != o.slots_) throw ShapeMismatch("tensor shapes differ");
}

ModelTensor& ModelTensor::operator+=(const ModelTensor& o)
{
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    if (sym_ != o.sym_) sym_ = Symmetry::None;
    return *this;
}

ModelTensor& ModelTensor::operator-=(const ModelTensor& o)
{
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    if (sym_ != o.sym_) sym_ = Symmetry::None;
    return *this;
}

ModelTensor& ModelTensor::operator*=(const Q& s)
{
    for (auto& x : a_) x *= s;
    return *this;
}

bool operator==(const ModelTensor& a, const ModelTensor& b)
{
    return a.n_ == b.n_ && a.slots_ == b.slots_ && a.a_ == b.a_;
}

bool satisfies_quaternion_relations(const HypercomplexTriple& h)
{
    int N = 4 * h.n;
    Mat minus = -Mat::identity(N);
    for (const auto& J : h.J)
        if (J.rows() != N || J.cols() != N || J * J != minus) return false;
    return h.J[0] * h.J[1] * h.J[2] == minus;
}

HypercomplexTriple standard_triple(int n)
{
    if (n < 1) throw ShapeMismatch("quaternionic dimension must be positive");
    HypercomplexTriple h;
    h.n = n;
    const Quaternion units[3] = {Quaternion::unit_i(Field::Rational), Quaternion::unit_j(Field::Rational),
                                 Quaternion::unit_k(Field::Rational)};
    for (int a = 0; a < 3; ++a) {
        Mat J(4 * n, 4 * n);
        for (int c = 0; c < n; ++c)
            for (int comp = 0; comp < 4; ++comp) {
                Quaternion e = Quaternion::zero(Field::Rational);
                Scalar* slot[4] = {&e.w, &e.x, &e.y, &e.z};
                *slot[comp] = Scalar(1);
                Quaternion p = units[a] * e;   // left multiplication
                const Scalar* out[4] = {&p.w, &p.x, &p.y, &p.z};
                for (int d = 0; d < 4; ++d) J(real_index(n, c, d), real_index(n, c, comp)) = out[d]->rational();
            }
        h.J[a] = J;
    }
    return h;
}

Mat combination(const HypercomplexTriple& h, const std::array<Q, 3>& mu)
{
    return h.J[0] * mu[0] + h.J[1] * mu[1] + h.J[2] * mu[2];
}

ModelTensor standard_omega(int n)
{
    ModelTensor w(n, {Slot::Co, Slot::Co}, Symmetry::Antisymmetric);
    for (int r = 0; r < 2 * n; ++r) {
        w.at({r, 2 * n + r}) = 1;
        w.at({2 * n + r, r}) = -1;
    }
    return w;
}

std::array<ModelTensor, 3> metrics_from(const ModelTensor& omega, const HypercomplexTriple& h)
{
    Mat W = omega.to_matrix();
    if (W != -W.transpose()) throw ValidationError("omega is not antisymmetric");
    if (sgn(det(W)) == 0) throw PreconditionError("omega is degenerate");
    std::array<ModelTensor, 3> g;
    for (int a = 0; a < 3; ++a) {
        g[a] = ModelTensor::from_matrix(omega.n(), W * h.J[a]);
        g[a].set_symmetry(Symmetry::Symmetric);
    }
    return g;
}

ModelTensor metric_for_J(const ModelTensor& omega, const HypercomplexTriple& h, const std::array<Q, 3>& mu)
{
    if (sgn(mu[0]) == 0 && sgn(mu[1]) == 0 && sgn(mu[2]) == 0)
        throw PreconditionError("mu must be nonzero");
    auto g = metrics_from(omega, h);
    ModelTensor m = mu[0] * g[0] + mu[1] * g[1] + mu[2] * g[2];
    m.set_symmetry(Symmetry::Symmetric);
    return m;
}

namespace {

Q bilinear(const Mat& m, const Vec& x, const Vec& y) { return dot(x, m * y); }

} // namespace

HValue SkewHermitianForm::operator()(const Vec& x, const Vec& y) const
{
    HValue v;
    v.re = bilinear(omega.to_matrix(), x, y);
    for (int a = 0; a < 3; ++a) v.im[a] = bilinear(g[a].to_matrix(), x, y);
    return v;
}

ModelTensor SkewHermitianForm::as_tensor() const
{
    int n = omega.n(), N = 4 * n;
    ModelTensor t(n, {Slot::Co, Slot::Co, Slot::Contra, Slot::Co});
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const Q& w = omega.at({i, j});
            if (sgn(w) != 0)
                for (int k = 0; k < N; ++k) t.at({i, j, k, k}) += w;
            for (int a = 0; a < 3; ++a) {
                const Q& ga = g[a].at({i, j});
                if (sgn(ga) == 0) continue;
                for (int k = 0; k < N; ++k)
                    for (int l = 0; l < N; ++l)
                        if (sgn(triple.J[a](k, l)) != 0) t.at({i, j, k, l}) += ga * triple.J[a](k, l);
            }
        }
    return t;
}

SkewHermitianForm skew_hermitian_form(const ModelTensor& omega, const HypercomplexTriple& h)
{
    auto check = is_scalar_2form(omega, h);
    if (!check.scalar) throw PreconditionError("omega is not a scalar 2-form: " + check.detail, check.condition);
    return {omega, metrics_from(omega, h), h};
}

ModelTensor sym_product(const ModelTensor& a, const ModelTensor& b)
{
    if (a.order() != 2 || b.order() != 2 || a.n() != b.n()) throw ShapeMismatch("sym_product needs 2-tensors");
    int n = a.n(), N = 4 * n;
    ModelTensor t(n, {Slot::Co, Slot::Co, Slot::Co, Slot::Co}, Symmetry::Symmetric);
    Q sixth(1, 6);
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            const Q& x = a.at({p, q});
            if (sgn(x) == 0) continue;
            for (int r = 0; r < N; ++r)
                for (int s = 0; s < N; ++s) {
                    const Q& y = b.at({r, s});
                    if (sgn(y) == 0) continue;
                    Q v = sixth * x * y;
                    t.at({p, q, r, s}) += v;
                    t.at({r, s, p, q}) += v;
                    t.at({p, r, q, s}) += v;
                    t.at({r, p, s, q}) += v;
                    t.at({p, r, s, q}) += v;
                    t.at({r, p, q, s}) += v;
                }
        }
    return t;
}

ModelTensor fundamental_4tensor(const ModelTensor& omega, const HypercomplexTriple& h)
{
    auto check = is_scalar_2form(omega, h);
    if (!check.scalar) throw PreconditionError("omega is not a scalar 2-form: " + check.detail, check.condition);
    auto g = metrics_from(omega, h);
    ModelTensor phi = sym_product(g[0], g[0]);
    phi += sym_product(g[1], g[1]);
    phi += sym_product(g[2], g[2]);
    phi.set_symmetry(Symmetry::Symmetric);
    return phi;
}

ScalarFormCheck is_scalar_2form(const ModelTensor& omega, const HypercomplexTriple& h)
{
    if (omega.order() != 2 || omega.n() != h.n) throw ShapeMismatch("omega must be a 2-tensor on R^{4n}");
    Mat W = omega.to_matrix();
    if (W != -W.transpose()) throw ValidationError("omega is not antisymmetric");
    ScalarFormCheck r;
    if (sgn(det(W)) == 0) {
        r.detail = "omega is degenerate";
        return r;
    }
    for (int a = 0; a < 3; ++a) {
        Mat P = h.J[a].transpose() * W * h.J[a];
        for (int x = 0; x < W.rows(); ++x)
            for (int y = 0; y < W.cols(); ++y)
                if (P(x, y) != W(x, y)) {
                    r.condition = 5;
                    r.which = a + 1;
                    r.x = x;
                    r.y = y;
                    r.detail = "omega(J" + std::to_string(a + 1) + " e" + std::to_string(x + 1) + ", J" +
                               std::to_string(a + 1) + " e" + std::to_string(y + 1) + ") = " + P(x, y).get_str() +
                               " but omega(e" + std::to_string(x + 1) + ", e" + std::to_string(y + 1) +
                               ") = " + W(x, y).get_str();
                    return r;
                }
    }
    r.scalar = true;
    return r;
}

bool is_j_skew(const ModelTensor& omega, const HypercomplexTriple& h)
{
    Mat W = omega.to_matrix();
    for (const auto& J : h.J)
        if (!(J.transpose() * W + W * J).is_zero()) return false;
    return true;
}

Mat symplectic_transpose(const Mat& A, const Mat& omega)
{
    auto inv = inverse(omega);
    if (!inv) throw PreconditionError("omega is degenerate");
    return -(*inv * A.transpose() * omega);
}

ModelTensor lower(const ModelTensor& phi, const Mat& omega)
{
    int N = phi.dim();
    if (phi.order() != 3 || omega.rows() != N) throw ShapeMismatch("lower needs a torsion tensor");
    ModelTensor t(phi.n(), {Slot::Co, Slot::Co, Slot::Co});
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const Q& x = phi.at({i, j, k});
                if (sgn(x) == 0) continue;
                for (int l = 0; l < N; ++l)
                    if (sgn(omega(k, l)) != 0) t.at({i, j, l}) += x * omega(k, l);
            }
    return t;
}

ModelTensor raise(const ModelTensor& theta, const Mat& omega)
{
    int N = theta.dim();
    if (theta.order() != 3 || omega.rows() != N) throw ShapeMismatch("raise needs an order-3 tensor");
    auto inv = inverse(omega);
    if (!inv) throw PreconditionError("omega is degenerate");
    ModelTensor t = ModelTensor::torsion(theta.n());
    t.set_symmetry(Symmetry::None);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                const Q& x = theta.at({i, j, l});
                if (sgn(x) == 0) continue;
                for (int k = 0; k < N; ++k)
                    if (sgn((*inv)(l, k)) != 0) t.at({i, j, k}) += x * (*inv)(l, k);
            }
    if (t.is_antisymmetric()) t.set_symmetry(Symmetry::Antisymmetric);
    return t;
}

Vec raise_covector(const Vec& zeta, const Mat& omega)
{
    auto inv = inverse(omega.transpose());
    if (!inv) throw PreconditionError("omega is degenerate");
    return *inv * zeta;
}

Vec lower_vector(const Vec& z, const Mat& omega) { return omega.transpose() * z; }

ModelTensor change_basis(const ModelTensor& t, const Mat& C)
{
    int N = t.dim();
    if (C.rows() != N || C.cols() != N) throw ShapeMismatch("basis change has the wrong size");
    auto inv = inverse(C);
    if (!inv) throw PreconditionError("basis change is singular");
    ModelTensor cur = t;
    for (int s = 0; s < t.order(); ++s) {
        ModelTensor next = cur;
        for (std::size_t f = 0; f < next.data().size(); ++f) {
            auto idx = next.unflat(f);
            int target = idx[s];
            Q acc = 0;
            for (int m = 0; m < N; ++m) {
                const Q& c = t.slots()[s] == Slot::Co ? C(m, target) : (*inv)(target, m);
                if (sgn(c) == 0) continue;
                idx[s] = m;
                acc += c * cur.data()[cur.flat(idx)];
            }
            next.data()[f] = acc;
        }
        cur = std::move(next);
    }
    return cur;
}

ModelTensor act(const Mat& A, const ModelTensor& t)
{
    int N = t.dim();
    if (A.rows() != N || A.cols() != N) throw ShapeMismatch("endomorphism does not match the tensor");
    ModelTensor r(t.n(), t.slots());
    // Nonzero entries of A by row and by column.
    std::vector<std::vector<std::pair<int, Q>>> by_row(N), by_col(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (sgn(A(i, j)) != 0) {
                by_row[i].emplace_back(j, A(i, j));
                by_col[j].emplace_back(i, A(i, j));
            }
    for (std::size_t f = 0; f < t.data().size(); ++f) {
        const Q& x = t.data()[f];
        if (sgn(x) == 0) continue;
        auto idx = t.unflat(f);
        for (int s = 0; s < t.order(); ++s) {
            int i = idx[s];
            auto j = idx;
            if (t.slots()[s] == Slot::Co) {
                // (A.T)(.., e_m, ..) gets -T(.., A e_m, ..) = -sum_i A_im T(.., e_i, ..)
                for (const auto& [m, a] : by_row[i]) {
                    j[s] = m;
                    r.data()[r.flat(j)] -= a * x;
                }
            } else {
                for (const auto& [m, a] : by_col[i]) {
                    j[s] = m;
                    r.data()[r.flat(j)] += a * x;
                }
            }
        }
    }
    return r;
}

} // namespace qskew
