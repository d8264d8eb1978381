#include "qskew/linalg.hpp"

#include <algorithm>

namespace qskew {

Mat Mat::identity(int n)
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::unit(int rows, int cols, int i, int j)
{
    Mat m(rows, cols);
    m(i, j) = 1;
    return m;
}

Mat Mat::transpose() const
{
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Q Mat::trace() const
{
    Q s = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
}

bool Mat::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Q& q) { return sgn(q) == 0; });
}

Mat& Mat::operator+=(const Mat& o)
{
    if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o)
{
    if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(const Q& s)
{
    for (auto& x : a_) x *= s;
    return *this;
}

Mat Mat::operator-() const
{
    Mat m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
}

Mat operator*(const Mat& a, const Mat& b)
{
    if (a.c_ != b.r_) throw ShapeMismatch("matrix product shape mismatch");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Q& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < b.c_; ++j)
                if (sgn(b(k, j)) != 0) m(i, j) += x * b(k, j);
        }
    return m;
}

Vec operator*(const Mat& a, const Vec& v)
{
    if (static_cast<int>(v.size()) != a.cols()) throw ShapeMismatch("matrix-vector shape mismatch");
    Vec r(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) r[i] += a(i, j) * v[j];
    return r;
}

Q dot(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("dot product length mismatch");
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m)
{
    std::vector<int> piv;
    int row = 0;
    for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (sgn(m(r, c)) != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Q inv = 1 / m(row, c);
        for (int j = c; j < m.cols(); ++j) m(row, j) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, c)) == 0) continue;
            Q f = m(r, c);
            for (int j = c; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(r, j) -= f * m(row, j);
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

} // namespace

int rank(const Mat& m)
{
    Mat t = m;
    return static_cast<int>(rref(t).size());
}

Q det(const Mat& m)
{
    if (m.rows() != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
    Mat a = m;
    int n = a.rows();
    Q d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (sgn(a(r, c)) != 0) {
                p = r;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (sgn(a(r, c)) == 0) continue;
            Q f = a(r, c) / a(c, c);
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

std::optional<Mat> inverse(const Mat& m)
{
    if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
    int n = m.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::vector<Vec> nullspace(const Mat& m)
{
    Mat a = m;
    auto piv = rref(a);
    std::vector<bool> is_piv(static_cast<std::size_t>(m.cols()), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(static_cast<std::size_t>(m.cols()));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Signature signature(const Mat& sym)
{
    if (sym.rows() != sym.cols() || sym != sym.transpose())
        throw ShapeMismatch("signature needs a symmetric matrix");
    Mat s = sym;
    int n = s.rows();
    std::vector<int> live(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) live[i] = i;
    Signature sig;
    while (!live.empty()) {
        int p = -1;
        for (int i : live)
            if (sgn(s(i, i)) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            int a = -1, b = -1;
            for (int i : live) {
                for (int j : live)
                    if (i != j && sgn(s(i, j)) != 0) {
                        a = i;
                        b = j;
                        break;
                    }
                if (a >= 0) break;
            }
            if (a < 0) {
                sig.zero += static_cast<int>(live.size());
                break;
            }
            // e_a <- e_a + e_b makes the diagonal entry 2 s(a,b) != 0.
            for (int j = 0; j < n; ++j) s(a, j) += s(b, j);
            for (int j = 0; j < n; ++j) s(j, a) += s(j, b);
            p = a;
        }
        Q d = s(p, p);
        (sgn(d) > 0 ? sig.pos : sig.neg) += 1;
        live.erase(std::find(live.begin(), live.end(), p));
        std::vector<Q> row(static_cast<std::size_t>(n));
        for (int j : live) row[j] = s(p, j);
        for (int r : live) {
            if (sgn(row[r]) == 0) continue;
            Q f = row[r] / d;
            for (int j : live) s(r, j) -= f * row[j];
        }
        for (int j : live) s(p, j) = s(j, p) = 0;
    }
    return sig;
}

SVec sparse(const Vec& v)
{
    SVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

Vec dense(const SVec& v, int dim)
{
    Vec d(static_cast<std::size_t>(dim));
    for (const auto& [i, x] : v) {
        if (i < 0 || i >= dim) throw ShapeMismatch("sparse index out of range");
        d[i] = x;
    }
    return d;
}

SVec add(const SVec& a, const SVec& b, const Q& s)
{
    SVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Q x = s * b[j].second;
            if (sgn(x) != 0) r.emplace_back(b[j].first, std::move(x));
            ++j;
        } else {
            Q x = a[i].second + s * b[j].second;
            if (sgn(x) != 0) r.emplace_back(a[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    return r;
}

SVec scale(const SVec& a, const Q& s)
{
    if (sgn(s) == 0) return {};
    SVec r = a;
    for (auto& e : r) e.second *= s;
    return r;
}

bool is_zero(const SVec& v) { return v.empty(); }

ZVec primitive(const SVec& v)
{
    ZVec r;
    if (v.empty()) return r;
    Z l = 1;
    for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    Z g = 0;
    r.reserve(v.size());
    for (const auto& e : v) {
        Z x = e.second.get_num() * (l / e.second.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        r.emplace_back(e.first, std::move(x));
    }
    if (r.front().second < 0) g = -g;
    if (g != 1)
        for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return r;
}

SVec to_rational(const ZVec& v)
{
    SVec r;
    r.reserve(v.size());
    for (const auto& e : v) r.emplace_back(e.first, Q(e.second));
    return r;
}

namespace {

void make_primitive(ZVec& v)
{
    if (v.empty()) return;
    Z g = 0;
    for (const auto& e : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
        if (g == 1) break;
    }
    if (v.front().second < 0) g = -g;
    if (g != 1)
        for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

} // namespace

ZVec Echelon::reduce(ZVec v) const
{
    std::size_t pos = 0;
    ZVec out;
    Z a, b, g, t;
    while (true) {
        while (pos < v.size() && v[pos].first < dim_ && pivot_row_[v[pos].first] < 0) ++pos;
        if (pos >= v.size() || v[pos].first >= dim_) break;
        const ZVec& r = rows_[pivot_row_[v[pos].first]];
        mpz_gcd(g.get_mpz_t(), r[0].second.get_mpz_t(), v[pos].second.get_mpz_t());
        mpz_divexact(a.get_mpz_t(), r[0].second.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), v[pos].second.get_mpz_t(), g.get_mpz_t());
        // v <- a v - b r; r starts at the pivot column.
        out.clear();
        out.reserve(v.size() + r.size());
        bool a_one = (a == 1);
        for (std::size_t i = 0; i < pos; ++i) {
            out.emplace_back(v[i].first, v[i].second);
            if (!a_one) out.back().second *= a;
        }
        std::size_t i = pos + 1, j = 1;
        while (i < v.size() || j < r.size()) {
            if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
                out.emplace_back(v[i].first, v[i].second);
                if (!a_one) out.back().second *= a;
                ++i;
            } else if (i == v.size() || r[j].first < v[i].first) {
                t = r[j].second * b;
                out.emplace_back(r[j].first, -t);
                ++j;
            } else {
                t = v[i].second * a;
                t -= r[j].second * b;
                if (sgn(t) != 0) out.emplace_back(v[i].first, t);
                ++i;
                ++j;
            }
        }
        std::swap(v, out);
        make_primitive(v);
    }
    return v;
}

bool Echelon::insert(const ZVec& v)
{
    ZVec r = reduce(v);
    if (r.empty() || r.front().first >= dim_) return false;
    make_primitive(r);
    pivot_row_[r.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

bool Echelon::contains(const SVec& v) const
{
    ZVec r = reduce(primitive(v));
    return r.empty() || r.front().first >= dim_;
}

int rank_of(const std::vector<SVec>& vs, int dim)
{
    Echelon e(dim);
    for (const auto& v : vs) e.insert(v);
    return e.rank();
}

std::vector<SVec> span_basis(const std::vector<SVec>& vs, int dim)
{
    Echelon e(dim);
    for (const auto& v : vs) e.insert(v);
    std::vector<SVec> out;
    out.reserve(e.rows().size());
    for (const auto& r : e.rows()) out.push_back(to_rational(r));
    return out;
}

std::vector<Vec> relations(const std::vector<SVec>& vs, int dim)
{
    Echelon e(dim);
    int k = static_cast<int>(vs.size());
    std::vector<Vec> rel;
    for (int j = 0; j < k; ++j) {
        SVec w = vs[j];
        if (!w.empty() && w.back().first >= dim) throw ShapeMismatch("vector index beyond dimension");
        w.emplace_back(dim + j, Q(1));
        ZVec r = e.reduce(primitive(w));
        if (r.front().first >= dim) {
            Vec c(static_cast<std::size_t>(k));
            for (const auto& [i, x] : r) c[i - dim] = Q(x);
            rel.push_back(std::move(c));
        } else {
            e.insert(r);
        }
    }
    return rel;
}

SVec combine(const std::vector<SVec>& basis, const Vec& coeffs)
{
    SVec s;
    for (std::size_t j = 0; j < basis.size() && j < coeffs.size(); ++j)
        if (sgn(coeffs[j]) != 0) s = add(s, basis[j], coeffs[j]);
    return s;
}

std::vector<SVec> kernel_within(const std::vector<SVec>& basis, const std::vector<SVec>& images, int image_dim)
{
    if (basis.size() != images.size()) throw ShapeMismatch("basis and images differ in length");
    std::vector<SVec> out;
    for (const auto& c : relations(images, image_dim)) out.push_back(to_rational(primitive(combine(basis, c))));
    return out;
}

std::vector<SVec> intersect(const std::vector<SVec>& u, const std::vector<SVec>& w, int dim)
{
    std::vector<SVec> all = u;
    all.insert(all.end(), w.begin(), w.end());
    std::vector<SVec> out;
    for (auto c : relations(all, dim)) {
        c.resize(u.size());
        SVec v = combine(u, c);
        if (!v.empty()) out.push_back(to_rational(primitive(v)));
    }
    return out;
}

bool span_contains(const std::vector<SVec>& basis, const std::vector<SVec>& vs, int dim)
{
    Echelon e(dim);
    for (const auto& b : basis) e.insert(b);
    return std::all_of(vs.begin(), vs.end(), [&](const SVec& v) { return e.contains(v); });
}

bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, int dim)
{
    return span_contains(a, b, dim) && span_contains(b, a, dim);
}

Decomposer::Decomposer(const std::vector<SVec>& basis, int dim)
    : dim_(dim), k_(static_cast<int>(basis.size())), ech_(dim)
{
    for (int j = 0; j < k_; ++j) {
        SVec w = basis[j];
        w.emplace_back(dim + j, Q(1));
        if (!ech_.insert(w)) independent_ = false;
    }
}

std::optional<Vec> Decomposer::solve(const SVec& v) const
{
    SVec w = v;
    w.emplace_back(dim_ + k_, Q(1));
    ZVec r = ech_.reduce(primitive(w));
    if (r.front().first < dim_) return std::nullopt;
    Vec x(static_cast<std::size_t>(k_));
    Q s = Q(r.back().second);   // self coordinate is the largest index
    for (const auto& [i, t] : r)
        if (i < dim_ + k_) x[i - dim_] = -Q(t) / s;
    return x;
}

SVec SparseMat::apply(const SVec& v) const
{
    SVec r;
    for (const auto& [j, x] : v) r = add(r, col[j], x);
    return r;
}

SparseMat SparseMat::compose(const SparseMat& right) const
{
    if (cols != right.rows) throw ShapeMismatch("operator composition shape mismatch");
    SparseMat m{rows, right.cols, {}};
    m.col.reserve(right.col.size());
    for (const auto& c : right.col) m.col.push_back(apply(c));
    return m;
}

SparseMat SparseMat::plus_identity(const Q& s) const
{
    SparseMat m = *this;
    for (int j = 0; j < cols; ++j) m.col[j] = add(m.col[j], SVec{{j, Q(1)}}, s);
    return m;
}

bool SparseMat::is_zero() const
{
    return std::all_of(col.begin(), col.end(), [](const SVec& c) { return c.empty(); });
}

} // namespace qskew
