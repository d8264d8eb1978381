#include "qskew/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace qskew {

Quaternion::Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_)
    : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_))
{
    Field f = w.mode();
    if (x.mode() != f || y.mode() != f || z.mode() != f)
        throw ModeMismatch("quaternion coefficients of mixed mode");
}

Quaternion::Quaternion(const Scalar& real)
    : w(real), x(Scalar::zero(real.mode())), y(Scalar::zero(real.mode())), z(Scalar::zero(real.mode()))
{
}

Quaternion Quaternion::zero(Field f) { return Quaternion(Scalar::zero(f)); }
Quaternion Quaternion::one(Field f) { return Quaternion(Scalar::one(f)); }

Quaternion Quaternion::unit_i(Field f)
{
    return {Scalar::zero(f), Scalar::one(f), Scalar::zero(f), Scalar::zero(f)};
}

Quaternion Quaternion::unit_j(Field f)
{
    return {Scalar::zero(f), Scalar::zero(f), Scalar::one(f), Scalar::zero(f)};
}

Quaternion Quaternion::unit_k(Field f)
{
    return {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};
}

Quaternion Quaternion::conj() const { return {w, -x, -y, -z}; }

Scalar Quaternion::norm2() const { return w * w + x * x + y * y + z * z; }

Quaternion Quaternion::inverse() const
{
    Scalar n = norm2();
    if (n.is_zero()) throw std::domain_error("inverse of zero quaternion");
    Quaternion c = conj();
    return {c.w / n, c.x / n, c.y / n, c.z / n};
}

bool Quaternion::is_zero() const { return w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero(); }

std::string Quaternion::str() const
{
    return "(" + w.str() + "," + x.str() + "," + y.str() + "," + z.str() + ")";
}

Quaternion Quaternion::operator-() const { return {-w, -x, -y, -z}; }

Quaternion& Quaternion::operator+=(const Quaternion& o)
{
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o)
{
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
}

bool operator==(const Quaternion& a, const Quaternion& b)
{
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

Quaternion quat_mul(const Quaternion& p, const Quaternion& q)
{
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

Quaternion operator*(const Scalar& s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

QuatMatrix::QuatMatrix(int rows, int cols, Field f)
    : rows_(rows), cols_(cols), mode_(f),
      a_(static_cast<std::size_t>(rows) * cols, Quaternion::zero(f))
{
    if (rows <= 0 || cols <= 0) throw ShapeMismatch("quaternionic matrix needs positive shape");
}

QuatMatrix QuatMatrix::identity(int n, Field f)
{
    QuatMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m(i, i) = Quaternion::one(f);
    return m;
}

QuatMatrix QuatMatrix::scalar(int n, const Quaternion& q)
{
    QuatMatrix m(n, n, q.mode());
    for (int i = 0; i < n; ++i) m(i, i) = q;
    return m;
}

bool operator==(const QuatMatrix& a, const QuatMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return a.a_ == b.a_;
}

double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("shape mismatch in comparison");
    double m = 0.0;
    for (std::size_t i = 0; i < a.a_.size(); ++i) {
        Quaternion d = a.a_[i] - b.a_[i];
        for (const Scalar* s : {&d.w, &d.x, &d.y, &d.z}) m = std::max(m, std::fabs(s->to_double()));
    }
    return m;
}

QuatMatrix conj_transpose(const QuatMatrix& A)
{
    QuatMatrix r(A.cols(), A.rows(), A.mode());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) r(j, i) = A(i, j).conj();
    return r;
}

QuatMatrix quat_matmul(const QuatMatrix& A, const QuatMatrix& B)
{
    if (A.cols() != B.rows()) throw ShapeMismatch("inner dimensions differ in quaternionic product");
    if (A.mode() != B.mode()) throw ModeMismatch("quaternionic matrices of mixed mode");
    QuatMatrix r(A.rows(), B.cols(), A.mode());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            Quaternion s = Quaternion::zero(A.mode());
            for (int k = 0; k < A.cols(); ++k) s += A(i, k) * B(k, j);
            r(i, j) = s;
        }
    return r;
}

QuatMatrix operator+(const QuatMatrix& A, const QuatMatrix& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ShapeMismatch("shape mismatch in sum");
    QuatMatrix r = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) r(i, j) += B(i, j);
    return r;
}

QuatMatrix operator-(const QuatMatrix& A, const QuatMatrix& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ShapeMismatch("shape mismatch in difference");
    QuatMatrix r = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) r(i, j) -= B(i, j);
    return r;
}

} // namespace qskew
