#pragma once

#include <string>
#include <vector>

#include "qskew/scalar.hpp"

namespace qskew {

// w + x i + y j + z k
struct Quaternion {
    Scalar w, x, y, z;

    Quaternion() : w(0), x(0), y(0), z(0) {}
    Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_);
    explicit Quaternion(const Scalar& real);

    static Quaternion zero(Field f);
    static Quaternion one(Field f);
    static Quaternion unit_i(Field f);
    static Quaternion unit_j(Field f);
    static Quaternion unit_k(Field f);

    Field mode() const { return w.mode(); }
    Quaternion conj() const;
    Scalar norm2() const;          // q * conj(q)
    Quaternion inverse() const;
    bool is_zero() const;
    bool is_imaginary() const { return w.is_zero(); }
    std::string str() const;

    Quaternion operator-() const;
    Quaternion& operator+=(const Quaternion& o);
    Quaternion& operator-=(const Quaternion& o);
    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend bool operator==(const Quaternion& a, const Quaternion& b);
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);
inline Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }
Quaternion operator*(const Scalar& s, const Quaternion& q);

class QuatMatrix {
public:
    QuatMatrix() = default;
    QuatMatrix(int rows, int cols, Field f = Field::Rational);

    static QuatMatrix identity(int n, Field f = Field::Rational);
    static QuatMatrix scalar(int n, const Quaternion& q);   // q * Id

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Field mode() const { return mode_; }
    Quaternion& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Quaternion& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    friend bool operator==(const QuatMatrix& a, const QuatMatrix& b);
    // Largest absolute coefficient of a - b.
    friend double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b);

private:
    int rows_ = 0, cols_ = 0;
    Field mode_ = Field::Rational;
    std::vector<Quaternion> a_;
};

QuatMatrix conj_transpose(const QuatMatrix& A);
QuatMatrix quat_matmul(const QuatMatrix& A, const QuatMatrix& B);
QuatMatrix operator+(const QuatMatrix& A, const QuatMatrix& B);
QuatMatrix operator-(const QuatMatrix& A, const QuatMatrix& B);

} // namespace qskew
