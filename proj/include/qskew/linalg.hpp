#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qskew/scalar.hpp"

namespace qskew {

// Dense rational matrix, row-major.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Mat identity(int n);
    static Mat unit(int rows, int cols, int i, int j);   // E_ij

    int rows() const { return r_; }
    int cols() const { return c_; }
    Q& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Q& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const std::vector<Q>& data() const { return a_; }

    Mat transpose() const;
    Q trace() const;
    bool is_zero() const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(const Q& s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const Q& s) { return a *= s; }
    friend Mat operator*(const Q& s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
    Mat operator-() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

using Vec = std::vector<Q>;
Vec operator*(const Mat& a, const Vec& v);
Q dot(const Vec& a, const Vec& b);
Mat commutator(const Mat& a, const Mat& b);

// Dense Gaussian elimination helpers for small matrices.
int rank(const Mat& m);
Q det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
std::vector<Vec> nullspace(const Mat& m);

struct Signature {
    int pos = 0, neg = 0, zero = 0;
};
// Exact signature of a symmetric matrix by symmetric (congruence) elimination.
Signature signature(const Mat& sym);

// Sparse vectors: sorted by index, no stored zeros.
using SVec = std::vector<std::pair<int, Q>>;
using ZVec = std::vector<std::pair<int, Z>>;

SVec sparse(const Vec& v);
Vec dense(const SVec& v, int dim);
SVec add(const SVec& a, const SVec& b, const Q& s = 1);   // a + s b
SVec scale(const SVec& a, const Q& s);
bool is_zero(const SVec& v);
// Integer multiple with coprime entries and positive leading entry.
ZVec primitive(const SVec& v);
SVec to_rational(const ZVec& v);

// Fraction-free row echelon basis of a subspace of Q^dim. Vectors may carry
// extra coordinates at indices >= dim which are never used as pivots; this
// tracks linear combinations through the elimination.
class Echelon {
public:
    explicit Echelon(int dim) : dim_(dim), pivot_row_(static_cast<std::size_t>(dim), -1) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    // Reduce against the current rows; the result has no entries on pivot columns.
    ZVec reduce(ZVec v) const;
    // Reduce and append; returns true when v was independent of the rows.
    bool insert(const ZVec& v);
    bool insert(const SVec& v) { return insert(primitive(v)); }
    bool contains(const SVec& v) const;
    const std::vector<ZVec>& rows() const { return rows_; }

private:
    int dim_;
    std::vector<ZVec> rows_;
    std::vector<int> pivot_row_;
};

int rank_of(const std::vector<SVec>& vs, int dim);
// Echelon basis of the span (vectors restricted to indices < dim).
std::vector<SVec> span_basis(const std::vector<SVec>& vs, int dim);
// Coefficient vectors c with sum_j c_j vs[j] = 0, as a basis of the relation space.
std::vector<Vec> relations(const std::vector<SVec>& vs, int dim);
// Basis of the subspace of span(basis) mapped to zero by f, given the images f(basis[j]).
std::vector<SVec> kernel_within(const std::vector<SVec>& basis, const std::vector<SVec>& images, int image_dim);
std::vector<SVec> intersect(const std::vector<SVec>& u, const std::vector<SVec>& w, int dim);
SVec combine(const std::vector<SVec>& basis, const Vec& coeffs);
bool span_contains(const std::vector<SVec>& basis, const std::vector<SVec>& vs, int dim);
bool same_span(const std::vector<SVec>& a, const std::vector<SVec>& b, int dim);

// Solves v = sum_j x_j b_j for a fixed independent family b.
class Decomposer {
public:
    Decomposer(const std::vector<SVec>& basis, int dim);
    int size() const { return k_; }
    bool independent() const { return independent_; }
    std::optional<Vec> solve(const SVec& v) const;

private:
    int dim_, k_;
    bool independent_ = true;
    Echelon ech_;
};

// Sparse linear operator stored by columns.
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<SVec> col;

    SVec apply(const SVec& v) const;
    SparseMat compose(const SparseMat& right) const;   // this * right
    SparseMat plus_identity(const Q& s) const;         // this + s I
    bool is_zero() const;
};

} // namespace qskew
