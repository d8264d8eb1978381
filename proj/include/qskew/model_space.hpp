#pragma once

#include <array>
#include <initializer_list>
#include <string>
#include <vector>

#include "qskew/linalg.hpp"

namespace qskew {

// Real index of the quaternionic coordinate c (0-based) and component
// 0..3 (1, i, j, k) in the ordering e_1..e_2n, f_1..f_2n.
int real_index(int n, int c, int comp);

enum class Slot { Co, Contra };
enum class Symmetry { None, Symmetric, Antisymmetric };

// Dense multilinear tensor on V = R^{4n}. Entry (i_1, ..., i_r) is stored at
// ((i_1 * 4n) + i_2) * 4n + ...; indices are 0-based internally.
class ModelTensor {
public:
    ModelTensor() = default;
    ModelTensor(int n, std::vector<Slot> slots, Symmetry sym = Symmetry::None);

    static ModelTensor from_matrix(int n, const Mat& m, Slot a = Slot::Co, Slot b = Slot::Co);
    // Torsion tensors: variance (Co, Co, Contra), entry (i, j, k) = phi(e_i, e_j)^k.
    static ModelTensor torsion(int n);

    int n() const { return n_; }
    int dim() const { return 4 * n_; }
    int order() const { return static_cast<int>(slots_.size()); }
    const std::vector<Slot>& slots() const { return slots_; }
    Symmetry symmetry() const { return sym_; }
    void set_symmetry(Symmetry s) { sym_ = s; }

    std::size_t flat(std::initializer_list<int> idx) const;
    std::size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(std::size_t f) const;
    Q& at(std::initializer_list<int> idx) { return a_[flat(idx)]; }
    const Q& at(std::initializer_list<int> idx) const { return a_[flat(idx)]; }
    std::vector<Q>& data() { return a_; }
    const std::vector<Q>& data() const { return a_; }

    Mat to_matrix() const;
    bool is_zero() const;
    // Totally symmetric / antisymmetric in the covariant slots.
    bool is_symmetric() const;
    bool is_antisymmetric() const;
    bool satisfies_declared_symmetry() const;

    ModelTensor& operator+=(const ModelTensor& o);
    ModelTensor& operator-=(const ModelTensor& o);
    ModelTensor& operator*=(const Q& s);
    friend ModelTensor operator+(ModelTensor a, const ModelTensor& b) { return a += b; }
    friend ModelTensor operator-(ModelTensor a, const ModelTensor& b) { return a -= b; }
    friend ModelTensor operator*(const Q& s, ModelTensor a) { return a *= s; }
    friend bool operator==(const ModelTensor& a, const ModelTensor& b);

private:
    void same_shape(const ModelTensor& o) const;

    int n_ = 0;
    std::vector<Slot> slots_;
    Symmetry sym_ = Symmetry::None;
    std::vector<Q> a_;
};

struct HypercomplexTriple {
    int n = 0;
    std::array<Mat, 3> J;
};

bool satisfies_quaternion_relations(const HypercomplexTriple& h);
HypercomplexTriple standard_triple(int n);
// J = mu_1 J_1 + mu_2 J_2 + mu_3 J_3.
Mat combination(const HypercomplexTriple& h, const std::array<Q, 3>& mu);

ModelTensor standard_omega(int n);
std::array<ModelTensor, 3> metrics_from(const ModelTensor& omega, const HypercomplexTriple& h);
ModelTensor metric_for_J(const ModelTensor& omega, const HypercomplexTriple& h, const std::array<Q, 3>& mu);

struct HValue {
    Q re;
    std::array<Q, 3> im;
};

struct SkewHermitianForm {
    ModelTensor omega;
    std::array<ModelTensor, 3> g;
    HypercomplexTriple triple;

    HValue operator()(const Vec& x, const Vec& y) const;
    // omega (x) id + sum_a g_a (x) J_a as a tensor of variance (Co, Co, Contra, Co):
    // entry (i, j, k, l) is the (k, l) matrix entry of h(e_i, e_j).
    ModelTensor as_tensor() const;
};

SkewHermitianForm skew_hermitian_form(const ModelTensor& omega, const HypercomplexTriple& h);
ModelTensor fundamental_4tensor(const ModelTensor& omega, const HypercomplexTriple& h);
// Complete symmetrization (1/24 sum over S_4) of a (x) b for symmetric 2-tensors.
ModelTensor sym_product(const ModelTensor& a, const ModelTensor& b);

struct ScalarFormCheck {
    bool scalar = false;
    int condition = 0;       // 5 (J_a-invariance) when it fails, 0 when omega is degenerate
    int which = 0;           // 1..3, the complex structure that fails
    int x = -1, y = -1;      // witness pair of basis indices
    std::string detail;
};

// True iff omega(J_a x, J_a y) = omega(x, y) for a = 1, 2, 3 and omega is
// non-degenerate.
ScalarFormCheck is_scalar_2form(const ModelTensor& omega, const HypercomplexTriple& h);
// Infinitesimal form omega(J_a x, y) + omega(x, J_a y) = 0 for a = 1, 2, 3.
bool is_j_skew(const ModelTensor& omega, const HypercomplexTriple& h);

// A^T with omega(A^T x, y) = -omega(x, A y).
Mat symplectic_transpose(const Mat& A, const Mat& omega);

// l(phi)(X, Y, Z) = omega(phi(X, Y), Z) and its inverse.
ModelTensor lower(const ModelTensor& phi, const Mat& omega);
ModelTensor raise(const ModelTensor& theta, const Mat& omega);

// Vector Z with omega(Z, .) = zeta.
Vec raise_covector(const Vec& zeta, const Mat& omega);
// Covector omega(Z, .).
Vec lower_vector(const Vec& z, const Mat& omega);

// Components of t in the basis whose vectors are the columns of C.
ModelTensor change_basis(const ModelTensor& t, const Mat& C);

// (A . T): derivation action of A in gl(V) on a tensor.
ModelTensor act(const Mat& A, const ModelTensor& t);

} // namespace qskew
