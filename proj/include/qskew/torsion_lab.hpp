#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "qskew/lie_algebras.hpp"
#include "qskew/spencer.hpp"
#include "qskew/torsion.hpp"

namespace qskew {

enum class TorsionGroup { SoStar, SoStarSp1 };

TorsionGroup parse_group(const std::string& s);
const char* group_name(TorsionGroup g);
const char* algebra_name(TorsionGroup g);

constexpr int kTypeCount = 7;

// Exact bases of the torsion types for one (n, group), all packed in the
// torsion space. Spin blocks are the Casimir eigenspaces Eig(-15), Eig(-3).
struct TypeBasisCache {
    int n = 0;
    TorsionGroup group = TorsionGroup::SoStar;
    HypercomplexTriple triple;
    Mat omega;

    std::vector<SVec> image_delta;                      // im delta(V* (x) g)
    std::vector<SVec> complement;                       // the normalization space D
    std::array<std::vector<SVec>, kTypeCount> model;    // the types as invariant subspaces
    std::array<std::vector<SVec>, kTypeCount> types;    // their realizations inside D

    // Certificates, all exact.
    bool complement_spans = false;     // D + im delta = whole space, direct
    bool types_direct = false;         // types independent, sum to D
    bool dims_match = false;           // type dims equal the decomposition dims

    std::array<int, kTypeCount> type_dims() const;
    // The D-component of a packed torsion vector along D (+) im delta.
    SVec project(const SVec& v) const;
    // Coefficients of the D-component along the concatenated type bases.
    std::vector<Vec> type_coefficients(const SVec& v) const;

    struct Block;
    std::vector<std::shared_ptr<const Block>> blocks;   // Eig(-15), Eig(-3)
};

// Builds the cache from scratch; throws Error when a dimension check fails.
std::shared_ptr<const TypeBasisCache> build_type_bases(int n, TorsionGroup group);
// Process-wide cache: built once per (n, group), then shared read-only.
std::shared_ptr<const TypeBasisCache> type_bases(int n, TorsionGroup group);

// The components of the intrinsic torsion class of T in D.
ModelTensor intrinsic_representative(const ModelTensor& T, const TypeBasisCache& cache);

struct TorsionReport {
    std::array<ModelTensor, kTypeCount> components;
    std::array<bool, kTypeCount> present{};
    std::array<double, kTypeCount> norms{};
    ModelTensor representative;
    std::string label;      // "torsion-free" or e.g. "X_{234}"

    bool torsion_free() const;
    std::vector<int> present_types() const;   // 1-based
};

// Exact mode flags a component present when it is nonzero; float mode when
// its Frobenius norm exceeds tolerance times the norm of T.
TorsionReport classify(const ModelTensor& T, const TypeBasisCache& cache, Field field = Field::Rational,
                       double tolerance = 1e-9);
std::string type_label(const std::array<bool, kTypeCount>& present);

// Torsion of the hypercomplex skew-Hermitian connection: T_H + delta(A) with
// omega(A(X, Y), Z) = 1/2 (nabla_X omega)(Y, Z).
ModelTensor minimal_hsH_torsion(const ModelTensor& T_H, const ModelTensor& nabla_omega, const Mat& omega,
                                const HypercomplexTriple& h);
// Torsion of the quaternionic skew-Hermitian connection:
// T_Q + delta(A + C(Z3) + D(zeta4)), Z3^T = Tr2(A)/(n+1), zeta4 = -Tr2(A)/(4(n+1)).
ModelTensor minimal_qsH_torsion(const ModelTensor& T_Q, const ModelTensor& nabla_omega, const Mat& omega,
                                const HypercomplexTriple& h);

// The A of both constructions: raise of 1/2 nabla omega.
EndForm half_raised(const ModelTensor& nabla_omega, const Mat& omega);
// True when every slice nabla_omega(X; ., .) is antisymmetric and J_a-invariant.
bool is_hermitian_valued(const ModelTensor& nabla_omega, const HypercomplexTriple& h);

// The covectors 2Tr1 + Tr3, M_aa - Tr1 (a = 1..3) and M_ab + M_ba (a < b),
// whose common kernel in D(so*) is D(so* + sp1).
std::vector<Vec> normalization_covectors(const ModelTensor& phi, const Mat& omega, const HypercomplexTriple& h);
// raise of the complete antisymmetrization of 2 omega (x) zeta.
ModelTensor raised_alt_omega_zeta(const Vec& zeta, const Mat& omega);
// Raise of the 3-form with the single independent entry (a < b < c) equal to 1.
ModelTensor raised_basis_3form(int n, int a, int b, int c, const Mat& omega);

} // namespace qskew
