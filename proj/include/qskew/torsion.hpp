#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qskew/model_space.hpp"

namespace qskew {

// The torsion space Lambda^2 V* (x) V with V = R^{4n}, packed as
// index(i < j, k) = pair(i, j) * 4n + k where pair enumerates i < j
// lexicographically. Its dimension is 8n^2 (4n - 1).
int torsion_dim(int n);
int torsion_index(int n, int i, int j, int k);
SVec pack(const ModelTensor& phi);
ModelTensor unpack(int n, const SVec& v);

// Elements of V* (x) gl(V): alpha[l] is the endomorphism alpha(e_l).
using EndForm = std::vector<Mat>;

// (Co, Co, Contra) tensor with entry (l, j, k) = alpha(e_l)_{kj}, i.e.
// A(X, Y) = A_X Y, and its inverse.
ModelTensor to_tensor(int n, const EndForm& alpha);
EndForm to_end_form(const ModelTensor& a);

// delta(alpha)(X, Y) = alpha(X) Y - alpha(Y) X.
ModelTensor spencer_delta(const EndForm& alpha);
SVec spencer_delta_packed(const EndForm& alpha);

// psi(X, Y) = phi(A X, Y), phi(X, A Y) and A phi(X, Y) respectively.
ModelTensor precompose_first(const ModelTensor& phi, const Mat& A);
ModelTensor precompose_second(const ModelTensor& phi, const Mat& A);
ModelTensor postcompose(const Mat& A, const ModelTensor& phi);

// pi_J(phi)(X, Y) = 1/4 (phi(X, Y) + J(phi(JX, Y) + phi(X, JY)) - phi(JX, JY)).
ModelTensor proj_Ja(const ModelTensor& phi, const Mat& J);
// pi_H = 2/3 (pi_J1 + pi_J2 + pi_J3).
ModelTensor proj_H(const ModelTensor& phi, const HypercomplexTriple& h);

// Projection onto raised 3-forms: raise(1/3 cyclic sum of lower(phi)).
ModelTensor alt_project(const ModelTensor& phi, const Mat& omega);
// The same projection written as 1/3 (phi_X Y - phi_X^T Y + phi_Y^T X).
ModelTensor alt_operator(const ModelTensor& phi, const Mat& omega);

// Traces of a (Co, Co, Contra) tensor A(X, Y) = A_X Y:
//   Tr1(A)(X) = tr A(., X),  Tr2(A)(X) = tr A(X, .),
//   Tr3(A)(X) = tr(Y -> (A_Y)^T X),  Tr4(A; J)(X) = tr(J A(JX, .)).
Vec trace1(const ModelTensor& a);
Vec trace2(const ModelTensor& a);
Vec trace3(const ModelTensor& a, const Mat& omega);
Vec trace4(const ModelTensor& a, const Mat& J);
// M[a][b](X) = tr(J_a A(J_b X, .)); Tr4 for J = sum mu_a J_a is sum mu_a mu_b M[a][b].
std::array<std::array<Vec, 3>, 3> trace4_family(const ModelTensor& a, const HypercomplexTriple& h);

struct Traces {
    Vec tr1, tr2, tr3, tr4;
};
// Tr4 is evaluated on J_1 and on (3 J_1 + 4 J_2)/5; a disagreement throws
// PreconditionError because the input lies outside the family on which Tr4
// does not depend on the chosen complex structure.
Traces traces(const ModelTensor& a, const Mat& omega, const HypercomplexTriple& h);

// The four components isomorphic to [EH]*, as elements of V* (x) gl(V):
//   A: zeta (x) id
//   B: Asym(pi_11(omega(X, .) (x) Z))     (symplectic antisymmetrization)
//   C: Sym(pi_11(omega(X, .) (x) Z))
//   D: sum_a (zeta o J_a) (x) J_a
// with pi_11(L) = 1/4 (L - sum_a J_a L J_a).
EndForm component_A(const Vec& zeta, int n);
EndForm component_B(const Vec& Z, const Mat& omega, const HypercomplexTriple& h);
EndForm component_C(const Vec& Z, const Mat& omega, const HypercomplexTriple& h);
EndForm component_D(const Vec& zeta, const HypercomplexTriple& h);
EndForm operator+(const EndForm& a, const EndForm& b);
EndForm operator*(const Q& s, const EndForm& a);

// The covector Z^T = omega(Z, .).
Vec flat_of(const Vec& Z, const Mat& omega);

// rho(A) phi (X, Y) = A phi(X, Y) - phi(AX, Y) - phi(X, AY).
ModelTensor rho(const Mat& A, const ModelTensor& phi);
// sum_a rho(J_a)^2; eigenvalue -k(k+2) on the spin-k/2 isotypic part.
ModelTensor casimir(const ModelTensor& phi, const HypercomplexTriple& h);

struct CasimirSplit {
    ModelTensor spin32;   // eigenvalue -15
    ModelTensor spin12;   // eigenvalue -3
};
CasimirSplit casimir_split(const ModelTensor& phi, const HypercomplexTriple& h);

// Matrix of a linear map on the packed torsion space, built column by column.
SparseMat torsion_operator(int n, const std::function<ModelTensor(const ModelTensor&)>& f);
// Linear map from the packed torsion space to covector tuples (concatenated).
SparseMat covector_operator(int n, int count, const std::function<std::vector<Vec>(const ModelTensor&)>& f);

} // namespace qskew
