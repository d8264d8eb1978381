#pragma once

#include "qskew/lie_algebras.hpp"
#include "qskew/quaternion.hpp"
#include "qskew/random.hpp"
#include "qskew/torsion.hpp"

namespace qskew {

// Seeded random inputs for the CLI, tests and benchmarks.
ModelTensor random_torsion(int n, Rng& rng);
EndForm random_end_form(const SubalgebraBasis& g, Rng& rng);
// Raise of a random 3-form.
ModelTensor random_raised_3form(int n, const Mat& omega, Rng& rng);

// Basis of {T : pi_H(T) = T, Tr4(T; J) = 0 for every J}, the admissible
// torsions of the quaternionic construction.
std::vector<SVec> admissible_qs_torsion_basis(int n);
ModelTensor random_from_basis(int n, const std::vector<SVec>& basis, Rng& rng);
// nabla omega(X; Y, Z) = omega(L_X Y, Z) with L_X random in [S^2 E]*.
ModelTensor random_hermitian_nabla(int n, const Mat& omega, Rng& rng);

// Random non-degenerate skew-Hermitian quaternionic matrix (h* = -h).
QuatMatrix random_skew_hermitian(int size, Field f, Rng& rng);
// G J_a G^{-1} for a random invertible rational G.
HypercomplexTriple random_conjugate_triple(const HypercomplexTriple& h, Rng& rng, Mat* G_out = nullptr);

} // namespace qskew
