#pragma once

#include <string>

#include "qskew/model_space.hpp"
#include "qskew/quaternion.hpp"

namespace qskew {

enum class BasisKind { Adapted, SkewHermitian, Darboux };
const char* basis_kind_name(BasisKind k);

// Columns are the new basis vectors in old coordinates.
struct BasisChange {
    int n = 0;
    Mat matrix;
    BasisKind kind = BasisKind::Adapted;
};

// Greedy adapted basis: the first standard vector outside the current
// quaternionic span, completed by its images under J_1, J_2, J_3. In the new
// basis the triple equals standard_triple(n); this is checked on return.
BasisChange adapted_basis_from_triple(const HypercomplexTriple& h);

// Sesquilinear evaluation x* h y for quaternionic column vectors.
Quaternion sesquilinear(const QuatMatrix& h, const std::vector<Quaternion>& x, const std::vector<Quaternion>& y);

struct GramSchmidtResult {
    QuatMatrix C;        // columns: the new basis
    QuatMatrix gram;     // C* h C
    bool normalized = false;   // gram == j Id (float mode)
};

// Quaternionic Gram-Schmidt for a non-degenerate skew-Hermitian h (h* = -h).
// Float mode returns C with C* h C = j Id; exact mode stops before the
// square-root scaling and returns an imaginary diagonal C* h C.
GramSchmidtResult quat_gram_schmidt(const QuatMatrix& h, double tolerance = 1e-12);

// The unit q with conj(q) u q = j for a unit imaginary u (float mode):
// q = (1 - u j)/|1 - u j|, and q = i when u = -j.
Quaternion rotation_to_j(const Quaternion& u);

// C_{2m} = ((-1/2 k Id, i Id), (-1/2 j Id, -Id)).
QuatMatrix darboux_matrix(int m);
// True iff a quaternionic Darboux basis exists in quaternionic dimension n,
// i.e. n is even. Even n is certified by the exact product
// C* (j Id) C = ((0, Id), (-Id, 0)); odd n by the identity Re(conj(q) j q) = 0.
bool darboux_parity_obstruction(int n);
// The exact check that Re(conj(q) j q) vanishes as a quadratic form in q.
bool real_part_of_conjugated_j_vanishes();

} // namespace qskew
