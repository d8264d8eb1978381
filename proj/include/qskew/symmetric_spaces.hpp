#pragma once

#include <string>
#include <vector>

#include "qskew/model_space.hpp"
#include "qskew/quaternion.hpp"

namespace qskew {

// Real matrix of x -> A x on H^c (left multiplication of entries), with
// the real coordinates of entry r ordered (1, i, j, k) at 4 r .. 4 r + 3.
Mat realify(const QuatMatrix& A);

enum class SymmetricFamily { SoStar, SU, SLQuat };

struct FamilySpec {
    SymmetricFamily family = SymmetricFamily::SoStar;
    int n = 2;        // so*(2n+2) or sl(n+1, H)
    int p = 1, q = 0; // su(2+p, q)
};

// Parses "so_star:N", "su:P,Q" or "sl_quat:N".
FamilySpec parse_family(const std::string& s);
std::string family_label(const FamilySpec& f);

// k = l + m in a faithful real matrix model; m is the Killing-orthogonal
// complement of l.
struct SymmetricPair {
    std::string name;
    std::string model;                 // description of the matrix model
    FamilySpec spec;
    std::vector<Mat> k, l, m;
    Mat U;                             // central element of l
    std::vector<Mat> sp1;              // l-elements whose ad spans Q (empty: Q is a commutant)
    Mat killing;                       // Killing form on k in the k basis
    bool cartan_ok = false;            // [l,l] in l, [l,m] in m, [m,m] in l
    bool killing_nondegenerate_on_m = false;
    int quaternionic_dim() const { return static_cast<int>(m.size()) / 4; }
};

SymmetricPair build_pair(const FamilySpec& spec);

struct StructureCertificate {
    Mat I;                         // ad(U) on m, scaled so that I^2 = lambda Id
    Q lambda = 0;                  // -1 (complex) or +1 (para-complex) when normalized
    bool normalized = false;
    Mat omega;                     // B(I., .) on m, in m coordinates
    HypercomplexTriple triple;     // Q on m, in m coordinates
    Mat adapted;                   // adapted basis change for the triple
    Mat omega_adapted;             // omega in the adapted basis
    bool triple_ok = false;        // quaternionic relations
    bool omega_invariant = false;  // ad(X) . omega = 0 for X in l
    bool q_invariant = false;      // [ad(X), Q] in Q for X in l
    bool scalar = false;           // omega scalar for Q after the adapted change
    bool isotropy_in_stabilizer = false;   // ad(l) in stab(omega) and normalizer(Q)
    std::string q_source;
    bool passed() const
    {
        return triple_ok && omega_invariant && q_invariant && scalar && isotropy_in_stabilizer;
    }
};

// The invariant (Q, omega) at the origin. With `perturb`, U is replaced by
// U + (a non-central element of l), the negative control.
StructureCertificate invariant_structure(const SymmetricPair& pair, bool perturb = false);

} // namespace qskew
