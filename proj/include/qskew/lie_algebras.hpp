#pragma once

#include <string>
#include <vector>

#include "qskew/model_space.hpp"
#include "qskew/quaternion.hpp"

namespace qskew {

// A linear subspace of gl(4n, R) spanned by independent generators.
struct SubalgebraBasis {
    int n = 0;
    std::string name;
    std::vector<Mat> generators;

    int dim() const { return static_cast<int>(generators.size()); }
};

// Row-major vectorization of a square matrix and its inverse.
SVec vectorize(const Mat& m);
Mat unvectorize(const SVec& v, int size);

// Names: so_star, sp1, so_star_sp1, gl_quat, sl_quat, sp_real, and s2e for
// the space [S^2 E]* of endomorphisms A commuting with the triple with
// omega(A., .) antisymmetric (not a subalgebra; identity included).
SubalgebraBasis build_subalgebra(const std::string& name, int n);
const std::vector<std::string>& subalgebra_names();
// Closed-form dimension of the named space.
int expected_dimension(const std::string& name, int n);

// Exact certificates.
bool generators_independent(const SubalgebraBasis& g);
bool bracket_closed(const SubalgebraBasis& g);
bool contains(const SubalgebraBasis& big, const std::vector<Mat>& elements);
bool same_subspace(const SubalgebraBasis& a, const SubalgebraBasis& b);

// Infinitesimal stabilizer {A in within : A . t = 0} for the derivation
// action; an empty `within` means all of gl(V).
SubalgebraBasis stabilizer(const ModelTensor& t, const SubalgebraBasis* within = nullptr);
// {A in within : [A, J_a] in span(J_1, J_2, J_3) for all a}.
SubalgebraBasis normalizer_of_triple(const HypercomplexTriple& h, const SubalgebraBasis* within = nullptr);
SubalgebraBasis intersection(const SubalgebraBasis& a, const SubalgebraBasis& b);

// so*(2m) inside gl(m, H): quaternionic m x m matrices X with X* h + h X = 0.
struct GradingReport {
    int m = 0;
    int depth = 0;
    QuatMatrix form;                     // the skew-Hermitian h
    std::vector<int> layer_dims;         // degrees -depth .. depth
    int algebra_dim = 0;
    bool graded = false;                 // the algebra is the direct sum of its layers
    bool brackets_ok = false;            // [g_i, g_j] in g_{i+j}, zero when |i+j| > depth
    int cartan_dim = 0;
    int rank = 0;
    bool cartan_abelian = false;
    bool cartan_self_centralizing = false;
    bool passed() const;
};

// depth 1 needs m even (so*(4k)); depth 2 needs m odd (so*(4k+2)).
GradingReport grading_check(int m, int depth);

} // namespace qskew
