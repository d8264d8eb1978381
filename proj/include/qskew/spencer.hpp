#pragma once

#include <string>
#include <vector>

#include "qskew/lie_algebras.hpp"
#include "qskew/torsion.hpp"

namespace qskew {

// SO*(2n)-modules with closed-form complex dimensions.
enum class Module { E, Lambda2E, S2_0E, S2E, K, Lambda3E, S3_0E };
enum class Partner { None, Hh, S3Hh };

Module parse_module(const std::string& s);
const char* module_name(Module m);
const char* partner_name(Partner p);
const std::vector<Module>& table_modules();

// Complex dimension; needs n >= 2.
long rep_dim(Module m, int n);
// Real dimension of [W Hh] (2 dim W), [W S^3Hh] (4 dim W), or W alone (dim W).
long real_form_dim(Module m, Partner p, int n);

struct DecompositionTerm {
    int multiplicity;
    Module module;
    Partner partner;
    std::string label;   // type name such as "X1", empty when unnamed
};
long decomposition_dim(const std::vector<DecompositionTerm>& terms, int n);

// Lambda^2 V* (x) V = [(L3E + K + E) S3Hh] + [(L3E + 2K + 3E + S3_0E) Hh].
std::vector<DecompositionTerm> torsion_decomposition();
// Lambda^3 V* = [L3E S3Hh] + [K Hh] + [E Hh].
std::vector<DecompositionTerm> lambda3_decomposition();
// Intrinsic torsion modules X1..X7 (so_star) or X1..X5 (so_star_sp1).
std::vector<DecompositionTerm> type_decomposition(const std::string& group);
// The same cohomology written with SO*(2n)-modules: each W counts 2 dim W.
std::vector<DecompositionTerm> so_star_module_decomposition();

struct SpencerReport {
    int n = 0;
    std::string algebra;
    int domain_dim = 0;        // dim V* (x) g
    int image_dim = 0;
    int kernel_dim = 0;        // dim of the first prolongation
    int torsion_dim = 0;       // dim Lambda^2 V* (x) V
    int cohomology_dim = 0;
    long expected_cohomology_dim = -1;   // decomposition sum when known
};

// delta(e^l (x) g_k) for all l and generators g_k.
std::vector<SVec> spencer_images(const SubalgebraBasis& g);
SpencerReport prolongation_dim(const SubalgebraBasis& g);
SpencerReport cohomology_dims(const SubalgebraBasis& g);

} // namespace qskew
