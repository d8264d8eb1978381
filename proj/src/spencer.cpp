#include "qskew/spencer.hpp"

namespace qskew {

Module parse_module(const std::string& s)
{
    if (s == "E") return Module::E;
    if (s == "Lambda2E") return Module::Lambda2E;
    if (s == "S2_0E") return Module::S2_0E;
    if (s == "S2E") return Module::S2E;
    if (s == "K") return Module::K;
    if (s == "Lambda3E") return Module::Lambda3E;
    if (s == "S3_0E") return Module::S3_0E;
    throw ValidationError("unknown module: " + s);
}

const char* module_name(Module m)
{
    switch (m) {
    case Module::E: return "E";
    case Module::Lambda2E: return "Lambda2E";
    case Module::S2_0E: return "S2_0E";
    case Module::S2E: return "S2E";
    case Module::K: return "K";
    case Module::Lambda3E: return "Lambda3E";
    case Module::S3_0E: return "S3_0E";
    }
    return "?";
}

const char* partner_name(Partner p)
{
    switch (p) {
    case Partner::None: return "none";
    case Partner::Hh: return "Hh";
    case Partner::S3Hh: return "S3Hh";
    }
    return "?";
}

const std::vector<Module>& table_modules()
{
    static const std::vector<Module> m = {Module::E, Module::Lambda2E, Module::S2_0E, Module::K, Module::Lambda3E, Module::S3_0E};
    return m;
}

long rep_dim(Module m, int n)
{
    if (n < 2) throw PreconditionError("module dimensions need n >= 2");
    long N = n;
    switch (m) {
    case Module::E: return 2 * N;
    case Module::Lambda2E: return N * (2 * N - 1);
    case Module::S2_0E: return 2 * N * N + N - 1;
    case Module::S2E: return N * (2 * N + 1);
    case Module::K: return 8 * (N * N * N - N) / 3;
    case Module::Lambda3E: return 2 * N * (2 * N - 1) * (N - 1) / 3;
    case Module::S3_0E: return 2 * N * (2 * N - 1) * (N + 2) / 3;
    }
    throw ValidationError("unknown module");
}

long real_form_dim(Module m, Partner p, int n)
{
    long d = rep_dim(m, n);
    switch (p) {
    case Partner::Hh: return 2 * d;
    case Partner::S3Hh: return 4 * d;
    case Partner::None: return d;
    }
    return d;
}

long decomposition_dim(const std::vector<DecompositionTerm>& terms, int n)
{
    long s = 0;
    for (const auto& t : terms) s += t.multiplicity * real_form_dim(t.module, t.partner, n);
    return s;
}

std::vector<DecompositionTerm> torsion_decomposition()
{
    return {{1, Module::Lambda3E, Partner::S3Hh, ""}, {1, Module::K, Partner::S3Hh, ""},
            {1, Module::E, Partner::S3Hh, ""},        {1, Module::Lambda3E, Partner::Hh, ""},
            {2, Module::K, Partner::Hh, ""},          {3, Module::E, Partner::Hh, ""},
            {1, Module::S3_0E, Partner::Hh, ""}};
}

std::vector<DecompositionTerm> lambda3_decomposition()
{
    return {{1, Module::Lambda3E, Partner::S3Hh, ""}, {1, Module::K, Partner::Hh, ""}, {1, Module::E, Partner::Hh, ""}};
}

std::vector<DecompositionTerm> type_decomposition(const std::string& group)
{
    std::vector<DecompositionTerm> t = {{1, Module::K, Partner::S3Hh, "X1"},
                                        {1, Module::Lambda3E, Partner::S3Hh, "X2"},
                                        {1, Module::K, Partner::Hh, "X3"},
                                        {1, Module::E, Partner::Hh, "X4"},
                                        {1, Module::S3_0E, Partner::Hh, "X5"}};
    if (group == "so_star") {
        t.push_back({1, Module::E, Partner::S3Hh, "X6"});
        t.push_back({1, Module::E, Partner::Hh, "X7"});
    } else if (group != "so_star_sp1") {
        throw ValidationError("unknown group: " + group);
    }
    return t;
}

std::vector<DecompositionTerm> so_star_module_decomposition()
{
    return {{2, Module::Lambda3E, Partner::Hh, ""}, {3, Module::K, Partner::Hh, ""},
            {4, Module::E, Partner::Hh, ""},        {1, Module::S3_0E, Partner::Hh, ""}};
}

std::vector<SVec> spencer_images(const SubalgebraBasis& g)
{
    int N = 4 * g.n;
    std::vector<SVec> out;
    out.reserve(static_cast<std::size_t>(N) * g.generators.size());
    EndForm alpha(static_cast<std::size_t>(N), Mat(N, N));
    for (int l = 0; l < N; ++l)
        for (const auto& A : g.generators) {
            alpha[l] = A;
            out.push_back(spencer_delta_packed(alpha));
            alpha[l] = Mat(N, N);
        }
    return out;
}

SpencerReport prolongation_dim(const SubalgebraBasis& g)
{
    SpencerReport r;
    r.n = g.n;
    r.algebra = g.name;
    r.torsion_dim = torsion_dim(g.n);
    auto images = spencer_images(g);
    r.domain_dim = static_cast<int>(images.size());
    r.image_dim = rank_of(images, r.torsion_dim);
    r.kernel_dim = r.domain_dim - r.image_dim;
    r.cohomology_dim = r.torsion_dim - r.image_dim;
    return r;
}

SpencerReport cohomology_dims(const SubalgebraBasis& g)
{
    SpencerReport r = prolongation_dim(g);
    if (g.n >= 2 && (g.name == "so_star" || g.name == "so_star_sp1"))
        r.expected_cohomology_dim = decomposition_dim(type_decomposition(g.name), g.n);
    return r;
}

} // namespace qskew
