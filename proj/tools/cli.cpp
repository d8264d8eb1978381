#include "cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qskew/bases.hpp"
#include "qskew/lie_algebras.hpp"
#include "qskew/random.hpp"
#include "qskew/samples.hpp"
#include "qskew/spencer.hpp"
#include "qskew/symmetric_spaces.hpp"
#include "qskew/tensor_io.hpp"
#include "qskew/torsion_lab.hpp"

namespace qskew::cli {
namespace {

struct Globals {
    std::string field;              // empty: take the field of the input documents
    std::uint64_t seed = 20261019;
    std::optional<double> tolerance;
};

// The field in force for a command whose input documents declare `declared`.
Field effective_field(const Globals& g, Field declared)
{
    if (g.field.empty()) return declared;
    Field f = parse_field(g.field);
    if (f != declared)
        throw ModeMismatch(std::string("--field ") + field_name(f) + " conflicts with an input document in " +
                           field_name(declared) + " mode");
    return f;
}

double tolerance_for(const Globals& g, Field f)
{
    if (g.tolerance && f != Field::Float64) throw ModeMismatch("--tolerance applies to float64 mode only");
    return g.tolerance.value_or(1e-9);
}

json dims_report(int n)
{
    json modules = json::object();
    for (Module m : table_modules()) modules[module_name(m)] = rep_dim(m, n);

    auto terms_json = [&](const std::vector<DecompositionTerm>& terms) {
        json out = json::array();
        for (const auto& t : terms) {
            json e = {{"multiplicity", t.multiplicity},
                      {"module", module_name(t.module)},
                      {"partner", partner_name(t.partner)},
                      {"real_dim", real_form_dim(t.module, t.partner, n)}};
            if (!t.label.empty()) e["label"] = t.label;
            out.push_back(e);
        }
        return out;
    };
    long N = 4L * n;
    json dec = json::object();
    dec["torsion"] = {{"terms", terms_json(torsion_decomposition())},
                      {"sum", decomposition_dim(torsion_decomposition(), n)},
                      {"direct", 8L * n * n * (4L * n - 1)}};
    dec["lambda3"] = {{"terms", terms_json(lambda3_decomposition())},
                      {"sum", decomposition_dim(lambda3_decomposition(), n)},
                      {"direct", N * (N - 1) * (N - 2) / 6}};
    for (const char* g : {"so_star", "so_star_sp1"})
        dec[std::string("intrinsic_torsion_") + g] = {{"terms", terms_json(type_decomposition(g))},
                                                      {"sum", decomposition_dim(type_decomposition(g), n)}};
    dec["so_star_modules"] = {{"terms", terms_json(so_star_module_decomposition())},
                              {"sum", decomposition_dim(so_star_module_decomposition(), n)}};
    return {{"command", "dims"}, {"n", n}, {"modules", modules}, {"decompositions", dec}};
}

json spencer_report(const std::string& algebra, int n)
{
    auto g = build_subalgebra(algebra, n);
    auto r = cohomology_dims(g);
    json out = {{"command", "spencer"},
                {"algebra", r.algebra},
                {"n", r.n},
                {"algebra_dim", g.dim()},
                {"bracket_closed", bracket_closed(g)},
                {"domain_dim", r.domain_dim},
                {"image_dim", r.image_dim},
                {"kernel_dim", r.kernel_dim},
                {"torsion_dim", r.torsion_dim},
                {"cohomology_dim", r.cohomology_dim}};
    if (r.expected_cohomology_dim >= 0) {
        out["expected_cohomology_dim"] = r.expected_cohomology_dim;
        out["matches_expected"] = r.expected_cohomology_dim == r.cohomology_dim;
    }
    return out;
}

// A structure (omega, triple) together with the adapted basis C in which it
// becomes the standard one.
struct Frame {
    int n = 0;
    HypercomplexTriple triple;
    Mat omega;
    Mat C;
    bool standard = true;
};

Frame make_frame(int n, std::optional<ModelTensor> omega, std::optional<HypercomplexTriple> triple)
{
    Frame f;
    f.n = n;
    f.triple = triple ? *triple : standard_triple(n);
    ModelTensor w = omega ? *omega : standard_omega(n);
    if (f.triple.n != n || w.n() != n) throw ValidationError("structure documents disagree on n");
    if (!satisfies_quaternion_relations(f.triple))
        throw PreconditionError("the triple does not satisfy the quaternionic relations", 0);
    auto check = is_scalar_2form(w, f.triple);
    if (!check.scalar) throw PreconditionError("omega is not a scalar 2-form: " + check.detail, check.condition);
    f.omega = w.to_matrix();
    f.C = adapted_basis_from_triple(f.triple).matrix;
    f.standard = f.C == Mat::identity(4 * n);
    if (f.C.transpose() * f.omega * f.C != standard_omega(n).to_matrix())
        throw PreconditionError("omega is scalar but differs from the standard form in the adapted basis of the "
                                "triple; supply the structure in a quaternionic Darboux frame",
                                0);
    return f;
}

ModelTensor load_2form(const json& j)
{
    auto doc = tensor_from_json(j);
    if (doc.kind != "2form") throw ValidationError("expected a document of kind 2form, got " + doc.kind);
    return doc.tensor;
}

// {"kind": "structure", "n": N, "omega": <2form>, "triple": <triple>}, either
// member optional, or a bare 2form document.
Frame load_structure(const json& j)
{
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("structure document needs a kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "2form") {
        auto w = load_2form(j);
        return make_frame(w.n(), w, std::nullopt);
    }
    if (kind != "structure") throw ValidationError("expected a structure or 2form document, got " + kind);
    int n = j.at("n").get<int>();
    std::optional<ModelTensor> w;
    std::optional<HypercomplexTriple> h;
    if (j.contains("omega")) w = load_2form(j.at("omega"));
    if (j.contains("triple")) h = triple_from_json(j.at("triple"));
    return make_frame(n, w, h);
}

ModelTensor load_torsion(const json& j, Field* declared)
{
    auto doc = tensor_from_json(j);
    if (doc.kind != "torsion") throw ValidationError("expected a document of kind torsion, got " + doc.kind);
    if (declared) *declared = doc.field;
    return doc.tensor;
}

Q squared_norm(const ModelTensor& t)
{
    Q s = 0;
    for (const auto& x : t.data()) s += x * x;
    return s;
}

json classification_json(const TorsionReport& rep, const TypeBasisCache& cache, Field field)
{
    json comps = json::object();
    auto dims = cache.type_dims();
    for (int t = 0; t < kTypeCount; ++t) {
        if (dims[t] == 0) continue;
        json c = {{"dim", dims[t]}, {"present", rep.present[t]}};
        if (field == Field::Rational)
            c["norm_squared"] = rational_string(squared_norm(rep.components[t]));
        else
            c["norm"] = rep.norms[t];
        comps["X" + std::to_string(t + 1)] = c;
    }
    json out = {{"type", rep.label}, {"torsion_free", rep.torsion_free()}, {"present", rep.present_types()},
                {"components", comps}};
    // The complement of im delta is not unique for so*; the X6 and X7 parts depend on it.
    if (dims[5] > 0)
        out["type_split"] = "types realized inside the minimal-connection normalization space; "
                            "another invariant complement of im delta changes the X1/X6 and X5/X7 components";
    return out;
}

json classify_report(const Globals& g, const std::string& group_s, const json& structure, const json& torsion)
{
    TorsionGroup group = parse_group(group_s);
    Frame f = load_structure(structure);
    Field declared = Field::Rational;
    ModelTensor T = load_torsion(torsion, &declared);
    if (T.n() != f.n) throw ValidationError("torsion and structure disagree on n");
    Field field = effective_field(g, declared);
    double tol = tolerance_for(g, field);
    ModelTensor Ts = f.standard ? T : change_basis(T, f.C);
    auto cache = type_bases(f.n, group);
    auto rep = classify(Ts, *cache, field, tol);
    json out = {{"command", "classify"}, {"group", group_name(group)}, {"n", f.n}, {"field", field_name(field)},
                {"adapted_frame", f.standard ? "standard" : "changed"}};
    out.update(classification_json(rep, *cache, field));
    out["representative"] = tensor_to_json({"torsion", Field::Rational, rep.representative});
    return out;
}

struct MinimalInputs {
    Frame frame;
    ModelTensor T;
    ModelTensor nabla_omega;
    Field declared = Field::Rational;
};

// {"kind": "minimal_torsion_inputs", "n": N, "torsion": <torsion>,
//  "nabla_omega": <3tensor>, "omega": <2form>, "triple": <triple>}
MinimalInputs load_minimal_inputs(const json& j)
{
    if (!j.is_object() || j.value("kind", std::string()) != "minimal_torsion_inputs")
        throw ValidationError("expected a document of kind minimal_torsion_inputs");
    int n = j.at("n").get<int>();
    std::optional<ModelTensor> w;
    std::optional<HypercomplexTriple> h;
    if (j.contains("omega")) w = load_2form(j.at("omega"));
    if (j.contains("triple")) h = triple_from_json(j.at("triple"));
    MinimalInputs in{make_frame(n, w, h), {}, {}, Field::Rational};
    in.T = load_torsion(j.at("torsion"), &in.declared);
    auto nw = tensor_from_json(j.at("nabla_omega"));
    if (nw.kind != "3tensor") throw ValidationError("nabla_omega must be a document of kind 3tensor");
    if (nw.field != in.declared) throw ModeMismatch("torsion and nabla_omega are in different modes");
    in.nabla_omega = nw.tensor;
    if (in.T.n() != n || in.nabla_omega.n() != n) throw ValidationError("input documents disagree on n");
    return in;
}

MinimalInputs random_minimal_inputs(const std::string& mode, int n, std::uint64_t seed)
{
    Rng rng(seed);
    MinimalInputs in{make_frame(n, std::nullopt, std::nullopt), {}, {}, Field::Rational};
    if (mode == "qsH") {
        in.T = random_from_basis(n, admissible_qs_torsion_basis(n), rng);
    } else {
        in.T = proj_H(random_torsion(n, rng), in.frame.triple);
    }
    in.nabla_omega = random_hermitian_nabla(n, in.frame.omega, rng);
    return in;
}

json minimal_torsion_report(const Globals& g, const std::string& mode, const MinimalInputs& in)
{
    if (mode != "hsH" && mode != "qsH") throw ValidationError("--mode must be hsH or qsH");
    effective_field(g, in.declared);
    const Frame& f = in.frame;
    ModelTensor T = f.standard ? in.T : change_basis(in.T, f.C);
    ModelTensor nw = f.standard ? in.nabla_omega : change_basis(in.nabla_omega, f.C);
    Mat W = standard_omega(f.n).to_matrix();
    HypercomplexTriple h = standard_triple(f.n);
    ModelTensor out = mode == "hsH" ? minimal_hsH_torsion(T, nw, W, h) : minimal_qsH_torsion(T, nw, W, h);

    TorsionGroup group = mode == "hsH" ? TorsionGroup::SoStar : TorsionGroup::SoStarSp1;
    auto cache = type_bases(f.n, group);
    SVec packed = pack(out);
    bool in_D = is_zero(add(cache->project(packed), packed, Q(-1)));
    auto rep = classify(out, *cache);

    json r = {{"command", "minimal-torsion"},
              {"mode", mode},
              {"n", f.n},
              {"group", group_name(group)},
              {"in_normalization_space", in_D},
              {"type", rep.label}};
    if (mode == "qsH") {
        bool vanish = true;
        for (const auto& c : normalization_covectors(out, W, h))
            for (const auto& x : c) vanish = vanish && sgn(x) == 0;
        r["normalization_covectors_vanish"] = vanish;
    }
    ModelTensor back = f.standard ? out : change_basis(out, *inverse(f.C));
    r["torsion"] = tensor_to_json({"torsion", Field::Rational, back});
    return r;
}

QuatMatrix to_field(const QuatMatrix& A, Field f)
{
    if (A.mode() == f) return A;
    if (f == Field::Rational) throw ModeMismatch("a float64 matrix cannot be used in rational mode");
    QuatMatrix B(A.rows(), A.cols(), f);
    auto cv = [](const Scalar& s) { return Scalar::real(s.to_double()); };
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            const auto& q = A(r, c);
            B(r, c) = Quaternion(cv(q.w), cv(q.x), cv(q.y), cv(q.z));
        }
    return B;
}

json gram_schmidt_report(const Globals& g, const QuatMatrix& h_in)
{
    // A rational matrix may be run in float64 mode on request; the reverse is mode mixing.
    Field field = g.field.empty() ? h_in.mode() : parse_field(g.field);
    QuatMatrix h = to_field(h_in, field);
    double tol = g.tolerance.value_or(1e-12);
    if (g.tolerance && field != Field::Float64) throw ModeMismatch("--tolerance applies to float64 mode only");
    auto res = quat_gram_schmidt(h, tol);
    json out = {{"command", "gram-schmidt"},
                {"field", field_name(field)},
                {"size", h.rows()},
                {"normalized", res.normalized},
                {"C", quat_matrix_to_json(res.C)},
                {"gram", quat_matrix_to_json(res.gram)}};
    if (field == Field::Float64)
        out["residual"] = max_abs_diff(res.gram, QuatMatrix::scalar(h.rows(), Quaternion::unit_j(field)));
    return out;
}

json darboux_report(int m)
{
    if (m < 1) throw ValidationError("--m must be positive");
    QuatMatrix C = darboux_matrix(m);
    QuatMatrix P = quat_matmul(quat_matmul(conj_transpose(C), QuatMatrix::scalar(2 * m, Quaternion::unit_j(Field::Rational))), C);
    QuatMatrix S(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        S(i, m + i) = Quaternion::one(Field::Rational);
        S(m + i, i) = -Quaternion::one(Field::Rational);
    }
    json parity = json::object();
    for (int n = 1; n <= std::max(5, 2 * m + 1); ++n) parity[std::to_string(n)] = darboux_parity_obstruction(n);
    return {{"command", "darboux"},
            {"m", m},
            {"n", 2 * m},
            {"C", quat_matrix_to_json(C)},
            {"product", quat_matrix_to_json(P)},
            {"product_is_standard", P == S},
            {"darboux_basis_exists", parity}};
}

json certificate_json(const StructureCertificate& c)
{
    return {{"lambda", rational_string(c.lambda)},
            {"normalized", c.normalized},
            {"triple_ok", c.triple_ok},
            {"omega_invariant", c.omega_invariant},
            {"q_invariant", c.q_invariant},
            {"scalar", c.scalar},
            {"isotropy_in_stabilizer", c.isotropy_in_stabilizer},
            {"q_source", c.q_source},
            {"passed", c.passed()}};
}

json symspace_report(const std::string& family)
{
    auto pair = build_pair(parse_family(family));
    auto cert = invariant_structure(pair, false);
    auto control = invariant_structure(pair, true);
    return {{"command", "symspace"},
            {"family", family_label(pair.spec)},
            {"name", pair.name},
            {"model", pair.model},
            {"dims",
             {{"k", pair.k.size()}, {"l", pair.l.size()}, {"m", pair.m.size()}, {"quaternionic_dim", pair.quaternionic_dim()}}},
            {"cartan_ok", pair.cartan_ok},
            {"killing_nondegenerate_on_m", pair.killing_nondegenerate_on_m},
            {"certificate", certificate_json(cert)},
            {"negative_control", certificate_json(control)}};
}

json verify_structure_report(const json& omega_doc, const json& triple_doc)
{
    ModelTensor w = load_2form(omega_doc);
    HypercomplexTriple h = triple_from_json(triple_doc);
    if (w.n() != h.n) throw ValidationError("omega and triple disagree on n");
    if (!satisfies_quaternion_relations(h))
        throw PreconditionError("the triple does not satisfy the quaternionic relations", 0);
    auto check = is_scalar_2form(w, h);
    if (!check.scalar) throw PreconditionError("omega is not a scalar 2-form: " + check.detail, check.condition);

    json sigs = json::array();
    auto g = metrics_from(w, h);
    for (int a = 0; a < 3; ++a) {
        auto s = signature(g[a].to_matrix());
        sigs.push_back({{"metric", "g" + std::to_string(a + 1)}, {"pos", s.pos}, {"neg", s.neg}, {"zero", s.zero}});
    }
    auto stab_omega = stabilizer(w);
    auto stab_h = normalizer_of_triple(h, &stab_omega);
    SubalgebraBasis stab_H = stab_omega;
    for (const auto& J : h.J) stab_H = stabilizer(ModelTensor::from_matrix(h.n, J, Slot::Contra, Slot::Co), &stab_H);
    int n = h.n;
    return {{"command", "verify-structure"},
            {"n", n},
            {"quaternionic_relations", true},
            {"scalar", true},
            {"metric_signatures", sigs},
            {"stabilizer_dims",
             {{"omega_and_Q", stab_h.dim()},
              {"omega_and_H", stab_H.dim()},
              {"expected_omega_and_Q", n * (2 * n - 1) + 3},
              {"expected_omega_and_H", n * (2 * n - 1)}}}};
}

json diagnostic(const std::string& kind, const std::string& message)
{
    return {{"error", kind}, {"message", message}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out)
{
    CLI::App app{"Exact laboratory for SO*(2n) and SO*(2n)Sp(1) structures", "qskew"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "rational or float64 (default: the mode of the input documents)")
        ->check(CLI::IsMember({"rational", "float64"}));
    app.add_option("--seed", g.seed, "seed for --random inputs");
    app.add_option("--tolerance", g.tolerance, "presence threshold in float64 mode");

    json report;
    int n = 2, m = 1, size = 2;
    std::string algebra, group, structure_file, torsion_file, mode, inputs_file, h_file, family, omega_file, triple_file;
    bool random_inputs = false;

    auto* dims = app.add_subcommand("dims", "module dimensions and decomposition sums");
    dims->add_option("--n", n, "quaternionic dimension")->required()->check(CLI::Range(2, 1000));
    dims->callback([&] { report = dims_report(n); });

    auto* spencer = app.add_subcommand("spencer", "prolongation and Spencer cohomology dimensions");
    spencer->add_option("--algebra", algebra)->required();
    spencer->add_option("--n", n)->required()->check(CLI::Range(1, 4));
    spencer->callback([&] { report = spencer_report(algebra, n); });

    auto* cls = app.add_subcommand("classify", "intrinsic torsion type of a torsion tensor");
    cls->add_option("--group", group, "so_star or so_star_sp1")->required();
    cls->add_option("--structure", structure_file)->required();
    cls->add_option("--torsion", torsion_file)->required();
    cls->callback([&] {
        report = classify_report(g, group, read_json_file(structure_file), read_json_file(torsion_file));
    });

    auto* mt = app.add_subcommand("minimal-torsion", "torsion of the minimal skew-Hermitian connections");
    mt->add_option("--mode", mode, "hsH or qsH")->required()->check(CLI::IsMember({"hsH", "qsH"}));
    auto* in_opt = mt->add_option("--inputs", inputs_file, "minimal_torsion_inputs document");
    auto* rnd = mt->add_flag("--random", random_inputs, "generate admissible inputs from --seed");
    mt->add_option("--n", n, "dimension for --random")->check(CLI::Range(1, 3));
    in_opt->excludes(rnd);
    mt->callback([&] {
        if (!random_inputs && inputs_file.empty()) throw ValidationError("minimal-torsion needs --inputs or --random");
        auto in = random_inputs ? random_minimal_inputs(mode, n, g.seed) : load_minimal_inputs(read_json_file(inputs_file));
        report = minimal_torsion_report(g, mode, in);
        if (random_inputs) report["seed"] = g.seed;
    });

    auto* gs = app.add_subcommand("gram-schmidt", "quaternionic Gram-Schmidt for a skew-Hermitian matrix");
    gs->set_help_flag("--help", "Print this help message and exit");
    auto* h_opt = gs->add_option("--h", h_file, "quat_matrix document");
    auto* gs_rnd = gs->add_option("--random", size, "size of a random skew-Hermitian matrix from --seed")
                       ->check(CLI::Range(1, 16));
    h_opt->excludes(gs_rnd);
    gs->callback([&] {
        QuatMatrix h;
        if (!h_file.empty()) {
            h = quat_matrix_from_json(read_json_file(h_file));
        } else if (gs_rnd->count() > 0) {
            Rng rng(g.seed);
            Field f = g.field.empty() ? Field::Float64 : parse_field(g.field);
            h = random_skew_hermitian(size, f, rng);
        } else {
            throw ValidationError("gram-schmidt needs --h or --random");
        }
        report = gram_schmidt_report(g, h);
    });

    auto* dx = app.add_subcommand("darboux", "quaternionic Darboux change and the parity obstruction");
    dx->add_option("--m", m, "half the quaternionic dimension")->required()->check(CLI::Range(1, 64));
    dx->callback([&] { report = darboux_report(m); });

    auto* sym = app.add_subcommand("symspace", "invariant structures on symmetric spaces");
    sym->add_option("--family", family, "so_star:N, su:P,Q or sl_quat:N")->required();
    sym->callback([&] { report = symspace_report(family); });

    auto* vs = app.add_subcommand("verify-structure", "checks that omega is scalar for a triple");
    vs->add_option("--omega", omega_file)->required();
    vs->add_option("--triple", triple_file)->required();
    vs->callback([&] { report = verify_structure_report(read_json_file(omega_file), read_json_file(triple_file)); });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(out, diagnostic("usage", e.what()));
        return 2;
    } catch (const PreconditionError& e) {
        json d = diagnostic("precondition", e.what());
        d["condition"] = e.condition();
        emit(out, d);
        return 3;
    } catch (const ModeMismatch& e) {
        emit(out, diagnostic("mode_mismatch", e.what()));
        return 2;
    } catch (const ValidationError& e) {
        emit(out, diagnostic("validation", e.what()));
        return 2;
    } catch (const ShapeMismatch& e) {
        emit(out, diagnostic("validation", e.what()));
        return 2;
    } catch (const json::exception& e) {
        emit(out, diagnostic("validation", e.what()));
        return 2;
    } catch (const std::exception& e) {
        emit(out, diagnostic("internal", e.what()));
        return 1;
    }
    emit(out, report);
    return 0;
}

} // namespace qskew::cli
