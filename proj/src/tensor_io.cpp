#include "qskew/tensor_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

namespace qskew {

namespace {

Field field_of(const json& j)
{
    if (!j.contains("field")) return Field::Rational;
    if (!j["field"].is_string()) throw ValidationError("field must be a string");
    return parse_field(j["field"].get<std::string>());
}

void check_schema(const json& j)
{
    if (!j.is_object()) throw ValidationError("document must be a JSON object");
    if (j.contains("schema_version") && (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion))
        throw ValidationError("unsupported schema_version");
}

Q value_of(const json& v, Field f)
{
    if (f == Field::Rational) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Q(v.get<long>());
        throw ValidationError("rational values must be \"p/q\" strings or integers");
    }
    if (v.is_number()) return rational_from_double(v.get<double>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ValidationError("float64 values must be numbers");
}

json value_json(const Q& q, Field f)
{
    if (f == Field::Float64) return q.get_d();
    return rational_string(q);
}

int read_int(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer()) throw ValidationError(std::string("missing integer field ") + key);
    return j[key].get<int>();
}

Symmetry parse_symmetry(const std::string& s)
{
    if (s == "none") return Symmetry::None;
    if (s == "symmetric") return Symmetry::Symmetric;
    if (s == "antisymmetric") return Symmetry::Antisymmetric;
    throw ValidationError("unknown symmetry: " + s);
}

const char* symmetry_name(Symmetry s)
{
    switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
    }
    return "none";
}

int permutation_sign(const std::vector<int>& p)
{
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

std::vector<int> covariant_positions(const std::vector<Slot>& slots)
{
    std::vector<int> pos;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i] == Slot::Co) pos.push_back(static_cast<int>(i));
    return pos;
}

// Sets t[idx] = v and its images under permutations of the covariant slots.
void set_orbit(ModelTensor& t, std::vector<char>& seen, const std::vector<int>& idx, const Q& v)
{
    auto pos = covariant_positions(t.slots());
    std::vector<int> perm(pos.size());
    std::iota(perm.begin(), perm.end(), 0);
    bool flagged = t.symmetry() != Symmetry::None;
    do {
        std::vector<int> j = idx;
        for (std::size_t a = 0; a < pos.size(); ++a) j[pos[a]] = idx[pos[perm[a]]];
        Q w = v;
        if (t.symmetry() == Symmetry::Antisymmetric && permutation_sign(perm) < 0) w = -v;
        std::size_t f = t.flat(j);
        if (seen[f] && t.data()[f] != w) throw ValidationError("entries contradict the declared symmetry");
        t.data()[f] = w;
        seen[f] = 1;
        if (!flagged) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

std::string rational_string(const Q& q) { return to_string(q); }

json scalar_json(const Scalar& s)
{
    if (s.mode() == Field::Float64) return s.to_double();
    return rational_string(s.rational());
}

std::vector<Slot> kind_slots(const std::string& kind)
{
    if (kind == "2form" || kind == "metric") return {Slot::Co, Slot::Co};
    if (kind == "endo" || kind == "basis_change") return {Slot::Contra, Slot::Co};
    if (kind == "torsion") return {Slot::Co, Slot::Co, Slot::Contra};
    if (kind == "3tensor") return {Slot::Co, Slot::Co, Slot::Co};
    if (kind == "4tensor") return {Slot::Co, Slot::Co, Slot::Co, Slot::Co};
    throw ValidationError("unknown tensor kind: " + kind);
}

Symmetry kind_symmetry(const std::string& kind)
{
    if (kind == "2form" || kind == "torsion") return Symmetry::Antisymmetric;
    if (kind == "metric") return Symmetry::Symmetric;
    kind_slots(kind);
    return Symmetry::None;
}

TensorDocument tensor_from_json(const json& j)
{
    check_schema(j);
    TensorDocument doc;
    if (!j.contains("kind") || !j["kind"].is_string()) throw ValidationError("missing kind");
    doc.kind = j["kind"].get<std::string>();
    doc.field = field_of(j);
    int n = read_int(j, "n");
    if (n < 1) throw ValidationError("n must be positive");
    auto slots = kind_slots(doc.kind);
    Symmetry sym = kind_symmetry(doc.kind);
    if (j.contains("symmetry")) {
        if (!j["symmetry"].is_string()) throw ValidationError("symmetry must be a string");
        Symmetry declared = parse_symmetry(j["symmetry"].get<std::string>());
        if (sym != Symmetry::None && declared != sym) throw ValidationError("symmetry conflicts with the kind");
        sym = declared;
    }
    ModelTensor t(n, slots, sym);
    std::vector<char> seen(t.data().size(), 0);
    if (!j.contains("entries") || !j["entries"].is_array()) throw ValidationError("missing entries array");
    int N = 4 * n;
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array()) throw ValidationError("entry must be [[indices], value]");
        if (e[0].size() != slots.size()) throw ValidationError("entry index arity differs from the tensor order");
        std::vector<int> idx;
        for (const auto& i : e[0]) {
            if (!i.is_number_integer()) throw ValidationError("indices must be integers");
            int v = i.get<int>();
            if (v < 1 || v > N) throw ValidationError("index out of range 1.." + std::to_string(N));
            idx.push_back(v - 1);
        }
        Q v = value_of(e[1], doc.field);
        if (sym == Symmetry::Antisymmetric) {
            auto pos = covariant_positions(slots);
            for (std::size_t a = 0; a < pos.size(); ++a)
                for (std::size_t b = a + 1; b < pos.size(); ++b)
                    if (idx[pos[a]] == idx[pos[b]] && sgn(v) != 0)
                        throw ValidationError("antisymmetric tensor with a repeated covariant index");
        }
        set_orbit(t, seen, idx, v);
    }
    if (!t.satisfies_declared_symmetry()) throw ValidationError("tensor violates its declared symmetry");
    doc.tensor = std::move(t);
    return doc;
}

json tensor_to_json(const TensorDocument& doc)
{
    const ModelTensor& t = doc.tensor;
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = t.n();
    j["field"] = field_name(doc.field);
    j["kind"] = doc.kind;
    j["symmetry"] = symmetry_name(t.symmetry());
    json entries = json::array();
    auto pos = covariant_positions(t.slots());
    for (std::size_t f = 0; f < t.data().size(); ++f) {
        const Q& v = t.data()[f];
        if (sgn(v) == 0) continue;
        auto idx = t.unflat(f);
        if (t.symmetry() != Symmetry::None) {
            bool canonical = true;
            for (std::size_t a = 0; a + 1 < pos.size(); ++a) {
                int x = idx[pos[a]], y = idx[pos[a + 1]];
                if (t.symmetry() == Symmetry::Antisymmetric ? x >= y : x > y) canonical = false;
            }
            if (!canonical) continue;
        }
        json ix = json::array();
        for (int i : idx) ix.push_back(i + 1);
        entries.push_back(json::array({ix, value_json(v, doc.field)}));
    }
    j["entries"] = entries;
    return j;
}

HypercomplexTriple triple_from_json(const json& j)
{
    check_schema(j);
    if (!j.contains("kind") || j["kind"] != "triple") throw ValidationError("expected kind \"triple\"");
    int n = read_int(j, "n");
    if (n < 1) throw ValidationError("n must be positive");
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].size() != 3)
        throw ValidationError("a triple needs three matrices");
    HypercomplexTriple h;
    h.n = n;
    for (int a = 0; a < 3; ++a) {
        json e = {{"schema_version", kSchemaVersion}, {"n", n}, {"kind", "endo"}, {"entries", j["matrices"][a]}};
        if (j.contains("field")) e["field"] = j["field"];
        h.J[a] = tensor_from_json(e).tensor.to_matrix();
    }
    return h;
}

json triple_to_json(const HypercomplexTriple& h)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = h.n;
    j["kind"] = "triple";
    j["field"] = "rational";
    json ms = json::array();
    for (const auto& J : h.J) {
        TensorDocument d{"endo", Field::Rational, ModelTensor::from_matrix(h.n, J, Slot::Contra, Slot::Co)};
        ms.push_back(tensor_to_json(d)["entries"]);
    }
    j["matrices"] = ms;
    return j;
}

QuatMatrix quat_matrix_from_json(const json& j)
{
    check_schema(j);
    if (!j.contains("kind") || j["kind"] != "quat_matrix") throw ValidationError("expected kind \"quat_matrix\"");
    Field f = field_of(j);
    int rows = read_int(j, "rows"), cols = read_int(j, "cols");
    if (rows < 1 || cols < 1) throw ValidationError("matrix dimensions must be positive");
    QuatMatrix A(rows, cols, f);
    if (!j.contains("entries") || !j["entries"].is_array()) throw ValidationError("missing entries array");
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 || !e[1].is_array() || e[1].size() != 4)
            throw ValidationError("entry must be [[r, c], [w, x, y, z]]");
        int r = e[0][0].get<int>(), c = e[0][1].get<int>();
        if (r < 1 || r > rows || c < 1 || c > cols) throw ValidationError("matrix index out of range");
        std::array<Scalar, 4> s;
        for (int t = 0; t < 4; ++t) {
            if (f == Field::Rational) {
                s[t] = Scalar(value_of(e[1][t], f));
            } else {
                if (!e[1][t].is_number()) throw ValidationError("float64 values must be numbers");
                s[t] = Scalar::real(e[1][t].get<double>());
            }
        }
        A(r - 1, c - 1) = Quaternion(s[0], s[1], s[2], s[3]);
    }
    return A;
}

json quat_matrix_to_json(const QuatMatrix& A)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "quat_matrix";
    j["field"] = field_name(A.mode());
    j["rows"] = A.rows();
    j["cols"] = A.cols();
    json entries = json::array();
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            const auto& q = A(r, c);
            if (q.is_zero()) continue;
            entries.push_back(json::array({json::array({r + 1, c + 1}),
                                           json::array({scalar_json(q.w), scalar_json(q.x), scalar_json(q.y), scalar_json(q.z)})}));
        }
    j["entries"] = entries;
    return j;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

} // namespace qskew
