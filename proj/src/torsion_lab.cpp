#include "qskew/torsion_lab.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>

namespace qskew {

struct TypeBasisCache::Block {
    SparseMat shifted;      // C + s I
    Q scale;                // block projector = scale (C + s I)
    std::vector<SVec> basis;
    std::vector<int> owner;      // type index, or -1 for im delta
    std::vector<int> position;   // index inside that type's basis
    Decomposer dec;

    Block(SparseMat c, Q s, std::vector<SVec> b, std::vector<int> o, std::vector<int> p, int dim)
        : shifted(std::move(c)), scale(std::move(s)), basis(std::move(b)), owner(std::move(o)),
          position(std::move(p)), dec(basis, dim)
    {
    }

    SVec part(const SVec& v) const { return scale_sparse(shifted.apply(v)); }
    SVec scale_sparse(const SVec& v) const { return qskew::scale(v, scale); }
};

namespace {

std::vector<SVec> apply_all(const SparseMat& m, const std::vector<SVec>& vs)
{
    std::vector<SVec> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(m.apply(v));
    return out;
}

// Concatenates a packed torsion image with covector images placed after it.
SVec stack(SVec head, const SVec& tail, int offset)
{
    for (const auto& [i, x] : tail) head.emplace_back(i + offset, x);
    return head;
}

SVec covectors_packed(const std::vector<Vec>& covs)
{
    SVec out;
    int off = 0;
    for (const auto& c : covs) {
        for (std::size_t k = 0; k < c.size(); ++k)
            if (sgn(c[k]) != 0) out.emplace_back(off + static_cast<int>(k), c[k]);
        off += static_cast<int>(c.size());
    }
    return out;
}

std::vector<Vec> all_traces(const ModelTensor& phi, const Mat& omega, const HypercomplexTriple& h)
{
    std::vector<Vec> out = {trace1(phi), trace2(phi), trace3(phi, omega)};
    auto M = trace4_family(phi, h);
    for (const auto& row : M)
        for (const auto& v : row) out.push_back(v);
    return out;
}

Vec unit_covector(int N, int m)
{
    Vec z(static_cast<std::size_t>(N));
    z[m] = 1;
    return z;
}

void require_torsion(const ModelTensor& T)
{
    const auto& s = T.slots();
    if (T.order() != 3 || s[0] != Slot::Co || s[1] != Slot::Co || s[2] != Slot::Contra)
        throw ValidationError("a torsion tensor has variance (Co, Co, Contra)");
    if (!T.is_antisymmetric()) throw ValidationError("a torsion tensor is antisymmetric in its covariant slots");
}

double frobenius(const ModelTensor& t)
{
    double s = 0;
    for (const auto& x : t.data()) {
        double d = x.get_d();
        s += d * d;
    }
    return std::sqrt(s);
}

constexpr std::array<int, kTypeCount> kBlockOf = {0, 0, 1, 1, 1, 0, 1};

} // namespace

TorsionGroup parse_group(const std::string& s)
{
    if (s == "so_star") return TorsionGroup::SoStar;
    if (s == "so_star_sp1") return TorsionGroup::SoStarSp1;
    throw ValidationError("unknown group: " + s + " (expected so_star or so_star_sp1)");
}

const char* group_name(TorsionGroup g) { return g == TorsionGroup::SoStar ? "so_star" : "so_star_sp1"; }
const char* algebra_name(TorsionGroup g) { return group_name(g); }

std::array<int, kTypeCount> TypeBasisCache::type_dims() const
{
    std::array<int, kTypeCount> d{};
    for (int i = 0; i < kTypeCount; ++i) d[i] = static_cast<int>(types[i].size());
    return d;
}

std::vector<Vec> TypeBasisCache::type_coefficients(const SVec& v) const
{
    std::vector<Vec> coef(kTypeCount);
    for (int i = 0; i < kTypeCount; ++i) coef[i].assign(types[i].size(), Q(0));
    for (const auto& b : blocks) {
        auto x = b->dec.solve(b->part(v));
        if (!x) throw Error("torsion vector outside D + im delta; the type bases are inconsistent");
        for (std::size_t j = 0; j < x->size(); ++j)
            if (b->owner[j] >= 0) coef[b->owner[j]][b->position[j]] = (*x)[j];
    }
    return coef;
}

SVec TypeBasisCache::project(const SVec& v) const
{
    auto coef = type_coefficients(v);
    SVec out;
    for (int i = 0; i < kTypeCount; ++i)
        if (!types[i].empty()) out = add(out, combine(types[i], coef[i]));
    return out;
}

std::vector<Vec> normalization_covectors(const ModelTensor& phi, const Mat& omega, const HypercomplexTriple& h)
{
    Vec t1 = trace1(phi), t3 = trace3(phi, omega);
    auto M = trace4_family(phi, h);
    int N = phi.dim();
    std::vector<Vec> out(7, Vec(static_cast<std::size_t>(N)));
    for (int k = 0; k < N; ++k) {
        out[0][k] = 2 * t1[k] + t3[k];
        for (int a = 0; a < 3; ++a) out[1 + a][k] = M[a][a][k] - t1[k];
        out[4][k] = M[0][1][k] + M[1][0][k];
        out[5][k] = M[0][2][k] + M[2][0][k];
        out[6][k] = M[1][2][k] + M[2][1][k];
    }
    return out;
}

ModelTensor raised_alt_omega_zeta(const Vec& zeta, const Mat& omega)
{
    int N = omega.rows();
    ModelTensor theta(N / 4, {Slot::Co, Slot::Co, Slot::Co});
    auto t = [&](int x, int y, int z) -> Q { return 2 * omega(x, y) * zeta[z]; };
    Q sixth(1, 6);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            for (int z = 0; z < N; ++z) {
                Q s = t(x, y, z) + t(y, z, x) + t(z, x, y) - t(y, x, z) - t(x, z, y) - t(z, y, x);
                if (sgn(s) != 0) theta.at({x, y, z}) = sixth * s;
            }
    return raise(theta, omega);
}

ModelTensor raised_basis_3form(int n, int a, int b, int c, const Mat& omega)
{
    ModelTensor theta(n, {Slot::Co, Slot::Co, Slot::Co});
    theta.at({a, b, c}) = 1;
    theta.at({b, c, a}) = 1;
    theta.at({c, a, b}) = 1;
    theta.at({b, a, c}) = -1;
    theta.at({a, c, b}) = -1;
    theta.at({c, b, a}) = -1;
    return raise(theta, omega);
}

std::shared_ptr<const TypeBasisCache> build_type_bases(int n, TorsionGroup group)
{
    if (n < 2) throw PreconditionError("type bases need n >= 2");
    auto cache = std::make_shared<TypeBasisCache>();
    cache->n = n;
    cache->group = group;
    cache->triple = standard_triple(n);
    cache->omega = standard_omega(n).to_matrix();
    const auto& h = cache->triple;
    const Mat& W = cache->omega;
    const int N = 4 * n, D = torsion_dim(n);
    const bool so_star = group == TorsionGroup::SoStar;

    // Casimir blocks: image of C + 3 is Eig(-15), image of C + 15 is Eig(-3).
    SparseMat C = torsion_operator(n, [&](const ModelTensor& p) { return casimir(p, h); });
    SparseMat C3 = C.plus_identity(3), C15 = C.plus_identity(15);
    auto eig15 = span_basis(C3.col, D);
    auto eig3 = span_basis(C15.col, D);

    auto delta_g = spencer_images(build_subalgebra(algebra_name(group), n));
    cache->image_delta = span_basis(delta_g, D);
    auto im15 = span_basis(apply_all(C3, cache->image_delta), D);
    auto im3 = span_basis(apply_all(C15, cache->image_delta), D);

    // D(so*) = Eig(-15) + delta(V* (x) [S^2E]*); the sp1 group adds seven covector conditions.
    auto ds2e = span_basis(spencer_images(build_subalgebra("s2e", n)), D);
    std::vector<SVec> d15 = eig15, d3 = ds2e;
    if (!so_star) {
        SparseMat cond = covector_operator(n, 7, [&](const ModelTensor& p) { return normalization_covectors(p, W, h); });
        d15 = kernel_within(eig15, apply_all(cond, eig15), 7 * N);
        d3 = kernel_within(ds2e, apply_all(cond, ds2e), 7 * N);
    }
    cache->complement = d15;
    cache->complement.insert(cache->complement.end(), d3.begin(), d3.end());

    auto concat = [](std::vector<SVec> a, const std::vector<SVec>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    Decomposer p15(concat(d15, im15), D), p3(concat(d3, im3), D);
    cache->complement_spans = p15.independent() && p3.independent() &&
                              p15.size() + p3.size() == D && span_contains(eig3, ds2e, D);

    auto projectD = [&](const SVec& v) {
        SVec out;
        auto x15 = p15.solve(scale(C3.apply(v), Q(-1, 12)));
        auto x3 = p3.solve(scale(C15.apply(v), Q(1, 12)));
        if (!x15 || !x3) throw Error("D + im delta does not span the torsion space");
        for (std::size_t j = 0; j < d15.size(); ++j) out = add(out, d15[j], (*x15)[j]);
        for (std::size_t j = 0; j < d3.size(); ++j) out = add(out, d3[j], (*x3)[j]);
        return out;
    };

    auto alt_image = [&](const SVec& v) { return pack(alt_project(unpack(n, v), W)); };

    // The types as invariant subspaces of the torsion space.
    std::vector<SVec> lambda3;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = b + 1; c < N; ++c) lambda3.push_back(pack(raised_basis_3form(n, a, b, c, W)));

    auto& model = cache->model;
    {
        std::vector<SVec> img;
        for (const auto& v : eig15) {
            auto covs = normalization_covectors(unpack(n, v), W, h);
            img.push_back(stack(alt_image(v), covectors_packed(covs), D));
        }
        model[0] = kernel_within(eig15, img, D + 7 * N);
    }
    model[1] = kernel_within(lambda3, apply_all(C15, lambda3), D);
    {
        std::vector<SVec> img;
        for (const auto& v : lambda3)
            img.push_back(stack(C3.apply(v), sparse(trace1(unpack(n, v))), D));
        model[2] = kernel_within(lambda3, img, D + N);
    }
    for (int m = 0; m < N; ++m) model[3].push_back(pack(raised_alt_omega_zeta(unit_covector(N, m), W)));
    model[3] = span_basis(model[3], D);
    {
        std::vector<SVec> img;
        for (const auto& v : eig3) {
            auto covs = all_traces(unpack(n, v), W, h);
            img.push_back(stack(alt_image(v), covectors_packed(covs), D));
        }
        model[4] = kernel_within(eig3, img, D + 12 * N);
    }
    if (so_star) {
        auto dsp1 = span_basis(spencer_images(build_subalgebra("sp1", n)), D);
        model[5] = kernel_within(dsp1, apply_all(C15, dsp1), D);
        for (int m = 0; m < N; ++m) model[6].push_back(spencer_delta_packed(component_D(unit_covector(N, m), h)));
        model[6] = span_basis(model[6], D);
    }

    for (int i = 0; i < kTypeCount; ++i) {
        std::vector<SVec> realized;
        realized.reserve(model[i].size());
        for (const auto& v : model[i]) realized.push_back(projectD(v));
        cache->types[i] = span_basis(realized, D);
    }

    auto expected = type_decomposition(group_name(group));
    cache->dims_match = true;
    for (int i = 0; i < kTypeCount; ++i) {
        long want = i < static_cast<int>(expected.size()) ? real_form_dim(expected[i].module, expected[i].partner, n) : 0;
        if (static_cast<long>(cache->types[i].size()) != want) cache->dims_match = false;
    }
    if (!cache->dims_match) {
        std::string msg = "type dimensions differ from the decomposition:";
        for (int i = 0; i < kTypeCount; ++i) msg += " " + std::to_string(cache->types[i].size());
        throw Error(msg);
    }

    // Final per-block decomposers over (types in block) + (im delta in block).
    std::vector<SVec> all_types;
    bool in_blocks = true;
    for (int blk = 0; blk < 2; ++blk) {
        std::vector<SVec> basis;
        std::vector<int> owner, position;
        for (int i = 0; i < kTypeCount; ++i) {
            if (kBlockOf[i] != blk) continue;
            for (std::size_t j = 0; j < cache->types[i].size(); ++j) {
                const SVec& v = cache->types[i][j];
                // Block 0 is Eig(-15) = ker(C + 15), block 1 is Eig(-3) = ker(C + 3).
                if (!is_zero((blk == 0 ? C15 : C3).apply(v))) in_blocks = false;
                basis.push_back(v);
                owner.push_back(i);
                position.push_back(static_cast<int>(j));
                all_types.push_back(v);
            }
        }
        const auto& im = blk == 0 ? im15 : im3;
        for (const auto& v : im) {
            basis.push_back(v);
            owner.push_back(-1);
            position.push_back(-1);
        }
        if (blk == 0)
            cache->blocks.push_back(std::make_shared<TypeBasisCache::Block>(C3, Q(-1, 12), std::move(basis), std::move(owner),
                                                                             std::move(position), D));
        else
            cache->blocks.push_back(std::make_shared<TypeBasisCache::Block>(C15, Q(1, 12), std::move(basis), std::move(owner),
                                                                             std::move(position), D));
    }
    int total = static_cast<int>(all_types.size());
    cache->types_direct = in_blocks && rank_of(all_types, D) == total &&
                          total == static_cast<int>(cache->complement.size()) &&
                          span_contains(cache->complement, all_types, D) && cache->blocks[0]->dec.independent() &&
                          cache->blocks[1]->dec.independent();
    return cache;
}

std::shared_ptr<const TypeBasisCache> type_bases(int n, TorsionGroup group)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const TypeBasisCache>> built;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, static_cast<int>(group));
    auto it = built.find(key);
    if (it != built.end()) return it->second;
    auto c = build_type_bases(n, group);
    built.emplace(key, c);
    return c;
}

ModelTensor intrinsic_representative(const ModelTensor& T, const TypeBasisCache& cache)
{
    require_torsion(T);
    if (T.n() != cache.n) throw ShapeMismatch("torsion tensor and type bases have different n");
    return unpack(cache.n, cache.project(pack(T)));
}

bool TorsionReport::torsion_free() const
{
    for (bool p : present)
        if (p) return false;
    return true;
}

std::vector<int> TorsionReport::present_types() const
{
    std::vector<int> out;
    for (int i = 0; i < kTypeCount; ++i)
        if (present[i]) out.push_back(i + 1);
    return out;
}

std::string type_label(const std::array<bool, kTypeCount>& present)
{
    std::string digits;
    for (int i = 0; i < kTypeCount; ++i)
        if (present[i]) digits += static_cast<char>('1' + i);
    return digits.empty() ? "torsion-free" : "X_{" + digits + "}";
}

TorsionReport classify(const ModelTensor& T, const TypeBasisCache& cache, Field field, double tolerance)
{
    require_torsion(T);
    if (T.n() != cache.n) throw ShapeMismatch("torsion tensor and type bases have different n");
    auto coef = cache.type_coefficients(pack(T));
    TorsionReport r;
    r.representative = ModelTensor::torsion(cache.n);
    double scale_norm = field == Field::Float64 ? frobenius(T) : 0.0;
    for (int i = 0; i < kTypeCount; ++i) {
        r.components[i] = cache.types[i].empty() ? ModelTensor::torsion(cache.n) : unpack(cache.n, combine(cache.types[i], coef[i]));
        r.norms[i] = frobenius(r.components[i]);
        r.present[i] = field == Field::Rational ? !r.components[i].is_zero() : r.norms[i] > tolerance * scale_norm;
        r.representative += r.components[i];
    }
    r.label = type_label(r.present);
    return r;
}

EndForm half_raised(const ModelTensor& nabla_omega, const Mat& omega)
{
    return to_end_form(raise(Q(1, 2) * nabla_omega, omega));
}

bool is_hermitian_valued(const ModelTensor& nabla_omega, const HypercomplexTriple& h)
{
    int N = nabla_omega.dim();
    for (int x = 0; x < N; ++x) {
        Mat beta(N, N);
        for (int y = 0; y < N; ++y)
            for (int z = 0; z < N; ++z) beta(y, z) = nabla_omega.at({x, y, z});
        if (beta.transpose() != -beta) return false;
        for (const auto& J : h.J)
            if (J.transpose() * beta * J != beta) return false;
    }
    return true;
}

namespace {

void require_nabla_omega(const ModelTensor& nw, const HypercomplexTriple& h, int n, int condition)
{
    if (nw.order() != 3 || nw.n() != n) throw ShapeMismatch("nabla omega must be an order-3 tensor on the same space");
    for (auto s : nw.slots())
        if (s != Slot::Co) throw ValidationError("nabla omega must be covariant in all slots");
    if (!is_hermitian_valued(nw, h))
        throw PreconditionError("nabla omega must take values in Hermitian 2-forms", condition);
}

} // namespace

ModelTensor minimal_hsH_torsion(const ModelTensor& T_H, const ModelTensor& nabla_omega, const Mat& omega,
                                const HypercomplexTriple& h)
{
    require_torsion(T_H);
    if (!(proj_H(T_H, h) == T_H)) throw PreconditionError("T_H must satisfy pi_H(T_H) = T_H", 1);
    require_nabla_omega(nabla_omega, h, T_H.n(), 2);
    return T_H + spencer_delta(half_raised(nabla_omega, omega));
}

ModelTensor minimal_qsH_torsion(const ModelTensor& T_Q, const ModelTensor& nabla_omega, const Mat& omega,
                                const HypercomplexTriple& h)
{
    require_torsion(T_Q);
    if (!(proj_H(T_Q, h) == T_Q)) throw PreconditionError("T_Q must satisfy pi_H(T_Q) = T_Q", 1);
    auto M = trace4_family(T_Q, h);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const Vec& x = M[a][b];
            const Vec& y = M[b][a];
            for (std::size_t k = 0; k < x.size(); ++k)
                if (sgn(x[k] + y[k]) != 0) throw PreconditionError("T_Q must satisfy Tr4(T_Q) = 0 for every J", 2);
        }
    require_nabla_omega(nabla_omega, h, T_Q.n(), 3);
    int n = T_Q.n();
    EndForm A = half_raised(nabla_omega, omega);
    Vec t = trace2(to_tensor(n, A));
    Vec z3(t.size()), zeta4(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        z3[k] = t[k] / Q(n + 1);
        zeta4[k] = -t[k] / Q(4 * (n + 1));
    }
    EndForm alpha = A + component_C(raise_covector(z3, omega), omega, h) + component_D(zeta4, h);
    return T_Q + spencer_delta(alpha);
}

} // namespace qskew
