#include "qskew/symmetric_spaces.hpp"

#include <array>
#include <functional>
#include <optional>
#include <sstream>

#include "qskew/bases.hpp"
#include "qskew/lie_algebras.hpp"

namespace qskew {

namespace {

Quaternion rq(long w, long x, long y, long z) { return {Scalar(w), Scalar(x), Scalar(y), Scalar(z)}; }

// Real-coordinate units of d x d matrices with `comps` quaternion components
// (2 for complex entries, 4 for quaternionic ones).
std::vector<QuatMatrix> units(int d, int comps)
{
    std::vector<QuatMatrix> out;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            for (int t = 0; t < comps; ++t) {
                QuatMatrix E(d, d);
                E(r, c) = rq(t == 0, t == 1, t == 2, t == 3);
                out.push_back(E);
            }
    return out;
}

QuatMatrix combine_quat(const std::vector<QuatMatrix>& us, const SVec& coef)
{
    QuatMatrix X(us.front().rows(), us.front().cols());
    for (const auto& [i, x] : coef) {
        const QuatMatrix& E = us[i];
        for (int r = 0; r < E.rows(); ++r)
            for (int c = 0; c < E.cols(); ++c)
                if (!E(r, c).is_zero()) X(r, c) += Scalar(x) * E(r, c);
    }
    return X;
}

SVec flatten(const QuatMatrix& A)
{
    Vec v;
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            const auto& q = A(r, c);
            for (const Scalar* s : {&q.w, &q.x, &q.y, &q.z}) v.push_back(s->rational());
        }
    return sparse(v);
}

// Basis (in unit coordinates) of {X : cond(X) = 0}.
std::vector<SVec> solve_units(const std::vector<QuatMatrix>& us, int image_dim,
                              const std::function<SVec(const QuatMatrix&)>& cond)
{
    std::vector<SVec> basis, images;
    for (std::size_t t = 0; t < us.size(); ++t) {
        basis.push_back(SVec{{static_cast<int>(t), Q(1)}});
        images.push_back(cond(us[t]));
    }
    return kernel_within(basis, images, image_dim);
}

std::vector<SVec> vecs(const std::vector<Mat>& ms)
{
    std::vector<SVec> v;
    for (const auto& m : ms) v.push_back(vectorize(m));
    return v;
}

std::optional<Q> rational_sqrt(const Q& x)
{
    if (sgn(x) < 0) return std::nullopt;
    Z a = x.get_num(), b = x.get_den();
    if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return std::nullopt;
    Z sa = sqrt(a), sb = sqrt(b);
    Q r(sa, sb);
    r.canonicalize();
    return r;
}

// Matrix of X -> coordinates of T(X) with respect to `basis`, T given on matrices.
Mat operator_matrix(const std::vector<Mat>& basis, const Decomposer& dec, const std::function<Mat(const Mat&)>& T)
{
    int d = static_cast<int>(basis.size());
    Mat M(d, d);
    for (int j = 0; j < d; ++j) {
        auto x = dec.solve(vectorize(T(basis[j])));
        if (!x) throw Error("operator leaves the subspace");
        for (int i = 0; i < d; ++i) M(i, j) = (*x)[i];
    }
    return M;
}

bool is_scalar_multiple_of_identity(const Mat& A, Q& c)
{
    c = A(0, 0);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != (i == j ? c : Q(0))) return false;
    return true;
}

// T / sqrt(-c) when T^2 = c Id with -c a rational square.
std::optional<Mat> normalize_complex(const Mat& T)
{
    Q c;
    if (!is_scalar_multiple_of_identity(T * T, c)) return std::nullopt;
    auto s = rational_sqrt(-c);
    if (!s || sgn(*s) == 0) return std::nullopt;
    return T * (1 / *s);
}

} // namespace

Mat realify(const QuatMatrix& A)
{
    Mat R(4 * A.rows(), 4 * A.cols());
    const std::array<Quaternion, 4> e = {rq(1, 0, 0, 0), rq(0, 1, 0, 0), rq(0, 0, 1, 0), rq(0, 0, 0, 1)};
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            if (A(r, c).is_zero()) continue;
            for (int t = 0; t < 4; ++t) {
                Quaternion p = A(r, c) * e[t];
                R(4 * r + 0, 4 * c + t) = p.w.rational();
                R(4 * r + 1, 4 * c + t) = p.x.rational();
                R(4 * r + 2, 4 * c + t) = p.y.rational();
                R(4 * r + 3, 4 * c + t) = p.z.rational();
            }
        }
    return R;
}

FamilySpec parse_family(const std::string& s)
{
    FamilySpec f;
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (name == "so_star") {
            f.family = SymmetricFamily::SoStar;
            f.n = args.empty() ? 2 : std::stoi(args);
            if (f.n < 1) throw ValidationError("so_star family needs n >= 1");
        } else if (name == "su") {
            f.family = SymmetricFamily::SU;
            if (!args.empty()) {
                auto comma = args.find(',');
                if (comma == std::string::npos) throw ValidationError("su family expects su:P,Q");
                f.p = std::stoi(args.substr(0, comma));
                f.q = std::stoi(args.substr(comma + 1));
            }
            if (f.p < 0 || f.q < 0 || f.p + f.q < 1) throw ValidationError("su family needs p, q >= 0 and p + q >= 1");
        } else if (name == "sl_quat") {
            f.family = SymmetricFamily::SLQuat;
            f.n = args.empty() ? 1 : std::stoi(args);
            if (f.n < 1) throw ValidationError("sl_quat family needs n >= 1");
        } else {
            throw ValidationError("unknown family: " + name + " (expected so_star, su or sl_quat)");
        }
    } catch (const std::invalid_argument&) {
        throw ValidationError("malformed family parameters: " + s);
    } catch (const std::out_of_range&) {
        throw ValidationError("malformed family parameters: " + s);
    }
    return f;
}

std::string family_label(const FamilySpec& f)
{
    std::ostringstream os;
    switch (f.family) {
    case SymmetricFamily::SoStar:
        os << "so*(" << 2 * f.n + 2 << ")/so*(" << 2 * f.n << ")+u(1)";
        break;
    case SymmetricFamily::SU:
        os << "su(" << 2 + f.p << "," << f.q << ")/su(2)+su(" << f.p << "," << f.q << ")+u(1)";
        break;
    case SymmetricFamily::SLQuat:
        os << "sl(" << f.n + 1 << ",H)/gl(1,H)+sl(" << f.n << ",H)";
        break;
    }
    return os.str();
}

SymmetricPair build_pair(const FamilySpec& spec)
{
    SymmetricPair P;
    P.spec = spec;
    P.name = family_label(spec);

    int d = 0, comps = 4, split = 0;   // matrix size, components, size of the first diagonal block
    std::function<SVec(const QuatMatrix&)> cond;
    int cond_dim = 0;
    QuatMatrix U;
    std::vector<QuatMatrix> sp1;

    switch (spec.family) {
    case SymmetricFamily::SoStar: {
        d = spec.n + 1;
        split = spec.n;
        QuatMatrix h = QuatMatrix::scalar(d, rq(0, 0, 1, 0));
        cond = [h](const QuatMatrix& X) { return flatten(quat_matmul(conj_transpose(X), h) + quat_matmul(h, X)); };
        cond_dim = 4 * d * d;
        U = QuatMatrix(d, d);
        U(d - 1, d - 1) = rq(0, 0, 1, 0);
        P.model = "quaternionic (n+1)x(n+1) matrices X with X* h + h X = 0, h = j Id; l = block diagonal (n, 1); "
                  "U = diag(0, ..., 0, j); Q = traceless commutant of ad([l, l]) on m";
        break;
    }
    case SymmetricFamily::SU: {
        d = 2 + spec.p + spec.q;
        split = 2;
        comps = 2;
        QuatMatrix eta(d, d);
        for (int r = 0; r < d; ++r) eta(r, r) = rq(r < 2 + spec.p ? 1 : -1, 0, 0, 0);
        cond = [eta, d](const QuatMatrix& X) {
            SVec v = flatten(quat_matmul(conj_transpose(X), eta) + quat_matmul(eta, X));
            Q im_trace = 0;
            for (int r = 0; r < d; ++r) im_trace += X(r, r).x.rational();
            if (sgn(im_trace) != 0) v.emplace_back(4 * d * d, im_trace);
            return v;
        };
        cond_dim = 4 * d * d + 1;
        U = QuatMatrix(d, d);
        for (int r = 0; r < d; ++r) U(r, r) = rq(0, r < 2 ? spec.p + spec.q : -2, 0, 0);
        QuatMatrix s3(d, d), s1(d, d);
        s3(0, 0) = rq(0, 1, 0, 0);
        s3(1, 1) = rq(0, -1, 0, 0);
        s1(0, 1) = rq(0, 1, 0, 0);
        s1(1, 0) = rq(0, 1, 0, 0);
        sp1 = {s3, s1};
        P.model = "complex matrices acting on H^(2+p+q) = C^(2+p+q) + C^(2+p+q) j; X* eta + eta X = 0, tr X = 0; "
                  "l = block diagonal (2, p+q); U = i diag((p+q) Id_2, -2 Id_(p+q)); Q = ad of i sigma_3, i sigma_1";
        break;
    }
    case SymmetricFamily::SLQuat: {
        d = spec.n + 1;
        split = 1;
        cond = [d](const QuatMatrix& X) {
            Q re = 0;
            for (int r = 0; r < d; ++r) re += X(r, r).w.rational();
            return sgn(re) != 0 ? SVec{{0, re}} : SVec{};
        };
        cond_dim = 1;
        U = QuatMatrix(d, d);
        for (int r = 0; r < d; ++r) U(r, r) = rq(r == 0 ? spec.n : -1, 0, 0, 0);
        QuatMatrix qi(d, d), qj(d, d);
        qi(0, 0) = rq(0, 1, 0, 0);
        qj(0, 0) = rq(0, 0, 1, 0);
        sp1 = {qi, qj};
        P.model = "quaternionic (n+1)x(n+1) matrices with real trace 0; l = block diagonal (1, n) = gl(1,H) + sl(n,H); "
                  "U = diag(n, -Id_n); Q = ad of diag(i, 0), diag(j, 0)";
        break;
    }
    }

    auto us = units(d, comps);
    auto kcoords = solve_units(us, cond_dim, cond);
    // l: vanishing off-diagonal blocks.
    auto off_block = [&](const SVec& coef) {
        QuatMatrix X = combine_quat(us, coef);
        Vec v;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if ((r < split) != (c < split))
                    for (const Scalar* s : {&X(r, c).w, &X(r, c).x, &X(r, c).y, &X(r, c).z}) v.push_back(s->rational());
        return sparse(v);
    };
    std::vector<SVec> off_images;
    for (const auto& c : kcoords) off_images.push_back(off_block(c));
    auto lcoords_units = kernel_within(kcoords, off_images, 4 * d * d);

    for (const auto& c : kcoords) P.k.push_back(realify(combine_quat(us, c)));
    for (const auto& c : lcoords_units) P.l.push_back(realify(combine_quat(us, c)));
    P.U = realify(U);
    for (const auto& s : sp1) P.sp1.push_back(realify(s));

    // Killing form from ad in the k basis.
    int kd = static_cast<int>(P.k.size());
    Decomposer kdec(vecs(P.k), 4 * d * 4 * d);
    std::vector<Mat> ad;
    for (const auto& X : P.k) ad.push_back(operator_matrix(P.k, kdec, [&](const Mat& Y) { return commutator(X, Y); }));
    P.killing = Mat(kd, kd);
    for (int i = 0; i < kd; ++i)
        for (int j = i; j < kd; ++j) {
            Q s = 0;
            for (int a = 0; a < kd; ++a)
                for (int b = 0; b < kd; ++b)
                    if (sgn(ad[i](a, b)) != 0 && sgn(ad[j](b, a)) != 0) s += ad[i](a, b) * ad[j](b, a);
            P.killing(i, j) = s;
            P.killing(j, i) = s;
        }

    // m: Killing-orthogonal complement of l.
    std::vector<SVec> kbasis, images;
    for (int j = 0; j < kd; ++j) kbasis.push_back(SVec{{j, Q(1)}});
    std::vector<Vec> lk;
    for (const auto& L : P.l) lk.push_back(*kdec.solve(vectorize(L)));
    for (int j = 0; j < kd; ++j) {
        Vec img(P.l.size());
        for (std::size_t s = 0; s < P.l.size(); ++s)
            for (int i = 0; i < kd; ++i) img[s] += lk[s][i] * P.killing(i, j);
        images.push_back(sparse(img));
    }
    auto mk = kernel_within(kbasis, images, static_cast<int>(P.l.size()));
    for (const auto& c : mk) {
        Mat M(4 * d, 4 * d);
        for (const auto& [j, x] : c) M += P.k[j] * x;
        P.m.push_back(M);
    }

    // Cartan relations.
    std::vector<Mat> lm = P.l;
    lm.insert(lm.end(), P.m.begin(), P.m.end());
    Decomposer lmdec(vecs(lm), 4 * d * 4 * d);
    int ld = static_cast<int>(P.l.size());
    auto parts_ok = [&](const Mat& X, bool want_l) {
        auto x = lmdec.solve(vectorize(X));
        if (!x) return false;
        for (std::size_t i = 0; i < x->size(); ++i) {
            bool in_l = static_cast<int>(i) < ld;
            if (in_l != want_l && sgn((*x)[i]) != 0) return false;
        }
        return true;
    };
    P.cartan_ok = lmdec.independent() && static_cast<int>(lm.size()) == kd;
    for (const auto& A : P.l)
        for (const auto& B : P.l) P.cartan_ok = P.cartan_ok && parts_ok(commutator(A, B), true);
    for (const auto& A : P.l)
        for (const auto& B : P.m) P.cartan_ok = P.cartan_ok && parts_ok(commutator(A, B), false);
    for (const auto& A : P.m)
        for (const auto& B : P.m) P.cartan_ok = P.cartan_ok && parts_ok(commutator(A, B), true);
    if (!P.cartan_ok) throw Error("Cartan relations fail for " + P.name);

    int md = static_cast<int>(mk.size());
    Mat Bm(md, md);
    for (int a = 0; a < md; ++a)
        for (int b = 0; b < md; ++b) {
            Q s = 0;
            for (const auto& [i, x] : mk[a])
                for (const auto& [j, y] : mk[b]) s += x * P.killing(i, j) * y;
            Bm(a, b) = s;
        }
    P.killing_nondegenerate_on_m = sgn(det(Bm)) != 0;
    if (md % 4 != 0) throw Error("dim m is not a multiple of 4 for " + P.name);
    return P;
}

StructureCertificate invariant_structure(const SymmetricPair& P, bool perturb)
{
    StructureCertificate cert;
    int md = static_cast<int>(P.m.size());
    int n = md / 4;
    int size = P.U.rows();
    Decomposer mdec(vecs(P.m), size * size);
    auto on_m = [&](const Mat& X) { return operator_matrix(P.m, mdec, [&](const Mat& Y) { return commutator(X, Y); }); };

    // Killing form on m.
    Decomposer kdec(vecs(P.k), size * size);
    std::vector<Vec> mk;
    for (const auto& M : P.m) mk.push_back(*kdec.solve(vectorize(M)));
    Mat Bm(md, md);
    for (int a = 0; a < md; ++a)
        for (int b = 0; b < md; ++b) {
            Q s = 0;
            for (std::size_t i = 0; i < mk[a].size(); ++i) {
                if (sgn(mk[a][i]) == 0) continue;
                for (std::size_t j = 0; j < mk[b].size(); ++j)
                    if (sgn(mk[b][j]) != 0) s += mk[a][i] * P.killing(static_cast<int>(i), static_cast<int>(j)) * mk[b][j];
            }
            Bm(a, b) = s;
        }

    // l_ss = [l, l].
    std::vector<SVec> lss_v;
    for (const auto& A : P.l)
        for (const auto& B : P.l) lss_v.push_back(vectorize(commutator(A, B)));
    std::vector<Mat> lss;
    for (const auto& v : span_basis(lss_v, size * size)) lss.push_back(unvectorize(v, size));

    Mat adU = on_m(P.U);
    Mat Iu = adU;
    Q c;
    if (is_scalar_multiple_of_identity(adU * adU, c)) {
        auto s = rational_sqrt(sgn(c) < 0 ? Q(-c) : c);
        if (s && sgn(*s) != 0) {
            Iu = adU * (1 / *s);
            cert.lambda = sgn(c) < 0 ? -1 : 1;
            cert.normalized = true;
        }
    }
    cert.I = Iu;
    if (perturb) {
        if (lss.empty()) throw Error("no non-central element of l for the negative control");
        cert.I = Iu + on_m(lss.front());
        cert.normalized = false;
    }
    cert.omega = cert.I.transpose() * Bm;

    // Q on m.
    std::vector<Mat> qspace;
    Mat first;
    if (P.sp1.empty()) {
        std::vector<Mat> adl;
        for (const auto& A : lss) adl.push_back(on_m(A));
        std::vector<SVec> ub, img;
        for (int a = 0; a < md; ++a)
            for (int b = 0; b < md; ++b) {
                Mat E = Mat::unit(md, md, a, b);
                ub.push_back(vectorize(E));
                SVec im;
                int off = 0;
                for (const auto& A : adl) {
                    for (const auto& [i, x] : vectorize(E * A - A * E)) im.emplace_back(i + off, x);
                    off += md * md;
                }
                Q tr = E.trace();
                if (sgn(tr) != 0) im.emplace_back(off, tr);
                img.push_back(im);
            }
        for (const auto& v : kernel_within(ub, img, static_cast<int>(adl.size()) * md * md + 1)) qspace.push_back(unvectorize(v, md));
        first = Iu;
        cert.q_source = "traceless commutant of ad([l,l]) on m, completed from I";
    } else {
        Mat a1 = on_m(P.sp1[0]), a2 = on_m(P.sp1[1]);
        qspace = {a1, a2, a1 * a2};
        first = a1;
        cert.q_source = "ad of the sp(1) factor of l";
    }

    cert.triple.n = n;
    auto J1 = normalize_complex(first);
    std::optional<Mat> J2;
    if (J1) {
        std::vector<SVec> qb, img;
        for (const auto& T : qspace) {
            qb.push_back(vectorize(T));
            img.push_back(vectorize(*J1 * T + T * *J1));
        }
        for (const auto& v : kernel_within(qb, img, md * md)) {
            J2 = normalize_complex(unvectorize(v, md));
            if (J2) break;
        }
    }
    if (J1 && J2) {
        cert.triple.J = {*J1, *J2, *J1 * *J2};
        cert.triple_ok = static_cast<int>(qspace.size()) == 3 && satisfies_quaternion_relations(cert.triple);
    }

    cert.omega_invariant = true;
    cert.q_invariant = cert.triple_ok;
    std::vector<Mat> adl_all;
    std::vector<SVec> jv;
    if (cert.triple_ok)
        for (const auto& J : cert.triple.J) jv.push_back(vectorize(J));
    for (const auto& X : P.l) {
        Mat A = on_m(X);
        adl_all.push_back(A);
        if (!(A.transpose() * cert.omega + cert.omega * A).is_zero()) cert.omega_invariant = false;
        if (cert.triple_ok)
            for (const auto& J : cert.triple.J)
                if (!span_contains(jv, {vectorize(commutator(A, J))}, md * md)) cert.q_invariant = false;
    }

    if (cert.triple_ok) {
        BasisChange bc = adapted_basis_from_triple(cert.triple);
        cert.adapted = bc.matrix;
        cert.omega_adapted = bc.matrix.transpose() * cert.omega * bc.matrix;
        auto std_h = standard_triple(n);
        ModelTensor w = ModelTensor::from_matrix(n, cert.omega_adapted);
        try {
            cert.scalar = is_scalar_2form(w, std_h).scalar;
        } catch (const ValidationError&) {
            cert.scalar = false;
        }
        if (cert.scalar && cert.omega_invariant) {
            Mat Cinv = *inverse(bc.matrix);
            std::vector<Mat> conj;
            for (const auto& A : adl_all) conj.push_back(Cinv * A * bc.matrix);
            auto stab = stabilizer(w);
            auto norm = normalizer_of_triple(std_h);
            cert.isotropy_in_stabilizer = contains(intersection(stab, norm), conj);
        }
    }
    return cert;
}

} // namespace qskew
