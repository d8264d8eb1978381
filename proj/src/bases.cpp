#include "qskew/bases.hpp"

#include <cmath>

namespace qskew {

const char* basis_kind_name(BasisKind k)
{
    switch (k) {
    case BasisKind::Adapted: return "adapted";
    case BasisKind::SkewHermitian: return "skew-hermitian";
    case BasisKind::Darboux: return "darboux";
    }
    return "?";
}

BasisChange adapted_basis_from_triple(const HypercomplexTriple& h)
{
    if (!satisfies_quaternion_relations(h)) throw PreconditionError("the triple does not satisfy the quaternionic relations");
    int n = h.n, N = 4 * n;
    Mat C(N, N);
    Echelon span(N);
    int c = 0;
    for (int s = 0; s < N && c < n; ++s) {
        Vec v(static_cast<std::size_t>(N));
        v[s] = 1;
        if (span.contains(sparse(v))) continue;
        std::array<Vec, 4> line = {v, h.J[0] * v, h.J[1] * v, h.J[2] * v};
        for (int comp = 0; comp < 4; ++comp) {
            span.insert(sparse(line[comp]));
            for (int r = 0; r < N; ++r) C(r, real_index(n, c, comp)) = line[comp][r];
        }
        ++c;
    }
    auto inv = inverse(C);
    if (c != n || !inv) throw Error("adapted basis construction did not reach full rank");
    auto std_h = standard_triple(n);
    for (int a = 0; a < 3; ++a)
        if (*inv * h.J[a] * C != std_h.J[a]) throw Error("adapted basis does not conjugate the triple to the standard one");
    return {n, C, BasisKind::Adapted};
}

Quaternion sesquilinear(const QuatMatrix& h, const std::vector<Quaternion>& x, const std::vector<Quaternion>& y)
{
    Quaternion s = Quaternion::zero(h.mode());
    for (int r = 0; r < h.rows(); ++r) {
        Quaternion xr = x[r].conj();
        for (int c = 0; c < h.cols(); ++c) s += xr * h(r, c) * y[c];
    }
    return s;
}

Quaternion rotation_to_j(const Quaternion& u)
{
    Field f = u.mode();
    Quaternion q = Quaternion::one(f) - u * Quaternion::unit_j(f);
    double n2 = q.norm2().to_double();
    if (n2 < 1e-24) return Quaternion::unit_i(f);
    Scalar inv = Scalar::one(f) / q.norm2().sqrt();
    return inv * q;
}

namespace {

using QVecH = std::vector<Quaternion>;

QVecH column(const QuatMatrix& M, int c)
{
    QVecH v;
    for (int r = 0; r < M.rows(); ++r) v.push_back(M(r, c));
    return v;
}

QVecH axpy(const QVecH& x, const QVecH& e, const Quaternion& q)   // x + e q
{
    QVecH out = x;
    for (std::size_t r = 0; r < x.size(); ++r) out[r] += e[r] * q;
    return out;
}

QVecH times(const QVecH& e, const Quaternion& q)
{
    QVecH out = e;
    for (auto& z : out) z = z * q;
    return out;
}

double magnitude(const Quaternion& q) { return std::sqrt(q.norm2().to_double()); }

} // namespace

GramSchmidtResult quat_gram_schmidt(const QuatMatrix& h, double tolerance)
{
    int n = h.rows();
    if (n == 0 || h.cols() != n) throw ValidationError("Gram-Schmidt needs a non-empty square matrix");
    Field f = h.mode();
    QuatMatrix hs = conj_transpose(h);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            bool ok = f == Field::Rational ? hs(r, c) == -h(r, c) : magnitude(hs(r, c) + h(r, c)) <= tolerance;
            if (!ok) throw PreconditionError("h is not skew-Hermitian", 1);
        }
    double scale = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) scale = std::max(scale, magnitude(h(r, c)));
    auto negligible = [&](const Quaternion& q) {
        return f == Field::Rational ? q.is_zero() : magnitude(q) <= tolerance * std::max(scale, 1.0);
    };

    std::vector<QVecH> rest;
    for (int c = 0; c < n; ++c) rest.push_back(column(QuatMatrix::identity(n, f), c));
    std::vector<QVecH> done;
    const std::array<Quaternion, 4> units = {Quaternion::one(f), Quaternion::unit_i(f), Quaternion::unit_j(f),
                                             Quaternion::unit_k(f)};
    while (!rest.empty()) {
        // Step IIb: an anisotropic vector among the remaining ones or f_a + f_b u.
        int pick = -1;
        QVecH e;
        for (std::size_t a = 0; a < rest.size() && pick < 0; ++a)
            if (!negligible(sesquilinear(h, rest[a], rest[a]))) {
                pick = static_cast<int>(a);
                e = rest[a];
            }
        for (std::size_t a = 0; a < rest.size() && pick < 0; ++a)
            for (std::size_t b = a + 1; b < rest.size() && pick < 0; ++b) {
                if (negligible(sesquilinear(h, rest[a], rest[b]))) continue;
                for (const auto& u : units) {
                    QVecH cand = axpy(rest[a], rest[b], u);
                    if (!negligible(sesquilinear(h, cand, cand))) {
                        pick = static_cast<int>(a);
                        e = cand;
                        break;
                    }
                }
            }
        if (pick < 0) throw PreconditionError("h is degenerate", 2);
        rest.erase(rest.begin() + pick);

        // Step IIa: rotate h(e, e) to a positive multiple of j and rescale (float mode).
        if (f == Field::Float64) {
            Quaternion u = sesquilinear(h, e, e);
            Scalar len = u.norm2().sqrt();
            Quaternion unit = (Scalar::one(f) / len) * u;
            Quaternion q = (Scalar::one(f) / len.sqrt()) * rotation_to_j(unit);
            e = times(e, q);
        }

        // Step III: clear h(e, .) on the remaining vectors.
        Quaternion hee_inv = sesquilinear(h, e, e).inverse();
        for (auto& x : rest) x = axpy(x, e, -(hee_inv * sesquilinear(h, e, x)));
        done.push_back(e);
    }

    GramSchmidtResult r;
    r.C = QuatMatrix(n, n, f);
    for (int c = 0; c < n; ++c)
        for (int row = 0; row < n; ++row) r.C(row, c) = done[c][row];
    r.gram = quat_matmul(quat_matmul(conj_transpose(r.C), h), r.C);
    if (f == Field::Float64) {
        QuatMatrix target = QuatMatrix::scalar(n, Quaternion::unit_j(f));
        r.normalized = max_abs_diff(r.gram, target) <= 1e-10 * std::max(1.0, scale);
    }
    return r;
}

QuatMatrix darboux_matrix(int m)
{
    if (m < 1) throw ValidationError("darboux_matrix needs m >= 1");
    Field f = Field::Rational;
    QuatMatrix C(2 * m, 2 * m, f);
    Scalar half(Q(1, 2));
    for (int r = 0; r < m; ++r) {
        C(r, r) = -(half * Quaternion::unit_k(f));
        C(r, m + r) = Quaternion::unit_i(f);
        C(m + r, r) = -(half * Quaternion::unit_j(f));
        C(m + r, m + r) = -Quaternion::one(f);
    }
    return C;
}

bool real_part_of_conjugated_j_vanishes()
{
    // Re(conj(q) j q) is a quadratic form in (w, x, y, z); it vanishes iff it
    // vanishes on the basis vectors and on all pairwise sums.
    Field f = Field::Rational;
    std::array<Quaternion, 4> e = {Quaternion::one(f), Quaternion::unit_i(f), Quaternion::unit_j(f), Quaternion::unit_k(f)};
    auto re = [&](const Quaternion& q) { return (q.conj() * Quaternion::unit_j(f) * q).w; };
    for (int a = 0; a < 4; ++a) {
        if (!re(e[a]).is_zero()) return false;
        for (int b = a + 1; b < 4; ++b)
            if (!re(e[a] + e[b]).is_zero()) return false;
    }
    return true;
}

bool darboux_parity_obstruction(int n)
{
    if (n < 1) throw ValidationError("darboux_parity_obstruction needs n >= 1");
    if (n % 2 == 0) {
        int m = n / 2;
        QuatMatrix C = darboux_matrix(m);
        QuatMatrix prod = quat_matmul(quat_matmul(conj_transpose(C), QuatMatrix::scalar(2 * m, Quaternion::unit_j(Field::Rational))), C);
        QuatMatrix target(2 * m, 2 * m);
        for (int r = 0; r < m; ++r) {
            target(r, m + r) = Quaternion::one(Field::Rational);
            target(m + r, r) = -Quaternion::one(Field::Rational);
        }
        if (!(prod == target)) throw Error("the Darboux matrix does not produce the standard form");
        return true;
    }
    if (!real_part_of_conjugated_j_vanishes()) throw Error("odd-dimensional obstruction certificate failed");
    return false;
}

} // namespace qskew
