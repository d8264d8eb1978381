#include <doctest.h>

#include "qskew/random.hpp"
#include "qskew/samples.hpp"
#include "qskew/torsion_lab.hpp"
#include "support.hpp"

using namespace qskew;

namespace {

std::vector<SVec> lambda3_basis(int n, const Mat& W)
{
    std::vector<SVec> out;
    int N = 4 * n;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = b + 1; c < N; ++c) out.push_back(pack(raised_basis_3form(n, a, b, c, W)));
    return out;
}

std::vector<SVec> eigenspace(int n, const HypercomplexTriple& h, int shift)
{
    auto C = torsion_operator(n, [&](const ModelTensor& phi) { return casimir(phi, h); });
    return span_basis(C.plus_identity(shift).col, torsion_dim(n));
}

// Traceless random element of [S^2 E]* for every X: omega(L_X Y, Z) slices.
ModelTensor traceless_nabla(int n, Rng& rng)
{
    auto s2e = build_subalgebra("s2e", n);
    int N = 4 * n;
    Mat W = test::omega0(n);
    ModelTensor nw(n, {Slot::Co, Slot::Co, Slot::Co});
    for (int x = 0; x < N; ++x) {
        Mat L(N, N);
        for (const auto& g : s2e.generators) L += g * rng.rational();
        L -= Mat::identity(N) * (L.trace() / N);
        Mat B = L.transpose() * W;
        for (int y = 0; y < N; ++y)
            for (int z = 0; z < N; ++z) nw.at({x, y, z}) = B(y, z);
    }
    return nw;
}

bool in_complement(const ModelTensor& T, const TypeBasisCache& cache)
{
    SVec v = pack(T);
    return is_zero(add(cache.project(v), v, Q(-1)));
}

} // namespace

TEST_SUITE("torsion_lab")
{
    TEST_CASE("type bases at n = 2")
    {
        auto sp = type_bases(2, TorsionGroup::SoStarSp1);
        CHECK(sp->type_dims() == std::array<int, 7>{64, 16, 32, 8, 32, 0, 0});
        CHECK(sp->complement.size() == 152);
        CHECK(sp->complement_spans);
        CHECK(sp->types_direct);
        CHECK(sp->dims_match);
        auto so = type_bases(2, TorsionGroup::SoStar);
        CHECK(so->type_dims() == std::array<int, 7>{64, 16, 32, 8, 32, 16, 8});
        CHECK(so->complement.size() == 176);
        CHECK(so->complement_spans);
        CHECK(so->types_direct);
        CHECK(so->dims_match);
        // D + im delta spans the whole torsion space.
        for (const auto& c : {sp, so}) {
            auto all = c->complement;
            all.insert(all.end(), c->image_delta.begin(), c->image_delta.end());
            CHECK(rank_of(all, 224) == 224);
        }
    }

    TEST_CASE("X3 + X4 is Lambda^3 inside Eig(-3)")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        auto eig3 = eigenspace(n, h, 15);
        auto l3 = lambda3_basis(n, W);
        auto cap = intersect(l3, eig3, 224);
        CHECK(cap.size() == 40);
        auto sp = type_bases(2, TorsionGroup::SoStarSp1);
        auto x34 = sp->model[2];
        x34.insert(x34.end(), sp->model[3].begin(), sp->model[3].end());
        CHECK(rank_of(x34, 224) == 40);
        CHECK(same_span(x34, cap, 224));
        // X2 = Lambda^3 inside Eig(-15).
        auto eig15 = eigenspace(n, h, 3);
        CHECK(same_span(sp->model[1], intersect(l3, eig15, 224), 224));
    }

    TEST_CASE("the Eig(-15) part of delta(V* (x) sp1) lies in im pi_H")
    {
        int n = 2;
        auto h = standard_triple(n);
        auto sp1 = build_subalgebra("sp1", n);
        auto eig15 = eigenspace(n, h, 3);
        auto x6 = intersect(spencer_images(sp1), eig15, 224);
        CHECK(x6.size() == 16);
        auto P = torsion_operator(n, [&](const ModelTensor& phi) { return proj_H(phi, h); });
        CHECK(span_contains(span_basis(P.col, 224), x6, 224));
    }

    TEST_CASE("classifier soundness")
    {
        int n = 2;
        for (auto group : {TorsionGroup::SoStarSp1, TorsionGroup::SoStar}) {
            CAPTURE(group_name(group));
            auto cache = type_bases(n, group);
            auto g = build_subalgebra(algebra_name(group), n);
            Rng rng(test::seed(50 + static_cast<int>(group)));
            for (int t = 0; t < 50; ++t) {
                auto rep = classify(spencer_delta(random_end_form(g, rng)), *cache);
                CHECK(rep.torsion_free());
                CHECK(rep.label == "torsion-free");
            }
            for (int type = 0; type < kTypeCount; ++type)
                for (const auto& v : cache->types[type]) {
                    auto rep = classify(unpack(n, v), *cache);
                    CHECK(rep.present_types() == std::vector<int>{type + 1});
                }
        }
        auto sp = type_bases(n, TorsionGroup::SoStarSp1);
        Rng rng(test::seed(52));
        std::array<bool, 7> seen{};
        for (int t = 0; t < 20; ++t) {
            auto rep = classify(random_raised_3form(n, test::omega0(n), rng), *sp);
            for (int type : rep.present_types()) {
                CHECK((type == 2 || type == 3 || type == 4));
                seen[type - 1] = true;
            }
        }
        CHECK(seen[1]);
        CHECK(seen[2]);
        CHECK(seen[3]);
        CHECK(classify(ModelTensor::torsion(n), *sp).label == "torsion-free");
    }

    TEST_CASE("pure types from the defining constructions")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        Rng rng(test::seed(53));
        Vec zeta = rng.vector(8);
        zeta[0] = 1;
        auto so = type_bases(n, TorsionGroup::SoStar);
        CHECK(classify(spencer_delta(component_D(zeta, h)), *so).label == "X_{7}");
        auto sp = type_bases(n, TorsionGroup::SoStarSp1);
        CHECK(classify(raised_alt_omega_zeta(zeta, W), *sp).label == "X_{4}");
    }

    TEST_CASE("intrinsic representative")
    {
        int n = 2;
        auto sp = type_bases(n, TorsionGroup::SoStarSp1);
        auto g = build_subalgebra("so_star_sp1", n);
        Rng rng(test::seed(54));
        auto x5 = unpack(n, sp->types[4][3]);
        auto T = spencer_delta(random_end_form(g, rng)) + x5;
        CHECK(intrinsic_representative(T, *sp) == x5);
        auto x2 = unpack(n, sp->types[1][0]);
        CHECK(intrinsic_representative(x2, *sp) == x2);
        auto phi = random_torsion(n, rng);
        auto rep = classify(phi, *sp);
        ModelTensor sum = ModelTensor::torsion(n);
        for (const auto& c : rep.components) sum += c;
        CHECK(sum == rep.representative);
        auto again = classify(rep.representative, *sp);
        for (int t = 0; t < kTypeCount; ++t) CHECK(again.components[t] == rep.components[t]);
    }

    TEST_CASE("float mode presence uses the relative tolerance")
    {
        int n = 2;
        auto sp = type_bases(n, TorsionGroup::SoStarSp1);
        auto x1 = unpack(n, sp->types[0][0]);
        auto x4 = unpack(n, sp->types[3][0]);
        auto T = x1 + parse_rational("1/1000000000000") * x4;
        CHECK(classify(T, *sp, Field::Rational).label == "X_{14}");
        CHECK(classify(T, *sp, Field::Float64, 1e-9).label == "X_{1}");
    }

    TEST_CASE("minimal qs-H torsion")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        auto sp = type_bases(n, TorsionGroup::SoStarSp1);
        auto admissible = admissible_qs_torsion_basis(n);
        CHECK(admissible.size() == 80);
        Rng rng(test::seed(55));
        for (int t = 0; t < 20; ++t) {
            auto TQ = random_from_basis(n, admissible, rng);
            auto nw = random_hermitian_nabla(n, W, rng);
            auto out = minimal_qsH_torsion(TQ, nw, W, h);
            CHECK(in_complement(out, *sp));
            auto tr = traces(out, W, h);
            for (int k = 0; k < 8; ++k) {
                CHECK(2 * tr.tr1[k] + tr.tr3[k] == 0);
                CHECK(tr.tr1[k] == tr.tr4[k]);
            }
            for (const auto& c : normalization_covectors(out, W, h))
                for (const auto& x : c) CHECK(sgn(x) == 0);
            // Shift the input connection by a member of the kernel family.
            Vec z = rng.vector(8);
            Vec m4(8), p4(8), mz(8);
            for (int k = 0; k < 8; ++k) {
                m4[k] = -4 * z[k];
                p4[k] = 4 * z[k];
                mz[k] = -z[k];
            }
            auto K = component_A(z, n) + component_B(raise_covector(m4, W), W, h) +
                     component_C(raise_covector(p4, W), W, h) + component_D(mz, h);
            REQUIRE(spencer_delta(K).is_zero());
            ModelTensor nw2 = nw;
            for (int x = 0; x < 8; ++x) {
                Mat S = K[x].transpose() * W + W * K[x];
                for (int y = 0; y < 8; ++y)
                    for (int zz = 0; zz < 8; ++zz) nw2.at({x, y, zz}) -= S(y, zz);
            }
            CHECK(minimal_qsH_torsion(TQ, nw2, W, h) == out);
        }
        // Traceless nabla omega: the correction terms vanish.
        auto TQ = random_from_basis(n, admissible, rng);
        auto nw = traceless_nabla(n, rng);
        CHECK(minimal_qsH_torsion(TQ, nw, W, h) == TQ + spencer_delta(half_raised(nw, W)));
        ModelTensor zero3(n, {Slot::Co, Slot::Co, Slot::Co});
        CHECK(minimal_qsH_torsion(ModelTensor::torsion(n), zero3, W, h).is_zero());
    }

    TEST_CASE("minimal qs-H torsion preconditions")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        Rng rng(test::seed(56));
        ModelTensor zero3(n, {Slot::Co, Slot::Co, Slot::Co});
        auto raw = random_torsion(n, rng);
        try {
            minimal_qsH_torsion(raw, zero3, W, h);
            FAIL("expected a precondition failure");
        } catch (const PreconditionError& e) {
            CHECK(e.condition() == 1);
        }
        bool tr4_rejected = false;
        for (int t = 0; t < 5 && !tr4_rejected; ++t) {
            try {
                minimal_qsH_torsion(proj_H(random_torsion(n, rng), h), zero3, W, h);
            } catch (const PreconditionError& e) {
                tr4_rejected = e.condition() == 2;
            }
        }
        CHECK(tr4_rejected);
        ModelTensor bad(n, {Slot::Co, Slot::Co, Slot::Co});
        bad.at({0, 0, 1}) = 1;
        bad.at({0, 1, 0}) = -1;
        try {
            minimal_qsH_torsion(ModelTensor::torsion(n), bad, W, h);
            FAIL("expected a precondition failure");
        } catch (const PreconditionError& e) {
            CHECK(e.condition() == 3);
        }
    }

    TEST_CASE("minimal hs-H torsion")
    {
        int n = 2;
        auto h = standard_triple(n);
        Mat W = test::omega0(n);
        auto so = type_bases(n, TorsionGroup::SoStar);
        Rng rng(test::seed(57));
        ModelTensor zero3(n, {Slot::Co, Slot::Co, Slot::Co});
        for (int t = 0; t < 10; ++t) {
            auto TH = proj_H(random_torsion(n, rng), h);
            CHECK(minimal_hsH_torsion(TH, zero3, W, h) == TH);
            auto nw = random_hermitian_nabla(n, W, rng);
            auto out = minimal_hsH_torsion(TH, nw, W, h);
            CHECK(out == TH + spencer_delta(half_raised(nw, W)));
            CHECK(in_complement(out, *so));
            // With T_H = 0 the result is pure spin 1/2.
            auto only = minimal_hsH_torsion(ModelTensor::torsion(n), nw, W, h);
            CHECK(casimir_split(only, h).spin32.is_zero());
        }
        CHECK_THROWS_AS(minimal_hsH_torsion(random_torsion(n, rng), zero3, W, h), PreconditionError);
    }

    TEST_CASE("inputs must be torsion tensors")
    {
        auto sp = type_bases(2, TorsionGroup::SoStarSp1);
        ModelTensor t = ModelTensor::torsion(2);
        t.at({0, 1, 2}) = 1;
        CHECK_THROWS_AS(classify(t, *sp), ValidationError);
        CHECK_THROWS_AS(type_bases(1, TorsionGroup::SoStar), PreconditionError);
        CHECK_THROWS_AS(parse_group("so5"), ValidationError);
    }
}
