#include <doctest.h>

#include "qskew/samples.hpp"
#include "qskew/tensor_io.hpp"
#include "support.hpp"

using namespace qskew;

namespace {

json doc(const std::string& kind, json entries, const std::string& symmetry = "")
{
    json j = {{"schema_version", 1}, {"n", 2}, {"field", "rational"}, {"kind", kind}, {"entries", entries}};
    if (!symmetry.empty()) j["symmetry"] = symmetry;
    return j;
}

} // namespace

TEST_SUITE("tensor_io")
{
    TEST_CASE("round trip for every kind")
    {
        Rng rng(test::seed(70));
        for (std::string kind : {"2form", "metric", "endo", "torsion", "3tensor", "4tensor", "basis_change"}) {
            CAPTURE(kind);
            ModelTensor t(2, kind_slots(kind), Symmetry::None);
            for (auto& x : t.data()) x = rng.rational(9, 7);
            Symmetry sym = kind_symmetry(kind);
            if (sym != Symmetry::None) {
                // Symmetrize or antisymmetrize in the first two slots.
                auto raw = t.data();
                Q s = sym == Symmetry::Symmetric ? Q(1) : Q(-1);
                for (std::size_t f = 0; f < raw.size(); ++f) {
                    auto idx = t.unflat(f);
                    std::swap(idx[0], idx[1]);
                    t.data()[f] = raw[f] + s * raw[t.flat(idx)];
                }
            }
            t.set_symmetry(sym);
            json j = tensor_to_json(TensorDocument{kind, Field::Rational, t});
            auto back = tensor_from_json(j);
            CHECK(back.kind == kind);
            CHECK(back.tensor.data() == t.data());
            CHECK(tensor_from_json(tensor_to_json(back)).tensor.data() == t.data());
        }
    }

    TEST_CASE("symmetry flags fill the orbit")
    {
        auto a = tensor_from_json(doc("2form", json::array({json::array({json::array({1, 5}), "3/2"})})));
        CHECK(a.tensor.at({0, 4}) == Q(3, 2));
        CHECK(a.tensor.at({4, 0}) == Q(-3, 2));
        auto g = tensor_from_json(doc("metric", json::array({json::array({json::array({2, 3}), "1"})})));
        CHECK(g.tensor.at({2, 1}) == Q(1));
        auto t = tensor_from_json(doc("3tensor", json::array({json::array({json::array({1, 2, 3}), "1"})}), "antisymmetric"));
        CHECK(t.tensor.at({2, 0, 1}) == Q(1));
        CHECK(t.tensor.at({1, 0, 2}) == Q(-1));
        auto s = tensor_from_json(doc("3tensor", json::array({json::array({json::array({1, 2, 3}), "1"})}), "none"));
        CHECK(s.tensor.at({1, 0, 2}) == Q(0));
    }

    TEST_CASE("invalid documents are rejected")
    {
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({1, 1}), "1"})}))),
                        ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({1, 2}), "1"}),
                                                                    json::array({json::array({2, 1}), "1"})}))),
                        ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({1, 9}), "1"})}))),
                        ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({0, 2}), "1"})}))),
                        ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({1, 2, 3}), "1"})}))),
                        ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("5form", json::array())), ValidationError);
        auto bad = doc("2form", json::array());
        bad["schema_version"] = 2;
        CHECK_THROWS_AS(tensor_from_json(bad), ValidationError);
        CHECK_THROWS_AS(tensor_from_json(doc("2form", json::array({json::array({json::array({1, 2}), "x/y"})}))),
                        ValidationError);
    }

    TEST_CASE("float64 numbers convert exactly")
    {
        json j = doc("2form", json::array({json::array({json::array({1, 2}), 0.1})}));
        j["field"] = "float64";
        auto d = tensor_from_json(j);
        CHECK(d.field == Field::Float64);
        CHECK(d.tensor.at({0, 1}) == rational_from_double(0.1));
        CHECK(d.tensor.at({0, 1}) != Q(1, 10));
        auto back = tensor_to_json(d);
        CHECK(back["entries"][0][1].get<double>() == 0.1);
    }

    TEST_CASE("triple and quaternionic matrix round trips")
    {
        HypercomplexTriple h;
        h.n = 2;
        for (int a = 0; a < 3; ++a) h.J[a] = test::left_multiplication(2, a + 1);
        auto h2 = triple_from_json(triple_to_json(h));
        for (int a = 0; a < 3; ++a) CHECK(h2.J[a] == h.J[a]);

        Rng rng(test::seed(71));
        for (Field f : {Field::Rational, Field::Float64}) {
            auto A = random_skew_hermitian(3, f, rng);
            auto B = quat_matrix_from_json(quat_matrix_to_json(A));
            CHECK(B.mode() == f);
            CHECK(B == A);
        }
    }

    TEST_CASE("rational strings")
    {
        CHECK(rational_string(parse_rational("-6/4")) == "-3/2");
        CHECK(rational_string(Q(5)) == "5");
        CHECK(parse_rational("-2/3") == Q(-2, 3));
    }
}
