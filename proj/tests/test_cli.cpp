#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "qskew/tensor_io.hpp"
#include "support.hpp"

namespace {

struct Result {
    int code;
    qskew::json out;
    std::string text;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream os;
    int code = qskew::cli::run(args, os);
    Result r{code, {}, os.str()};
    r.out = qskew::json::parse(r.text, nullptr, false);
    return r;
}

std::string sample(const std::string& name) { return qskew::test::samples_dir() + "/" + name; }

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("dims")
    {
        auto r = run({"dims", "--n", "4"});
        REQUIRE(r.code == 0);
        CHECK(r.out["modules"]["K"] == 160);
        CHECK(r.out["modules"]["E"] == 8);
        CHECK(r.out["modules"]["S3_0E"] == 112);
        CHECK(run({"dims", "--n", "1"}).code == 2);
    }

    TEST_CASE("spencer")
    {
        auto r = run({"spencer", "--algebra", "so_star", "--n", "2"});
        REQUIRE(r.code == 0);
        CHECK(r.out["kernel_dim"] == 0);
        CHECK(r.out["cohomology_dim"] == 176);
        CHECK(r.out["matches_expected"] == true);
        CHECK(run({"spencer", "--algebra", "so_star_sp1", "--n", "2"}).out["cohomology_dim"] == 152);
    }

    TEST_CASE("classify")
    {
        auto zero = run({"classify", "--group", "so_star_sp1", "--structure", sample("structure_standard_n2.json"),
                         "--torsion", sample("torsion_zero_n2.json")});
        REQUIRE(zero.code == 0);
        CHECK(zero.out["type"] == "torsion-free");
        CHECK(zero.out["torsion_free"] == true);

        auto s = run({"classify", "--group", "so_star", "--structure", sample("omega_standard_n2.json"), "--torsion",
                      sample("torsion_sample_n2.json")});
        REQUIRE(s.code == 0);
        CHECK(s.out["torsion_free"] == false);
        CHECK(s.out["components"]["X1"]["dim"] == 64);
    }

    TEST_CASE("errors and exit codes")
    {
        auto bad = run({"classify", "--group", "so_star", "--structure", sample("structure_standard_n2.json"),
                        "--torsion", sample("no_such_file.json")});
        CHECK(bad.code == 2);
        CHECK(bad.out["error"] == "validation");

        auto mm = run({"--field", "float64", "classify", "--group", "so_star", "--structure",
                       sample("structure_standard_n2.json"), "--torsion", sample("torsion_zero_n2.json")});
        CHECK(mm.code == 2);
        CHECK(mm.out["error"] == "mode_mismatch");

        auto ns = run({"verify-structure", "--omega", sample("omega_not_scalar_n2.json"), "--triple",
                       sample("triple_standard_n2.json")});
        CHECK(ns.code == 3);
        CHECK(ns.out["error"] == "precondition");
        CHECK(ns.out["condition"] == 5);

        CHECK(run({"no-such-command"}).code == 2);
        CHECK(run({"dims"}).code == 2);
    }

    TEST_CASE("output is deterministic")
    {
        std::vector<std::string> args = {"--seed", "7", "minimal-torsion", "--mode", "qsH", "--random", "--n", "2"};
        auto a = run(args);
        auto b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.text == b.text);
        CHECK(a.out["normalization_covectors_vanish"] == true);
    }

    TEST_CASE("help")
    {
        CHECK(run({"--help"}).code == 0);
        CHECK(run({"gram-schmidt", "--help"}).code == 0);
    }
}
