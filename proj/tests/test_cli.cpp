#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "sik3/cli.hpp"
#include "sik3/rational.hpp"

using namespace sik3;
using nlohmann::ordered_json;

namespace {

struct RunResult {
    int code;
    std::string out;
    ordered_json json;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_run(args, out, err);
    RunResult r{code, out.str(), {}};
    r.json = ordered_json::parse(r.out);
    return r;
}

} // namespace

TEST_CASE("lemma sweep") {
    auto r = run({"lemma", "--series", "1", "--max", "300"});
    CHECK(r.code == 0);
    CHECK(r.json["agree"] == true);
    CHECK(r.json["counterexamples"].empty());
    CHECK(r.json["series"] == 1);
}

TEST_CASE("fibers from a family") {
    auto r = run({"fibers", "--family", "2", "--a", "1,0,0,0,1"});
    CHECK(r.code == 0);
    CHECK(r.json["euler_total"] == 24);
    int i14 = 0, i2 = 0, i1 = 0;
    for (const auto& f : r.json["fibers"]) {
        if (f["type"] == "I14") i14 += f["count"].get<int>();
        if (f["type"] == "I2") i2 += f["count"].get<int>();
        if (f["type"] == "I1") i1 += f["count"].get<int>();
    }
    CHECK(i14 == 1);
    CHECK(i2 == 1);
    CHECK(i1 == 8);
}

TEST_CASE("fibers of the alternate fibration") {
    auto r = run({"fibers", "--family", "1", "--a", "1,2,1", "--b", "1,1,2", "--alt"});
    CHECK(r.code == 0);
    bool has_i8star = false;
    for (const auto& f : r.json["fibers"]) has_i8star |= (f["type"] == "I8*");
    CHECK(has_i8star);
}

TEST_CASE("height of the solved N = 4 section") {
    auto r = run({"height", "--form", "extended", "--a", "-1,-1,0,0,1", "--b", "0,1", "--px", "1",
                  "--py", "0,0,1"});
    CHECK(r.code == 0);
    CHECK(r.json["height"] == "8/7");
    CHECK(r.json["pO"] == 0);
    CHECK(parse_rat(r.json["height"].get<std::string>()) == make_rat(8, 7));
}

TEST_CASE("height of the halving witness through the CLI") {
    // target of the 2-isogeny from a = t^4 - t - 1: (-2a, a^2 - 4t); the
    // witness meets four of the eight I2 nodes
    auto r = run({"height", "--form", "extended", "--a", "2,2,0,0,-2", "--b",
                  "1,-2,1,0,-2,-2,0,0,1", "--px", "1,-1,2,0,1", "--py", "2,-2,4,0,2"});
    CHECK(r.code == 0);
    CHECK(r.json["height"] == "4/7");
}

TEST_CASE("quotient emits the target and its fibre table") {
    auto r = run({"quotient", "--a", "1,0,0,0,1", "--b", "0,1"});
    CHECK(r.code == 0);
    // target a = -2(t^4+1)
    CHECK(r.json["target_a"][0] == "-2");
    CHECK(r.json["target_a"][4] == "-2");
    CHECK(r.json["euler_total"] == 24);
}

TEST_CASE("sandwich j-match") {
    auto r = run({"sandwich", "--a", "1,0,0,0,1", "--b", "0,1"});
    CHECK(r.code == 0);
    CHECK(r.json["j_match"] == true);
}

TEST_CASE("verify with the series-3 witness") {
    auto r = run({"verify", "--series", "3", "--n", "8", "--alpha", "1", "--w", "1,0,1"});
    CHECK(r.code == 0);
    CHECK(r.json["pass"] == true);
    bool saw_height = false;
    for (const auto& s : r.json["stages"]) {
        if (s["name"] == "section_height") {
            saw_height = true;
            CHECK(s["values"]["height"] == "16/15");
        }
    }
    CHECK(saw_height);
}

TEST_CASE("verify failure exits 1") {
    auto r = run({"verify", "--series", "1", "--n", "3"});
    CHECK(r.code == 1);
    CHECK(r.json["pass"] == false);
}

TEST_CASE("lattice subcommand") {
    const std::string e7 = R"({"lattice": {"label": "E7", "gram":
        [[-2,1,0,0,0,0,0],[1,-2,1,0,0,0,0],[0,1,-2,1,0,0,1],[0,0,1,-2,1,0,0],
         [0,0,0,1,-2,1,0],[0,0,0,0,1,-2,0],[0,0,1,0,0,0,-2]]}})";
    auto r = run({"lattice", "--op", "discriminant_form", "--json", e7});
    CHECK(r.code == 0);
    CHECK(r.json["disc"] == "-2");
    CHECK(r.json["form"]["orders"][0] == 2);
    CHECK(r.json["form"]["q"][0] == "1/2");

    const std::string pair = R"({"l1": {"gram": [[-2]]}, "l2": {"gram":
        [[-2,1,0,0,0,0,0],[1,-2,1,0,0,0,0],[0,1,-2,1,0,0,1],[0,0,1,-2,1,0,0],
         [0,0,0,1,-2,1,0],[0,0,0,0,1,-2,0],[0,0,1,0,0,0,-2]]}, "negate": true})";
    auto r2 = run({"lattice", "--op", "disc_forms_isomorphic", "--json", pair});
    CHECK(r2.code == 0);
    CHECK(r2.json["isomorphic"] == true);
}

TEST_CASE("deterministic output") {
    auto a = run({"verify", "--series", "2", "--n", "4", "--alpha", "1", "--w", "0,0,1"});
    auto b = run({"verify", "--series", "2", "--n", "4", "--alpha", "1", "--w", "0,0,1"});
    CHECK(a.out == b.out);
    CHECK(a.code == 0);
}

TEST_CASE("usage and input errors exit 2") {
    std::ostringstream out, err;
    CHECK(cli_run({"nonsense"}, out, err) == 2);
    CHECK(cli_run({"fibers", "--family", "2", "--a", "bad,poly"}, out, err) == 2);
    CHECK(cli_run({"verify", "--series", "2", "--n", "4", "--alpha", "1"}, out, err) == 2);
    CHECK(cli_run({"lattice", "--op", "discriminant_form"}, out, err) == 2);
}
