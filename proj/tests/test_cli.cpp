#include "oracles.hpp"

#include "paramod/commands.hpp"
#include "paramod/error.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace paramod;
using io::json;

namespace {

json z01234() { return json::array({"0", "1", "2", "3", "4"}); }

json structure_args(const char* bundle, std::initializer_list<const char*> u) {
    json a{{"bundle", bundle}, {"z", z01234()}, {"u", json::array()}};
    for (const char* s : u) a["u"].push_back(s);
    return a;
}

ErrorKind kind_of(const std::string& name, const json& args) {
    try {
        run_command(name, args);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << name << " did not throw";
    return ErrorKind::internal;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            else if (c == ',' && !quoted) {
                fields.push_back(cur);
                cur.clear();
            } else cur += c;
        }
        fields.push_back(cur);
        rows.push_back(fields);
    }
    return rows;
}

json solve_args(oracle::Rng& rng) {
    auto cfg = oracle::random_config(rng);
    auto L = oracle::generic_structure(rng, BundleType::B());
    json z = json::array();
    for (const auto& x : cfg.points()) z.push_back(io::to_json(x));
    json a = io::to_json(L);
    a["z"] = z;
    a["spectrum"] = io::to_json(oracle::random_spectrum(rng, 1));
    return a;
}

} // namespace

TEST(Run, ClassifyExample) {
    auto out = run_command("classify", structure_args("B", {"1", "0", "0", "0", "0"}));
    EXPECT_EQ(out["stratum"], "U2");
    EXPECT_EQ(out["coords"], json::array({"1", "0", "0"}));
}

TEST(Run, StabilityExample) {
    auto a = structure_args("B", {"0", "0", "0", "0", "1"});
    a["w"] = "1/10,1/10,1/10,1/10,1/10";
    auto out = run_command("stability", a);
    EXPECT_EQ(out["stable"], false);
    EXPECT_EQ(out["worst"]["deg"], 1);
    EXPECT_EQ(out["worst"]["margin"], "-1/2");
}

TEST(Run, CountsExample) {
    json a{{"bundle", "Bprime"}, {"z", "0,1,2,3,4"}};
    EXPECT_EQ(run_command("counts", a)["orbits"], 33);
    a["bundle"] = "B";
    EXPECT_EQ(kind_of("counts", a), ErrorKind::precondition);
}

TEST(Run, CommaStringsMatchArrays) {
    json a{{"bundle", "B"}, {"z", "0,1,2,3,4"}, {"u", "inf,inf,0,1,3"}};
    auto b = structure_args("B", {"inf", "inf", "0", "1", "3"});
    EXPECT_EQ(run_command("classify", a), run_command("classify", b));
    EXPECT_EQ(run_command("classify", a)["stratum"], "Uij''(1,2)");
}

TEST(Run, ErrorKinds) {
    EXPECT_EQ(kind_of("nonsense", json::object()), ErrorKind::schema);
    EXPECT_EQ(kind_of("classify", json::array()), ErrorKind::schema);
    EXPECT_EQ(kind_of("classify", json{{"z", "0,1,2"}, {"u", "0,0,0,0,0"}}), ErrorKind::schema);
    EXPECT_EQ(kind_of("classify", json{{"z", "0,1,2,3,3"}, {"u", "0,0,0,0,0"}}), ErrorKind::schema);
    EXPECT_EQ(kind_of("stabilizing-weight", json{{"bundle", "B"}, {"stratum", "Ui(9)"}}), ErrorKind::schema);
    // All weights 1/5 in degree 1 put the empty contact set on a wall.
    auto a = structure_args("B", {"0", "0", "0", "0", "1"});
    a["w"] = "1/5,1/5,1/5,1/5,1/5";
    EXPECT_EQ(kind_of("stability", a), ErrorKind::precondition);
    EXPECT_EQ(kind_of("tables", json{{"suite", "nope"}}), ErrorKind::schema);
}

TEST(Run, ElmAndMc) {
    json e{{"j", 1}, {"w", "1/4,1/4,1/4,1/4,1/4"}};
    EXPECT_EQ(run_command("elm", e)["w"], json::array({"3/4", "1/4", "1/4", "1/4", "1/4"}));
    EXPECT_EQ(kind_of("elm", json{{"j", 1}}), ErrorKind::schema);
    EXPECT_EQ(kind_of("elm", json{{"j", 6}, {"w", "1/4,1/4,1/4,1/4,1/4"}}), ErrorKind::schema);

    json nu = json::array();
    for (int i = 0; i < 5; ++i) nu.push_back(json::array({"1/4", "-1/4"}));
    json m{{"d", 0}, {"nu", nu}, {"sigma", "+++++"}, {"betaV", "-1/4,-1/4,-1/4,-1/4,-1/4"}};
    auto out = run_command("mc", m);
    EXPECT_EQ(out["rank"], 3);
    EXPECT_EQ(run_command("charpoly", json{{"x", "0,0,0,0,0"}})["value"], "16");
}

TEST(Pipeline, ClassifyStabilizingWeightStability) {
    for (auto u : {std::vector<const char*>{"1", "0", "0", "0", "0"}, {"inf", "1", "0", "0", "0"},
                   {"inf", "inf", "0", "1", "3"}}) {
        json a = structure_args("B", {});
        for (const char* s : u) a["u"].push_back(s);
        auto c = json::parse(run_command("classify", a).dump());
        auto sw = run_command("stabilizing-weight", c);
        EXPECT_EQ(sw["stratum"], c["stratum"]);
        json st = a;
        st["w"] = json::parse(sw.dump())["w"];
        EXPECT_TRUE(run_command("stability", st)["stable"]) << c["stratum"];
    }
}

TEST(Pipeline, SolveLimitFiber) {
    oracle::Rng rng(71);
    for (int k = 0; k < 5; ++k) {
        auto s = run_command("solve", solve_args(rng));
        ASSERT_TRUE(s["solvable"]);
        EXPECT_EQ(s["dimension_mod_gauge"], 2);
        json l = json::parse(s.dump());
        l["w"] = "1/7,1/7,1/7,1/7,1/7";
        auto lim = run_command("limit", l);
        EXPECT_EQ(lim["candidate"], "E0");
        auto f = run_command("fiber", json::parse(lim.dump()));
        EXPECT_EQ(f["dimension"], 2);
    }
}

TEST(Pipeline, LimitRejectsTamperedTriple) {
    oracle::Rng rng(72);
    auto s = run_command("solve", solve_args(rng));
    json l = s;
    l["w"] = "1/7,1/7,1/7,1/7,1/7";
    l["triple"]["structure"]["u"][0] = "12345";
    EXPECT_EQ(kind_of("limit", l), ErrorKind::precondition);
}

TEST(Tables, Orbits) {
    auto rows = csv_rows(emit_table("orbits", json::object()));
    ASSERT_EQ(rows.size(), 34u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"label", "n_infinite", "decomposable", "representative"}));
}

TEST(Tables, SpecialLoci) {
    auto rows = csv_rows(emit_table("special-loci", json{{"z", "0,1,2,3,4"}}));
    int points = 0, lines = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        points += rows[k][0] == "point";
        lines += rows[k][0] == "line";
    }
    EXPECT_EQ(points, 15);
    EXPECT_EQ(lines, 5);
}

TEST(Tables, Chambers) {
    auto rows = csv_rows(emit_table("chambers", json::object()));
    ASSERT_EQ(rows.size(), 4u);
    std::vector<std::pair<std::string, std::string>> want{{"1/5", "1/3"}, {"1/3", "3/5"}, {"2/3", "4/5"}};
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(rows[k + 1][2], want[k].first);
        EXPECT_EQ(rows[k + 1][3], want[k].second);
        EXPECT_EQ(rows[k + 1][5], "true");
    }
}

TEST(Tables, FibersAllDimensionTwo) {
    auto rows = csv_rows(emit_table("fibers", json::object()));
    ASSERT_GT(rows.size(), 1u);
    EXPECT_EQ(rows[0].back(), "dimension");
    for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_EQ(rows[k].back(), "2") << rows[k][0];
}

TEST(Batch, MixedResultsKeepOrder) {
    json reqs = json::array();
    reqs.push_back({{"command", "counts"}, {"args", {{"z", "0,1,2,3,4"}}}});
    reqs.push_back({{"command", "counts"}, {"args", {{"z", "0,1,2,3,4"}, {"bundle", "B"}}}});
    reqs.push_back({{"command", "classify"}, {"args", {{"z", "0,1"}}}});
    auto out = run_command("batch", json{{"requests", reqs}})["results"];
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0]["result"]["orbits"], 33);
    EXPECT_EQ(out[1]["error"]["kind"], "precondition");
    EXPECT_EQ(out[2]["error"]["kind"], "schema");
    json nested = json::array({{{"command", "batch"}, {"args", {{"requests", json::array()}}}}});
    EXPECT_EQ(kind_of("batch", json{{"requests", nested}}), ErrorKind::schema);
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
    oracle::Rng rng(73);
    auto a = solve_args(rng);
    EXPECT_EQ(run_command("solve", a).dump(), run_command("solve", a).dump());
    for (const char* suite : {"orbits", "special-loci", "chambers", "fibers"})
        EXPECT_EQ(emit_table(suite, json::object()), emit_table(suite, json::object()));
}
