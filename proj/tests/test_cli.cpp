#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hypic/examples.hpp"
#include "hypic/io.hpp"

using namespace hypic;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Result cli(const std::string& args) {
    auto dir = std::filesystem::temp_directory_path();
    auto err_path = (dir / ("hypic_err_" + std::to_string(::getpid()))).string();
    std::string cmd = std::string(HYPIC_CLI_PATH) + " " + args + " 2>" + err_path;
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::filesystem::remove(err_path);
    return r;
}

std::string data(const std::string& name) { return std::string(HYPIC_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ConditionAOnExample2Fails) {
    auto r = cli("condition-a " + data("example2.json") + " --json");
    EXPECT_EQ(r.code, 3);
    auto j = json::parse(r.out);
    EXPECT_FALSE(j["applicable"].get<bool>());
    bool origin_fails = false;
    for (const auto& e : j["edges"])
        if (e["codim"] == 3) origin_fails = e["verdict_primary"] == "FAILS" && e["verdict_dual"] == "FAILS";
    EXPECT_TRUE(origin_fails);
}

TEST(Cli, DenseOnExample2) {
    auto r = cli("dense " + data("example2.json") + " --json");
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j["dense"].size(), 5u);
    for (const auto& f : j["dense"]) EXPECT_EQ(f["weight_sum"], "0");
}

TEST(Cli, BettiOnBoolean) {
    auto r = cli("betti " + data("boolean2.json") + " --json --side primary");
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["primary"].get<std::vector<long long>>(), (std::vector<long long>{0, 0, 0}));
    EXPECT_FALSE(j.contains("dual"));
}

TEST(Cli, IcOnResonantExample1) {
    auto r = cli("ic " + data("example1_k2_resonant.json") + " --json");
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["applicable"].get<bool>());
    for (const auto& d : j["ic_betti"]) EXPECT_TRUE(d["exact"].get<bool>());
    auto fail = cli("ic " + data("example2.json"));
    EXPECT_EQ(fail.code, 3);
    EXPECT_EQ(json::parse(fail.err)["error"], "CONDITION_A_FAILED");
}

TEST(Cli, InvalidInputExitsTwo) {
    auto dir = std::filesystem::temp_directory_path();
    auto bad = (dir / "hypic_bad.json").string();
    std::ofstream(bad) << R"({"space":"affine","dimension":1,"hyperplanes":[{"coeffs":["1"],"weight":"2"}]})";
    auto r = cli("betti " + bad);
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(json::parse(r.err)["error"], "INTEGER_WEIGHT");
    std::filesystem::remove(bad);

    EXPECT_EQ(cli("betti /nonexistent/file.json").code, 2);
    EXPECT_EQ(cli("betti " + data("boolean2.json") + " --backend abacus").code, 2);
    auto unknown = cli("model " + data("example2.json") + " --edge H9");
    EXPECT_EQ(unknown.code, 2);
    EXPECT_EQ(json::parse(unknown.err)["error"], "FLAT_NOT_IN_ARRANGEMENT");
    auto not_dense = cli("model " + data("boolean2.json") + " --edge x1,x2");
    EXPECT_EQ(json::parse(not_dense.err)["error"], "FLAT_NOT_DENSE_NOR_IN_B");
}

TEST(Cli, ReportIsDeterministic) {
    auto a = cli("report " + data("example1_k2_n4.json"));
    auto b = cli("report " + data("example1_k2_n4.json"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = json::parse(a.out);
    for (auto key : {"arrangement", "lattice", "dense", "betti", "condition_a"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_FALSE(j["condition_a"]["ic_betti"].is_null());
}

TEST(Cli, GenerateIsDeterministicAndRoundTrips) {
    auto x = cli("generate example1-generic --k 3 --n 6 --seed 5");
    auto y = cli("generate example1-generic --k 3 --n 6 --seed 5");
    EXPECT_EQ(x.code, 0);
    EXPECT_EQ(x.out, y.out);
    EXPECT_EQ(emit_arrangement(parse_arrangement(x.out)), x.out);
    EXPECT_EQ(x.out, emit_arrangement(examples::example1_generic(3, 6, 5)));
    EXPECT_EQ(cli("generate example2").out, slurp(data("example2.json")));
    auto impossible = cli("generate example1-generic --k 3 --n 5 --resonant-vertex");
    EXPECT_EQ(impossible.code, 2);
    EXPECT_EQ(json::parse(impossible.err)["error"], "GENERATION_FAILED");
}

TEST(Cli, RoundTripOfBuiltInExamples) {
    std::vector<WeightedArrangement> all{examples::example2(), examples::boolean(2), examples::boolean(4),
                                         examples::concurrent_lines(4, {ratio(1, 4)})};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) all.push_back(examples::example1_generic(2 + seed % 2, 6, seed));
    for (const auto& a : all) {
        auto text = emit_arrangement(a);
        EXPECT_EQ(emit_arrangement(parse_arrangement(text)), text);
    }
}

TEST(Cli, TextOutputs) {
    auto lattice = cli("lattice " + data("example2.json"));
    EXPECT_EQ(lattice.code, 0);
    EXPECT_NE(lattice.out.find("poincare: 1 6 11 6"), std::string::npos);
    auto model = cli("model " + data("example2.json") + " --edge H1,H3,H5 --side dual");
    EXPECT_EQ(model.code, 0);
    EXPECT_EQ(json::parse(model.out)[0]["side"], "dual");
}
