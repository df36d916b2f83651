#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "bfp/corpus.hpp"
#include "bfp/io.hpp"

using namespace bfp;
using io::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string scratch(const std::string& name) {
    std::filesystem::create_directories(BFP_SCRATCH_DIR);
    return std::string(BFP_SCRATCH_DIR) + "/" + name;
}

std::string fixture(const char* name) { return std::string(BFP_FIXTURE_DIR) + "/" + name; }

Run bfp_run(const std::string& args) {
    const std::string out = scratch("stdout.txt");
    const std::string err = scratch("stderr.txt");
    const std::string cmd = std::string(BFP_BINARY) + " " + args + " >" + out + " 2>" + err;
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = io::read_text_file(out);
    r.err = io::read_text_file(err);
    return r;
}

std::string example_args() {
    return "--space " + fixture("pc_table_space.json") + " --map " + fixture("pc_table_map.json");
}

}  // namespace

TEST(Verify, ExampleIsViolated) {
    auto r = bfp_run("verify " + example_args() + " --coeffs " + fixture("pc_table_coeffs.json"));
    EXPECT_EQ(r.code, 1) << r.err;
    EXPECT_NE(r.out.find("(e1,f2)"), std::string::npos);
    EXPECT_NE(r.out.find("VIOLATED"), std::string::npos) << r.out;
}

TEST(Verify, ConstantMapHolds) {
    auto r = bfp_run("verify --space " + fixture("constant_space.json") + " --map " + fixture("constant_map.json") +
                     " --coeffs " + fixture("constant_coeffs.json"));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("result: HOLDS"), std::string::npos);
}

TEST(Verify, MissingCoefficientFile) {
    EXPECT_EQ(bfp_run("verify " + example_args() + " --coeffs /nonexistent/c.json").code, 2);
    EXPECT_EQ(bfp_run("verify " + example_args()).code, 2);
}

TEST(Iterate, FixedStart) {
    auto r = bfp_run("iterate " + example_args() + " --start-left e1 --start-right f1");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0 e1 f1 0 -"), std::string::npos) << r.out;
}

TEST(Iterate, CycleStart) {
    auto r = bfp_run("iterate " + example_args() + " --start-left e2 --start-right f2");
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_NE(r.out.find("e2 e3 e4"), std::string::npos) << r.out;
}

TEST(Iterate, Misuse) {
    EXPECT_EQ(bfp_run("iterate " + example_args() + " --start-left e1 --start-right f1 --max-iter 0").code, 2);
    EXPECT_EQ(bfp_run("iterate " + example_args() + " --start-left e9 --start-right f1").code, 2);
    EXPECT_EQ(bfp_run("iterate " + example_args() + " --start-left e2 --start-right f2 --max-iter 1").code, 4);
}

TEST(Iterate, BoundsFromCoefficients) {
    auto r = bfp_run("iterate --space " + fixture("constant_space.json") + " --map " + fixture("constant_map.json") +
                     " --start-left e2 --start-right f3 --coeffs " + fixture("constant_coeffs.json"));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find(" -\n"), std::string::npos) << r.out;
}

TEST(SolveFrac, ConstantForcing) {
    const std::string sol = scratch("solution.txt");
    auto r = bfp_run("solve-frac --config " + fixture("frac_q2_const.json") + " --solution " + sol);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(io::read_text_file(sol));
    double x, g, err = 0.0;
    std::size_t lines = 0;
    while (in >> x >> g) {
        err = std::max(err, std::abs(g - x * (1.0 - x) / 2.0));
        ++lines;
    }
    EXPECT_EQ(lines, 201u);
    EXPECT_LE(err, 1e-8);
}

TEST(SolveFrac, AuditFailureNeedsForce) {
    auto r = bfp_run("solve-frac --omega \"g*g\" --sigma 0.9 --max-iter 50");
    EXPECT_EQ(r.code, 6) << r.out << r.err;
    EXPECT_NE((r.out + r.err).find("condition (1)"), std::string::npos);
    EXPECT_NE(r.err.find("--force"), std::string::npos);
    r = bfp_run("solve-frac --omega \"g*g\" --sigma 0.9 --max-iter 50 --force");
    EXPECT_NE(r.code, 6);
    EXPECT_NE(r.code, 2);
}

TEST(SolveFrac, ParseErrorReportsOffset) {
    auto r = bfp_run("solve-frac --omega \"rho*(\"");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("offset 5"), std::string::npos) << r.err;
}

TEST(SolveFrac, Divergence) {
    auto r = bfp_run("solve-frac --omega \"20*g + 1\" --sigma 0.5 --grid-n 51 --force");
    EXPECT_EQ(r.code, 5) << r.out << r.err;
}

TEST(SolveFrac, InvalidOrder) {
    EXPECT_EQ(bfp_run("solve-frac --omega 1 --order 2.5").code, 2);
}

TEST(Corpus, CheckFixtures) {
    auto r = bfp_run("corpus check --dir " + std::string(BFP_FIXTURE_DIR));
    EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Corpus, ShowGolden) {
    auto r = bfp_run("corpus show --file example_pc_table.golden");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, corpus::fixture_files().at("example_pc_table.golden"));
}

TEST(Report, Example) {
    auto r = bfp_run("report " + example_args() + " --coeffs " + fixture("pc_table_coeffs.json"));
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("no uniqueness claim"), std::string::npos);
}

TEST(Usage, UnknownSubcommand) {
    EXPECT_EQ(bfp_run("frobnicate").code, 2);
    EXPECT_EQ(bfp_run("").code, 2);
}

TEST(Structured, VerifyInputsRoundTrip) {
    auto r = bfp_run("verify " + example_args() + " --coeffs " + fixture("pc_table_coeffs.json") +
                     " --format structured");
    ASSERT_EQ(r.code, 1);
    Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["command"], "verify");
    auto s = io::space_from_json(doc["inputs"]["space"]);
    auto m = io::map_from_json(doc["inputs"]["map"], s);
    auto c = io::coefficients_from_json(doc["inputs"]["coefficients"], s);
    auto ex = corpus::example_pc_table();
    EXPECT_EQ(s, ex.space);
    EXPECT_EQ(m, ex.map);
    EXPECT_EQ(c.coeffs, ex.coeffs);
    EXPECT_EQ(doc["rows"].size(), 25u);
    EXPECT_FALSE(doc["holds"].get<bool>());
}

TEST(Structured, SolveInputsRoundTrip) {
    const std::string out = scratch("solve.json");
    auto r = bfp_run("solve-frac --config " + fixture("frac_q15_linear.json") + " --format structured -o " + out);
    ASSERT_EQ(r.code, 0) << r.err;
    Json doc = io::read_json_file(out);
    auto bvp = io::bvp_from_json(doc["inputs"]["bvp"]);
    auto original = io::load_bvp(fixture("frac_q15_linear.json"));
    EXPECT_EQ(bvp.order, original.order);
    EXPECT_EQ(bvp.omega_source, original.omega_source);
    EXPECT_LE(doc["residual"].get<double>(), 1e-10);
    EXPECT_EQ(doc["solution"].size(), original.grid_n);
}

TEST(Structured, IterateTrace) {
    auto r = bfp_run("iterate " + example_args() + " --start-left e2 --start-right f2 --format structured");
    ASSERT_EQ(r.code, 3);
    Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["status"], "cycle");
    EXPECT_EQ(doc["cycle"], Json::array({"e2", "e3", "e4"}));
    auto s = io::space_from_json(doc["inputs"]["space"]);
    EXPECT_NO_THROW(io::map_from_json(doc["inputs"]["map"], s));
}
