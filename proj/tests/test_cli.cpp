#include "support.hpp"

#include "cli.hpp"
#include "pathwise/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pathwise;
namespace fs = std::filesystem;

namespace {

    struct Invocation {
        int code = 0;
        std::string out;
        std::string err;
    };

    Invocation run(std::vector<std::string> args) {
        args.insert(args.begin(), "pathwise");
        std::ostringstream out, err;
        Invocation result;
        result.code = cli::run(args, out, err);
        result.out  = out.str();
        result.err  = err.str();
        return result;
    }

    class CliTest : public ::testing::Test {
    protected:
        void SetUp() override {
            _dir = fs::temp_directory_path()
                / ("pathwise_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
            fs::create_directories(_dir);
            _old = fs::current_path();
            fs::current_path(_dir);
            save_native(pathwise::testing::t4(), path("t4.rcsp"));
        }
        void TearDown() override {
            fs::current_path(_old);
            fs::remove_all(_dir);
        }

        [[nodiscard]] std::string path(const std::string& name) const { return (_dir / name).string(); }

        void write(const std::string& name, const std::string& text) const {
            std::ofstream out(path(name));
            out << text;
        }

    private:
        fs::path _dir;
        fs::path _old;
    };

} // namespace

TEST_F(CliTest, SolveT4) {
    const auto r = run({"solve", "--format", "native", path("t4.rcsp"), "--relaxation", "dssr"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("status Optimal"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("cost 3\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("tour 0 1 2 3\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("labels_fw"), std::string::npos) << r.out;
}

TEST_F(CliTest, SolveIsDeterministic) {
    const auto a = run({"solve", path("t4.rcsp")});
    const auto b = run({"solve", path("t4.rcsp")});
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, JsonOutput) {
    const auto r = run({"solve", path("t4.rcsp"), "--json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["path"]["cost"], 3.0);
    EXPECT_EQ(doc["path"]["tour"], (std::vector<int>{0, 1, 2, 3}));
    EXPECT_TRUE(doc.contains("telemetry"));
    EXPECT_TRUE(doc.contains("stats"));
}

TEST_F(CliTest, OutFile) {
    const auto r = run({"solve", path("t4.rcsp"), "--out", path("result.txt")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    std::ifstream in(path("result.txt"));
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("cost 3"), std::string::npos);
}

TEST_F(CliTest, DimacsBelowShortestIsInfeasible) {
    write("toy.gr", "p sp 3 3\na 1 2 4\na 2 3 4\na 1 3 10\n");
    const auto ok = run({"solve", "--format", "dimacs", path("toy.gr"), "--source", "1", "--dest", "3", "--bound", "8"});
    EXPECT_EQ(ok.code, cli::kExitOk) << ok.err;
    EXPECT_NE(ok.out.find("cost 8"), std::string::npos) << ok.out;
    const auto no = run({"solve", "--format", "dimacs", path("toy.gr"), "--source", "1", "--dest", "3", "--bound", "7"});
    EXPECT_EQ(no.code, cli::kExitInfeasible) << no.err;
    EXPECT_NE(no.out.find("status Infeasible"), std::string::npos) << no.out;
}

TEST_F(CliTest, GeneratedInstanceSolves) {
    const auto gen = run({"gen-pc", "--n", "50", "--C", "25", "--NL", "8", "--seed", "7", "--out", path("x")});
    ASSERT_EQ(gen.code, cli::kExitOk) << gen.err;
    const auto solved = run({"solve", "--format", "pc", path("x")});
    EXPECT_EQ(solved.code, cli::kExitOk) << solved.err;
    EXPECT_NE(solved.out.find("status Optimal"), std::string::npos) << solved.out;
}

TEST_F(CliTest, GenerationIsByteIdentical) {
    ASSERT_EQ(run({"gen-pc", "--n", "20", "--seed", "3", "--out", path("a")}).code, cli::kExitOk);
    ASSERT_EQ(run({"gen-pc", "--n", "20", "--seed", "3", "--out", path("b")}).code, cli::kExitOk);
    std::ifstream a(path("a")), b(path("b"));
    const std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    EXPECT_EQ(ta, tb);
}

TEST_F(CliTest, Validate) {
    const auto r = run({"validate", path("t4.rcsp")});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out, "valid t4 nodes 4 arcs 6 resources 1 acyclic\n");
    write("broken.rcsp", "NODES 2\nSOURCE 0\nDEST 1\nARCS\n0 1 x\n");
    const auto bad = run({"validate", path("broken.rcsp")});
    EXPECT_EQ(bad.code, cli::kExitError);
    EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST_F(CliTest, Oracle) {
    const auto r = run({"oracle", path("t4.rcsp")});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("cost 3"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConfigPrecedence) {
    write("custom.set", "relaxation = ngc-dssrc\nng_size = 2\n");
    const auto r = run({"solve", path("t4.rcsp"), "--config", path("custom.set"), "--relaxation", "dssr", "--json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("cost"), std::string::npos);

    write("pathwise.set", "bogus_key = 1\n");
    const auto bad = run({"solve", path("t4.rcsp")});
    EXPECT_EQ(bad.code, cli::kExitError);
    EXPECT_NE(bad.err.find("bogus_key"), std::string::npos) << bad.err;
}

TEST_F(CliTest, SetOverrides) {
    const auto r = run({"solve", path("t4.rcsp"), "--set", "join=naive", "--set", "selection=rr"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    const auto bad = run({"solve", path("t4.rcsp"), "--set", "nonsense"});
    EXPECT_EQ(bad.code, cli::kExitError);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kExitError);
    EXPECT_EQ(run({"solve"}).code, cli::kExitError);
    EXPECT_EQ(run({"solve", path("missing.rcsp")}).code, cli::kExitError);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitError);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}
