#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "signed_spectra/cli.hpp"

namespace ss = signed_spectra;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "signed-spectra");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ss::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("signed-spectra-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CheckExample1MatrixFindsViolationAtK4) {
  const auto path = write("ex1.txt", ss::format_matrix_text(ss::fixtures::example1().laplacian));
  const auto r = invoke({"check", path, "--bound", "wang-hou"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("k=4 sum=32.173698 bound_value=32"), std::string::npos) << r.out;

  const auto j = invoke({"check", path, "--format", "json"});
  EXPECT_EQ(j.code, 3);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.at("violations").size(), 1u);
  EXPECT_EQ(ss::record_from_json(doc.at("violations")[0]).k, 4u);
  EXPECT_EQ(doc.at("rows").size(), 7u);
}

TEST_F(CliTest, CheckPositiveK3Holds) {
  const auto path = write("k3.txt", "3 3\n0 1 +1\n0 2 +1\n1 2 +1\n");
  const auto r = invoke({"check", path, "--bound", "brouwer"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound holds"), std::string::npos);
  EXPECT_NE(r.out.find("tie"), std::string::npos);  // k = 2: 6 = 6
}

TEST_F(CliTest, MalformedInputIsExitTwoWithLine) {
  const auto path = write("bad.txt", "3 2\n0 1 +1\n1 1 -1\n");
  const auto r = invoke({"check", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"check", (dir_ / "missing.txt").string()}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"check"}).code, 1);
  EXPECT_EQ(invoke({"repro", "--example", "3"}).code, 1);
  EXPECT_EQ(invoke({"search", "--bound", "wang-hou"}).code, 1);
  EXPECT_EQ(invoke({"search", "--base", "K3", "--input", "x"}).code, 1);
  EXPECT_EQ(invoke({"check", "x", "--format", "xml"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, SpectrumExample2) {
  const auto path = write("ex2.txt", ss::format_matrix_text(ss::fixtures::example2().laplacian));
  const auto r = invoke({"spectrum", path});
  EXPECT_EQ(r.code, 0);
  // 7 + sqrt(13) = 10.6055512...
  EXPECT_NE(r.out.find("   1      10.605551      10.605551\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("   2      10.000000      20.605551\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("   3       8.000000      28.605551\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("   8       3.394449      56.000000\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SpectrumSmallGraphs) {
  const auto k2 = invoke({"spectrum", write("k2.txt", "2 1\n0 1 -1\n")});
  EXPECT_EQ(k2.out, "   i     eigenvalue     prefix_sum\n   1       2.000000       2.000000\n   2       0.000000       2.000000\n");
  const auto k1 = invoke({"spectrum", write("k1.txt", "1 0\n"), "--format", "json"});
  const auto doc = nlohmann::json::parse(k1.out);
  EXPECT_EQ(doc.at("eigenvalues"), nlohmann::json::array({0.0}));
}

TEST_F(CliTest, SearchK3AllSigningsHolds) {
  const auto r = invoke({"search", "--base", "K3", "--bound", "wang-hou", "--mode", "all", "--quiet"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("checked 8,"), std::string::npos) << r.out;
}

TEST_F(CliTest, SearchK7ClassesJsonRoundTrips) {
  const auto r = invoke({"search", "--base", "K7", "--mode", "classes", "--format", "json", "--workers", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("[search]"), std::string::npos);
  std::istringstream lines(r.out);
  std::vector<nlohmann::json> docs;
  for (std::string l; std::getline(lines, l);) docs.push_back(nlohmann::json::parse(l));
  ASSERT_FALSE(docs.empty());
  const auto report = docs.back();
  EXPECT_EQ(report.at("classes_checked"), 32768u);
  std::set<std::pair<std::string, std::size_t>> streamed, final_set;
  for (std::size_t i = 0; i + 1 < docs.size(); ++i) {
    const auto v = ss::record_from_json(docs[i]);
    streamed.emplace(v.signs.to_hex(), v.k);
  }
  for (const auto& v : report.at("violations")) {
    const auto rec = ss::record_from_json(v);
    final_set.emplace(rec.signs.to_hex(), rec.k);
    EXPECT_TRUE(rec.k == 4 || rec.k == 5);
  }
  EXPECT_EQ(streamed, final_set);
  EXPECT_EQ(final_set.size(), 1827u);
}

TEST_F(CliTest, SearchFromEdgeListAndCheckpoint) {
  const auto base = write("c5.txt", "5 5\n0 1 +1\n1 2 +1\n2 3 +1\n3 4 +1\n0 4 +1\n");
  const auto ckpt = (dir_ / "run.jsonl").string();
  const auto r = invoke({"search", "--input", base, "--bound", "brouwer", "--checkpoint", ckpt, "--quiet"});
  EXPECT_TRUE(r.code == 0 || r.code == 3);
  EXPECT_TRUE(fs::exists(ckpt));
  const auto again = invoke({"search", "--input", base, "--bound", "brouwer", "--checkpoint", ckpt, "--quiet"});
  EXPECT_EQ(again.code, r.code);
  const auto clash = invoke({"search", "--input", base, "--bound", "wang-hou", "--checkpoint", ckpt, "--quiet"});
  EXPECT_EQ(clash.code, 2);
}

TEST_F(CliTest, WorkersFromEnvironment) {
  ::setenv("SIGNED_SPECTRA_WORKERS", "3", 1);
  const auto r = invoke({"search", "--base", "K4", "--format", "json", "--quiet"});
  ::unsetenv("SIGNED_SPECTRA_WORKERS");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("job").at("workers"), 3);
}

TEST_F(CliTest, ReproBothExamples) {
  const auto one = invoke({"repro", "--example", "1"});
  EXPECT_EQ(one.code, 0) << one.err;
  EXPECT_NE(one.out.find("k=4 sum=32.173698 bound=32"), std::string::npos) << one.out;
  const auto two = invoke({"repro", "--example", "2", "--format", "json"});
  EXPECT_EQ(two.code, 0) << two.err;
  const auto doc = nlohmann::json::parse(two.out);
  EXPECT_TRUE(doc.at("reproduced").get<bool>());
  EXPECT_EQ(ss::record_from_json(doc.at("violations")[0]).k, 5u);
  EXPECT_EQ(ss::record_from_json(doc.at("violations")[0]).bound, 44);
}

TEST_F(CliTest, ReproDumpWritesTheMatrix) {
  const auto path = (dir_ / "ex2.txt").string();
  EXPECT_EQ(invoke({"repro", "--example", "2", "--dump", path}).code, 0);
  EXPECT_EQ(ss::parse_matrix_text(ss::read_file(path)), ss::fixtures::example2().laplacian);
  EXPECT_EQ(invoke({"check", path}).code, 3);
}

TEST_F(CliTest, ExitCodeIgnoresFormat) {
  const auto path = write("ex1.txt", ss::format_matrix_text(ss::fixtures::example1().laplacian));
  for (auto bound : {"brouwer", "wang-hou"}) {
    EXPECT_EQ(invoke({"check", path, "--bound", bound}).code, invoke({"check", path, "--bound", bound, "--format", "json"}).code);
  }
}
