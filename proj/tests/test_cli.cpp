#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jstrata/cli.hpp"
#include "jstrata/gallery.hpp"
#include "jstrata/module_io.hpp"

using namespace jstrata;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("jstrata-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("w7.json", module_to_json(w_module(7)));
    write("w7xw7.json", module_to_json(tensor_module(w_module(7), w_module(7))));
    const Field f(5);
    const Matrix j2 = Matrix::block_diag(Matrix::jordan_block(f, 2), Matrix(f, 1, 1));
    const Matrix perm = Matrix::from_ints(f, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    write("bad.json", module_to_json(ModuleRep(GroupData::additive(5, 2), f, 3, {j2, perm * j2 * perm.inverse()})));
    write("triv3.json", module_to_json(trivial_module(GroupData::elementary_abelian(3, 2), Field(3))));
    write("cyc5.json", module_to_json(cyclic_quotient(5)));
    write("garbage.json", "{ not json");
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }
  static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  static std::string path(const std::string& name) { return (dir_ / name).string(); }
  static fs::path dir_;
};

fs::path Cli::dir_;

int exit_code_of(const std::string& args) {
  const std::string cmd = std::string(JSTRATA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(Cli, JTypeAtAPoint) {
  const Outcome r = run({"jtype", "--module", path("w7.json"), "--point", "1,0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3[3]+2[2]"), std::string::npos) << r.out;
  const Outcome c = run({"jtype", "--module", path("cyc5.json"), "--point-poly", "x0 - x1^2"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("5[1]"), std::string::npos) << c.out;
}

TEST_F(Cli, NonFlatPointIsAMathError) {
  const Outcome r = run({"jtype", "--module", path("w7.json"), "--point", "0,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: non-flat:", 0), 0u) << r.err;
}

TEST_F(Cli, StrataReports) {
  const Outcome t = run({"strata", "--module", path("w7.json")});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("4[3]+1[1]"), std::string::npos);
  EXPECT_NE(t.out.find("3[3]+2[2]"), std::string::npos);
  const Outcome j = run({"strata", "--module", path("w7.json"), "--format", "json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["generic_type"], "4[3]+1[1]");
  ASSERT_EQ(doc["strata"].size(), 2u);
  EXPECT_EQ(doc["strata"][1]["points"], nlohmann::json::parse("[[0,1],[1,0]]"));
  EXPECT_EQ(doc["constant_jtype"], false);
}

TEST_F(Cli, GammaOfTensorSquare) {
  const Outcome r = run({"gamma", "--module", path("w7xw7.json"), "--j", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["gamma"]["1"]["max_rank"], 112);
  EXPECT_EQ(doc["gamma"]["1"]["points"], nlohmann::json::parse("[[0,1],[1,0]]"));
}

TEST_F(Cli, TensorOfTypes) {
  const Outcome r = run({"tensor", "--a", "3[2]", "--b", "[2]", "--p", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3[3]+3[1]"), std::string::npos) << r.out;
}

TEST_F(Cli, OmegaEmitsAModule) {
  const Outcome r = run({"omega", "--module", path("triv3.json"), "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const ModuleRep m = module_from_string(r.out);
  EXPECT_EQ(m.dim(), 8u);
  EXPECT_EQ(run({"omega", "--module", path("triv3.json"), "--n", "5"}).code, 2);
}

TEST_F(Cli, ExtAndZeroLocus) {
  const Outcome e = run({"ext1", "--module", path("triv3.json")});
  EXPECT_EQ(e.code, 0) << e.err;
  const Outcome z = run({"zlocus", "--module", path("triv3.json"), "--class", "1,1", "--format", "json"});
  ASSERT_EQ(z.code, 0) << z.err;
  EXPECT_EQ(nlohmann::json::parse(z.out)["points"], nlohmann::json::parse("[[1,2]]")) << z.out;
}

TEST_F(Cli, CarlsonModule) {
  const Outcome r = run({"carlson", "--p", "3", "--r", "2", "--degree", "2", "--index", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(module_from_string(r.out).dim(), 9u);
}

TEST_F(Cli, ValidateReportsCommutators) {
  const Outcome bad = run({"validate", "--module", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("generators 0,1 do not commute"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"validate", "--module", path("w7.json")}).code, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"strata", "--module", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"strata", "--module", path("garbage.json")}).code, 2);
  EXPECT_EQ(run({"strata", "--module", path("w7.json"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"gamma", "--module", path("w7.json"), "--j", "9"}).code, 2);
}

TEST_F(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"strata", "--module", path("w7xw7.json"), "--field-ext", "2", "--format", "json",
                                      "--no-symbolic"};
  const Outcome a = run(args);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--jobs", "3"});
  const Outcome b = run(args), c = run(threaded);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST_F(Cli, GalleryEmitRoundTrips) {
  const Outcome list = run({"gallery", "list"});
  ASSERT_EQ(list.code, 0);
  for (const auto& e : gallery_entries()) {
    EXPECT_NE(list.out.find(e.name), std::string::npos);
    std::vector<std::string> args{"gallery", "emit", e.name, "--p", e.name == "heller-trivial" ? "3" : "7"};
    if (e.name == "gln1-standard") args.insert(args.end(), {"--type", "[3]+[2]"});
    if (e.name == "heller-trivial") args.insert(args.end(), {"--n", "-1"});
    if (e.name == "sl2-simple") args.insert(args.end(), {"--lambda", "12"});
    const Outcome r = run(args);
    ASSERT_EQ(r.code, 0) << e.name << ": " << r.err;
    const ModuleRep m = module_from_string(r.out);
    EXPECT_TRUE(m.validate().ok) << e.name;
    EXPECT_EQ(module_to_json(m), r.out) << e.name;
  }
  EXPECT_EQ(run({"gallery", "emit", "nope"}).code, 2);
}

TEST_F(Cli, BinaryExitCodes) {
  EXPECT_EQ(exit_code_of("jtype --module " + path("w7.json") + " --point 1,0"), 0);
  EXPECT_EQ(exit_code_of("validate --module " + path("bad.json")), 1);
  EXPECT_EQ(exit_code_of("strata --module " + path("missing.json")), 2);
  EXPECT_EQ(exit_code_of("--help"), 0);
}
