#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "shiftsym/model_file.hpp"
#include "shiftsym/selftest.hpp"

namespace fs = std::filesystem;
using namespace shiftsym;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(SHIFTSYM_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("shiftsym_cli_" + std::to_string(getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string cubic_model() {
    std::string spec = file("x3.json", R"({"field":"rational","base":["x"],
      "darboux_spec":{"family":"odd","d":0,"ranks":[1],"H":"x^3"}})");
    CliRun r = cli("gen-darboux --spec " + spec + " --out " + path("x3m.json"));
    EXPECT_EQ(r.code, 0) << r.out;
    return path("x3m.json");
  }

  std::string certificate(const ComparisonCertificate& c, const std::string& name) {
    ModelFile m;
    m.field = c.field;
    m.comparison_certificate = CertificateSection{{c.A.base, c.A.invertibles, c.A.H},
                                                  {c.B.base, c.B.invertibles, c.B.H},
                                                  c.C,
                                                  c.alpha,
                                                  c.beta,
                                                  c.Psi,
                                                  c.psi};
    return file(name, print_model(m));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GeneratedCubicPassesChecks) {
  std::string m = cubic_model();
  for (const char* verb : {"check d2", "check closed", "check nondeg"}) {
    CliRun r = cli(std::string(verb) + " --model " + m);
    EXPECT_EQ(r.code, 0) << verb << "\n" << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos) << r.out;
  }
  CliRun at = cli("check nondeg --model " + m + " --at x=0");
  EXPECT_EQ(at.code, 0) << at.out;
}

TEST_F(Cli, GenDarbouxIsCanonical) {
  std::string m = cubic_model();
  CliRun r = cli("gen-darboux --spec " + path("x3.json"));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(m);
  std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(r.out, written);
  EXPECT_EQ(print_model(parse_model(written)), written);
}

TEST_F(Cli, MasterEquation) {
  std::string good = file("w2.json", R"({"field":"rational","base":["x"],"darboux_spec":{"family":"weak2","d":0,
    "ranks":[1,2],"q":["1","-1"],"H":"z1_1*x^2 + z1_2*x^2"}})");
  EXPECT_EQ(cli("check master --spec " + good).code, 0);
  std::string bad = file("bad3.json", R"({"field":"rational","base":["a"],"darboux_spec":{"family":"odd","d":1,
    "ranks":[1,2],"H":"y2_1*a + x1_1*x1_2"}})");
  CliRun r = cli("check master --spec " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("master equation: "), std::string::npos) << r.out;
}

TEST_F(Cli, Minimality) {
  std::string x2 = file("x2.json", R"({"field":"rational","base":["x"],"chart":{"H":"x^2"}})");
  CliRun r = cli("minimal-at --model " + x2 + " --at x=0");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("d^-1[x,y1_1]: 2\n"), std::string::npos) << r.out;
  EXPECT_EQ(cli("minimal-at --model " + cubic_model() + " --at x=0").code, 0);
}

TEST_F(Cli, Cotangent) {
  CliRun r = cli("cotangent --model " + cubic_model());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[6*x]"), std::string::npos) << r.out;
  CliRun at = cli("cotangent --model " + path("x3m.json") + " --at x=0");
  EXPECT_NE(at.out.find("[0]"), std::string::npos) << at.out;
}

TEST_F(Cli, BracketAndAxioms) {
  std::string m = cubic_model();
  CliRun b = cli("bracket --model " + m + " -f x^3 -g y1_1");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "3*x^2\n");
  CliRun a1 = cli("axioms --model " + m + " --samples 5 --seed 3");
  CliRun a2 = cli("axioms --model " + m + " --samples 5 --seed 3");
  EXPECT_EQ(a1.code, 0) << a1.out;
  EXPECT_EQ(a1.out, a2.out);
}

TEST_F(Cli, ExtractH) {
  CliRun r = cli("extract-h --model " + cubic_model());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("H = x^3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("X_H(y1_1) = 3*x^2\n"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyOverlap) {
  auto certs = example_certificates();
  for (std::size_t i = 0; i < certs.size(); ++i) {
    CliRun r = cli("verify-overlap --cert " + certificate(certs[i].second, "c" + std::to_string(i) + ".json"));
    EXPECT_EQ(r.code, 0) << certs[i].first << "\n" << r.out;
  }
  ComparisonCertificate broken = certs[2].second;
  broken.beta = {{"x", "x"}, {"y1_1", "e"}};
  CliRun r = cli("verify-overlap --cert " + certificate(broken, "broken.json"));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(cli("check d2 --model " + file("bogus.json", R"({"field":"rational","bogus":1})")).code, 2);
  EXPECT_EQ(cli("check d2 --model " + path("missing.json")).code, 2);
  EXPECT_EQ(cli("minimal-at --model " + cubic_model() + " --at x=1").code, 2);
  EXPECT_EQ(cli("minimal-at --model " + path("x3m.json") + " --at y1_1=0").code, 2);
  EXPECT_EQ(cli("bracket --model " + path("x3m.json") + " -f q -g x").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("axioms --model " + path("x3m.json") + " --samples 0 --seed 1").code, 2);
  EXPECT_EQ(cli("check closed --model " + file("bare.json", R"({"field":"rational","base":["x"]})")).code, 2);
}

TEST_F(Cli, DegenerateFormFails) {
  std::string m = file("deg.json", R"({"field":"rational","base":["x"],"generators":[{"name":"y1_1","degree":-1}],
    "differential":{"y1_1":"3*x^2"},"closed_form":{"k":-1,"p":2,"components":["x*dx*dy1_1"]}})");
  CliRun r = cli("check nondeg --model " + m + " --at x=0");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("(degenerate)"), std::string::npos) << r.out;
  EXPECT_EQ(cli("check nondeg --model " + m).code, 1);
}
