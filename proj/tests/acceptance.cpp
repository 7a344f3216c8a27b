#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "shiftsym/selftest.hpp"

using namespace shiftsym;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Line {
  bool pass = false;
  std::string text;
};

std::map<int, Line>& summary() {
  static std::map<int, Line> lines;
  return lines;
}

/// Runs one criterion, records its summary line and fails the test on a
/// failed check or a blown time budget.
void criterion(int id, double limit_s, const std::function<CriterionResult()>& run) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = run();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs < limit_s;
  std::ostringstream os;
  os << "C" << id << " " << (r.pass && in_time ? "PASS" : "FAIL") << "  " << r.title << " | "
     << (r.details.empty() ? "" : r.details[0]) << " | " << std::fixed << std::setprecision(3) << secs
     << " s (limit " << std::defaultfloat << limit_s << " s)";
  summary()[id] = {r.pass && in_time, os.str()};
  EXPECT_TRUE(r.pass) << [&] {
    std::string all;
    for (const auto& d : r.details) all += d + "\n";
    return all;
  }();
  EXPECT_TRUE(in_time) << secs << " s";
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured run_selftest() {
  std::string cmd = std::string(SHIFTSYM_CLI) + " selftest --seed " + std::to_string(kSeed);
  Captured c;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
  int status = pclose(p);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

}  // namespace

TEST(Acceptance, C1DerivationIdentities) {
  criterion(1, 10, [] { return criterion_derivation_identities(kSeed); });
}
TEST(Acceptance, C2EulerCalculus) {
  criterion(2, 10, [] { return criterion_euler_calculus(kSeed); });
}
TEST(Acceptance, C3DarbouxGeneration) {
  criterion(3, 60, [] { return criterion_darboux_generation(kSeed); });
}
TEST(Acceptance, C4MasterEquation) {
  criterion(4, 30, [] { return criterion_master_equation(kSeed); });
}
TEST(Acceptance, C5PoissonAxioms) {
  criterion(5, 30, [] { return criterion_poisson(kSeed); });
}
TEST(Acceptance, C6HamiltonianExtraction) {
  criterion(6, 20, [] { return criterion_extraction(kSeed); });
}
TEST(Acceptance, C7WorkedExample) {
  criterion(7, 1, [] { return criterion_worked_example(); });
}
TEST(Acceptance, C8OverlapCertificates) {
  criterion(8, 5, [] { return criterion_overlap(); });
}

// two separate processes, compared byte for byte
TEST(Acceptance, C9Determinism) {
  criterion(9, 120, [] {
    Captured a = run_selftest();
    Captured b = run_selftest();
    CriterionResult r{9, "determinism", a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out, {}};
    r.details.push_back("two `selftest --seed " + std::to_string(kSeed) + "` runs, " + std::to_string(a.out.size()) +
                        " bytes, " + (a.out == b.out ? "identical" : "differ") + ", exit " +
                        std::to_string(a.code) + "/" + std::to_string(b.code));
    return r;
  });
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  int rc = RUN_ALL_TESTS();
  std::cout << "\nacceptance summary (seed " << kSeed << ")\n";
  for (int id = 1; id <= 9; ++id) {
    auto it = summary().find(id);
    std::cout << (it == summary().end() ? "C" + std::to_string(id) + " FAIL  not run" : it->second.text) << "\n";
  }
  return rc;
}
