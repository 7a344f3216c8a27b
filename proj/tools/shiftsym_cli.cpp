#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shiftsym/model_file.hpp"
#include "shiftsym/selftest.hpp"

namespace {

using namespace shiftsym;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

int verdict(const Report& r, const std::string& what) {
  if (r.ok()) {
    std::cout << what << ": PASS\n";
    return kPass;
  }
  std::cout << what << ": FAIL\n" << r.str();
  return kCheckFailed;
}

const ClosedForm& need_form(const LoadedModel& m) {
  if (!m.form || m.form->components.empty()) throw ShapeError("model has no closed_form section");
  return *m.form;
}

void print_matrix(const Matrix& m, const std::vector<GenIndex>& rows, const std::vector<GenIndex>& cols,
                  const Signature& sig) {
  std::cout << "  rows [";
  for (std::size_t i = 0; i < rows.size(); ++i) std::cout << (i ? ", " : "") << sig.gen(rows[i]).name;
  std::cout << "] cols [";
  for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? ", " : "") << sig.gen(cols[i]).name;
  std::cout << "]\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::cout << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) std::cout << (c ? ", " : "") << to_string(m.at(r, c));
    std::cout << "]\n";
  }
}

int gen_darboux(const std::string& spec_path, const std::string& out) {
  DarbouxSpec spec = darboux_spec_of(read_model_file(spec_path));
  DarbouxPackage p = generate(spec);
  ModelFile m = model_of(spec, p);
  if (out.empty()) {
    std::cout << print_model(m);
  } else {
    write_model_file(out, m);
    std::cout << "generated " << family_name(spec.family) << " model, k = " << p.roster.k << ", "
              << p.roster.sig->algebra_size() << " generators\nwrote " << out << "\n";
  }
  return kPass;
}

int check_master_cmd(const std::string& path) {
  return verdict(check_master(darboux_spec_of(read_model_file(path))), "master equation");
}

int check_closed_cmd(const std::string& path) {
  LoadedModel m = load_model(read_model_file(path));
  return verdict(check_closed(m.algebra, need_form(m)), "closedness");
}

int check_d2_cmd(const std::string& path) {
  LoadedModel m = load_model(read_model_file(path));
  return verdict(m.algebra.d_squared_residues(), "d o d = 0");
}

int check_nondeg_cmd(const std::string& path, const std::string& at) {
  LoadedModel m = load_model(read_model_file(path));
  const ClosedForm& w = need_form(m);
  const auto& sig = m.algebra.signature();
  auto pm = pairing_matrices(m.algebra, w.k, w.components[0]);
  std::optional<RationalPoint> p;
  if (!at.empty()) {
    p = parse_point(sig, at);
    require_point(m.algebra, *p);
  }
  bool ok = true;
  for (const auto& [i, mat] : pm.blocks) {
    std::cout << "block " << i << ": " << mat.rows() << "x" << mat.cols();
    if (!mat.square()) {
      std::cout << " not square\n";
      ok = false;
      continue;
    }
    Element det = mat.det();
    bool good = p ? !det.evaluate(p->values).is_zero() : det.try_inverse().has_value();
    std::cout << " det " << to_string(p ? det.evaluate(p->values) : det) << (good ? "" : " (degenerate)") << "\n";
    ok = ok && good;
  }
  std::string what = p ? "nondegenerate at " + at : "strictly nondegenerate";
  std::cout << what << ": " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kPass : kCheckFailed;
}

int cotangent_cmd(const std::string& path, const std::string& at) {
  LoadedModel m = load_model(read_model_file(path));
  const auto& sig = m.algebra.signature();
  auto cot = cotangent_restriction(m.algebra);
  std::optional<RationalPoint> p;
  if (!at.empty()) {
    p = parse_point(sig, at);
    require_point(m.algebra, *p);
  }
  std::cout << "ranks [";
  for (std::size_t i = 0; i < cot.ranks.size(); ++i) std::cout << (i ? ", " : "") << cot.ranks[i];
  std::cout << "]\n";
  for (std::size_t k = 0; k < cot.maps.size(); ++k) {
    std::cout << "d^-" << k + 1 << (p ? " at " + at : "") << ":\n";
    print_matrix(p ? cot.maps[k].evaluate(p->values) : cot.maps[k], cot.tiers[k], cot.tiers[k + 1], *sig);
  }
  return kPass;
}

int minimal_at_cmd(const std::string& path, const std::string& at) {
  LoadedModel m = load_model(read_model_file(path));
  return verdict(is_minimal_at(m.algebra, parse_point(m.algebra.signature(), at)), "minimal at " + at);
}

int bracket_cmd(const std::string& path, const std::string& f, const std::string& g) {
  LoadedModel m = load_model(read_model_file(path));
  const ClosedForm& w = need_form(m);
  const auto& sig = m.algebra.signature();
  SymplecticSolver s(m.algebra, w.k, w.components[0]);
  std::cout << to_string(s.bracket(parse_element(sig, f), parse_element(sig, g))) << "\n";
  return kPass;
}

int axioms_cmd(const std::string& path, int samples, std::uint64_t seed) {
  LoadedModel m = load_model(read_model_file(path));
  const ClosedForm& w = need_form(m);
  const auto& sig = m.algebra.signature();
  SymplecticSolver s(m.algebra, w.k, w.components[0]);
  Rng rng(seed);
  std::vector<PoissonTriple> triples;
  for (int i = 0; i < samples; ++i) {
    triples.push_back({random_homogeneous(sig, rng, true), random_homogeneous(sig, rng, true),
                       random_homogeneous(sig, rng, true)});
  }
  std::cout << samples << " triples, seed " << seed << ", n = " << -w.k << "\n";
  return verdict(check_poisson_axioms(s, triples), "Poisson axioms");
}

int extract_h_cmd(const std::string& path) {
  LoadedModel m = load_model(read_model_file(path));
  const ClosedForm& w = need_form(m);
  if (!m.pair) throw ShapeError("model has no phi_phi section");
  HamiltonianPackage h = extract_hamiltonian(m.algebra, w.k, w.components[0], *m.pair);
  const auto& sig = m.algebra.signature();
  std::cout << "H = " << to_string(h.H) << "\n";
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    Element v = h.X.value(g);
    if (!v.is_zero()) std::cout << "X_H(" << sig->gen(g).name << ") = " << to_string(v) << "\n";
  }
  return verdict(differential_is_hamiltonian(m.algebra, w.k, w.components[0], h.H).matches_d, "X_H = d");
}

int verify_overlap_cmd(const std::string& path) {
  ComparisonReport r = verify_comparison(certificate_of(read_model_file(path)));
  const std::size_t m = r.I.size();
  for (std::size_t j = 0; j < m; ++j) std::cout << "I_" << j + 1 << " = " << to_string(r.I[j]) << "\n";
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t jp = 0; jp < m; ++jp) {
      if (!r.M[jp][j].is_zero()) {
        std::cout << "coefficient of I_" << j + 1 << " I_" << jp + 1 << ": " << to_string(r.M[jp][j]) << "\n";
      }
    }
  }
  std::cout << "a*(H) - b*(H^) = " << to_string(r.difference) << "\n";
  std::cout << "witness sum I_j I_j' M_j'j = " << to_string(r.witness) << "\n";
  return verdict(r.checks, "overlap certificate");
}

int selftest_cmd(std::uint64_t seed) {
  bool pass = false;
  std::cout << selftest_report(seed, &pass);
  return pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftsym: shifted symplectic Darboux models"};
  app.require_subcommand(1);
  std::string spec, model, out, at, f, g, cert;
  int samples = 10;
  std::uint64_t seed = 1;
  int code = kPass;
  std::function<int()> action;

  auto* gen = app.add_subcommand("gen-darboux", "generate a Darboux model from a spec");
  gen->add_option("--spec", spec)->required();
  gen->add_option("--out", out);
  gen->callback([&] { action = [&] { return gen_darboux(spec, out); }; });

  auto* check = app.add_subcommand("check", "run one check");
  check->require_subcommand(1);
  auto* master = check->add_subcommand("master", "classical master equation on a spec");
  master->add_option("--spec", spec)->required();
  master->callback([&] { action = [&] { return check_master_cmd(spec); }; });
  auto* closed = check->add_subcommand("closed", "closedness of the stored form");
  closed->add_option("--model", model)->required();
  closed->callback([&] { action = [&] { return check_closed_cmd(model); }; });
  auto* nondeg = check->add_subcommand("nondeg", "nondegeneracy of omega^0");
  nondeg->add_option("--model", model)->required();
  nondeg->add_option("--at", at);
  nondeg->callback([&] { action = [&] { return check_nondeg_cmd(model, at); }; });
  auto* d2 = check->add_subcommand("d2", "d o d = 0");
  d2->add_option("--model", model)->required();
  d2->callback([&] { action = [&] { return check_d2_cmd(model); }; });

  auto* cot = app.add_subcommand("cotangent", "cotangent complex restricted to the base");
  cot->add_option("--model", model)->required();
  cot->add_option("--at", at);
  cot->callback([&] { action = [&] { return cotangent_cmd(model, at); }; });

  auto* minimal = app.add_subcommand("minimal-at", "minimality at a point");
  minimal->add_option("--model", model)->required();
  minimal->add_option("--at", at)->required();
  minimal->callback([&] { action = [&] { return minimal_at_cmd(model, at); }; });

  auto* br = app.add_subcommand("bracket", "Poisson bracket of two functions");
  br->add_option("--model", model)->required();
  br->add_option("-f", f)->required();
  br->add_option("-g", g)->required();
  br->callback([&] { action = [&] { return bracket_cmd(model, f, g); }; });

  auto* ax = app.add_subcommand("axioms", "Poisson axioms on random triples");
  ax->add_option("--model", model)->required();
  ax->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  ax->add_option("--seed", seed)->required();
  ax->callback([&] { action = [&] { return axioms_cmd(model, samples, seed); }; });

  auto* ex = app.add_subcommand("extract-h", "Hamiltonian from (Phi, phi)");
  ex->add_option("--model", model)->required();
  ex->callback([&] { action = [&] { return extract_h_cmd(model); }; });

  auto* ov = app.add_subcommand("verify-overlap", "check a comparison certificate");
  ov->add_option("--cert", cert)->required();
  ov->callback([&] { action = [&] { return verify_overlap_cmd(cert); }; });

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--seed", seed);
  st->callback([&] { action = [&] { return selftest_cmd(seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    code = action();
  } catch (const CheckFailure& e) {
    std::cout << "FAIL\n" << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::cout.flush();
  return code;
}
