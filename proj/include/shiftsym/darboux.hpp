#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftsym/hamilton.hpp"

namespace shiftsym {

enum class Family { Odd, DivFour, StrongTwo, WeakTwo, SplitTwo };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Odd: return "odd";
    case Family::DivFour: return "div4";
    case Family::StrongTwo: return "strong2";
    case Family::WeakTwo: return "weak2";
    case Family::SplitTwo: return "split2";
  }
  return "";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::Odd, Family::DivFour, Family::StrongTwo, Family::WeakTwo, Family::SplitTwo}) {
    if (family_name(f) == s) return f;
  }
  throw ParseError("unknown Darboux family '" + s + "'");
}

/// Model data in text form; `roster` turns it into a generator table.
/// ranks[0] counts the base variables, ranks[i] the pairs in degree -i,
/// and for the two z-families the last entry counts the z's.
struct DarbouxSpec {
  Family family = Family::Odd;
  int d = 0;
  Field field = Field::Rational;
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  std::vector<std::size_t> ranks;
  std::vector<std::string> q;  // weak2 only
  std::string H = "0";
};

inline int shift_of(Family f, int d) {
  switch (f) {
    case Family::Odd: return -2 * d - 1;
    case Family::DivFour: return -4 * d;
    default: return -4 * d - 2;
  }
}

inline std::size_t rank_count(Family f, int d) {
  switch (f) {
    case Family::Odd: return static_cast<std::size_t>(d) + 1;
    case Family::DivFour: return 2 * static_cast<std::size_t>(d) + 1;
    default: return 2 * static_cast<std::size_t>(d) + 2;
  }
}

inline bool has_z(Family f) { return f == Family::StrongTwo || f == Family::WeakTwo; }

struct DarbouxPair {
  int i = 0;
  GenIndex x = 0;  // degree -i
  GenIndex y = 0;  // degree i + k
};

/// The generator table of a spec with H, q parsed into it.
struct Roster {
  int k = 0;
  SignaturePtr sig;
  std::vector<DarbouxPair> pairs;
  std::vector<GenIndex> zs;
  std::vector<Element> q;  // one per z; constant 1 for strong2
  Element H;
};

inline Roster roster(const DarbouxSpec& spec) {
  const Family f = spec.family;
  if (spec.d < 0 || (f == Family::DivFour && spec.d < 1)) throw ShapeError("d out of range for the family");
  if (spec.ranks.size() != rank_count(f, spec.d)) {
    throw ShapeError("family " + family_name(f) + " with d=" + std::to_string(spec.d) + " needs " +
                     std::to_string(rank_count(f, spec.d)) + " ranks");
  }
  if (spec.ranks[0] != spec.base.size()) throw ShapeError("ranks[0] must equal the number of base variables");
  const int k = shift_of(f, spec.d);
  const std::size_t npairs = has_z(f) ? spec.ranks.size() - 1 : spec.ranks.size();
  const std::size_t nz = has_z(f) ? spec.ranks.back() : 0;
  if (f == Family::WeakTwo && spec.q.size() != nz) throw ShapeError("weak2 needs one q per z variable");
  if (f != Family::WeakTwo && !spec.q.empty()) throw ShapeError("q is only used by weak2");
  if (f == Family::SplitTwo && spec.field != Field::Gaussian) throw UnsupportedError("split2 needs the gaussian field");

  std::vector<GeneratorDecl> base;
  for (const auto& b : spec.base) base.push_back({b, 0});
  std::vector<std::string> inv_text = spec.invertibles;
  for (const auto& qt : spec.q) inv_text.push_back(qt);
  std::vector<Terms> invs;
  for (auto& t : parse_invertibles(spec.field, base, inv_text)) {
    bool constant = t.size() == 1 && t.begin()->first.is_one();
    if (!constant && std::find(invs.begin(), invs.end(), t) == invs.end()) invs.push_back(std::move(t));
  }

  std::vector<GeneratorDecl> decls = base;
  std::vector<std::pair<std::size_t, std::size_t>> pair_index(npairs);  // decl positions of x_1, y_1
  for (int m = -1; m >= k; --m) {
    const int i = -m;
    if (i >= 1 && static_cast<std::size_t>(i) < npairs) {
      pair_index[static_cast<std::size_t>(i)].first = decls.size();
      for (std::size_t j = 1; j <= spec.ranks[static_cast<std::size_t>(i)]; ++j) {
        decls.push_back({"x" + std::to_string(i) + "_" + std::to_string(j), m});
      }
    }
    if (nz > 0 && m == -2 * spec.d - 1) {
      for (std::size_t j = 1; j <= nz; ++j) decls.push_back({"z" + std::to_string(i) + "_" + std::to_string(j), m});
    }
    const int ip = m - k;  // pair whose y has degree m
    if (ip >= 0 && static_cast<std::size_t>(ip) < npairs) {
      pair_index[static_cast<std::size_t>(ip)].second = decls.size();
      for (std::size_t j = 1; j <= spec.ranks[static_cast<std::size_t>(ip)]; ++j) {
        decls.push_back({"y" + std::to_string(-m) + "_" + std::to_string(j), m});
      }
    }
  }
  Roster r;
  r.k = k;
  r.sig = Signature::create(spec.field, decls, invs);
  for (std::size_t i = 0; i < npairs; ++i) {
    for (std::size_t j = 0; j < spec.ranks[i]; ++j) {
      GenIndex x = i == 0 ? static_cast<GenIndex>(j) : static_cast<GenIndex>(pair_index[i].first + j);
      r.pairs.push_back({static_cast<int>(i), x, static_cast<GenIndex>(pair_index[i].second + j)});
    }
  }
  for (std::size_t j = 1; j <= nz; ++j) {
    r.zs.push_back(r.sig->index("z" + std::to_string(2 * spec.d + 1) + "_" + std::to_string(j)));
    r.q.push_back(f == Family::WeakTwo ? parse_element(r.sig, spec.q[j - 1]) : Element::constant(r.sig, Scalar(1)));
  }
  r.H = parse_element(r.sig, spec.H);
  if (!r.H.is_zero() && !r.H.has_bidegree(k + 1, 0)) {
    throw ShapeError("H must have degree k+1 = " + std::to_string(k + 1));
  }
  return r;
}

namespace detail {

inline bool odd_int(int v) { return v % 2 != 0; }

/// Sign on d y for the pair of index i: (-1)^{(i+1)(i+k+1)}.
inline bool y_sign_negative(int i, int k) { return odd_int((i + 1) * (i + k + 1)); }

}  // namespace detail

/// Residue of the classical master equation: sum over pairs with i >= 1 of
/// +-dH/dx dH/dy plus 1/4 sum q^{-1} (dH/dz)^2; zero iff d o d = 0.
inline Element master_residue(const Roster& r) {
  const auto& sig = r.sig;
  Element res(sig);
  for (const auto& p : r.pairs) {
    if (p.i == 0) continue;
    Element t = partial(sig, p.x, r.H) * partial(sig, p.y, r.H);
    bool neg = (r.k % 2 == 0) && detail::odd_int(p.i + 1);
    res = neg ? res - t : res + t;
  }
  for (std::size_t j = 0; j < r.zs.size(); ++j) {
    Element dz = partial(sig, r.zs[j], r.H);
    res += Scalar::rational(1, 4) * r.q[j].inverse() * dz * dz;
  }
  return res;
}

inline Report check_master(const DarbouxSpec& spec) {
  Report rep;
  rep.expect_zero("master equation", master_residue(roster(spec)));
  return rep;
}

struct DarbouxPackage {
  Roster roster;
  StandardFormCdga algebra;
  ClosedForm omega;
  PhiPhiPair pair;
};

inline Element darboux_omega0(const Roster& r) {
  const auto& sig = r.sig;
  Element w(sig);
  for (const auto& p : r.pairs) w += Element::generator(sig, sig->one_form_of(p.y)) * Element::generator(sig, sig->one_form_of(p.x));
  for (std::size_t j = 0; j < r.zs.size(); ++j) {
    Element z = Element::generator(sig, r.zs[j]);
    w += de_rham(r.q[j] * z) * Element::generator(sig, sig->one_form_of(r.zs[j]));
  }
  return w;
}

/// Differential generated by H: d x = dH/dy, d y = +-dH/dx, d z = dH/dz / 2q,
/// with the q-correction on the degree k partners of the base.
inline std::map<GenIndex, Element> darboux_differential(const Roster& r) {
  const auto& sig = r.sig;
  std::map<GenIndex, Element> d;
  for (const auto& p : r.pairs) {
    Element hy = partial(sig, p.y, r.H);
    if (p.i == 0) {
      if (!hy.is_zero()) throw CheckFailure("dH/d" + sig->gen(p.y).name + " must vanish for degree reasons");
    } else {
      d.emplace(p.x, hy);
    }
    Element hx = partial(sig, p.x, r.H);
    if (p.i == 0) {
      for (std::size_t j = 0; j < r.zs.size(); ++j) {
        Element z = Element::generator(sig, r.zs[j]);
        Element dq = partial(sig, p.x, r.q[j]);
        if (dq.is_zero()) continue;
        hx -= Scalar::rational(1, 2) * z * r.q[j].inverse() * dq * partial(sig, r.zs[j], r.H);
      }
    }
    d.emplace(p.y, detail::y_sign_negative(p.i, r.k) ? -hx : hx);
  }
  for (std::size_t j = 0; j < r.zs.size(); ++j) {
    d.emplace(r.zs[j], Scalar::rational(1, 2) * r.q[j].inverse() * partial(sig, r.zs[j], r.H));
  }
  return d;
}

/// Phi = H/k and phi = (1/-k) sum [(-k-i) y dx +- i x dy] + sum q z dz.
inline PhiPhiPair darboux_pair(const Roster& r) {
  const auto& sig = r.sig;
  const int k = r.k;
  Element phi(sig);
  for (const auto& p : r.pairs) {
    Element x = Element::generator(sig, p.x);
    Element y = Element::generator(sig, p.y);
    Element t = Scalar(-k - p.i) * y * Element::generator(sig, sig->one_form_of(p.x));
    Element u = Scalar(p.i) * x * Element::generator(sig, sig->one_form_of(p.y));
    bool neg = detail::odd_int((p.i + 1) * (p.i + k - 1));
    phi += Scalar::rational(1, -k) * (neg ? t - u : t + u);
  }
  for (std::size_t j = 0; j < r.zs.size(); ++j) {
    phi += r.q[j] * Element::generator(sig, r.zs[j]) * Element::generator(sig, sig->one_form_of(r.zs[j]));
  }
  return {Scalar::rational(1, k) * r.H, phi};
}

/// Builds the cdga, form and (Phi, phi) and verifies d^2 = 0, closedness,
/// d_dR phi = omega^0, the cocycle identities and strict nondegeneracy.
inline DarbouxPackage generate(const DarbouxSpec& spec) {
  Roster r = roster(spec);
  Report master;
  master.expect_zero("master equation", master_residue(r));
  require(master, "master equation fails");
  StandardFormCdga a = StandardFormCdga::unchecked(r.sig, darboux_differential(r));
  Report post;
  post.merge(a.d_squared_residues());
  Element w0 = darboux_omega0(r);
  ClosedForm w{r.k, 2, {w0}};
  post.merge(check_closed(a, w));
  PhiPhiPair pr = darboux_pair(r);
  post.expect_zero("d_dR phi - omega^0", de_rham(pr.phi) - w0);
  post.merge(check_pair(a, r.k, pr));
  if (!is_strictly_nondegenerate(a, r.k, w0)) post.notes.push_back("omega^0 is not strictly nondegenerate");
  if (!post.ok() || !post.notes.empty()) {
    std::string msg = "Darboux postconditions fail\n" + post.str();
    for (const auto& n : post.notes) msg += n + "\n";
    throw CheckFailure(msg);
  }
  return {std::move(r), std::move(a), std::move(w), std::move(pr)};
}

/// Rewrites an element into another table whose generator names cover it.
inline Element transfer(const Element& e, const SignaturePtr& target) {
  AlgebraMap m(e.signature(), target);
  const auto& src = e.signature();
  for (GenIndex g = 0; g < src->algebra_size(); ++g) {
    auto h = target->find(src->gen(g).name);
    if (!h) {
      if (e.uses_generator(g)) throw SignatureError("generator '" + src->gen(g).name + "' missing from target table");
      continue;
    }
    m.set(g, Element::generator(target, *h));
  }
  return m.apply(e);
}

/// A change of variables between two Darboux packages, checked on H, on
/// the differentials and on omega^0.
struct VariableChange {
  DarbouxSpec source;
  DarbouxSpec target;
  Report checks;
};

inline Report check_substitution(const AlgebraMap& sigma, const DarbouxPackage& from, const DarbouxPackage& to) {
  Report r;
  r.expect_zero("sigma(H) - H", sigma.apply(from.roster.H) - to.roster.H);
  r.merge(check_cdga_map(sigma, from.algebra, to.algebra));
  r.expect_zero("sigma(omega^0) - omega^0", sigma.apply(from.omega.components[0]) - to.omega.components[0]);
  return r;
}

/// Rescales z~ = r z where r^2 = q. The weak side is re-tabled with the
/// roots as extra invertibles so the substitution map is defined on it.
inline VariableChange weak_to_strong(const DarbouxSpec& weak, const std::map<std::string, std::string>& roots) {
  if (weak.family != Family::WeakTwo) throw PreconditionError("weak_to_strong needs a weak2 spec");
  DarbouxSpec w = weak;
  std::vector<std::string> root_text;
  for (const auto& qt : weak.q) {
    auto it = roots.find(qt);
    if (it == roots.end()) throw UnsupportedError("no square root supplied for q = " + qt);
    root_text.push_back(it->second);
    w.invertibles.push_back(it->second);
  }
  Roster rw = roster(w);
  for (std::size_t j = 0; j < rw.q.size(); ++j) {
    Element rt = parse_element(rw.sig, root_text[j]);
    if (rt * rt != rw.q[j]) throw PreconditionError("root " + root_text[j] + " does not square to " + weak.q[j]);
  }
  DarbouxSpec s = w;
  s.family = Family::StrongTwo;
  s.q.clear();
  s.invertibles = weak.invertibles;
  for (const auto& t : root_text) s.invertibles.push_back(t);
  for (const auto& qt : weak.q) s.invertibles.push_back(qt);
  // H~ = H(z -> z~ / r)
  Roster rs0 = roster(DarbouxSpec{s.family, s.d, s.field, s.base, s.invertibles, s.ranks, {}, "0"});
  AlgebraMap to_strong(rw.sig, rs0.sig);
  for (GenIndex g = 0; g < rw.sig->algebra_size(); ++g) {
    Element v = Element::generator(rs0.sig, rs0.sig->index(rw.sig->gen(g).name));
    for (std::size_t j = 0; j < rw.zs.size(); ++j) {
      if (rw.zs[j] == g) v = v * parse_element(rs0.sig, root_text[j]).inverse();
    }
    to_strong.set(g, v);
  }
  s.H = to_string(to_strong.apply(rw.H));
  DarbouxPackage pw = generate(w);
  DarbouxPackage ps = generate(s);
  AlgebraMap sigma(ps.roster.sig, pw.roster.sig);
  for (GenIndex g = 0; g < ps.roster.sig->algebra_size(); ++g) {
    GenIndex gw = pw.roster.sig->index(ps.roster.sig->gen(g).name);
    Element v = Element::generator(pw.roster.sig, gw);
    for (std::size_t j = 0; j < pw.roster.zs.size(); ++j) {
      if (pw.roster.zs[j] == gw) v = parse_element(pw.roster.sig, root_text[j]) * v;
    }
    sigma.set(g, v);
  }
  VariableChange out{w, s, check_substitution(sigma, ps, pw)};
  require(out.checks, "weak_to_strong substitution failed");
  return out;
}

/// Replaces the z's of a strong2 spec by pairs x = z_j + i z_{j+h},
/// y = z_j - i z_{j+h} in the middle degree.
inline VariableChange split_middle(const DarbouxSpec& strong) {
  if (strong.family != Family::StrongTwo) throw PreconditionError("split_middle needs a strong2 spec");
  if (strong.field != Field::Gaussian) throw UnsupportedError("split_middle needs the gaussian field");
  const std::size_t m = strong.ranks.back();
  if (m % 2 != 0) throw ShapeError("split_middle needs an even number of z variables");
  DarbouxSpec s = strong;
  s.family = Family::SplitTwo;
  s.ranks.back() = m / 2;
  s.H = "0";
  Roster rz = roster(strong);
  Roster rs = roster(s);
  const std::size_t h = m / 2;
  const std::string mid = std::to_string(2 * strong.d + 1);
  AlgebraMap tau(rz.sig, rs.sig);
  const Scalar half = Scalar::rational(1, 2);
  const Scalar mhalf_i = Scalar(mpq_class(0), mpq_class(-1, 2));
  for (GenIndex g = 0; g < rz.sig->algebra_size(); ++g) {
    auto own = rs.sig->find(rz.sig->gen(g).name);
    if (own) {
      tau.set(g, Element::generator(rs.sig, *own));
      continue;
    }
  }
  for (std::size_t j = 0; j < h; ++j) {
    Element x = Element::generator(rs.sig, "x" + mid + "_" + std::to_string(j + 1));
    Element y = Element::generator(rs.sig, "y" + mid + "_" + std::to_string(j + 1));
    tau.set(rz.zs[j], half * (x + y));
    tau.set(rz.zs[j + h], mhalf_i * (x - y));
  }
  s.H = to_string(tau.apply(rz.H));
  DarbouxPackage pz = generate(strong);
  DarbouxPackage ps = generate(s);
  VariableChange out{strong, s, check_substitution(tau, pz, ps)};
  require(out.checks, "split_middle substitution failed");
  return out;
}

/// -m_{2d+1} + 2 sum (-1)^i m_i for the z-families.
inline long virtual_dimension(const DarbouxSpec& spec) {
  if (!has_z(spec.family)) throw PreconditionError("virtual dimension formula is for the z-families");
  long v = -static_cast<long>(spec.ranks.back());
  for (std::size_t i = 0; i + 1 < spec.ranks.size(); ++i) v += 2 * (i % 2 == 0 ? 1 : -1) * static_cast<long>(spec.ranks[i]);
  return v;
}

/// Geometric data of the k = -1, -2, -3 models, as elements of the base.
struct GeometricView {
  int k = -1;
  Field field = Field::Rational;
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  SignaturePtr base_sig;
  Element H;                             // k = -1
  std::vector<Element> q;                // k = -2
  std::vector<Element> s;                // k = -2, -3
  std::vector<std::vector<Element>> t;   // k = -3
  bool strong = false;                   // k = -2 without q
};

inline Report check_view(const GeometricView& v) {
  Report r;
  if (v.k == -2) {
    Element res(v.base_sig);
    for (std::size_t j = 0; j < v.s.size(); ++j) res += v.q[j].inverse() * v.s[j] * v.s[j];
    r.expect_zero("sum q^-1 s^2", res);
  } else if (v.k == -3) {
    for (std::size_t i = 0; i < v.s.size(); ++i) {
      Element row(v.base_sig);
      for (std::size_t j = 0; j < v.s.size(); ++j) {
        row += v.t[i][j] * v.s[j];
        r.expect_zero("t" + std::to_string(i + 1) + std::to_string(j + 1) + " + t" + std::to_string(j + 1) +
                          std::to_string(i + 1),
                      v.t[i][j] + v.t[j][i]);
      }
      r.expect_zero("(t s)_" + std::to_string(i + 1), row);
    }
  }
  return r;
}

inline GeometricView geometric_view(const DarbouxSpec& spec) {
  Roster r = roster(spec);
  GeometricView v;
  v.k = r.k;
  v.field = spec.field;
  v.base = spec.base;
  v.invertibles = spec.invertibles;
  std::vector<GeneratorDecl> bd;
  for (const auto& b : spec.base) bd.push_back({b, 0});
  std::vector<std::string> inv = spec.invertibles;
  for (const auto& qt : spec.q) inv.push_back(qt);
  std::vector<Terms> invs;
  for (auto& t : parse_invertibles(spec.field, bd, inv)) {
    bool constant = t.size() == 1 && t.begin()->first.is_one();
    if (!constant && std::find(invs.begin(), invs.end(), t) == invs.end()) invs.push_back(std::move(t));
  }
  v.base_sig = Signature::create(spec.field, bd, invs);
  const auto& sig = r.sig;
  Element rebuilt(sig);
  if (r.k == -1 && spec.family == Family::Odd) {
    v.H = transfer(r.H, v.base_sig);
    rebuilt = r.H;
  } else if (r.k == -2 && has_z(spec.family)) {
    v.strong = spec.family == Family::StrongTwo;
    for (std::size_t j = 0; j < r.zs.size(); ++j) {
      Element s = partial(sig, r.zs[j], r.H);
      v.s.push_back(transfer(s, v.base_sig));
      v.q.push_back(transfer(r.q[j], v.base_sig));
      rebuilt += Element::generator(sig, r.zs[j]) * s;
    }
  } else if (r.k == -3 && spec.family == Family::Odd) {
    std::vector<DarbouxPair> mid;
    for (const auto& p : r.pairs) {
      if (p.i == 1) mid.push_back(p);
    }
    for (const auto& p : mid) {
      Element s = partial(sig, p.y, r.H);
      v.s.push_back(transfer(s, v.base_sig));
      rebuilt += Element::generator(sig, p.y) * s;
    }
    for (const auto& pi : mid) {
      std::vector<Element> row;
      for (const auto& pj : mid) {
        Element t = Scalar::rational(1, 2) * partial(sig, pj.x, partial(sig, pi.x, r.H));
        row.push_back(transfer(t, v.base_sig));
        rebuilt += Element::generator(sig, pi.x) * Element::generator(sig, pj.x) * t;
      }
      v.t.push_back(std::move(row));
    }
  } else {
    throw UnsupportedError("geometric view exists for k = -1, -2, -3 only");
  }
  Report r2;
  r2.expect_zero("H - rebuilt from view", r.H - rebuilt);
  require(r2, "H is not of the form the geometric view records");
  return v;
}

inline DarbouxSpec from_geometric(const GeometricView& v) {
  DarbouxSpec s;
  s.field = v.field;
  s.base = v.base;
  s.invertibles = v.invertibles;
  const std::size_t m0 = v.base.size();
  if (v.k == -1) {
    s.family = Family::Odd;
    s.d = 0;
    s.ranks = {m0};
    s.H = to_string(v.H);
    return s;
  }
  if (v.k == -2) {
    s.family = v.strong ? Family::StrongTwo : Family::WeakTwo;
    s.d = 0;
    s.ranks = {m0, v.s.size()};
    std::string h;
    for (std::size_t j = 0; j < v.s.size(); ++j) {
      if (!v.strong) s.q.push_back(to_string(v.q[j]));
      h += (h.empty() ? "" : " + ") + std::string("z1_") + std::to_string(j + 1) + "*(" + to_string(v.s[j]) + ")";
    }
    s.H = h.empty() ? "0" : h;
    return s;
  }
  if (v.k == -3) {
    s.family = Family::Odd;
    s.d = 1;
    s.ranks = {m0, v.s.size()};
    std::string h;
    for (std::size_t i = 0; i < v.s.size(); ++i) {
      h += (h.empty() ? "" : " + ") + std::string("y2_") + std::to_string(i + 1) + "*(" + to_string(v.s[i]) + ")";
      for (std::size_t j = 0; j < v.s.size(); ++j) {
        h += " + x1_" + std::to_string(i + 1) + "*x1_" + std::to_string(j + 1) + "*(" + to_string(v.t[i][j]) + ")";
      }
    }
    s.H = h.empty() ? "0" : h;
    return s;
  }
  throw UnsupportedError("geometric view exists for k = -1, -2, -3 only");
}

}  // namespace shiftsym
