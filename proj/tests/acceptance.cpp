// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "support.hpp"
#include "torkernel/combinatorics.hpp"
#include "torkernel/kernel.hpp"
#include "torkernel/linalg.hpp"
#include "torkernel/numeric.hpp"
#include "torkernel/render.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace torkernel;
using namespace torkernel::testing;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

using OneBased = std::vector<std::vector<int>>;

OneBased one_based(const std::vector<IndexSet>& sets) {
  OneBased out;
  for (const auto& s : sets) {
    std::vector<int> v;
    for (int x : s) v.push_back(x + 1);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix ints(const std::vector<std::vector<int>>& rows) {
  IntMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return m;
}

RatVector rats(const std::vector<int>& xs) { return RatVector(xs.begin(), xs.end()); }

// ---------------------------------------------------------------------------

Outcome ac1_exact_relations() {
  Outcome o;
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  int fans = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const int d = n + 1 + (trial / 4) % 4;
    const auto gens = random_spanning_generators(rng, n, d);
    const auto rb = lin_rel(gens);
    ++fans;
    o.require(rb.rank() == d - n, "wrong number of rows");
    for (const auto& row : rb.rows) {
      o.require(static_cast<int>(row.size()) == d, "row length");
      for (int i = 0; i < n; ++i) {
        BigInt s = 0;
        for (int j = 0; j < d; ++j) s += row[j] * gens[j][i];
        o.require(s == 0, "relation does not vanish");
      }
      BigInt g = 0;
      for (const auto& x : row) g = boost::integer::gcd(g, x);
      o.require(g == 1, "row not primitive");
      const auto lead = std::find_if(row.begin(), row.end(), [](const BigInt& x) { return x != 0; });
      o.require(lead != row.end() && *lead > 0, "row sign not normalized");
    }
    o.require(std::is_sorted(rb.rows.begin(), rb.rows.end(), std::greater<>()), "rows not sorted");
  }
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime " + fmt("%.2f s", t));
  if (o.pass) o.detail = std::to_string(fans) + " fans, " + fmt("%.3f s", t);
  return o;
}

Outcome ac2_primitive_collections() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int checked = 0;
  const auto check = [&](const std::vector<Cone>& cones) {
    const auto pc = prim_coll(cones);
    o.require(std::set<std::vector<int>>(pc.begin(), pc.end()) == brute_force_primitive_collections(cones),
              "mismatch on case " + std::to_string(checked));
    ++checked;
  };
  for (const auto& g : golden_fans()) check(g.fan.max_cones);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const int max_blowups = 7 - (n + 1);
    const auto f = random_complete_fan(rng, n, trial % (max_blowups + 1));
    if (f.d() <= 7) check(f.max_cones);
  }
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int d = std::min(7, n + 1 + trial % 4);
    check(random_cone_list(rng, n, d, 1 + trial % 6));
  }
  if (o.pass) o.detail = std::to_string(checked) + " cone families";
  return o;
}

// Expected values for the golden fans, transcribed from hand computations.
struct Ledger {
  std::string name;
  Fan fan;
  std::vector<std::vector<int>> relations;
  OneBased collections;
  std::vector<std::vector<int>> group;
  std::vector<std::vector<int>> kahler;
  std::map<std::vector<int>, int> h;            // one-based wedge -> sign * A (zero terms omitted)
  std::vector<std::map<int, int>> g;            // per cone: one-based l -> exponent of |z_l|
  std::vector<std::pair<std::vector<int>, std::vector<int>>> domain;  // collection, bound coeffs
};

std::vector<Ledger> ledgers() {
  return {
      {"P1", p1(), {{1, 1}}, {{1, 2}}, {{1}, {1}}, {{1}}, {{{1}, 1}, {{2}, -1}}, {{{2, 4}}, {{1, 4}}},
       {{{1, 2}, {1}}}},
      {"P2",
       p2(),
       {{1, 1, 1}},
       {{1, 2, 3}},
       {{1}, {1}, {1}},
       {{1}},
       {{{2, 3}, 1}, {{1, 3}, -1}, {{1, 2}, 1}},
       {{{3, 6}}, {{1, 6}}, {{2, 6}}},
       {{{1, 2, 3}, {1}}}},
      {"P1xP1",
       p1xp1(),
       {{1, 0, 1, 0}, {0, 1, 0, 1}},
       {{1, 3}, {2, 4}},
       {{1, 0}, {0, 1}, {1, 0}, {0, 1}},
       {{1, 0}, {0, 1}},
       {{{1, 2}, 1}, {{1, 4}, -1}, {{2, 3}, 1}, {{3, 4}, 1}},
       {{{3, 4}, {4, 4}}, {{1, 4}, {4, 4}}, {{1, 4}, {2, 4}}, {{2, 4}, {3, 4}}},
       {{{1, 3}, {1, 0}}, {{2, 4}, {0, 1}}}},
      {"H1",
       hirzebruch1(),
       {{1, -1, 1, 0}, {0, 1, 0, 1}},
       {{1, 3}, {2, 4}},
       {{1, 0}, {-1, 1}, {1, 0}, {0, 1}},
       {{1, 0}, {0, 1}},
       {{{1, 2}, 1}, {{1, 3}, 1}, {{1, 4}, -1}, {{2, 3}, 1}, {{3, 4}, 1}},
       {},
       {{{1, 3}, {1, 0}}, {{2, 4}, {0, 1}}}},
  };
}

Outcome ac3_golden_ledger() {
  Outcome o;
  int values = 0;
  for (const auto& L : ledgers()) {
    const auto rep = build_kernel(L.fan);
    const auto tag = L.name + ": ";
    o.require(rep.relations.rows == ints(L.relations), tag + "relations");
    o.require(rep.w_forms == ints(L.relations), tag + "W-forms");
    o.require(one_based(rep.primitive_collections) == L.collections, tag + "primitive collections");
    o.require(one_based(rep.exceptional.subspaces) == L.collections, tag + "exceptional set");
    o.require(rep.group.exponents == ints(L.group), tag + "group exponents");
    values += 5;

    std::vector<RatVector> forms;
    for (const auto& k : rep.kahler) forms.push_back(k.form.coeffs);
    std::vector<RatVector> expected_forms;
    for (const auto& k : L.kahler) expected_forms.push_back(rats(k));
    o.require(forms == expected_forms, tag + "Kahler forms");
    ++values;

    std::map<std::vector<int>, int> h;
    for (const auto& t : rep.h.terms) {
      std::vector<int> monomial(L.fan.d(), 1);
      std::vector<int> w;
      for (int i : t.wedge) {
        w.push_back(i + 1);
        monomial[i] = 0;
      }
      o.require(t.monomial == monomial, tag + "h monomial");
      if (t.coefficient != 0) h[w] = t.sign * t.coefficient.convert_to<int>();
    }
    o.require(h == L.h, tag + "h form");
    ++values;

    if (!L.g.empty()) {
      std::vector<std::map<int, int>> g;
      for (const auto& t : rep.g.terms) {
        std::map<int, int> e;
        for (const auto& [l, x] : t.exponents) e[l + 1] = to_integer(x).convert_to<int>();
        g.push_back(e);
      }
      o.require(g == L.g, tag + "g denominator");
      ++values;
    }

    o.require(rep.domain.size() == L.domain.size(), tag + "domain size");
    for (std::size_t k = 0; k < std::min(rep.domain.size(), L.domain.size()); ++k) {
      o.require(one_based({rep.domain[k].collection}) == OneBased{L.domain[k].first}, tag + "domain collection");
      o.require(rep.domain[k].bound.coeffs == rats(L.domain[k].second), tag + "domain bound");
    }
    ++values;
  }
  if (o.pass) o.detail = std::to_string(values) + " value groups over 4 fans";
  return o;
}

Outcome ac4_nu_modes() {
  Outcome o;
  int agreeing = 0;
  for (const auto& g : golden_fans()) {
    const auto& f = g.fan;
    for (const auto& sigma : f.max_cones) {
      std::vector<std::vector<std::int64_t>> m(f.n, std::vector<std::int64_t>(f.n));
      for (int i = 0; i < f.n; ++i)
        for (int c = 0; c < f.n; ++c) m[i][c] = f.generators[sigma[c]][i];
      const auto det = cofactor_det(m);
      for (int l = 0; l < f.d(); ++l) {
        if (std::find(sigma.begin(), sigma.end(), l) != sigma.end()) continue;
        const auto s = nu_sigma(f, sigma, l, NuMode::strict);
        const auto nn = nu_sigma(f, sigma, l, NuMode::normalized);
        o.require(s == nn * det, g.name + ": strict != det * normalized");
        if (det == 1) {
          o.require(s == nn, g.name + ": modes differ on a unimodular cone");
          ++agreeing;
        }
      }
    }
  }
  const auto f = p1();
  o.require(nu_sigma(f, {1}, 0, NuMode::strict) == -1, "P1 strict");
  o.require(nu_sigma(f, {1}, 0, NuMode::normalized) == 1, "P1 normalized");
  o.require(nu_sigma(p2(), {0, 1}, 2, NuMode::strict) == 2 && nu_sigma(p2(), {0, 1}, 2) == 2, "P2 value");
  o.require(nu_sigma(p1xp1(), {0, 1}, 2) == 1, "P1xP1 value");
  if (o.pass) o.detail = std::to_string(agreeing) + " unimodular pairs agree; P1 differs by -1";
  return o;
}

Outcome ac5_determinants() {
  Outcome o;
  std::mt19937_64 rng(5005);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = trial % 7;
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
    RatMatrix r(k, RatVector(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) r[i][j] = m[i][j] = entry(rng);
    o.require(det_exact(r) == cofactor_det(m), "mismatch on trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "500 matrices, sizes 0-6";
  return o;
}

Outcome ac6_kahler_round_trip() {
  Outcome o;
  std::mt19937_64 rng(6006);
  std::vector<Fan> fans;
  for (const auto& g : golden_fans()) fans.push_back(g.fan);
  for (int trial = 0; trial < 40; ++trial) fans.push_back(random_complete_fan(rng, 2 + trial % 2, trial % 5));
  int inequalities = 0;
  for (const auto& f : fans) {
    const auto rep = build_kernel(f);
    for (const auto& k : rep.kahler) {
      RatVector target(f.d());
      for (int j : k.collection) target[j] += 1;
      const auto& sigma = f.max_cones.at(k.cone);
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        target[sigma[i]] -= k.cone_coeffs[i];
        o.require(k.cone_coeffs[i] >= 0, "negative cone coefficient");
      }
      // c-embedding must reproduce s_P in the lattice.
      for (int a = 0; a < f.n; ++a) {
        Rational lhs = 0, rhs = 0;
        for (int j : k.collection) lhs += f.generators[j][a];
        for (std::size_t i = 0; i < sigma.size(); ++i) rhs += k.cone_coeffs[i] * f.generators[sigma[i]][a];
        o.require(lhs == rhs, "cone coefficients do not reproduce the collection sum");
      }
      RatVector combo(f.d());
      for (int m = 0; m < rep.relations.rank(); ++m)
        for (int j = 0; j < f.d(); ++j) combo[j] += k.form.coeffs[m] * rep.relations.rows[m][j];
      o.require(combo == target, "sum a_m row_m differs from chi_P - c");
      ++inequalities;
    }
  }
  if (o.pass) o.detail = std::to_string(fans.size()) + " fans, " + std::to_string(inequalities) + " inequalities";
  return o;
}

// Independent oracle for the P1 constant: midpoint rule in (t, theta1, theta2) with
// r1 = t, r2 = 1 - t, central-difference Jacobians and a cofactor 3x3 determinant.
Complex p1_quadrature_oracle(int points) {
  using C = std::complex<double>;
  const auto z_of = [](double t, double a1, double a2, C& z1, C& z2) {
    z1 = std::polar(std::sqrt(t), a1);
    z2 = std::polar(std::sqrt(1.0 - t), a2);
  };
  const auto det3 = [](const C m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double dt = 1.0 / points, da = 2 * kPi / points, h = 1e-6;
  C total{};
  for (int it = 0; it < points; ++it) {
    const double t = (it + 0.5) * dt;
    C row_sum{};
    for (int i1 = 0; i1 < points; ++i1) {
      const double a1 = (i1 + 0.5) * da;
      for (int i2 = 0; i2 < points; ++i2) {
        const double a2 = (i2 + 0.5) * da;
        C z1, z2, p1, p2, m1, m2;
        z_of(t, a1, a2, z1, z2);
        C dz1[3], dz2[3];
        const double params[3] = {t, a1, a2};
        for (int k = 0; k < 3; ++k) {
          double up[3] = {params[0], params[1], params[2]}, dn[3] = {params[0], params[1], params[2]};
          up[k] += h;
          dn[k] -= h;
          z_of(up[0], up[1], up[2], p1, p2);
          z_of(dn[0], dn[1], dn[2], m1, m2);
          dz1[k] = (p1 - m1) / (2 * h);
          dz2[k] = (p2 - m2) / (2 * h);
        }
        C a[3][3], b[3][3];
        for (int k = 0; k < 3; ++k) {
          a[0][k] = std::conj(dz1[k]);
          b[0][k] = std::conj(dz2[k]);
          a[1][k] = b[1][k] = dz1[k];
          a[2][k] = b[2][k] = dz2[k];
        }
        const double g = std::pow(std::abs(z1), 4) + std::pow(std::abs(z2), 4);
        row_sum += (std::conj(z2) * det3(a) - std::conj(z1) * det3(b)) / g;
      }
    }
    total += row_sum;
  }
  return total * dt * da * da;
}

Outcome ac7_numeric_p1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = build_kernel(p1());
  const std::vector<double> rho{1.0};

  SamplerOptions opts;
  opts.samples = 1'000'000;
  opts.seed = 7;
  const auto c = estimate_C(rep, rho, opts);
  const double phase = std::abs(c.estimate.imag()) / std::abs(c.estimate);
  o.require(phase < 1e-3, "|Im C|/|C| = " + fmt("%.3g", phase));

  const Complex oracle = p1_quadrature_oracle(200);
  const double rel = std::abs(c.estimate - oracle) / std::abs(oracle);
  o.require(rel < 5e-3, "C vs quadrature relative error " + fmt("%.4f", rel));

  SamplerOptions rep_opts = opts;
  rep_opts.samples = 10'000'000;
  const std::vector<int> alpha{1, 0};
  const std::vector<Complex> zeta{0.3, 0.0};
  const auto v = verify_representation(rep, rho, alpha, zeta, rep_opts);
  o.require(v.relative_error < 0.02, "f = z1 relative error " + fmt("%.4f", v.relative_error));

  const double t = seconds_since(t0);
  o.require(t < 120.0, "runtime " + fmt("%.1f s", t));
  if (o.pass) {
    std::ostringstream s;
    s << "C = " << fmt("%.4f", c.estimate.real()) << fmt("%+.2gi", c.estimate.imag()) << ", quadrature "
      << fmt("%.4f", oracle.real()) << " (rel " << fmt("%.4f", rel) << "), f=z1 rel err "
      << fmt("%.4f", v.relative_error) << ", " << fmt("%.1f s", t);
    o.detail = s.str();
  }
  return o;
}

Outcome ac8_numeric_p2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = build_kernel(p2());
  const std::vector<double> rho{1.0};
  SamplerOptions opts;
  opts.samples = 10'000'000;
  opts.seed = 8;

  const std::vector<Complex> origin(3);
  const auto one = verify_representation(rep, rho, std::vector<int>{0, 0, 0}, origin, opts);
  o.require(one.ratio == Complex(1.0, 0.0), "f = 1 ratio is not exactly 1");

  const std::vector<Complex> zeta{0.2, 0.0, 0.0};
  const auto lin = verify_representation(rep, rho, std::vector<int>{1, 0, 0}, zeta, opts);
  o.require(lin.relative_error < 0.05, "f = z1 relative error " + fmt("%.4f", lin.relative_error));

  const auto moment = verify_representation(rep, rho, std::vector<int>{1, 0, 0}, origin, opts);
  const double sigmas = std::abs(moment.integral.estimate) / moment.integral.std_error;
  o.require(sigmas <= 3.0, "integral of z1 omega is " + fmt("%.2f", sigmas) + " std errors from 0");

  const double t = seconds_since(t0);
  o.require(t < 600.0, "runtime " + fmt("%.1f s", t));
  if (o.pass) {
    o.detail = "f=z1 rel err " + fmt("%.4f", lin.relative_error) + ", moment at " + fmt("%.2f", sigmas) +
               " std errors, " + fmt("%.1f s", t);
  }
  return o;
}

Outcome ac9_rendering() {
  Outcome o;
  int documents = 0;
  for (const auto& g : golden_fans()) {
    for (auto format : {ReportFormat::text, ReportFormat::latex, ReportFormat::structured}) {
      RenderOptions opts;
      opts.format = format;
      const auto a = render(build_kernel(g.fan), opts);
      const auto b = render(build_kernel(g.fan), opts);
      o.require(a == b, g.name + ": output differs between runs");
      ++documents;
      if (format == ReportFormat::structured) {
        const auto back = parse_report(a);
        o.require(back == build_kernel(g.fan), g.name + ": structured round trip");
        o.require(render(back, opts) == a, g.name + ": re-rendered structured output differs");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(documents) + " documents byte-identical, 4 round trips";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 exact relations", ac1_exact_relations},
      {"AC2 primitive collections vs brute force", ac2_primitive_collections},
      {"AC3 golden-fan ledger", ac3_golden_ledger},
      {"AC4 nu modes", ac4_nu_modes},
      {"AC5 determinant oracle", ac5_determinants},
      {"AC6 Kahler round trip", ac6_kahler_round_trip},
      {"AC7 numeric check P1", ac7_numeric_p1},
      {"AC8 numeric check P2", ac8_numeric_p2},
      {"AC9 rendering determinism", ac9_rendering},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
