#include "torkernel/kernel.hpp"

#include <algorithm>
#include <numeric>

namespace torkernel {

std::string to_string(NuMode mode) { return mode == NuMode::strict ? "strict" : "normalized"; }

NuMode parse_nu_mode(const std::string& text) {
  if (text == "strict") return NuMode::strict;
  if (text == "normalized") return NuMode::normalized;
  throw Error("unknown nu mode '" + text + "' (expected strict or normalized)");
}

GroupAction group_action(const RelationBasis& rb) {
  GroupAction g;
  for (int i = 0; i < rb.d; ++i) g.exponents.push_back(rb.column(i));
  return g;
}

Rational nu_sigma(const Fan& fan, const Cone& sigma, int l, NuMode mode) {
  if (std::find(sigma.begin(), sigma.end(), l) != sigma.end()) {
    throw Error("nu_sigma: index " + std::to_string(l + 1) + " belongs to the cone " + format_index_set(sigma));
  }
  const Rational cone_det = det_exact(cone_matrix(fan, sigma));
  if (cone_det == 0) throw Error("nu_sigma: degenerate cone " + format_index_set(sigma));

  Rational sum = 0;
  for (const auto& substituted : permut(sigma, l)) sum += det_exact(cone_matrix(fan, substituted));
  const Rational nu = -sum;
  return mode == NuMode::strict ? nu : Rational(nu / cone_det);
}

HForm numerator_h(const Fan& fan, const RelationBasis& rb) {
  const int d = fan.d();
  const int n = fan.n;
  if (d <= n) throw DegenerateFanError("degenerate: d = n, the kernel numerator needs d > n");

  IndexSet all(d);
  std::iota(all.begin(), all.end(), 0);

  HForm h;
  for (const auto& wedge : set_of_all_subsets(all, n)) {
    HTerm term;
    term.wedge = wedge;
    // Sign exponent uses one-based indices.
    const int index_sum = std::accumulate(wedge.begin(), wedge.end(), 0) + n;
    term.sign = (index_sum - 1) % 2 == 0 ? 1 : -1;
    term.monomial.assign(d, 1);
    for (int i : wedge) term.monomial[i] = 0;

    RatMatrix minor(rb.rank());
    for (int r = 0; r < rb.rank(); ++r)
      for (int j = 0; j < d; ++j)
        if (term.monomial[j]) minor[r].push_back(rb.rows[r][j]);
    term.coefficient = to_integer(det_exact(minor));
    h.terms.push_back(std::move(term));
  }
  return h;
}

GDenominator denominator_g(const Fan& fan, NuMode mode) {
  GDenominator g;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& sigma = fan.max_cones[c];
    GTerm term;
    term.cone = static_cast<int>(c);
    for (int l = 0; l < fan.d(); ++l) {
      if (std::find(sigma.begin(), sigma.end(), l) != sigma.end()) continue;
      const Rational e = 2 * (nu_sigma(fan, sigma, l, mode) + 1);
      const std::string where = "cone " + std::to_string(c + 1) + ", |z" + std::to_string(l + 1) + "|";
      if (e < 0) g.warnings.push_back(where + " has negative exponent " + to_string(e));
      if (!is_integer(e) || boost::multiprecision::numerator(e) % 2 != 0) {
        g.warnings.push_back(where + " has non-even exponent " + to_string(e));
      }
      term.exponents.emplace(l, e);
    }
    g.terms.push_back(std::move(term));
  }
  return g;
}

std::vector<KahlerInequality> kahler_cone(const Fan& fan, const RelationBasis& rb, const IndexSetFamily& pc) {
  const RatMatrix relation_rows = to_rational(rb.rows);
  std::vector<KahlerInequality> out;
  for (const auto& collection : pc) {
    RatVector sum(fan.n);
    for (int j : collection)
      for (int i = 0; i < fan.n; ++i) sum[i] += fan.generators[j][i];

    KahlerInequality ineq;
    ineq.collection = collection;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
      const auto& sigma = fan.max_cones[c];
      const auto coeffs = solve_in_basis(transpose(cone_matrix(fan, sigma)), sum);
      if (!coeffs) continue;
      if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return x < 0; })) continue;
      ineq.cone = static_cast<int>(c);
      ineq.cone_coeffs = *coeffs;
      break;
    }
    if (ineq.cone < 0) {
      throw KahlerConeError("no maximal cone contains the sum of primitive collection " +
                            format_index_set(collection) + " (fan is not complete)");
    }

    RatVector relation(fan.d());
    for (int j : collection) relation[j] += 1;
    const auto& sigma = fan.max_cones[ineq.cone];
    for (std::size_t k = 0; k < sigma.size(); ++k) relation[sigma[k]] -= ineq.cone_coeffs[k];

    const auto a = solve_in_basis(relation_rows, relation);
    if (!a) {
      throw Error("internal: relation for collection " + format_index_set(collection) +
                  " is not in the span of the relation basis");
    }
    ineq.form.coeffs = *a;
    out.push_back(std::move(ineq));
  }
  return out;
}

ExceptionalSet exceptional_set(const IndexSetFamily& pc) {
  return ExceptionalSet{std::vector<IndexSet>(pc.begin(), pc.end())};
}

std::vector<IntVector> w_forms(const RelationBasis& rb) { return rb.rows; }

KernelReport build_kernel(const Fan& fan, NuMode mode) {
  auto validation = validate_fan(fan);
  if (!validation.ok()) throw ValidationError(std::move(validation));
  if (fan.d() == fan.n) throw DegenerateFanError("degenerate: d = n (" + std::to_string(fan.n) + "), no relations among the generators");

  KernelReport report;
  report.fan = fan;
  report.mode = mode;
  report.warnings = validation.warnings;
  report.relations = lin_rel(fan.generators);
  report.w_forms = w_forms(report.relations);
  report.group = group_action(report.relations);
  const auto pc = prim_coll(fan.max_cones);
  report.primitive_collections.assign(pc.begin(), pc.end());
  report.exceptional = exceptional_set(pc);
  report.kahler = kahler_cone(fan, report.relations, pc);
  for (const auto& k : report.kahler) report.domain.push_back(DomainInequality{k.collection, k.form});
  report.h = numerator_h(fan, report.relations);
  report.g = denominator_g(fan, mode);
  report.warnings.insert(report.warnings.end(), report.g.warnings.begin(), report.g.warnings.end());
  return report;
}

}  // namespace torkernel
