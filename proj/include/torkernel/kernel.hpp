#pragma once

#include "torkernel/combinatorics.hpp"
#include "torkernel/fan.hpp"
#include "torkernel/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace torkernel {

/// How the exponent nu_l^sigma is computed from the determinant sum.
///   strict:     nu = -sum_i det(v_m1, .., v_l (at slot i), .., v_mn)
///   normalized: the same sum divided by det(v_m1, .., v_mn)
/// The two agree on positively oriented unimodular cones.
enum class NuMode { strict, normalized };

std::string to_string(NuMode mode);
NuMode parse_nu_mode(const std::string& text);

/// Fan has as many generators as dimensions: no relations, no group, no cycle.
class DegenerateFanError : public Error {
 public:
  using Error::Error;
};

/// No maximal cone contains the sum of a primitive collection.
class KahlerConeError : public Error {
 public:
  using Error::Error;
};

/// z_i -> (prod_k lambda_k^{exponents[i][k]}) z_i.
struct GroupAction {
  std::vector<IntVector> exponents;
  bool operator==(const GroupAction&) const = default;
};

/// Union of coordinate subspaces {z_i = 0 for i in S}, one per primitive collection.
struct ExceptionalSet {
  std::vector<IndexSet> subspaces;
  bool operator==(const ExceptionalSet&) const = default;
};

/// sum_m coeffs[m] * rho_m.
struct LinearFormRho {
  RatVector coeffs;
  bool operator==(const LinearFormRho&) const = default;
};

/// One inequality of the Kaehler cone, with the data it was derived from:
/// sum_{j in P} v_j = sum_k cone_coeffs[k] v_{cone[k]} and
/// chi_P - sum_k cone_coeffs[k] e_{cone[k]} = sum_m form.coeffs[m] * M_m.
struct KahlerInequality {
  IndexSet collection;
  int cone = -1;
  RatVector cone_coeffs;
  LinearFormRho form;
  bool operator==(const KahlerInequality&) const = default;
};

/// sign * coefficient * z^monomial dz_{wedge[0]} ^ ... ^ dz_{wedge[n-1]}.
struct HTerm {
  IndexSet wedge;
  int sign = 1;
  BigInt coefficient;
  std::vector<int> monomial;  // 0/1 exponents, indicator of the complement of `wedge`
  bool operator==(const HTerm&) const = default;
};

struct HForm {
  std::vector<HTerm> terms;
  bool operator==(const HForm&) const = default;
};

/// prod_{l not in cone} |z_l|^{exponents[l]}, with exponent 2(nu_l + 1).
struct GTerm {
  int cone = -1;
  std::map<int, Rational> exponents;
  bool operator==(const GTerm&) const = default;
};

struct GDenominator {
  std::vector<GTerm> terms;
  std::vector<std::string> warnings;
  bool operator==(const GDenominator&) const = default;
};

/// sum_{j in collection} |z_j|^2 < bound(rho).
struct DomainInequality {
  IndexSet collection;
  LinearFormRho bound;
  bool operator==(const DomainInequality&) const = default;
};

/// Everything the construction produces for one fan.
struct KernelReport {
  Fan fan;
  NuMode mode = NuMode::normalized;
  RelationBasis relations;
  std::vector<IntVector> w_forms;  // W_m = sum_j w_forms[m][j] |z_j|^2
  GroupAction group;
  std::vector<IndexSet> primitive_collections;
  ExceptionalSet exceptional;
  std::vector<KahlerInequality> kahler;
  std::vector<DomainInequality> domain;
  HForm h;
  GDenominator g;
  std::vector<std::string> warnings;

  [[nodiscard]] int n() const { return fan.n; }
  [[nodiscard]] int d() const { return fan.d(); }
  bool operator==(const KernelReport&) const = default;
};

GroupAction group_action(const RelationBasis& rb);

Rational nu_sigma(const Fan& fan, const Cone& sigma, int l, NuMode mode = NuMode::normalized);

HForm numerator_h(const Fan& fan, const RelationBasis& rb);

GDenominator denominator_g(const Fan& fan, NuMode mode = NuMode::normalized);

std::vector<KahlerInequality> kahler_cone(const Fan& fan, const RelationBasis& rb, const IndexSetFamily& pc);

ExceptionalSet exceptional_set(const IndexSetFamily& pc);

std::vector<IntVector> w_forms(const RelationBasis& rb);

/// Runs the full construction. Throws ValidationError, DegenerateFanError or KahlerConeError.
KernelReport build_kernel(const Fan& fan, NuMode mode = NuMode::normalized);

}  // namespace torkernel
