#pragma once

#include "torkernel/kernel.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace torkernel {

using Complex = std::complex<double>;

/// Bad cycle, bad evaluation point or an estimator with no usable samples.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Gamma(rho) = { z_j = sqrt(r_j) e^{i theta_j} : r >= 0, M r = rho }.
/// The polytope is coordinatized by the free columns r_F of M; the pivot
/// coordinates follow as r_B = base + slope * r_F.
struct CycleSpec {
  int d = 0;
  std::vector<double> rho;
  std::vector<int> pivots;                // B, one per relation
  std::vector<int> free;                  // F, n entries
  std::vector<double> base;               // r_B at r_F = 0
  std::vector<std::vector<double>> slope; // d r_B[b] / d r_F[f]
  std::vector<std::vector<double>> vertices;  // full r vectors
  std::vector<double> box_lo, box_hi;     // bounding box of r_F
  double box_volume = 0.0;

  /// Full r vector (length d) for the given free coordinates.
  [[nodiscard]] std::vector<double> full_r(std::span<const double> r_free) const;
};

/// Throws NumericError for a wrong-length, nonpositive, empty or unbounded cycle.
CycleSpec cycle_parametrization(const RelationBasis& rb, std::span<const double> rho);

struct CyclePoint {
  std::vector<double> r_free;  // n entries
  std::vector<double> theta;   // d entries
};

enum class SampleStatus { ok, outside, boundary, g_vanishes };

struct IntegrandValue {
  SampleStatus status = SampleStatus::ok;
  Complex value{};
};

/// Pullback of omega(z - zeta) to the (r_F, theta) parameters, evaluated
/// with analytic gradients of z_j = sqrt(r_j) e^{i theta_j}. Samples with
/// any r_j < 1e-12 or a vanishing denominator are reported, not evaluated.
class KernelIntegrand {
 public:
  KernelIntegrand(const KernelReport& report, const CycleSpec& spec);

  IntegrandValue operator()(const CyclePoint& p, std::span<const Complex> zeta) const;

  /// Evaluates omega(z) and f(z) omega(z - zeta) at one point, sharing the
  /// Jacobian determinants. `status` reflects the shifted kernel.
  struct Pair {
    SampleStatus status = SampleStatus::ok;
    Complex unshifted{};
    Complex shifted{};
  };
  Pair evaluate_pair(const CyclePoint& p, std::span<const Complex> zeta, std::span<const int> alpha) const;

  /// Size of g on the cycle; the vanishing threshold is 1e-14 of this.
  [[nodiscard]] double g_scale() const { return g_scale_; }

 private:
  struct Term {
    double coefficient;
    std::vector<int> wedge;
    std::vector<int> monomial;
  };

  bool coordinates(const CyclePoint& p, std::vector<double>& r, std::vector<Complex>& z) const;
  void determinants(const std::vector<double>& r, const std::vector<Complex>& z, const CyclePoint& p,
                    std::vector<Complex>& dets) const;
  double g_value(std::span<const Complex> w) const;

  const CycleSpec& spec_;
  int n_ = 0;
  int d_ = 0;
  std::vector<Term> terms_;
  std::vector<std::vector<std::pair<int, double>>> g_terms_;  // (l, exponent of |w_l|)
  double g_scale_ = 1.0;
};

IntegrandValue integrand_omega(const KernelReport& report, const CycleSpec& spec, const CyclePoint& p,
                               std::span<const Complex> zeta);

struct SamplerOptions {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<double> theta_offset;  // optional constant shift added to every theta sample
};

struct SampleStats {
  Complex estimate{};
  double std_error = 0.0;
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected_outside = 0;
  std::int64_t rejected_boundary = 0;
  std::int64_t rejected_g = 0;

  bool operator==(const SampleStats&) const = default;
};

/// Monte-Carlo estimate of C = integral of omega over Gamma(rho): r_F uniform
/// in the bounding box (rejection), theta uniform on the torus. Deterministic
/// for a fixed (samples, seed, workers).
SampleStats estimate_C(const KernelReport& report, std::span<const double> rho, const SamplerOptions& opts);

struct RepresentationResult {
  SampleStats c;          // integral of omega(z)
  SampleStats integral;   // integral of f(z) omega(z - zeta)
  Complex ratio{};        // integral / C
  double ratio_std_error = 0.0;
  Complex f_zeta{};
  double relative_error = 0.0;
  bool within_3_sigma = false;
  std::vector<std::string> warnings;

  [[nodiscard]] bool passed(double tolerance) const;
};

/// Domain checks for zeta: W_m(zeta) < rho_m and sum_{j in P_k} |zeta_j|^2 < K_k(rho).
/// Returns the violated inequalities (empty when zeta is admissible).
std::vector<std::string> domain_violations(const KernelReport& report, std::span<const double> rho,
                                           std::span<const Complex> zeta);

/// Estimates (1/C) * integral of f(z) omega(z - zeta) for f = z^alpha from one
/// sample stream and compares it with f(zeta). Throws NumericError when zeta
/// is outside the domain.
RepresentationResult verify_representation(const KernelReport& report, std::span<const double> rho,
                                           std::span<const int> alpha, std::span<const Complex> zeta,
                                           const SamplerOptions& opts);

}  // namespace torkernel
