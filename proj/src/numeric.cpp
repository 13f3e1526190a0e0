#include "torkernel/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace torkernel {

namespace {

constexpr double kBoundaryEpsilon = 1e-12;
constexpr double kGVanishing = 1e-14;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Any r >= 0, r != 0 with M r = 0 makes {r >= 0, M r = rho} unbounded. Such an r
// exists iff {M r = 0, sum r = 1, r >= 0} has a vertex.
bool recession_cone_nontrivial(const RelationBasis& rb) {
  const int d = rb.d;
  const int rows = rb.rank() + 1;
  RatMatrix a = to_rational(rb.rows);
  a.push_back(RatVector(d, Rational(1)));
  IndexSet all(d);
  for (int j = 0; j < d; ++j) all[j] = j;
  if (rows > d) return false;
  for (const auto& support : set_of_all_subsets(all, rows)) {
    RatMatrix sq(rows, RatVector(rows));
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < rows; ++k) sq[i][k] = a[i][support[k]];
    if (det_exact(sq) == 0) continue;
    const auto inv = inverse(sq);
    bool nonneg = true;
    // Right-hand side is e_last, so the solution is the last column of the inverse.
    for (int i = 0; i < rows && nonneg; ++i) nonneg = inv[i][rows - 1] >= 0;
    if (nonneg) return true;
  }
  return false;
}

}  // namespace

std::vector<double> CycleSpec::full_r(std::span<const double> r_free) const {
  std::vector<double> r(d);
  for (std::size_t f = 0; f < free.size(); ++f) r[free[f]] = r_free[f];
  for (std::size_t b = 0; b < pivots.size(); ++b) {
    double x = base[b];
    for (std::size_t f = 0; f < free.size(); ++f) x += slope[b][f] * r_free[f];
    r[pivots[b]] = x;
  }
  return r;
}

CycleSpec cycle_parametrization(const RelationBasis& rb, std::span<const double> rho) {
  const int k = rb.rank();
  const int d = rb.d;
  if (k == 0) throw NumericError("degenerate: no relations, the cycle is undefined");
  if (static_cast<int>(rho.size()) != k) {
    throw NumericError("rho has " + std::to_string(rho.size()) + " entries, expected " + std::to_string(k));
  }
  if (recession_cone_nontrivial(rb)) throw NumericError("unbounded cycle: the relation polytope is unbounded");

  CycleSpec spec;
  spec.d = d;
  spec.rho.assign(rho.begin(), rho.end());

  // Pivots chosen from the right, so the free coordinates are the first
  // columns whose complement is a basis; the cycle is oriented by (r_F, theta).
  const RatMatrix m = to_rational(rb.rows);
  RatMatrix reversed(k, RatVector(d));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) reversed[i][j] = m[i][d - 1 - j];
  for (int p : rref(reversed).pivots) spec.pivots.push_back(d - 1 - p);
  std::sort(spec.pivots.begin(), spec.pivots.end());
  for (int j = 0; j < d; ++j)
    if (std::find(spec.pivots.begin(), spec.pivots.end(), j) == spec.pivots.end()) spec.free.push_back(j);

  RatMatrix mb(k, RatVector(k));
  for (int i = 0; i < k; ++i)
    for (int b = 0; b < k; ++b) mb[i][b] = m[i][spec.pivots[b]];
  const auto mb_inv = inverse(mb);
  spec.base.assign(k, 0.0);
  spec.slope.assign(k, std::vector<double>(spec.free.size(), 0.0));
  for (int b = 0; b < k; ++b) {
    for (int i = 0; i < k; ++i) spec.base[b] += to_double(mb_inv[b][i]) * rho[i];
    for (std::size_t f = 0; f < spec.free.size(); ++f) {
      Rational s = 0;
      for (int i = 0; i < k; ++i) s -= mb_inv[b][i] * m[i][spec.free[f]];
      spec.slope[b][f] = to_double(s);
    }
  }

  // Vertices: k nonzero coordinates on a nonsingular column set.
  double rho_scale = 1.0;
  for (double x : rho) rho_scale = std::max(rho_scale, std::abs(x));
  IndexSet all(d);
  for (int j = 0; j < d; ++j) all[j] = j;
  for (const auto& support : set_of_all_subsets(all, k)) {
    RatMatrix sq(k, RatVector(k));
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < k; ++c) sq[i][c] = m[i][support[c]];
    if (det_exact(sq) == 0) continue;
    const auto inv = inverse(sq);
    std::vector<double> r(d, 0.0);
    bool feasible = true;
    for (int c = 0; c < k && feasible; ++c) {
      double x = 0;
      for (int i = 0; i < k; ++i) x += to_double(inv[c][i]) * rho[i];
      if (x < -1e-12 * rho_scale) feasible = false;
      r[support[c]] = std::max(x, 0.0);
    }
    if (feasible) spec.vertices.push_back(std::move(r));
  }
  if (spec.vertices.empty()) {
    std::string s = "empty cycle: no r >= 0 satisfies M r = rho for rho = (";
    for (std::size_t i = 0; i < rho.size(); ++i) s += (i ? ", " : "") + format_double(rho[i]);
    throw NumericError(s + ")");
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0)) throw NumericError("rho[" + std::to_string(i + 1) + "] must be positive");
  }

  const std::size_t nf = spec.free.size();
  spec.box_lo.assign(nf, std::numeric_limits<double>::infinity());
  spec.box_hi.assign(nf, -std::numeric_limits<double>::infinity());
  for (const auto& v : spec.vertices) {
    for (std::size_t f = 0; f < nf; ++f) {
      spec.box_lo[f] = std::min(spec.box_lo[f], v[spec.free[f]]);
      spec.box_hi[f] = std::max(spec.box_hi[f], v[spec.free[f]]);
    }
  }
  spec.box_volume = 1.0;
  for (std::size_t f = 0; f < nf; ++f) spec.box_volume *= spec.box_hi[f] - spec.box_lo[f];
  if (!(spec.box_volume > 0)) throw NumericError("degenerate cycle: the relation polytope has zero volume");
  return spec;
}

KernelIntegrand::KernelIntegrand(const KernelReport& report, const CycleSpec& spec)
    : spec_(spec), n_(report.n()), d_(report.d()) {
  if (spec.d != d_) throw NumericError("cycle and report disagree on the number of coordinates");
  for (const auto& t : report.h.terms) {
    if (t.coefficient == 0) continue;
    terms_.push_back(Term{t.sign * t.coefficient.convert_to<double>(), t.wedge, t.monomial});
  }
  for (const auto& t : report.g.terms) {
    std::vector<std::pair<int, double>> factors;
    for (const auto& [l, e] : t.exponents)
      if (e != 0) factors.emplace_back(l, to_double(e));
    g_terms_.push_back(std::move(factors));
  }

  std::vector<double> centroid(d_, 0.0);
  for (const auto& v : spec.vertices)
    for (int j = 0; j < d_; ++j) centroid[j] += v[j] / static_cast<double>(spec.vertices.size());
  std::vector<Complex> w(d_);
  for (int j = 0; j < d_; ++j) w[j] = std::sqrt(centroid[j]);
  g_scale_ = g_value(w);
  if (!(g_scale_ > 0)) g_scale_ = 1.0;
}

double KernelIntegrand::g_value(std::span<const Complex> w) const {
  double g = 0.0;
  for (const auto& factors : g_terms_) {
    double term = 1.0;
    for (const auto& [l, e] : factors) term *= std::pow(std::abs(w[l]), e);
    g += term;
  }
  return g;
}

bool KernelIntegrand::coordinates(const CyclePoint& p, std::vector<double>& r, std::vector<Complex>& z) const {
  r = spec_.full_r(p.r_free);
  z.resize(d_);
  for (int j = 0; j < d_; ++j) {
    if (r[j] < kBoundaryEpsilon) return false;
    z[j] = std::polar(std::sqrt(r[j]), p.theta[j]);
  }
  return true;
}

void KernelIntegrand::determinants(const std::vector<double>& r, const std::vector<Complex>& z,
                                   const CyclePoint& p, std::vector<Complex>& dets) const {
  const int dim = n_ + d_;
  thread_local Eigen::MatrixXcd grad_z;
  thread_local Eigen::MatrixXcd jac;
  thread_local Eigen::PartialPivLU<Eigen::MatrixXcd> lu;

  // Row j: gradient of z_j in the parameters (r_F, theta).
  grad_z.setZero(d_, dim);
  for (int j = 0; j < d_; ++j) {
    const Complex radial = std::polar(1.0 / (2.0 * std::sqrt(r[j])), p.theta[j]);
    grad_z(j, n_ + j) = Complex(0.0, 1.0) * z[j];
    for (std::size_t f = 0; f < spec_.free.size(); ++f) {
      if (spec_.free[f] == j) grad_z(j, f) = radial;
    }
  }
  for (std::size_t b = 0; b < spec_.pivots.size(); ++b) {
    const int j = spec_.pivots[b];
    const Complex radial = std::polar(1.0 / (2.0 * std::sqrt(r[j])), p.theta[j]);
    for (std::size_t f = 0; f < spec_.free.size(); ++f) grad_z(j, f) = spec_.slope[b][f] * radial;
  }

  jac.resize(dim, dim);
  jac.bottomRows(d_) = grad_z;
  dets.resize(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    for (int k = 0; k < n_; ++k) jac.row(k) = grad_z.row(terms_[t].wedge[k]).conjugate();
    lu.compute(jac);
    dets[t] = lu.determinant();
  }
}

IntegrandValue KernelIntegrand::operator()(const CyclePoint& p, std::span<const Complex> zeta) const {
  std::vector<double> r;
  std::vector<Complex> z;
  for (std::size_t b = 0; b < spec_.pivots.size(); ++b) {
    double x = spec_.base[b];
    for (std::size_t f = 0; f < spec_.free.size(); ++f) x += spec_.slope[b][f] * p.r_free[f];
    if (x < 0) return {SampleStatus::outside, {}};
  }
  for (double x : p.r_free)
    if (x < 0) return {SampleStatus::outside, {}};
  if (!coordinates(p, r, z)) return {SampleStatus::boundary, {}};

  std::vector<Complex> w(d_);
  for (int j = 0; j < d_; ++j) w[j] = z[j] - (zeta.empty() ? Complex{} : zeta[j]);
  const double g = g_value(w);
  if (std::abs(g) < kGVanishing * g_scale_) return {SampleStatus::g_vanishes, {}};

  std::vector<Complex> dets;
  determinants(r, z, p, dets);
  Complex sum{};
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    Complex mono = terms_[t].coefficient;
    for (int j = 0; j < d_; ++j)
      if (terms_[t].monomial[j]) mono *= std::conj(w[j]);
    sum += mono * dets[t];
  }
  return {SampleStatus::ok, sum / g};
}

KernelIntegrand::Pair KernelIntegrand::evaluate_pair(const CyclePoint& p, std::span<const Complex> zeta,
                                                     std::span<const int> alpha) const {
  thread_local std::vector<double> r;
  thread_local std::vector<Complex> z;
  thread_local std::vector<Complex> w;
  thread_local std::vector<Complex> dets;

  for (std::size_t b = 0; b < spec_.pivots.size(); ++b) {
    double x = spec_.base[b];
    for (std::size_t f = 0; f < spec_.free.size(); ++f) x += spec_.slope[b][f] * p.r_free[f];
    if (x < 0) return {SampleStatus::outside, {}, {}};
  }
  if (!coordinates(p, r, z)) return {SampleStatus::boundary, {}, {}};

  w.resize(d_);
  for (int j = 0; j < d_; ++j) w[j] = z[j] - zeta[j];
  const double g0 = g_value(z);
  const double gw = g_value(w);
  if (std::abs(gw) < kGVanishing * g_scale_ || std::abs(g0) < kGVanishing * g_scale_) {
    return {SampleStatus::g_vanishes, {}, {}};
  }

  determinants(r, z, p, dets);
  Complex s0{}, sw{};
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    Complex m0 = terms_[t].coefficient * dets[t];
    Complex mw = m0;
    for (int j = 0; j < d_; ++j) {
      if (!terms_[t].monomial[j]) continue;
      m0 *= std::conj(z[j]);
      mw *= std::conj(w[j]);
    }
    s0 += m0;
    sw += mw;
  }
  Complex f = 1.0;
  for (int j = 0; j < d_; ++j)
    for (int e = 0; e < alpha[j]; ++e) f *= z[j];
  return {SampleStatus::ok, s0 / g0, f * sw / gw};
}

IntegrandValue integrand_omega(const KernelReport& report, const CycleSpec& spec, const CyclePoint& p,
                               std::span<const Complex> zeta) {
  if (static_cast<int>(p.r_free.size()) != report.n() || static_cast<int>(p.theta.size()) != report.d()) {
    throw NumericError("cycle point has the wrong number of parameters");
  }
  if (!zeta.empty() && static_cast<int>(zeta.size()) != report.d()) throw NumericError("zeta has the wrong length");
  return KernelIntegrand(report, spec)(p, zeta);
}

namespace {

struct Accumulator {
  Complex sum_a{}, sum_b{}, sum_ab{};  // sum_ab = sum a * conj(b)
  double sum_aa = 0.0, sum_bb = 0.0;
  std::int64_t count = 0, accepted = 0, outside = 0, boundary = 0, g_rejected = 0;

  void merge(const Accumulator& o) {
    sum_a += o.sum_a;
    sum_b += o.sum_b;
    sum_ab += o.sum_ab;
    sum_aa += o.sum_aa;
    sum_bb += o.sum_bb;
    count += o.count;
    accepted += o.accepted;
    outside += o.outside;
    boundary += o.boundary;
    g_rejected += o.g_rejected;
  }
};

std::mt19937_64 worker_engine(std::uint64_t seed, int worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), 0x746b7276u};
  return std::mt19937_64(seq);
}

// a: f(z) omega(z - zeta), b: omega(z). Rejected samples count as zeros.
Accumulator run_sampler(const KernelIntegrand& integrand, const CycleSpec& spec, std::span<const Complex> zeta,
                        std::span<const int> alpha, const SamplerOptions& opts) {
  if (opts.samples <= 0) throw NumericError("sample count must be positive");
  const int workers = std::max(1, opts.workers);
  const int n = static_cast<int>(spec.free.size());
  const int d = spec.d;
  if (!opts.theta_offset.empty() && static_cast<int>(opts.theta_offset.size()) != d) {
    throw NumericError("theta offset has the wrong length");
  }

  std::vector<Accumulator> partial(workers);
  const auto work = [&](int w) {
    const std::int64_t share = opts.samples / workers + (w < opts.samples % workers ? 1 : 0);
    auto engine = worker_engine(opts.seed, w);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CyclePoint p{std::vector<double>(n), std::vector<double>(d)};
    Accumulator acc;
    for (std::int64_t s = 0; s < share; ++s) {
      for (int f = 0; f < n; ++f) p.r_free[f] = spec.box_lo[f] + (spec.box_hi[f] - spec.box_lo[f]) * unit(engine);
      for (int j = 0; j < d; ++j) {
        p.theta[j] = kTwoPi * unit(engine);
        if (!opts.theta_offset.empty()) p.theta[j] += opts.theta_offset[j];
      }
      ++acc.count;
      const auto v = integrand.evaluate_pair(p, zeta, alpha);
      switch (v.status) {
        case SampleStatus::outside: ++acc.outside; continue;
        case SampleStatus::boundary: ++acc.boundary; continue;
        case SampleStatus::g_vanishes: ++acc.g_rejected; continue;
        case SampleStatus::ok: break;
      }
      ++acc.accepted;
      acc.sum_a += v.shifted;
      acc.sum_b += v.unshifted;
      acc.sum_ab += v.shifted * std::conj(v.unshifted);
      acc.sum_aa += std::norm(v.shifted);
      acc.sum_bb += std::norm(v.unshifted);
    }
    partial[w] = acc;
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  Accumulator total;
  for (const auto& a : partial) total.merge(a);
  if (total.accepted == 0) throw NumericError("all samples were rejected");
  return total;
}

SampleStats make_stats(const Accumulator& acc, Complex sum, double sum_sq, double scale, std::uint64_t seed) {
  const double count = static_cast<double>(acc.count);
  const Complex mean = sum / count;
  const double var = acc.count > 1 ? std::max(0.0, (sum_sq - count * std::norm(mean)) / (count - 1)) : 0.0;
  SampleStats s;
  s.estimate = scale * mean;
  s.std_error = scale * std::sqrt(var / count);
  s.count = acc.count;
  s.seed = seed;
  s.accepted = acc.accepted;
  s.rejected_outside = acc.outside;
  s.rejected_boundary = acc.boundary;
  s.rejected_g = acc.g_rejected;
  return s;
}

double sampling_scale(const CycleSpec& spec) { return spec.box_volume * std::pow(kTwoPi, spec.d); }

}  // namespace

SampleStats estimate_C(const KernelReport& report, std::span<const double> rho, const SamplerOptions& opts) {
  const auto spec = cycle_parametrization(report.relations, rho);
  const KernelIntegrand integrand(report, spec);
  const std::vector<Complex> zeta(report.d());
  const std::vector<int> alpha(report.d(), 0);
  const auto acc = run_sampler(integrand, spec, zeta, alpha, opts);
  return make_stats(acc, acc.sum_b, acc.sum_bb, sampling_scale(spec), opts.seed);
}

std::vector<std::string> domain_violations(const KernelReport& report, std::span<const double> rho,
                                           std::span<const Complex> zeta) {
  std::vector<std::string> out;
  for (std::size_t m = 0; m < report.w_forms.size(); ++m) {
    double w = 0.0;
    for (int j = 0; j < report.d(); ++j) w += report.w_forms[m][j].convert_to<double>() * std::norm(zeta[j]);
    if (!(w < rho[m])) {
      out.push_back("W" + std::to_string(m + 1) + "(zeta) = " + format_double(w) + " is not < rho[" +
                    std::to_string(m + 1) + "] = " + format_double(rho[m]));
    }
  }
  for (std::size_t k = 0; k < report.domain.size(); ++k) {
    const auto& dom = report.domain[k];
    double lhs = 0.0, bound = 0.0;
    for (int j : dom.collection) lhs += std::norm(zeta[j]);
    for (std::size_t m = 0; m < dom.bound.coeffs.size(); ++m) bound += to_double(dom.bound.coeffs[m]) * rho[m];
    if (!(lhs < bound)) {
      out.push_back("D" + std::to_string(k + 1) + ": sum of |zeta_j|^2 over " + format_index_set(dom.collection) +
                    " = " + format_double(lhs) + " is not < " + format_double(bound));
    }
  }
  return out;
}

bool RepresentationResult::passed(double tolerance) const {
  if (f_zeta == Complex{}) return within_3_sigma;
  return relative_error <= tolerance;
}

RepresentationResult verify_representation(const KernelReport& report, std::span<const double> rho,
                                           std::span<const int> alpha, std::span<const Complex> zeta,
                                           const SamplerOptions& opts) {
  if (static_cast<int>(alpha.size()) != report.d()) throw NumericError("exponent vector has the wrong length");
  if (static_cast<int>(zeta.size()) != report.d()) throw NumericError("zeta has the wrong length");
  for (int a : alpha)
    if (a < 0) throw NumericError("monomial exponents must be nonnegative");
  const auto spec = cycle_parametrization(report.relations, rho);
  const auto violations = domain_violations(report, rho, zeta);
  if (!violations.empty()) {
    std::string msg = "zeta is outside the domain:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw NumericError(msg);
  }

  const KernelIntegrand integrand(report, spec);
  const auto acc = run_sampler(integrand, spec, zeta, alpha, opts);
  const double scale = sampling_scale(spec);

  RepresentationResult res;
  res.c = make_stats(acc, acc.sum_b, acc.sum_bb, scale, opts.seed);
  res.integral = make_stats(acc, acc.sum_a, acc.sum_aa, scale, opts.seed);
  if (acc.sum_b == Complex{}) throw NumericError("estimate of C vanished");
  // a conj(b) / |b|^2 is exactly 1 when the two sums coincide.
  const double den = std::norm(acc.sum_b);
  res.ratio = Complex((acc.sum_a.real() * acc.sum_b.real() + acc.sum_a.imag() * acc.sum_b.imag()) / den,
                      (acc.sum_a.imag() * acc.sum_b.real() - acc.sum_a.real() * acc.sum_b.imag()) / den);

  // Ratio estimator error from the residuals a - R b.
  const double count = static_cast<double>(acc.count);
  const double resid = acc.sum_aa - 2.0 * std::real(std::conj(res.ratio) * acc.sum_ab) + std::norm(res.ratio) * acc.sum_bb;
  const double var = acc.count > 1 ? std::max(0.0, resid / (count - 1)) : 0.0;
  res.ratio_std_error = std::sqrt(var / count) / std::abs(acc.sum_b / count);

  res.f_zeta = 1.0;
  for (int j = 0; j < report.d(); ++j)
    for (int e = 0; e < alpha[j]; ++e) res.f_zeta *= zeta[j];
  const double err = std::abs(res.ratio - res.f_zeta);
  res.relative_error = err / std::max(std::abs(res.f_zeta), 1e-12);
  res.within_3_sigma = err <= 3.0 * res.ratio_std_error;

  if (static_cast<double>(acc.g_rejected) > 1e-3 * count) {
    res.warnings.push_back(std::to_string(acc.g_rejected) + " of " + std::to_string(acc.count) +
                           " samples rejected for a vanishing denominator; zeta may be too close to the cycle");
  }
  return res;
}

}  // namespace torkernel
