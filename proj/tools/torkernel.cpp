// torkernel: build the integral-representation kernel of a toric variety
// from its fan, and check the representation numerically.
//
//   torkernel report --input p2.fan --format latex
//   torkernel verify --input p1.fan --rho 1 --samples 1000000 --seed 7 --zeta 0.3,0 --f 1,0

#include "torkernel/numeric.hpp"
#include "torkernel/render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

namespace {

using namespace torkernel;

enum ExitCode { kOk = 0, kMalformed = 1, kInvalid = 2, kDegenerate = 3, kNumericFailure = 4 };

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
  return x;
}

// "a+bi", "a-bi", "a", "bi", "-i"
Complex parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  static const std::regex re(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)?$)");
  static const std::regex imag_only(R"(^([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i$)");
  std::smatch m;
  if (std::regex_match(s, m, imag_only)) {
    const std::string b = m[1];
    const double im = (b.empty() || b == "+") ? 1.0 : b == "-" ? -1.0 : parse_double(b);
    return {0.0, im};
  }
  if (s.empty() || !std::regex_match(s, m, re)) throw UsageError("not a complex number: '" + s + "'");
  const double re_part = m[1].matched ? parse_double(m[1]) : 0.0;
  double im_part = 0.0;
  if (m[2].matched) {
    const std::string b = m[2];
    im_part = b == "+" ? 1.0 : b == "-" ? -1.0 : parse_double(b);
  }
  return {re_part, im_part};
}

int max_generators() {
  if (const char* env = std::getenv("TORKERNEL_MAX_D")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("TORKERNEL_MAX_D is not an integer: ") + env);
    }
  }
  return 24;
}

KernelReport load_report(const std::string& path, const std::string& mode) {
  const Fan fan = load_fan(path);
  const int limit = max_generators();
  if (fan.d() > limit) {
    ValidationReport r;
    r.errors.push_back("fan has " + std::to_string(fan.d()) + " generators, more than TORKERNEL_MAX_D = " +
                       std::to_string(limit));
    throw ValidationError(r);
  }
  return build_kernel(fan, parse_nu_mode(mode));
}

std::string fmt(Complex c) {
  std::ostringstream s;
  s << std::setprecision(10) << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral-representation kernels of toric varieties"};
  app.require_subcommand(1);

  std::string input, format = "text", mode = "normalized";
  bool no_theorem = false;
  auto* report_cmd = app.add_subcommand("report", "Build the kernel and print the report");
  report_cmd->add_option("--input", input, "Fan description (JSON)")->required();
  report_cmd->add_option("--format", format, "text | latex | json");
  report_cmd->add_option("--mode", mode, "strict | normalized");
  report_cmd->add_flag("--no-theorem", no_theorem, "Omit the closing representation theorem");

  std::string rho_text, zeta_text, f_text;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
  double tolerance = 0.05;
  auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo check of the integral representation");
  verify_cmd->add_option("--input", input, "Fan description (JSON)")->required();
  verify_cmd->add_option("--mode", mode, "strict | normalized");
  verify_cmd->add_option("--rho", rho_text, "Comma-separated positive reals, one per relation")->required();
  verify_cmd->add_option("--samples", samples, "Number of Monte-Carlo samples");
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_option("--zeta", zeta_text, "Comma-separated complex point a+bi (default 0)");
  verify_cmd->add_option("--f", f_text, "Comma-separated monomial exponents of f (default f = 1)");
  verify_cmd->add_option("--tolerance", tolerance, "Relative tolerance");
  verify_cmd->add_option("--workers", workers, "Sampling threads (results depend on this count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    const auto report = load_report(input, mode);

    if (report_cmd->parsed()) {
      RenderOptions opts;
      opts.format = parse_report_format(format);
      opts.include_theorem = !no_theorem;
      std::cout << render(report, opts);
      return kOk;
    }

    std::vector<double> rho;
    for (const auto& s : split(rho_text)) rho.push_back(parse_double(s));
    if (static_cast<int>(rho.size()) != report.relations.rank()) {
      throw UsageError("--rho needs " + std::to_string(report.relations.rank()) + " entries");
    }
    std::vector<Complex> zeta(report.d());
    if (!zeta_text.empty()) {
      const auto parts = split(zeta_text);
      if (static_cast<int>(parts.size()) != report.d()) {
        throw UsageError("--zeta needs " + std::to_string(report.d()) + " entries");
      }
      for (int j = 0; j < report.d(); ++j) zeta[j] = parse_complex(parts[j]);
    }
    std::vector<int> alpha(report.d(), 0);
    if (!f_text.empty()) {
      const auto parts = split(f_text);
      if (static_cast<int>(parts.size()) != report.d()) throw UsageError("--f needs " + std::to_string(report.d()) + " exponents");
      for (int j = 0; j < report.d(); ++j) {
        const double x = parse_double(parts[j]);
        if (x < 0 || x != static_cast<int>(x)) throw UsageError("--f exponents must be nonnegative integers");
        alpha[j] = static_cast<int>(x);
      }
    }

    SamplerOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.workers = workers;
    const auto res = verify_representation(report, rho, alpha, zeta, opts);
    const bool ok = res.passed(tolerance);

    std::cout << std::setprecision(10);
    std::cout << "samples: " << res.c.count << " (accepted " << res.c.accepted << ", outside polytope "
              << res.c.rejected_outside << ", boundary " << res.c.rejected_boundary << ", vanishing g "
              << res.c.rejected_g << ")\n";
    std::cout << "seed: " << seed << ", workers: " << workers << "\n";
    std::cout << "C = " << fmt(res.c.estimate) << " +/- " << res.c.std_error << "\n";
    std::cout << "integral f(z) omega(z - zeta) = " << fmt(res.integral.estimate) << " +/- " << res.integral.std_error << "\n";
    std::cout << "(1/C) * integral = " << fmt(res.ratio) << " +/- " << res.ratio_std_error << "\n";
    std::cout << "f(zeta) = " << fmt(res.f_zeta) << "\n";
    if (res.f_zeta == Complex{})
      std::cout << "within 3 std errors of 0: " << (res.within_3_sigma ? "yes" : "no") << "\n";
    else
      std::cout << "relative error = " << res.relative_error << " (tolerance " << tolerance << ")\n";
    for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kNumericFailure;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid fan\n";
    for (const auto& msg : e.report().errors) std::cerr << "  " << msg << "\n";
    return kInvalid;
  } catch (const KahlerConeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const DegenerateFanError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
}
