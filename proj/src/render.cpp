#include "torkernel/render.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace torkernel {

ReportFormat parse_report_format(const std::string& text) {
  if (text == "text") return ReportFormat::text;
  if (text == "latex") return ReportFormat::latex;
  if (text == "json" || text == "structured") return ReportFormat::structured;
  throw Error("unknown format '" + text + "' (expected text, latex or json)");
}

namespace {

// Symbols and operators for one output flavour.
class Notation {
 public:
  Notation(const RenderOptions& opts, bool latex) : opts_(opts), latex_(latex) {}

  bool latex() const { return latex_; }

  std::string sub(const std::string& name, int one_based) const {
    return latex_ ? symbol(name) + "_{" + std::to_string(one_based) + "}" : name + std::to_string(one_based);
  }
  std::string indexed(const std::string& name, int one_based) const {
    return latex_ ? symbol(name) + "_{" + std::to_string(one_based) + "}"
                  : name + "[" + std::to_string(one_based) + "]";
  }
  std::string power(const std::string& base, const std::string& exponent) const {
    if (latex_) return base + "^{" + exponent + "}";
    return base + "^" + (exponent.find_first_of("/-") == std::string::npos ? exponent : "(" + exponent + ")");
  }

  std::string z(int i) const { return sub(opts_.z_name, i + 1); }
  std::string v(int i) const { return sub("v", i + 1); }
  std::string dz(int i) const { return sub("d" + opts_.z_name, i + 1); }
  std::string abs_z(int i) const { return "|" + z(i) + "|"; }
  std::string abs_z2(int i) const { return power(abs_z(i), "2"); }
  std::string rho(int m) const { return indexed(opts_.rho_name, m + 1); }
  std::string lambda(int m) const { return indexed(opts_.lambda_name, m + 1); }

  std::string wedge() const { return latex_ ? "\\wedge " : "^"; }
  std::string times() const { return latex_ ? " " : "*"; }
  std::string form_sep() const { return latex_ ? "\\," : "*"; }
  std::string less() const { return " < "; }

  std::string coefficient(const Rational& c) const {
    if (!latex_) return to_string(c);
    const BigInt num = boost::multiprecision::numerator(c);
    const BigInt den = boost::multiprecision::denominator(c);
    if (den == 1) return num.str();
    return "\\frac{" + num.str() + "}{" + den.str() + "}";
  }

  std::string exponent(const Rational& e) const { return to_string(e); }

  /// a - b + 2*c; zero coefficients dropped, unit coefficients implicit.
  std::string sum(const std::vector<std::pair<Rational, std::string>>& terms) const {
    std::string out;
    for (const auto& [c, atom] : terms) {
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (atom.empty()) {
        out += coefficient(mag);
      } else if (mag == 1) {
        out += atom;
      } else {
        out += coefficient(mag) + form_sep() + atom;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::string symbol(const std::string& name) const {
    static const char* greek[] = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta", "eta",   "theta",
                                  "kappa", "lambda", "mu",   "nu",    "xi",      "pi",   "rho",   "sigma",
                                  "tau",   "phi",   "chi",   "psi",   "omega"};
    for (const char* g : greek)
      if (name == g) return std::string("\\") + g;
    return name;
  }

  const RenderOptions& opts_;
  bool latex_;
};

std::string rho_form(const Notation& nt, const LinearFormRho& f) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (std::size_t m = 0; m < f.coeffs.size(); ++m) terms.emplace_back(f.coeffs[m], nt.rho(static_cast<int>(m)));
  return nt.sum(terms);
}

std::string w_form(const Notation& nt, const IntVector& row) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (std::size_t j = 0; j < row.size(); ++j) terms.emplace_back(Rational(row[j]), nt.abs_z2(static_cast<int>(j)));
  return nt.sum(terms);
}

std::string collection_sum(const Notation& nt, const IndexSet& collection) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (int j : collection) terms.emplace_back(Rational(1), nt.abs_z2(j));
  return nt.sum(terms);
}

std::string h_form(const Notation& nt, const HForm& h) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (const auto& t : h.terms) {
    std::string mono;
    for (std::size_t j = 0; j < t.monomial.size(); ++j) {
      if (!t.monomial[j]) continue;
      if (!mono.empty()) mono += nt.times();
      mono += nt.z(static_cast<int>(j));
    }
    std::string wedge;
    for (int i : t.wedge) {
      if (!wedge.empty()) wedge += nt.wedge();
      wedge += nt.dz(i);
    }
    terms.emplace_back(Rational(t.sign * t.coefficient), mono.empty() ? wedge : mono + nt.form_sep() + wedge);
  }
  return nt.sum(terms);
}

std::string dz_form(const Notation& nt, int d) {
  std::string out;
  for (int i = 0; i < d; ++i) {
    if (i) out += nt.wedge();
    out += nt.dz(i);
  }
  return out;
}

std::string g_form(const Notation& nt, const GDenominator& g, int d) {
  // Canonical order: full exponent vectors, descending lexicographic.
  std::vector<RatVector> rows;
  for (const auto& t : g.terms) {
    RatVector e(d);
    for (const auto& [l, x] : t.exponents) e[l] = x;
    rows.push_back(std::move(e));
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  std::vector<std::pair<Rational, std::string>> terms;
  for (const auto& e : rows) {
    std::string atom;
    for (int l = 0; l < d; ++l) {
      if (e[l] == 0) continue;
      if (!atom.empty()) atom += nt.times();
      atom += nt.power(nt.abs_z(l), nt.exponent(e[l]));
    }
    terms.emplace_back(Rational(1), atom);
  }
  // Constant terms only arise when every exponent vanishes.
  for (auto& [c, atom] : terms)
    if (atom.empty()) atom = "1";
  return nt.sum(terms);
}

std::string group_action_text(const Notation& nt, const GroupAction& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.exponents.size(); ++i) {
    if (i) out += ", ";
    std::string factor;
    for (std::size_t k = 0; k < g.exponents[i].size(); ++k) {
      const auto& e = g.exponents[i][k];
      if (e == 0) continue;
      if (!factor.empty()) factor += nt.times();
      factor += e == 1 ? nt.lambda(static_cast<int>(k)) : nt.power(nt.lambda(static_cast<int>(k)), e.str());
    }
    out += factor.empty() ? nt.z(static_cast<int>(i)) : factor + nt.times() + nt.z(static_cast<int>(i));
  }
  return out + ")";
}

std::string relation_text(const Notation& nt, const IntVector& row) {
  std::vector<std::pair<Rational, std::string>> terms;
  for (std::size_t j = 0; j < row.size(); ++j) terms.emplace_back(Rational(row[j]), nt.v(static_cast<int>(j)));
  return nt.sum(terms) + " = 0";
}

std::string vector_text(const LatticeVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string render_human(const KernelReport& r, const RenderOptions& opts) {
  const bool latex = opts.format == ReportFormat::latex;
  const Notation nt(opts, latex);
  const int d = r.d();
  const int k = r.relations.rank();

  std::ostringstream out;
  // Display math line.
  const auto line = [&](const std::string& math) {
    if (latex)
      out << "\\[ " << math << " \\]\n";
    else
      out << "  " << math << "\n";
  };
  const auto heading = [&](const std::string& text) { out << text << "\n"; };
  const auto inline_math = [&](const std::string& math) { return latex ? "\\(" + math + "\\)" : math; };
  const std::string cplx = latex ? "\\mathbb{C}" : "C";
  const std::string sigma = latex ? "\\Sigma" : "Sigma";
  const std::string gamma = latex ? "\\Gamma" : "Gamma";
  const std::string zeta = latex ? "\\zeta" : "zeta";
  const std::string omega = latex ? "\\omega" : "omega";
  const std::string minus = latex ? "\\setminus " : "\\ ";
  const std::string conj_h = latex ? "\\overline{h(" + opts.z_name + ")}" : "conj(h(" + opts.z_name + "))";
  const std::string g_args = latex ? "g(" + opts.z_name + ",\\overline{" + opts.z_name + "})"
                                   : "g(" + opts.z_name + ", conj(" + opts.z_name + "))";

  heading("Consider the toric variety whose fan is generated by the vectors");
  for (int i = 0; i < d; ++i) line(nt.v(i) + " = " + vector_text(r.fan.generators[i]));

  heading("The maximal cones are generated by the vectors:");
  for (const auto& cone : r.fan.max_cones) {
    std::string s = latex ? "\\{" : "{";
    for (std::size_t i = 0; i < cone.size(); ++i) s += (i ? ", " : "") + nt.v(cone[i]);
    line(s + (latex ? "\\}" : "}"));
  }

  heading("All independent linear relations among the generators are given by the system:");
  for (const auto& row : r.relations.rows) line(relation_text(nt, row));

  heading("The toric variety X is the quotient space:");
  line("X = (" + cplx + "^{" + std::to_string(d) + "} " + minus + "Z(" + sigma + ")) / G");
  heading("Here the exceptional set " + inline_math("Z(" + sigma + ")") + " is the union of the coordinate subspaces");
  for (const auto& s : r.exceptional.subspaces) {
    std::string eq;
    for (int i : s) eq += nt.z(i) + " = ";
    line(eq + "0");
  }
  heading("The group G is the " + std::to_string(k) + "-parameter group acting by");
  line(group_action_text(nt, r.group));

  heading("The Kahler cone of this toric variety is defined by the inequalities:");
  for (const auto& kc : r.kahler) line(rho_form(nt, kc.form) + " > 0");

  heading("The kernel of the integral representation is the differential form");
  line(omega + "(" + opts.z_name + ") = " + conj_h + (latex ? " \\wedge d" : " ^ d") + opts.z_name + " / " + g_args);
  heading("where the form " + inline_math("h(" + opts.z_name + ")") + " is");
  line("h = " + h_form(nt, r.h));
  heading(inline_math("d" + opts.z_name) + " is the form");
  line("d" + opts.z_name + " = " + dz_form(nt, d));
  heading("and the denominator " + inline_math(g_args) + " is the function");
  line("g = " + g_form(nt, r.g, d));

  if (opts.include_theorem) {
    heading("MAIN RESULT");
    heading("Let " + inline_math("f(" + opts.z_name + ")") + " be holomorphic in the domain W defined by the inequalities");
    for (int m = 0; m < k; ++m) line(w_form(nt, r.w_forms[m]) + nt.less() + nt.rho(m));
    heading("and continuous on the closure of W. Then in the intersection D and W, where D is defined by");
    for (const auto& dom : r.domain) line(collection_sum(nt, dom.collection) + nt.less() + rho_form(nt, dom.bound));
    heading("the integral representation holds:");
    if (latex) {
      line("f(\\zeta) = \\frac{1}{C} \\int_{\\Gamma(\\rho)} f(" + opts.z_name + ")\\, \\omega(" + opts.z_name +
           " - \\zeta)");
    } else {
      line("f(zeta) = (1/C) * integral over Gamma(rho) of f(" + opts.z_name + ") * omega(" + opts.z_name + " - " +
           zeta + ")");
    }
    heading("where the cycle " + inline_math(gamma + "(" + (latex ? "\\rho" : opts.rho_name) + ")") +
            " is defined by the equations");
    for (int m = 0; m < k; ++m) line(w_form(nt, r.w_forms[m]) + " = " + nt.rho(m));
    if (latex)
      heading("and the constant \\(C = \\int_{\\Gamma} \\omega(" + opts.z_name + ")\\) is nonzero.");
    else
      heading("and the constant C = integral over Gamma of omega(" + opts.z_name + ") is nonzero.");
  }

  heading("nu mode: " + to_string(r.mode));
  if (!r.warnings.empty()) {
    heading("Warnings:");
    for (const auto& w : r.warnings) out << "  " << w << "\n";
  }
  return out.str();
}

// ---- structured form ----

nlohmann::ordered_json int_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

BigInt int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return to_integer(parse_rational(j.get<std::string>()));
  throw ParseError("expected an integer");
}

nlohmann::ordered_json int_vector_json(const IntVector& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

IntVector int_vector_from_json(const nlohmann::json& j) {
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

nlohmann::ordered_json rat_vector_json(const RatVector& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

RatVector rat_vector_from_json(const nlohmann::json& j) {
  RatVector v;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("expected a rational string");
    v.push_back(parse_rational(x.get<std::string>()));
  }
  return v;
}

nlohmann::ordered_json index_set_json(const IndexSet& s) {
  auto a = nlohmann::ordered_json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

IndexSet index_set_from_json(const nlohmann::json& j) {
  IndexSet s;
  for (const auto& x : j) s.push_back(x.get<int>() - 1);
  return s;
}

nlohmann::ordered_json string_list_json(const std::vector<std::string>& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

nlohmann::ordered_json report_to_json(const KernelReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "torkernel-report";
  j["version"] = 1;
  j["fan"] = fan_to_json(r.fan);
  j["mode"] = to_string(r.mode);

  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.relations.rows) rows.push_back(int_vector_json(row));
  j["relations"] = rows;

  auto w = nlohmann::ordered_json::array();
  for (const auto& row : r.w_forms) w.push_back(int_vector_json(row));
  j["w_forms"] = w;

  auto g_exp = nlohmann::ordered_json::array();
  for (const auto& e : r.group.exponents) g_exp.push_back(int_vector_json(e));
  j["group_exponents"] = g_exp;

  auto pc = nlohmann::ordered_json::array();
  for (const auto& p : r.primitive_collections) pc.push_back(index_set_json(p));
  j["primitive_collections"] = pc;

  auto ex = nlohmann::ordered_json::array();
  for (const auto& s : r.exceptional.subspaces) ex.push_back(index_set_json(s));
  j["exceptional_set"] = ex;

  auto kahler = nlohmann::ordered_json::array();
  for (const auto& k : r.kahler) {
    nlohmann::ordered_json e;
    e["collection"] = index_set_json(k.collection);
    e["cone"] = k.cone + 1;
    e["cone_coeffs"] = rat_vector_json(k.cone_coeffs);
    e["form"] = rat_vector_json(k.form.coeffs);
    kahler.push_back(std::move(e));
  }
  j["kahler"] = kahler;

  auto domain = nlohmann::ordered_json::array();
  for (const auto& dom : r.domain) {
    nlohmann::ordered_json e;
    e["collection"] = index_set_json(dom.collection);
    e["bound"] = rat_vector_json(dom.bound.coeffs);
    domain.push_back(std::move(e));
  }
  j["domain"] = domain;

  auto h = nlohmann::ordered_json::array();
  for (const auto& t : r.h.terms) {
    nlohmann::ordered_json e;
    e["wedge"] = index_set_json(t.wedge);
    e["sign"] = t.sign;
    e["coefficient"] = int_json(t.coefficient);
    e["monomial"] = t.monomial;
    h.push_back(std::move(e));
  }
  j["h"] = h;

  auto g = nlohmann::ordered_json::array();
  for (const auto& t : r.g.terms) {
    nlohmann::ordered_json e;
    e["cone"] = t.cone + 1;
    auto exps = nlohmann::ordered_json::array();
    for (const auto& [l, x] : t.exponents) exps.push_back({{"index", l + 1}, {"exponent", to_string(x)}});
    e["exponents"] = exps;
    g.push_back(std::move(e));
  }
  j["g"] = g;
  j["g_warnings"] = string_list_json(r.g.warnings);

  auto cycle = nlohmann::ordered_json::array();
  for (int m = 0; m < r.relations.rank(); ++m) cycle.push_back({{"w_form", m + 1}, {"rho", m + 1}});
  j["cycle"] = cycle;
  j["warnings"] = string_list_json(r.warnings);
  return j;
}

KernelReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "torkernel-report") throw ParseError("not a torkernel report");
    KernelReport r;
    r.fan = fan_from_json(j.at("fan"));
    r.mode = parse_nu_mode(j.at("mode").get<std::string>());
    r.relations.d = r.fan.d();
    for (const auto& row : j.at("relations")) r.relations.rows.push_back(int_vector_from_json(row));
    for (const auto& row : j.at("w_forms")) r.w_forms.push_back(int_vector_from_json(row));
    for (const auto& e : j.at("group_exponents")) r.group.exponents.push_back(int_vector_from_json(e));
    for (const auto& p : j.at("primitive_collections")) r.primitive_collections.push_back(index_set_from_json(p));
    for (const auto& s : j.at("exceptional_set")) r.exceptional.subspaces.push_back(index_set_from_json(s));
    for (const auto& e : j.at("kahler")) {
      KahlerInequality k;
      k.collection = index_set_from_json(e.at("collection"));
      k.cone = e.at("cone").get<int>() - 1;
      k.cone_coeffs = rat_vector_from_json(e.at("cone_coeffs"));
      k.form.coeffs = rat_vector_from_json(e.at("form"));
      r.kahler.push_back(std::move(k));
    }
    for (const auto& e : j.at("domain")) {
      r.domain.push_back(DomainInequality{index_set_from_json(e.at("collection")),
                                          LinearFormRho{rat_vector_from_json(e.at("bound"))}});
    }
    for (const auto& e : j.at("h")) {
      HTerm t;
      t.wedge = index_set_from_json(e.at("wedge"));
      t.sign = e.at("sign").get<int>();
      t.coefficient = int_from_json(e.at("coefficient"));
      t.monomial = e.at("monomial").get<std::vector<int>>();
      r.h.terms.push_back(std::move(t));
    }
    for (const auto& e : j.at("g")) {
      GTerm t;
      t.cone = e.at("cone").get<int>() - 1;
      for (const auto& x : e.at("exponents"))
        t.exponents.emplace(x.at("index").get<int>() - 1, parse_rational(x.at("exponent").get<std::string>()));
      r.g.terms.push_back(std::move(t));
    }
    r.g.warnings = j.at("g_warnings").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.at("cycle").size() != r.relations.rows.size()) throw ParseError("cycle size differs from relation count");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

KernelReport parse_report(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed report text: ") + e.what());
  }
  return report_from_json(j);
}

std::string render(const KernelReport& report, const RenderOptions& opts) {
  if (opts.format == ReportFormat::structured) return report_to_json(report).dump(2) + "\n";
  return render_human(report, opts);
}

}  // namespace torkernel
