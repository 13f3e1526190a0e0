#include "torkernel/fan.hpp"

#include "torkernel/linalg.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace torkernel {

namespace {

std::string join_reasons(const ValidationReport& report) {
  std::string out = "invalid fan";
  for (const auto& e : report.errors) out += "; " + e;
  return out;
}

std::int64_t read_int(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(join_reasons(report)), report_(std::move(report)) {}

std::string format_index_set(const std::vector<int>& zero_based) {
  std::string s = "{";
  for (std::size_t i = 0; i < zero_based.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(zero_based[i] + 1);
  }
  return s + "}";
}

Fan fan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("fan description must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "generators" && key != "max_cones") throw ParseError("unknown field \"" + key + "\"");
  }
  for (const char* key : {"n", "generators", "max_cones"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  }

  Fan fan;
  const auto n = read_int(j["n"], "n");
  if (n < 1) throw ParseError("n must be positive");
  fan.n = static_cast<int>(n);

  const auto& gens = j["generators"];
  if (!gens.is_array() || gens.empty()) throw ParseError("generators must be a nonempty array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    const std::string where = "generator " + std::to_string(i + 1);
    if (!g.is_array()) throw ParseError(where + ": expected an array");
    if (g.size() != static_cast<std::size_t>(fan.n)) throw ParseError(where + ": ragged generator length");
    LatticeVector v;
    for (const auto& x : g) v.push_back(read_int(x, where));
    fan.generators.push_back(std::move(v));
  }

  const auto& cones = j["max_cones"];
  if (!cones.is_array() || cones.empty()) throw ParseError("max_cones must be a nonempty array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const auto& c = cones[i];
    const std::string where = "cone " + std::to_string(i + 1);
    if (!c.is_array()) throw ParseError(where + ": expected an array");
    if (c.size() != static_cast<std::size_t>(fan.n)) throw ParseError(where + ": cone of wrong size");
    Cone cone;
    for (const auto& x : c) {
      const auto idx = read_int(x, where);
      if (idx < 1 || idx > fan.d()) throw ParseError(where + ": cone index " + std::to_string(idx) + " out of range");
      cone.push_back(static_cast<int>(idx - 1));
    }
    fan.max_cones.push_back(std::move(cone));
  }
  return fan;
}

Fan parse_fan(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed fan text: ") + e.what());
  }
  return fan_from_json(j);
}

Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

nlohmann::ordered_json fan_to_json(const Fan& fan) {
  nlohmann::ordered_json j;
  j["n"] = fan.n;
  j["generators"] = fan.generators;
  auto cones = nlohmann::ordered_json::array();
  for (const auto& c : fan.max_cones) {
    auto one_based = nlohmann::ordered_json::array();
    for (int i : c) one_based.push_back(i + 1);
    cones.push_back(std::move(one_based));
  }
  j["max_cones"] = std::move(cones);
  return j;
}

RatMatrix cone_matrix(const Fan& fan, const Cone& cone) {
  RatMatrix m(fan.n, RatVector(cone.size()));
  for (std::size_t k = 0; k < cone.size(); ++k)
    for (int i = 0; i < fan.n; ++i) m[i][k] = fan.generators.at(cone[k]).at(i);
  return m;
}

ValidationReport validate_fan(const Fan& fan) {
  ValidationReport report;
  auto& errors = report.errors;
  auto& warnings = report.warnings;

  if (fan.n < 1) errors.push_back("ambient dimension n must be positive");
  if (fan.d() < fan.n) errors.push_back("fewer generators than the ambient dimension");
  bool ragged = false;
  for (int i = 0; i < fan.d(); ++i) {
    if (static_cast<int>(fan.generators[i].size()) != fan.n) {
      errors.push_back("ragged generator length at generator " + std::to_string(i + 1));
      ragged = true;
    }
  }
  std::map<LatticeVector, int> seen;
  for (int i = 0; i < fan.d(); ++i) {
    auto [it, inserted] = seen.emplace(fan.generators[i], i);
    if (!inserted) {
      errors.push_back("duplicated generator: v" + std::to_string(i + 1) + " equals v" + std::to_string(it->second + 1));
    }
  }
  if (fan.max_cones.empty()) errors.push_back("no maximal cones");

  std::set<std::vector<int>> distinct_cones;
  std::vector<bool> used(fan.d(), false);
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    const std::string where = "cone " + std::to_string(c + 1);
    if (static_cast<int>(cone.size()) != fan.n) {
      errors.push_back(where + " has " + std::to_string(cone.size()) + " indices, expected " + std::to_string(fan.n));
      continue;
    }
    bool indices_ok = true;
    for (int idx : cone) {
      if (idx < 0 || idx >= fan.d()) {
        errors.push_back(where + ": index " + std::to_string(idx + 1) + " out of range");
        indices_ok = false;
      }
    }
    if (!indices_ok) continue;
    std::vector<int> sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      errors.push_back(where + ": repeated index in cone");
      continue;
    }
    for (int idx : cone) used[idx] = true;
    if (!distinct_cones.insert(sorted).second) warnings.push_back(where + " repeats an earlier cone");
    if (!ragged && det_exact(cone_matrix(fan, cone)) == 0) errors.push_back(where + " is degenerate (zero determinant)");
  }
  for (int i = 0; i < fan.d(); ++i) {
    if (!used[i]) warnings.push_back("generator " + std::to_string(i + 1) + " lies in no maximal cone");
  }

  if (!report.errors.empty()) return report;

  bool complete = true;
  if (fan.n == 1) {
    bool pos = false, neg = false;
    for (const auto& cone : fan.max_cones) {
      const auto x = fan.generators[cone[0]][0];
      pos = pos || x > 0;
      neg = neg || x < 0;
    }
    if (!pos || !neg) {
      warnings.push_back("one-dimensional fan lacks a " + std::string(pos ? "negative" : "positive") + " cone");
      complete = false;
    }
  } else {
    std::map<std::vector<int>, int> facet_count;
    for (const auto& cone : fan.max_cones) {
      std::vector<int> sorted = cone;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t skip = 0; skip < sorted.size(); ++skip) {
        std::vector<int> facet;
        for (std::size_t k = 0; k < sorted.size(); ++k)
          if (k != skip) facet.push_back(sorted[k]);
        ++facet_count[facet];
      }
    }
    for (const auto& [facet, count] : facet_count) {
      if (count == 2) continue;
      complete = false;
      warnings.push_back("facet " + format_index_set(facet) +
                         (count == 1 ? " occurs once" : " occurs " + std::to_string(count) + " times"));
    }
  }
  report.is_complete_simplicial = complete;
  return report;
}

}  // namespace torkernel
