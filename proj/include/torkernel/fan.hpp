#pragma once

#include "torkernel/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace torkernel {

/// Integer vector in the ambient lattice Z^n.
using LatticeVector = std::vector<std::int64_t>;

/// Ordered list of generator indices. Zero-based inside the library; every
/// external format (JSON, rendered reports, Python) is one-based.
using Cone = std::vector<int>;

/// A simplicial fan given by its rays and its maximal cones.
struct Fan {
  int n = 0;
  std::vector<LatticeVector> generators;
  std::vector<Cone> max_cones;

  [[nodiscard]] int d() const { return static_cast<int>(generators.size()); }

  bool operator==(const Fan&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool is_complete_simplicial = false;

  [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Malformed fan description.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Fan violates one of the structural invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

Fan parse_fan(std::string_view text);
Fan fan_from_json(const nlohmann::json& j);
nlohmann::ordered_json fan_to_json(const Fan& fan);
Fan load_fan(const std::string& path);

/// Checks every Fan invariant and the facet-pairing completeness heuristic.
ValidationReport validate_fan(const Fan& fan);

/// Generators of `cone` as the columns of an n x n rational matrix.
RatMatrix cone_matrix(const Fan& fan, const Cone& cone);

/// "{1,2}" style one-based rendering of an index list.
std::string format_index_set(const std::vector<int>& zero_based);

}  // namespace torkernel
