#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Nothing here calls into the code paths it is used to check.

#include "torkernel/fan.hpp"
#include "torkernel/rational.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace torkernel::testing {

struct GoldenFan {
  std::string name;
  Fan fan;
};

Fan p1();
Fan p2();
Fan p1xp1();
Fan hirzebruch1();
std::vector<GoldenFan> golden_fans();

/// Builds a Fan from one-based cone lists.
Fan make_fan(int n, std::vector<LatticeVector> gens, const std::vector<std::vector<int>>& one_based_cones);

/// Generators: columns of a random unimodular n x n matrix plus d - n random
/// distinct nonzero vectors, shuffled. Rank n by construction. No cones.
std::vector<LatticeVector> random_spanning_generators(std::mt19937_64& rng, int n, int d);

/// Complete smooth projective fan: P^n or P^1 x P^1 followed by `blowups`
/// random star subdivisions, with generator labels shuffled.
Fan random_complete_fan(std::mt19937_64& rng, int n, int blowups);

/// Random list of `count` distinct n-element cones over d indices (not a fan).
std::vector<Cone> random_cone_list(std::mt19937_64& rng, int n, int d, int count);

/// Cofactor expansion along the first row.
std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& m);

/// Minimal non-faces by checking every subset of the cone support directly.
std::set<std::vector<int>> brute_force_primitive_collections(const std::vector<Cone>& cones);

/// Relabels generators: new index of old generator i is perm[i].
Fan relabel(const Fan& fan, const std::vector<int>& perm);

}  // namespace torkernel::testing
