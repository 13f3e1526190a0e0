#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace torkernel::testing {

Fan make_fan(int n, std::vector<LatticeVector> gens, const std::vector<std::vector<int>>& one_based_cones) {
  Fan f;
  f.n = n;
  f.generators = std::move(gens);
  for (const auto& c : one_based_cones) {
    Cone cone;
    for (int i : c) cone.push_back(i - 1);
    f.max_cones.push_back(std::move(cone));
  }
  return f;
}

Fan p1() { return make_fan(1, {{1}, {-1}}, {{1}, {2}}); }
Fan p2() { return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{1, 2}, {2, 3}, {3, 1}}); }
Fan p1xp1() { return make_fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }
Fan hirzebruch1() { return make_fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }

std::vector<GoldenFan> golden_fans() {
  return {{"P1", p1()}, {"P2", p2()}, {"P1xP1", p1xp1()}, {"H1", hirzebruch1()}};
}

std::vector<LatticeVector> random_spanning_generators(std::mt19937_64& rng, int n, int d) {
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> entry(-3, 3);

  std::vector<LatticeVector> u(n, LatticeVector(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  if (n > 1) {
    for (int step = 0; step < 3 * n; ++step) {
      const int a = pick(rng);
      int b = pick(rng);
      if (a == b) b = (a + 1) % n;
      const int k = small(rng);
      for (int i = 0; i < n; ++i) u[i][a] += k * u[i][b];  // column op keeps det = 1
    }
  }
  std::vector<LatticeVector> gens;
  for (int c = 0; c < n; ++c) {
    LatticeVector v(n);
    for (int i = 0; i < n; ++i) v[i] = u[i][c];
    gens.push_back(std::move(v));
  }
  while (static_cast<int>(gens.size()) < d) {
    LatticeVector v(n);
    for (auto& x : v) x = entry(rng);
    if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; })) continue;
    if (std::find(gens.begin(), gens.end(), v) != gens.end()) continue;
    gens.push_back(std::move(v));
  }
  std::shuffle(gens.begin(), gens.end(), rng);
  return gens;
}

Fan relabel(const Fan& fan, const std::vector<int>& perm) {
  Fan out;
  out.n = fan.n;
  out.generators.resize(fan.d());
  for (int i = 0; i < fan.d(); ++i) out.generators[perm[i]] = fan.generators[i];
  for (const auto& c : fan.max_cones) {
    Cone nc;
    for (int i : c) nc.push_back(perm[i]);
    out.max_cones.push_back(std::move(nc));
  }
  return out;
}

Fan random_complete_fan(std::mt19937_64& rng, int n, int blowups) {
  Fan f;
  f.n = n;
  if (n == 2 && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    f = p1xp1();
  } else {
    // P^n: e_1..e_n and -(e_1+..+e_n); cones are all n-subsets.
    for (int i = 0; i < n; ++i) {
      LatticeVector e(n, 0);
      e[i] = 1;
      f.generators.push_back(e);
    }
    f.generators.push_back(LatticeVector(n, -1));
    for (int skip = 0; skip <= n; ++skip) {
      Cone c;
      for (int i = 0; i <= n; ++i)
        if (i != skip) c.push_back(i);
      f.max_cones.push_back(c);
    }
  }

  for (int b = 0; b < blowups && n >= 2; ++b) {
    const auto& sigma = f.max_cones[std::uniform_int_distribution<std::size_t>(0, f.max_cones.size() - 1)(rng)];
    std::vector<int> face = sigma;
    std::shuffle(face.begin(), face.end(), rng);
    face.resize(std::uniform_int_distribution<int>(2, n)(rng));

    LatticeVector v(n, 0);
    for (int j : face)
      for (int i = 0; i < n; ++i) v[i] += f.generators[j][i];
    const int new_index = f.d();
    f.generators.push_back(v);

    std::vector<Cone> cones;
    for (const auto& c : f.max_cones) {
      const bool contains = std::all_of(face.begin(), face.end(),
                                        [&](int j) { return std::find(c.begin(), c.end(), j) != c.end(); });
      if (!contains) {
        cones.push_back(c);
        continue;
      }
      for (int t : face) {
        Cone nc = c;
        *std::find(nc.begin(), nc.end(), t) = new_index;
        cones.push_back(nc);
      }
    }
    f.max_cones = std::move(cones);
  }

  std::vector<int> perm(f.d());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Fan out = relabel(f, perm);
  std::shuffle(out.max_cones.begin(), out.max_cones.end(), rng);
  return out;
}

std::vector<Cone> random_cone_list(std::mt19937_64& rng, int n, int d, int count) {
  std::set<std::vector<int>> seen;
  std::vector<Cone> out;
  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 100 * count; ++attempt) {
    std::shuffle(all.begin(), all.end(), rng);
    Cone c(all.begin(), all.begin() + n);
    std::vector<int> key = c;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(c);
  }
  return out;
}

std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t k = m.size();
  if (k == 0) return 1;
  if (k == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    const std::int64_t term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

std::set<std::vector<int>> brute_force_primitive_collections(const std::vector<Cone>& cones) {
  std::set<int> support_set;
  for (const auto& c : cones) support_set.insert(c.begin(), c.end());
  const std::vector<int> support(support_set.begin(), support_set.end());

  const auto in_some_cone = [&](const std::vector<int>& s) {
    for (const auto& c : cones) {
      bool all = true;
      for (int x : s) all = all && std::find(c.begin(), c.end(), x) != c.end();
      if (all) return true;
    }
    return false;
  };

  std::set<std::vector<int>> out;
  const std::size_t m = support.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(support[i]);
    if (in_some_cone(s)) continue;
    bool every_smaller_is_face = true;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> t;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) t.push_back(s[i]);
      every_smaller_is_face = every_smaller_is_face && in_some_cone(t);
    }
    if (every_smaller_is_face) out.insert(s);
  }
  return out;
}

}  // namespace torkernel::testing
