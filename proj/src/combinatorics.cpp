#include "torkernel/combinatorics.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace torkernel {

namespace {

IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void choose(const IndexSet& s, int k, std::size_t start, IndexSet& current, IndexSetFamily& out) {
  if (static_cast<int>(current.size()) == k) {
    out.insert(current);
    return;
  }
  const std::size_t need = k - current.size();
  for (std::size_t i = start; i + need <= s.size(); ++i) {
    current.push_back(s[i]);
    choose(s, k, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

IndexSetFamily subsets_minus1(const IndexSet& input) {
  const IndexSet s = normalized(input);
  IndexSetFamily out;
  for (std::size_t skip = 0; skip < s.size(); ++skip) {
    IndexSet t;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != skip) t.push_back(s[i]);
    out.insert(std::move(t));
  }
  return out;
}

IndexSetFamily set_of_all_subsets(const IndexSet& input, int k) {
  const IndexSet s = normalized(input);
  if (k < 0 || k > static_cast<int>(s.size())) {
    throw std::invalid_argument("subset size " + std::to_string(k) + " exceeds set size " + std::to_string(s.size()));
  }
  IndexSetFamily out;
  IndexSet current;
  if (k > 0) {
    choose(s, k, 0, current, out);
    return out;
  }
  for (int size = 0; size <= static_cast<int>(s.size()); ++size) choose(s, size, 0, current, out);
  return out;
}

IndexSetFamily prim_coll(const std::vector<Cone>& cones) {
  if (cones.empty()) return {};
  for (const auto& c : cones) {
    if (c.size() != cones[0].size()) throw std::invalid_argument("all cones must have the same dimension");
  }

  IndexSet support;
  for (const auto& c : cones) support.insert(support.end(), c.begin(), c.end());
  support = normalized(std::move(support));
  if (support.size() > 63) throw std::invalid_argument("too many generators for subset enumeration");

  // Subsets of `support` are bitmasks over positions in `support`.
  std::vector<std::uint64_t> cone_masks;
  for (const auto& c : cones) {
    std::uint64_t m = 0;
    for (int idx : c) m |= std::uint64_t{1} << (std::lower_bound(support.begin(), support.end(), idx) - support.begin());
    cone_masks.push_back(m);
  }
  const auto is_face = [&](std::uint64_t m) {
    return std::any_of(cone_masks.begin(), cone_masks.end(), [m](std::uint64_t c) { return (m & ~c) == 0; });
  };

  IndexSetFamily out;
  const std::uint64_t total = std::uint64_t{1} << support.size();
  for (std::uint64_t m = 1; m < total; ++m) {
    if (is_face(m)) continue;
    bool minimal = true;
    for (std::uint64_t rest = m; rest && minimal; rest &= rest - 1) {
      const std::uint64_t bit = rest & (~rest + 1);
      minimal = is_face(m & ~bit);
    }
    if (!minimal) continue;
    IndexSet p;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (m >> i & 1) p.push_back(support[i]);
    out.insert(std::move(p));
  }
  return out;
}

std::vector<Cone> permut(const Cone& cone, int l) {
  std::vector<Cone> out;
  out.reserve(cone.size());
  for (std::size_t i = 0; i < cone.size(); ++i) {
    Cone t = cone;
    t[i] = l;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace torkernel
