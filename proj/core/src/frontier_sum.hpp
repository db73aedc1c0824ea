#pragma once

// Sum over admissible colorings of a product of local weights, computed as
// a dynamic program over an edge order. The state after step d is the
// coloring of the "frontier": assigned edges that still belong to a face or
// tetrahedron with an unassigned edge. Colorings agreeing on the frontier
// are merged, so the cost follows the number of frontier states rather
// than the number of colorings.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <unordered_map>
#include <vector>

#include "quantum3/complex3.hpp"

namespace quantum3::statesum::detail {

using Key = unsigned __int128;

struct KeyHash {
  std::size_t operator()(Key k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }
};

struct Step {
  int edge = 0;
  // Extended frontier = old frontier slots followed by the new edge.
  std::vector<int> next_from;              // next slot -> extended slot
  std::vector<int> local;                  // extended slots read by the step weight
  std::vector<std::array<int, 3>> faces;   // indices into `local`
  std::vector<std::array<int, 6>> tets;    // indices into `local`
  int new_local = 0;                       // index of the new edge in `local`
};

struct Plan {
  std::vector<int> order;
  std::vector<Step> steps;
  std::size_t max_width = 0;
  int bits = 1;
};

/// Frontier width after each step for a given edge order.
std::vector<std::size_t> frontier_widths(const complex3::Triangulation& t, const std::vector<int>& order);

/// Picks a low-width edge order among several greedy candidates and
/// compiles it into steps.
Plan make_plan(const complex3::Triangulation& t, int palette_size, int max_color);

template <class V>
struct FrontierOutcome {
  V sum;
  std::uint64_t count = 0;
  std::size_t peak_states = 0;
};

/// `Weights` provides: V zero(); V one(); V edge(int c); V face(int i, int j, int k);
/// V tet(const std::array<int,6>&). Face weights are only requested for
/// admissible triples. `first_color` pins the first edge when >= 0.
template <class V, class Weights>
FrontierOutcome<V> frontier_sum(const Plan& plan, int r, std::span<const int> palette, Weights& weights,
                                int first_color) {
  const int bits = plan.bits;
  const Key mask = (Key{1} << bits) - 1;
  auto color_at = [&](Key key, int slot) { return static_cast<int>((key >> (slot * bits)) & mask); };

  std::vector<Key> keys{Key{0}};
  std::vector<V> values{weights.one()};
  std::vector<std::uint64_t> counts{1};
  std::size_t peak = 1;

  std::vector<int> local_colors;
  for (std::size_t d = 0; d < plan.steps.size(); ++d) {
    const Step& step = plan.steps[d];
    // Width of the old frontier equals the extended slot of the new edge.
    const int ext_new = static_cast<int>(step.local[step.new_local]);
    std::unordered_map<Key, std::optional<V>, KeyHash> step_cache;
    std::unordered_map<Key, std::size_t, KeyHash> index;
    index.reserve(keys.size() * 2);
    std::vector<Key> next_keys;
    std::vector<V> next_values;
    std::vector<std::uint64_t> next_counts;
    local_colors.resize(step.local.size());

    for (std::size_t si = 0; si < keys.size(); ++si) {
      for (int c : palette) {
        if (d == 0 && first_color >= 0 && c != first_color) continue;
        const Key ext = keys[si] | (Key(static_cast<unsigned>(c)) << (ext_new * bits));
        Key local_key = 0;
        for (std::size_t a = 0; a < step.local.size(); ++a) {
          local_colors[a] = color_at(ext, step.local[a]);
          local_key |= Key(static_cast<unsigned>(local_colors[a])) << (a * bits);
        }
        auto cached = step_cache.find(local_key);
        if (cached == step_cache.end()) {
          std::optional<V> w;
          bool ok = true;
          for (const auto& f : step.faces) {
            if (!complex3::admissible(local_colors[f[0]], local_colors[f[1]], local_colors[f[2]], r)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            V prod = weights.edge(local_colors[step.new_local]);
            for (const auto& f : step.faces) {
              prod *= weights.face(local_colors[f[0]], local_colors[f[1]], local_colors[f[2]]);
            }
            for (const auto& tt : step.tets) {
              std::array<int, 6> tc{};
              for (std::size_t a = 0; a < 6; ++a) tc[a] = local_colors[tt[a]];
              prod *= weights.tet(tc);
            }
            w = std::move(prod);
          }
          cached = step_cache.emplace(local_key, std::move(w)).first;
        }
        if (!cached->second) continue;

        Key next = 0;
        for (std::size_t slot = 0; slot < step.next_from.size(); ++slot) {
          next |= Key(static_cast<unsigned>(color_at(ext, step.next_from[slot]))) << (slot * bits);
        }
        V contribution = values[si];
        contribution *= *cached->second;
        auto [it, fresh] = index.try_emplace(next, next_keys.size());
        if (fresh) {
          next_keys.push_back(next);
          next_values.push_back(std::move(contribution));
          next_counts.push_back(counts[si]);
        } else {
          next_values[it->second] += contribution;
          if (__builtin_add_overflow(next_counts[it->second], counts[si], &next_counts[it->second])) {
            throw std::overflow_error("admissible coloring count exceeds 64 bits");
          }
        }
      }
    }
    keys = std::move(next_keys);
    values = std::move(next_values);
    counts = std::move(next_counts);
    peak = std::max(peak, keys.size());
    if (keys.empty()) break;
  }

  FrontierOutcome<V> out{weights.zero(), 0, peak};
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.sum += values[i];
    out.count += counts[i];
  }
  return out;
}

}  // namespace quantum3::statesum::detail
