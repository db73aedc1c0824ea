#include "quantum3/statesum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <mutex>
#include <optional>
#include <thread>

#include "frontier_sum.hpp"
#include "quantum3/error.hpp"

namespace quantum3::statesum {

namespace detail {

namespace {

struct Progress {
  const Triangulation& t;
  std::vector<char> assigned;
  std::vector<int> missing;  // unassigned edges per tetrahedron

  explicit Progress(const Triangulation& tri)
      : t(tri), assigned(tri.edges().size(), 0), missing(tri.tetrahedra().size(), 6) {}

  void assign(int e) {
    assigned[e] = 1;
    for (int x : t.tets_of_edge(e)) --missing[x];
  }

  bool open(int e) const {
    return std::any_of(t.tets_of_edge(e).begin(), t.tets_of_edge(e).end(),
                       [&](int x) { return missing[x] > 0; });
  }

  std::size_t width() const {
    std::size_t w = 0;
    for (std::size_t e = 0; e < assigned.size(); ++e) {
      if (assigned[e] && open(static_cast<int>(e))) ++w;
    }
    return w;
  }
};

std::vector<int> greedy_order(const Triangulation& t, int start) {
  const int edge_count = static_cast<int>(t.edges().size());
  Progress p(t);
  std::vector<int> order{start};
  p.assign(start);
  while (static_cast<int>(order.size()) < edge_count) {
    int best = -1;
    std::size_t best_width = 0;
    int best_touch = -1;
    for (int e = 0; e < edge_count; ++e) {
      if (p.assigned[e]) continue;
      Progress trial = p;
      trial.assign(e);
      const std::size_t w = trial.width();
      int touch = 0;
      for (int x : t.tets_of_edge(e)) touch += 6 - p.missing[x];
      if (best < 0 || w < best_width || (w == best_width && touch > best_touch)) {
        best = e;
        best_width = w;
        best_touch = touch;
      }
    }
    order.push_back(best);
    p.assign(best);
  }
  return order;
}

long double order_cost(const std::vector<std::size_t>& widths, int palette_size) {
  long double cost = 0;
  for (std::size_t w : widths) cost += std::pow(static_cast<long double>(palette_size), static_cast<long double>(w));
  return cost;
}

Plan compile(const Triangulation& t, const std::vector<int>& order, int bits) {
  Plan plan;
  plan.order = order;
  plan.bits = bits;
  Progress p(t);
  std::vector<int> frontier;
  for (int e : order) {
    p.assign(e);
    Step step;
    step.edge = e;
    std::vector<int> ext = frontier;
    ext.push_back(e);
    auto ext_slot = [&](int edge) {
      auto it = std::find(ext.begin(), ext.end(), edge);
      if (it == ext.end()) fail(ErrorKind::kNumerical, "frontier plan lost an edge");
      return static_cast<int>(it - ext.begin());
    };
    auto local_index = [&](int edge) {
      const int slot = ext_slot(edge);
      auto it = std::find(step.local.begin(), step.local.end(), slot);
      if (it != step.local.end()) return static_cast<int>(it - step.local.begin());
      step.local.push_back(slot);
      return static_cast<int>(step.local.size()) - 1;
    };
    step.new_local = local_index(e);
    for (int f : t.faces_of_edge(e)) {
      const auto& fe = t.faces()[f].edges;
      if (!(p.assigned[fe[0]] && p.assigned[fe[1]] && p.assigned[fe[2]])) continue;
      step.faces.push_back({local_index(fe[0]), local_index(fe[1]), local_index(fe[2])});
    }
    for (int x : t.tets_of_edge(e)) {
      if (p.missing[x] != 0) continue;
      std::array<int, 6> idx{};
      for (std::size_t a = 0; a < 6; ++a) idx[a] = local_index(t.tetrahedra()[x].edges[a]);
      step.tets.push_back(idx);
    }
    frontier.clear();
    for (std::size_t slot = 0; slot < ext.size(); ++slot) {
      if (p.open(ext[slot])) {
        frontier.push_back(ext[slot]);
        step.next_from.push_back(static_cast<int>(slot));
      }
    }
    plan.max_width = std::max(plan.max_width, ext.size());
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace

std::vector<std::size_t> frontier_widths(const Triangulation& t, const std::vector<int>& order) {
  Progress p(t);
  std::vector<std::size_t> widths;
  for (int e : order) {
    p.assign(e);
    widths.push_back(p.width());
  }
  return widths;
}

Plan make_plan(const Triangulation& t, int palette_size, int max_color) {
  const int edge_count = static_cast<int>(t.edges().size());
  require(edge_count > 0, "empty triangulation");
  // Edges by first appearance in the tetrahedron list: files written as a
  // sweep (layer by layer) give a narrow frontier this way.
  std::vector<int> file_order;
  std::vector<char> seen(t.edges().size(), 0);
  for (const auto& x : t.tetrahedra()) {
    for (int e : x.edges) {
      if (!seen[e]) {
        seen[e] = 1;
        file_order.push_back(e);
      }
    }
  }
  std::vector<std::vector<int>> candidates{file_order, complex3::enumeration_order(t)};
  const int starts = std::min(edge_count, 8);
  for (int a = 0; a < starts; ++a) candidates.push_back(greedy_order(t, a * edge_count / starts));

  const std::vector<int>* best = nullptr;
  long double best_cost = 0;
  for (const auto& order : candidates) {
    const long double cost = order_cost(frontier_widths(t, order), palette_size);
    if (best == nullptr || cost < best_cost) {
      best = &order;
      best_cost = cost;
    }
  }
  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(std::max(max_color, 1)))));
  Plan plan = compile(t, *best, bits);
  if (plan.max_width * static_cast<std::size_t>(bits) > 128) {
    fail(ErrorKind::kOutOfScope, "triangulation frontier too wide for the state-sum engine");
  }
  return plan;
}

}  // namespace detail

namespace {

struct ExactWeights {
  WeightTable table;

  ExactWeights(int r, Branch branch) : table(r, branch) {}
  CycloNum zero() const { return CycloNum(table.level(), table.branch()); }
  CycloNum one() const { return CycloNum(table.level(), 1L, table.branch()); }
  CycloNum edge(int c) { return table.edge(c); }
  CycloNum face(int i, int j, int k) { return table.face(i, j, k); }
  CycloNum tet(const std::array<int, 6>& c) { return table.tet(c); }
};

struct FloatWeights {
  using C = std::complex<double>;
  WeightTable table;
  long s;
  std::map<int, C> edges;
  std::map<std::tuple<int, int, int>, C> faces;
  std::map<std::array<int, 6>, C> tets;

  FloatWeights(int r, long s_) : table(r, cyclo::branch_for(r, s_)), s(s_) {}
  C zero() const { return {0.0, 0.0}; }
  C one() const { return {1.0, 0.0}; }
  C edge(int c) {
    auto it = edges.find(c);
    if (it == edges.end()) it = edges.emplace(c, table.edge(c).ev(s)).first;
    return it->second;
  }
  C face(int i, int j, int k) {
    const auto key = std::make_tuple(i, j, k);
    auto it = faces.find(key);
    if (it == faces.end()) it = faces.emplace(key, table.face(i, j, k).ev(s)).first;
    return it->second;
  }
  C tet(const std::array<int, 6>& c) {
    auto it = tets.find(c);
    if (it == tets.end()) it = tets.emplace(c, table.tet(c).ev(s)).first;
    return it->second;
  }
};

// Values at up to kMaxBatch specializations carried side by side.
constexpr std::size_t kMaxBatch = 16;

struct Batch {
  std::array<std::complex<double>, kMaxBatch> v{};
  std::uint8_t n = 0;

  Batch& operator+=(const Batch& o) {
    for (std::size_t i = 0; i < n; ++i) v[i] += o.v[i];
    return *this;
  }
  Batch& operator*=(const Batch& o) {
    for (std::size_t i = 0; i < n; ++i) v[i] *= o.v[i];
    return *this;
  }
};

struct BatchWeights {
  std::vector<long> s;
  std::vector<FloatWeights> per_s;

  BatchWeights(int r, std::vector<long> s_values) : s(std::move(s_values)) {
    for (long x : s) per_s.emplace_back(r, x);
  }
  Batch fill(auto&& f) {
    Batch b;
    b.n = static_cast<std::uint8_t>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) b.v[i] = f(per_s[i]);
    return b;
  }
  Batch zero() { return fill([](FloatWeights& w) { return w.zero(); }); }
  Batch one() { return fill([](FloatWeights& w) { return w.one(); }); }
  Batch edge(int c) { return fill([&](FloatWeights& w) { return w.edge(c); }); }
  Batch face(int i, int j, int k) { return fill([&](FloatWeights& w) { return w.face(i, j, k); }); }
  Batch tet(const std::array<int, 6>& c) { return fill([&](FloatWeights& w) { return w.tet(c); }); }
};

std::vector<int> palette_for(int r, bool refined) {
  std::vector<int> palette;
  for (int c = 0; c <= r - 2; ++c) {
    if (!refined || c % 2 == 0) palette.push_back(c);
  }
  return palette;
}

void check_level(int r, bool refined) {
  require(r >= 3, "level r must be at least 3");
  if (refined) require(r % 2 == 1, "the SO(3) invariant needs odd r");
}

// Runs one frontier sum per color of the first edge and adds the parts in
// color order, so the result does not depend on the number of workers.
template <class V, class MakeWeights>
std::pair<V, std::uint64_t> partitioned_sum(const Triangulation& t, int r, bool refined, int jobs,
                                            MakeWeights make_weights) {
  const auto palette = palette_for(r, refined);
  const auto plan = detail::make_plan(t, static_cast<int>(palette.size()), r - 2);
  std::vector<std::optional<detail::FrontierOutcome<V>>> parts(palette.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    auto weights = make_weights();
    for (std::size_t i = next++; i < palette.size(); i = next++) {
      try {
        parts[i] = detail::frontier_sum<V>(plan, r, palette, weights, palette[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(palette.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  V sum = make_weights().zero();
  std::uint64_t count = 0;
  for (auto& part : parts) {
    sum += part->sum;
    if (__builtin_add_overflow(count, part->count, &count)) {
      throw std::overflow_error("admissible coloring count exceeds 64 bits");
    }
  }
  return {std::move(sum), count};
}

StateSumResult finish(std::complex<double> raw, int r, long s, bool refined, std::uint64_t count,
                      Arithmetic arithmetic, double tol) {
  if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag()) ||
      std::abs(raw.imag()) > tol * (1.0 + std::abs(raw))) {
    fail(ErrorKind::kNumerical, "state sum is not real at the requested tolerance");
  }
  StateSumResult out;
  out.value = raw.real();
  out.raw = raw;
  out.r = r;
  out.s = s;
  out.refined = refined;
  out.coloring_count = count;
  out.arithmetic = arithmetic;
  return out;
}

StateSumResult evaluate(const Triangulation& t, int r, long s, bool refined, const Options& options) {
  check_level(r, refined);
  const Branch branch = cyclo::branch_for(r, s);
  if (options.arithmetic == Arithmetic::kExact) {
    return specialize(abstract_tv(t, r, refined, options, branch), r, s, refined, options.reality_tol);
  }
  auto [sum, count] = partitioned_sum<std::complex<double>>(t, r, refined, options.jobs,
                                                            [&] { return FloatWeights(r, s); });
  const auto vf = vertex_factor(r, refined, branch).pow(static_cast<unsigned>(t.vertex_count())).ev(s);
  return finish(vf * sum, r, s, refined, count, Arithmetic::kFloat, options.reality_tol);
}

}  // namespace

std::vector<StateSumResult> tv_float_batch(const Triangulation& t, int r, bool refined,
                                           const std::vector<long>& s_values, const Options& options) {
  check_level(r, refined);
  for (long s : s_values) {
    cyclo::branch_for(r, s);
    if (refined) require(s % 2 == 0, "the SO(3) invariant is taken at even s");
  }
  std::vector<StateSumResult> out;
  for (std::size_t begin = 0; begin < s_values.size(); begin += kMaxBatch) {
    const std::vector<long> chunk(s_values.begin() + static_cast<long>(begin),
                                  s_values.begin() + static_cast<long>(std::min(begin + kMaxBatch, s_values.size())));
    auto [sum, count] =
        partitioned_sum<Batch>(t, r, refined, options.jobs, [&] { return BatchWeights(r, chunk); });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      const long s = chunk[i];
      const auto vf = vertex_factor(r, refined, cyclo::branch_for(r, s))
                          .pow(static_cast<unsigned>(t.vertex_count()))
                          .ev(s);
      out.push_back(finish(vf * sum.v[i], r, s, refined, count, Arithmetic::kFloat, options.reality_tol));
    }
  }
  return out;
}

AbstractInvariant abstract_tv(const Triangulation& t, int r, bool refined, const Options& options,
                              Branch branch) {
  check_level(r, refined);
  auto [sum, count] =
      partitioned_sum<CycloNum>(t, r, refined, options.jobs, [&] { return ExactWeights(r, branch); });
  return {vertex_factor(r, refined, branch).pow(static_cast<unsigned>(t.vertex_count())) * sum, count};
}

StateSumResult specialize(const AbstractInvariant& inv, int r, long s, bool refined, double reality_tol) {
  require(inv.value.level() == r, "invariant level mismatch");
  require(inv.value.branch() == cyclo::branch_for(r, s), "invariant branch does not match the parity of s");
  return finish(inv.value.ev(s), r, s, refined, inv.coloring_count, Arithmetic::kExact, reality_tol);
}

StateSumResult tv(const Triangulation& t, int r, long s, const Options& options) {
  return evaluate(t, r, s, false, options);
}

StateSumResult tv_prime(const Triangulation& t, int r, long s, const Options& options) {
  require(s % 2 == 0, "the SO(3) invariant is taken at even s");
  return evaluate(t, r, s, true, options);
}

AbstractInvariant abstract_tv_by_enumeration(const Triangulation& t, int r, bool refined, Branch branch) {
  check_level(r, refined);
  CycloNum sum(r, branch);
  std::uint64_t count = 0;
  complex3::enumerate_admissible(t, r, refined, [&](const Coloring& c) {
    sum += term(t, c, branch);
    ++count;
  });
  return {vertex_factor(r, refined, branch).pow(static_cast<unsigned>(t.vertex_count())) * sum, count};
}

}  // namespace quantum3::statesum
