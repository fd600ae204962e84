#include "floworacle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace dss {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / i;
  return out;
}

// ---------------------------------------------------------------------------
// Slot layout and helper rules

Rack slot_rack(const SystemConfig& c, int slot) {
  return c.variant == Variant::Symmetric || slot < c.n1 ? Rack::One : Rack::Two;
}

Rational storage_factor(const SystemConfig& c, Rack r) {
  return r == Rack::Two ? rack2_weight(c) : Rational(1);
}

struct HelperRule {
  std::vector<int> cheap_slots;
  std::vector<int> expensive_slots;
  int cheap_count = 0;
  int expensive_count = 0;
};

HelperRule helper_rule(const SystemConfig& c, int failed_slot) {
  HelperRule rule;
  const int n = c.node_count();
  const Rack r = slot_rack(c, failed_slot);
  switch (c.variant) {
    case Variant::Symmetric:
      for (int s = 0; s < n; ++s)
        if (s != failed_slot) rule.cheap_slots.push_back(s);
      rule.cheap_count = c.d;
      break;
    case Variant::StaticCost:
      // fixed groups: rack 1 is always cheap, rack 2 always expensive
      for (int s = 0; s < n; ++s) {
        if (s == failed_slot) continue;
        (slot_rack(c, s) == Rack::One ? rule.cheap_slots : rule.expensive_slots).push_back(s);
      }
      rule.cheap_count = c.d1c;
      rule.expensive_count = c.d1e;
      break;
    case Variant::TwoRackTraditional:
    case Variant::TwoRackNonHomogeneous:
      for (int s = 0; s < n; ++s) {
        if (s == failed_slot) continue;
        (slot_rack(c, s) == r ? rule.cheap_slots : rule.expensive_slots).push_back(s);
      }
      rule.cheap_count = cheap_helpers(c, r);
      rule.expensive_count = expensive_helpers(c, r);
      break;
  }
  return rule;
}

void combinations(const std::vector<int>& pool, int r, std::vector<std::vector<int>>& out) {
  if (r > static_cast<int>(pool.size())) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  const int n = static_cast<int>(pool.size());
  for (;;) {
    std::vector<int> pick;
    pick.reserve(idx.size());
    for (int i : idx) pick.push_back(pool[static_cast<std::size_t>(i)]);
    out.push_back(std::move(pick));
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// ---------------------------------------------------------------------------
// Dinic on integer capacities

template <typename T>
class Dinic {
 public:
  void reset(int vertices) {
    head_.assign(static_cast<std::size_t>(vertices), -1);
    level_.resize(static_cast<std::size_t>(vertices));
    iter_.resize(static_cast<std::size_t>(vertices));
    to_.clear();
    next_.clear();
    cap_.clear();
  }

  void add_edge(int u, int v, const T& cap) {
    push(u, v, cap);
    push(v, u, T(0));
  }

  T run(int s, int t) {
    T total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      for (;;) {
        T pushed = dfs(s, t, T(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  void push(int u, int v, const T& cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    level_[static_cast<std::size_t>(s)] = 0;
    queue_.push_back(s);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const int u = queue_[qi];
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
        const int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          queue_.push_back(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  // limit < 0 stands for "unbounded"
  T dfs(int u, int t, const T& limit) {
    if (u == t) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
      const auto ei = static_cast<std::size_t>(e);
      const int v = to_[ei];
      if (cap_[ei] <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      T want = limit < 0 || cap_[ei] < limit ? cap_[ei] : limit;
      T got = dfs(v, t, want);
      if (got > 0) {
        cap_[ei] -= got;
        cap_[ei ^ 1] += got;
        return got;
      }
    }
    return T(0);
  }

  std::vector<int> head_, next_, to_, level_, iter_, queue_;
  std::vector<T> cap_;
};

mpz_class lcm_of(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

bool fits_int64(const mpz_class& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) < 62; }

// ---------------------------------------------------------------------------
// Compact histories for enumeration

enum Kind : std::uint8_t { kInfinite, kStorage1, kStorage2, kCheap, kExpensive, kKinds };

struct CompactEdge {
  int from;
  int to;
  Kind kind;
};

struct HistoryGraph {
  RepairHistory history;
  std::vector<CompactEdge> edges;
  std::vector<int> live;  // slot -> node id
  int node_count = 0;
  std::array<int, kKinds> kind_counts{};
};

HistoryGraph compact_graph(const SystemConfig& c, RepairHistory history) {
  HistoryGraph g;
  const int n = c.node_count();
  g.live.resize(static_cast<std::size_t>(n));
  std::vector<int> slot_of;
  auto add = [&](int from, int to, Kind k) {
    g.edges.push_back({from, to, k});
    ++g.kind_counts[k];
  };
  for (int s = 0; s < n; ++s) {
    g.live[static_cast<std::size_t>(s)] = s;
    slot_of.push_back(s);
    add(0, FlowGraph::in_vertex(s), kInfinite);
    add(FlowGraph::in_vertex(s), FlowGraph::out_vertex(s),
        slot_rack(c, s) == Rack::One ? kStorage1 : kStorage2);
  }
  int next_id = n;
  for (const auto& ev : history.events) {
    const int slot = slot_of[static_cast<std::size_t>(ev.failed_node)];
    const HelperRule rule = helper_rule(c, slot);
    const int id = next_id++;
    slot_of.push_back(slot);
    for (int h : ev.helpers) {
      const int hs = slot_of[static_cast<std::size_t>(h)];
      const bool cheap = std::find(rule.cheap_slots.begin(), rule.cheap_slots.end(), hs) != rule.cheap_slots.end();
      add(FlowGraph::out_vertex(h), FlowGraph::in_vertex(id), cheap ? kCheap : kExpensive);
    }
    add(FlowGraph::in_vertex(id), FlowGraph::out_vertex(id),
        slot_rack(c, slot) == Rack::One ? kStorage1 : kStorage2);
    g.live[static_cast<std::size_t>(slot)] = id;
  }
  g.node_count = next_id;
  g.history = std::move(history);
  return g;
}

std::vector<RepairHistory> enumerate_histories(const SystemConfig& c, int max_failures) {
  std::vector<RepairHistory> out;
  const int n = c.node_count();
  std::vector<int> live(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) live[static_cast<std::size_t>(s)] = s;

  // per-slot helper choices expressed as slots; mapped to live ids at each step
  std::vector<std::vector<std::vector<int>>> choices(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const HelperRule rule = helper_rule(c, s);
    std::vector<std::vector<int>> cheap, expensive;
    combinations(rule.cheap_slots, rule.cheap_count, cheap);
    combinations(rule.expensive_slots, rule.expensive_count, expensive);
    for (const auto& a : cheap)
      for (const auto& b : expensive) {
        auto pick = a;
        pick.insert(pick.end(), b.begin(), b.end());
        choices[static_cast<std::size_t>(s)].push_back(std::move(pick));
      }
  }

  RepairHistory current;
  int next_id = n;
  auto recurse = [&](auto&& self, int depth) -> void {
    out.push_back(current);
    if (depth == max_failures) return;
    for (int s = 0; s < n; ++s) {
      for (const auto& pick : choices[static_cast<std::size_t>(s)]) {
        RepairEvent ev;
        ev.failed_node = live[static_cast<std::size_t>(s)];
        ev.rack = slot_rack(c, s);
        for (int hs : pick) ev.helpers.push_back(live[static_cast<std::size_t>(hs)]);
        current.events.push_back(std::move(ev));
        const int saved = live[static_cast<std::size_t>(s)];
        live[static_cast<std::size_t>(s)] = next_id++;
        self(self, depth + 1);
        --next_id;
        live[static_cast<std::size_t>(s)] = saved;
        current.events.pop_back();
      }
    }
  };
  recurse(recurse, 0);
  return out;
}

template <typename T>
struct ScaledPoint {
  std::array<T, kKinds> cap{};
};

template <typename T>
struct Best {
  T value{};
  bool set = false;
  std::size_t history = 0;
  std::size_t collectors = 0;
};

template <typename T>
std::vector<MincutResult> run_enumeration(const SystemConfig& c,
                                          const std::vector<ScaledPoint<T>>& points,
                                          const std::vector<mpz_class>& scales,
                                          const std::vector<RepairHistory>& histories,
                                          unsigned threads) {
  const int n = c.node_count();
  std::vector<int> all_slots(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) all_slots[static_cast<std::size_t>(s)] = s;
  std::vector<std::vector<int>> collector_sets;
  combinations(all_slots, c.k, collector_sets);

  constexpr std::size_t kBlock = 32;
  const std::size_t blocks = (histories.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<Best<T>>> partial(blocks, std::vector<Best<T>>(points.size()));

  parallel_for(blocks, threads, [&](std::size_t b) {
    Dinic<T> flow;
    auto& best = partial[b];
    const std::size_t end = std::min(histories.size(), (b + 1) * kBlock);
    for (std::size_t h = b * kBlock; h < end; ++h) {
      const HistoryGraph g = compact_graph(c, histories[h]);
      const int vertices = 2 + 2 * g.node_count;
      const int sink = vertices - 1;
      for (std::size_t j = 0; j < collector_sets.size(); ++j) {
        for (std::size_t p = 0; p < points.size(); ++p) {
          const auto& cap = points[p].cap;
          T infinity = 1;
          for (int k = kStorage1; k < kKinds; ++k) infinity += cap[static_cast<std::size_t>(k)] * g.kind_counts[static_cast<std::size_t>(k)];
          flow.reset(vertices);
          for (const auto& e : g.edges)
            flow.add_edge(e.from, e.to, e.kind == kInfinite ? infinity : cap[e.kind]);
          for (int slot : collector_sets[j])
            flow.add_edge(FlowGraph::out_vertex(g.live[static_cast<std::size_t>(slot)]), sink, infinity);
          T value = flow.run(0, sink);
          if (!best[p].set || value < best[p].value) best[p] = {value, true, h, j};
        }
      }
    }
  });

  std::vector<MincutResult> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    Best<T> winner;
    for (const auto& block : partial) {
      const auto& cand = block[p];
      if (cand.set && (!winner.set || cand.value < winner.value)) winner = cand;
    }
    if (!winner.set) throw Error(ErrorKind::Internal, "empty oracle search space");
    const HistoryGraph g = compact_graph(c, histories[winner.history]);
    out[p].value = Rational(mpz_class(winner.value), scales[p]);
    out[p].value.canonicalize();
    out[p].witness.history = histories[winner.history];
    for (int slot : collector_sets[winner.collectors])
      out[p].witness.collectors.push_back(g.live[static_cast<std::size_t>(slot)]);
  }
  return out;
}


std::array<Rational, kKinds> kind_capacities(const SystemConfig& c, const Rational& alpha,
                                              const Rational& beta_e) {
  std::array<Rational, kKinds> cap;
  cap[kInfinite] = 0;
  cap[kStorage1] = alpha * storage_factor(c, Rack::One);
  cap[kStorage2] = alpha * storage_factor(c, Rack::Two);
  cap[kCheap] = c.tau * beta_e;
  cap[kExpensive] = beta_e;
  return cap;
}

std::string describe_budget(std::uint64_t states, std::uint64_t budget) {
  std::ostringstream os;
  os << "oracle search space of ";
  if (states == kSaturated) os << "more than " << kSaturated;
  else os << states;
  os << " states exceeds the budget of " << budget
     << "; lower --max-failures or use a smaller n";
  return os.str();
}

template <typename T>
Rational flow_value(const FlowGraph& g, const std::vector<mpz_class>& scaled, const mpz_class& scale) {
  Dinic<T> flow;
  flow.reset(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if constexpr (std::is_same_v<T, mpz_class>) flow.add_edge(e.from, e.to, scaled[i]);
    else flow.add_edge(e.from, e.to, static_cast<T>(scaled[i].get_si()));
  }
  Rational out(mpz_class(flow.run(g.source, g.sink)), scale);
  out.canonicalize();
  return out;
}

}  // namespace

FlowGraph build_graph(const SystemConfig& c, const RepairHistory& history,
                      const std::vector<int>& collectors, const Rational& alpha,
                      const Rational& beta_e) {
  const int n = c.node_count();
  FlowGraph g;
  std::vector<int> live(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    live[static_cast<std::size_t>(s)] = s;
    g.nodes.push_back({s, s, slot_rack(c, s), true, false});
  }
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };

  for (std::size_t j = 0; j < history.events.size(); ++j) {
    const auto& ev = history.events[j];
    const int id = n + static_cast<int>(j);
    if (ev.failed_node < 0 || ev.failed_node >= static_cast<int>(g.nodes.size()) ||
        !g.nodes[static_cast<std::size_t>(ev.failed_node)].live)
      fail("repair event " + std::to_string(j) + ": failed node " + std::to_string(ev.failed_node) +
           " is not live");
    const int slot = g.nodes[static_cast<std::size_t>(ev.failed_node)].slot;
    const Rack rack = slot_rack(c, slot);
    if (ev.rack != rack)
      fail("repair event " + std::to_string(j) + ": newcomer rack does not match the failed node");
    const HelperRule rule = helper_rule(c, slot);
    int cheap = 0;
    int expensive = 0;
    std::set<int> seen;
    for (int h : ev.helpers) {
      if (h < 0 || h >= static_cast<int>(g.nodes.size()) || !g.nodes[static_cast<std::size_t>(h)].live ||
          h == ev.failed_node)
        fail("repair event " + std::to_string(j) + ": helper " + std::to_string(h) + " is not live");
      if (!seen.insert(h).second)
        fail("repair event " + std::to_string(j) + ": helper " + std::to_string(h) + " repeated");
      const int hs = g.nodes[static_cast<std::size_t>(h)].slot;
      const bool is_cheap =
          std::find(rule.cheap_slots.begin(), rule.cheap_slots.end(), hs) != rule.cheap_slots.end();
      const bool is_expensive =
          std::find(rule.expensive_slots.begin(), rule.expensive_slots.end(), hs) != rule.expensive_slots.end();
      if (!is_cheap && !is_expensive)
        fail("repair event " + std::to_string(j) + ": helper " + std::to_string(h) + " is not eligible");
      (is_cheap ? cheap : expensive) += 1;
    }
    if (cheap != rule.cheap_count || expensive != rule.expensive_count)
      fail("repair event " + std::to_string(j) + ": wrong helper split (" + std::to_string(cheap) + " cheap, " +
           std::to_string(expensive) + " expensive; expected " + std::to_string(rule.cheap_count) + " and " +
           std::to_string(rule.expensive_count) + ")");
    g.nodes[static_cast<std::size_t>(ev.failed_node)].live = false;
    g.nodes.push_back({id, slot, rack, true, true});
    live[static_cast<std::size_t>(slot)] = id;
  }

  std::set<int> dc;
  for (int x : collectors) {
    if (x < 0 || x >= static_cast<int>(g.nodes.size()) || !g.nodes[static_cast<std::size_t>(x)].live)
      fail("collector node " + std::to_string(x) + " is not live");
    if (!dc.insert(x).second) fail("collector node " + std::to_string(x) + " repeated");
  }
  if (static_cast<int>(dc.size()) != c.k)
    fail("data collector needs exactly " + std::to_string(c.k) + " nodes");

  const int node_total = static_cast<int>(g.nodes.size());
  g.vertex_count = 2 + 2 * node_total;
  g.source = 0;
  g.sink = g.vertex_count - 1;

  const auto cap = kind_capacities(c, alpha, beta_e);
  std::vector<std::size_t> infinite_edges;
  auto add = [&](int from, int to, EdgeKind kind, const Rational& capacity) {
    if (kind == EdgeKind::Source || kind == EdgeKind::Collector) infinite_edges.push_back(g.edges.size());
    g.edges.push_back({from, to, capacity, kind});
  };
  for (int s = 0; s < n; ++s) {
    add(g.source, FlowGraph::in_vertex(s), EdgeKind::Source, 0);
    add(FlowGraph::in_vertex(s), FlowGraph::out_vertex(s), EdgeKind::Storage,
        cap[slot_rack(c, s) == Rack::One ? kStorage1 : kStorage2]);
  }
  for (std::size_t j = 0; j < history.events.size(); ++j) {
    const auto& ev = history.events[j];
    const int id = n + static_cast<int>(j);
    const int slot = g.nodes[static_cast<std::size_t>(id)].slot;
    const HelperRule rule = helper_rule(c, slot);
    for (int h : ev.helpers) {
      const int hs = g.nodes[static_cast<std::size_t>(h)].slot;
      const bool is_cheap =
          std::find(rule.cheap_slots.begin(), rule.cheap_slots.end(), hs) != rule.cheap_slots.end();
      add(FlowGraph::out_vertex(h), FlowGraph::in_vertex(id), is_cheap ? EdgeKind::Cheap : EdgeKind::Expensive,
          cap[is_cheap ? kCheap : kExpensive]);
    }
    add(FlowGraph::in_vertex(id), FlowGraph::out_vertex(id), EdgeKind::Storage,
        cap[g.nodes[static_cast<std::size_t>(id)].rack == Rack::One ? kStorage1 : kStorage2]);
  }
  for (int x : collectors) add(FlowGraph::out_vertex(x), g.sink, EdgeKind::Collector, 0);

  Rational finite_total = 0;
  for (const auto& e : g.edges)
    if (e.kind != EdgeKind::Source && e.kind != EdgeKind::Collector) finite_total += e.capacity;
  g.infinity = c.file_size + finite_total + 1;
  for (std::size_t i : infinite_edges) g.edges[i].capacity = g.infinity;
  return g;
}

Rational max_flow(const FlowGraph& g) {
  mpz_class scale = 1;
  for (const auto& e : g.edges) {
    if (e.capacity < 0) throw Error(ErrorKind::InvalidArgument, "negative edge capacity");
    scale = lcm_of(scale, e.capacity.get_den());
  }
  std::vector<mpz_class> scaled;
  scaled.reserve(g.edges.size());
  mpz_class total = 0;
  for (const auto& e : g.edges) {
    scaled.push_back(e.capacity.get_num() * (scale / e.capacity.get_den()));
    total += scaled.back();
  }
  if (fits_int64(total)) return flow_value<std::int64_t>(g, scaled, scale);
  return flow_value<mpz_class>(g, scaled, scale);
}

std::vector<Rational> income_decomposition(const SystemConfig& c, const RepairHistory& history,
                                           const std::vector<int>& collectors,
                                           const Rational& alpha, const Rational& beta_e) {
  const FlowGraph g = build_graph(c, history, collectors, alpha, beta_e);
  std::vector<int> dc = collectors;
  std::sort(dc.begin(), dc.end());
  std::vector<Rational> terms;
  for (int x : dc) {
    Rational storage;
    Rational fresh = 0;
    bool bounded = g.nodes[static_cast<std::size_t>(x)].newcomer;
    for (const auto& e : g.edges) {
      if (e.kind == EdgeKind::Storage && e.from == FlowGraph::in_vertex(x)) storage = e.capacity;
      if ((e.kind == EdgeKind::Cheap || e.kind == EdgeKind::Expensive) && e.to == FlowGraph::in_vertex(x)) {
        const int helper = (e.from - 2) / 2;
        if (!std::binary_search(dc.begin(), dc.end(), helper)) fresh += e.capacity;
      }
    }
    terms.push_back(bounded ? min_of(storage, fresh) : storage);
  }
  return terms;
}

std::uint64_t search_space_size(const SystemConfig& c, int max_failures, std::size_t points) {
  const int n = c.node_count();
  std::uint64_t branching = 0;
  for (int s = 0; s < n; ++s) {
    const HelperRule rule = helper_rule(c, s);
    branching = sat_add(branching, sat_mul(binomial(static_cast<int>(rule.cheap_slots.size()), rule.cheap_count),
                                           binomial(static_cast<int>(rule.expensive_slots.size()),
                                                    rule.expensive_count)));
  }
  std::uint64_t histories = 0;
  std::uint64_t level = 1;
  for (int j = 0; j <= max_failures; ++j) {
    histories = sat_add(histories, level);
    level = sat_mul(level, branching);
  }
  return sat_mul(sat_mul(histories, binomial(n, c.k)), static_cast<std::uint64_t>(points));
}

std::vector<MincutResult> min_mincut_batch(const SystemConfig& c, std::span<const OraclePoint> points,
                                           const OracleOptions& options) {
  if (points.empty()) return {};
  if (options.max_failures < 0) throw Error(ErrorKind::InvalidArgument, "max_failures must be >= 0");
  const std::uint64_t states = search_space_size(c, options.max_failures, points.size());
  if (states > options.budget) throw Error(ErrorKind::BudgetExceeded, describe_budget(states, options.budget));

  std::vector<mpz_class> scales;
  std::vector<std::array<mpz_class, kKinds>> scaled;
  bool small = true;
  for (const auto& p : points) {
    if (p.alpha < 0 || p.beta_e < 0) throw Error(ErrorKind::InvalidArgument, "negative alpha or beta_e");
    const auto cap = kind_capacities(c, p.alpha, p.beta_e);
    mpz_class scale = 1;
    for (const auto& v : cap) scale = lcm_of(scale, v.get_den());
    std::array<mpz_class, kKinds> ints;
    for (std::size_t k = 0; k < cap.size(); ++k) {
      ints[k] = cap[k].get_num() * (scale / cap[k].get_den());
      // room for summing a few hundred edges
      if (mpz_sizeinbase(ints[k].get_mpz_t(), 2) > 50) small = false;
    }
    scales.push_back(scale);
    scaled.push_back(ints);
  }

  const auto histories = enumerate_histories(c, options.max_failures);
  if (small) {
    std::vector<ScaledPoint<std::int64_t>> pts(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
      for (std::size_t k = 0; k < kKinds; ++k) pts[p].cap[k] = scaled[p][k].get_si();
    return run_enumeration(c, pts, scales, histories, options.threads);
  }
  std::vector<ScaledPoint<mpz_class>> pts(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) pts[p].cap = scaled[p];
  return run_enumeration(c, pts, scales, histories, options.threads);
}

MincutResult min_mincut(const SystemConfig& c, const Rational& alpha, const Rational& beta_e,
                        const OracleOptions& options) {
  const OraclePoint point{alpha, beta_e};
  return min_mincut_batch(c, std::span<const OraclePoint>(&point, 1), options).front();
}

std::vector<Rational> certification_betas(const TradeoffCurve& curve, int samples) {
  std::vector<Rational> betas;
  for (const auto& seg : curve.segments) {
    betas.push_back(seg.beta_lo);
    if (!seg.beta_hi) continue;
    for (int j = 1; j <= samples; ++j)
      betas.push_back(seg.beta_lo + (*seg.beta_hi - seg.beta_lo) * Rational(j, samples + 1));
  }
  betas.push_back(curve.msr.beta_e * 2);
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  return betas;
}

CertificationReport certify_curve(const SystemConfig& c, const TradeoffCurve& curve,
                                  const CertifyOptions& options) {
  if (options.epsilon <= 0 || options.epsilon >= 1)
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  if (options.samples < 0) throw Error(ErrorKind::InvalidArgument, "samples must be >= 0");
  CertificationReport report;
  const auto betas = certification_betas(curve, options.samples);
  std::vector<OraclePoint> points;
  for (const auto& b : betas) {
    const Rational alpha = curve.alpha_at(b) * options.alpha_scale;
    points.push_back({alpha, b});
    points.push_back({alpha * (1 - options.epsilon), b});
  }
  OracleOptions oracle{options.max_failures, options.budget, options.threads};
  report.states = search_space_size(c, options.max_failures, points.size());
  const auto results = min_mincut_batch(c, points, oracle);
  report.passed = true;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    SampleCheck s;
    s.beta_e = betas[i];
    s.alpha = points[2 * i].alpha;
    s.alpha_below = points[2 * i + 1].alpha;
    s.at_alpha = results[2 * i];
    s.below_alpha = results[2 * i + 1];
    s.bound_ok = s.at_alpha.value >= c.file_size;
    s.tight_ok = s.below_alpha.value < c.file_size;
    report.passed = report.passed && s.bound_ok && s.tight_ok;
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace dss
