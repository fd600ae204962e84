// Shared fixtures, fixed-seed generators and independent reference
// computations for the test binaries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "floworacle.hpp"

namespace dss::testing {

inline SystemConfig two_rack(Variant v, int k, int n1, int n2, int d, int d1e, int d2e, Rational tau,
                             Rational file_size = 1) {
  SystemConfig c;
  c.variant = v;
  c.file_size = std::move(file_size);
  c.k = k;
  c.n1 = n1;
  c.n2 = n2;
  c.d = d;
  c.d1e = d1e;
  c.d1c = d - d1e;
  c.d2e = d2e;
  c.d2c = d - d2e;
  c.tau = std::move(tau);
  return c;
}

inline SystemConfig reference_two_rack(Variant v) { return validate(two_rack(v, 6, 3, 7, 9, 7, 3, 4)); }

// tau=3, d1c=1, d1e=2, d2c=2, d2e=1: the untrimmed traditional curve is infeasible.
inline SystemConfig infeasible_example(Variant v) { return validate(two_rack(v, 4, 2, 4, 3, 2, 1, 3)); }

inline SystemConfig symmetric(int n, int k, int d, Rational file_size = 1) {
  SystemConfig c;
  c.variant = Variant::Symmetric;
  c.file_size = std::move(file_size);
  c.n1 = n;
  c.k = k;
  c.d = d;
  return validate(c);
}

// [4,2,3] system
inline SystemConfig four_node() { return symmetric(4, 2, 3); }

inline SystemConfig static_cost(int k, int n1, int n2, int d, int d1e, Rational tau) {
  SystemConfig c = two_rack(Variant::StaticCost, k, n1, n2, d, d1e, d1e, std::move(tau));
  return validate(c);
}

// ---------------------------------------------------------------------------
// Generators (deterministic for a given seed)

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int max_num, int max_den) {
    Rational r(uniform(0, max_num), uniform(1, max_den));
    r.canonicalize();
    return r;
  }

  Rational positive_rational(int max_num, int max_den) {
    Rational r(uniform(1, max_num), uniform(1, max_den));
    r.canonicalize();
    return r;
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  // A validated two-rack config with n1, n2 <= max_rack and k <= max_k.
  SystemConfig two_rack_config(Variant v, int max_rack, int max_k, const std::vector<Rational>& taus) {
    for (;;) {
      const int n1 = uniform(1, max_rack);
      const int n2 = uniform(1, max_rack);
      const int n = n1 + n2;
      const int d = uniform(1, n - 1);
      const int k = uniform(1, std::min(max_k, n - 1));
      const int d1e = uniform(0, d);
      const int d2e = uniform(0, d);
      try {
        return validate(two_rack(v, k, n1, n2, d, d1e, d2e, pick(taus)));
      } catch (const ConfigError&) {
      }
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Every valid configuration of a variant within the size bounds, deduplicated
// after normalization.
inline std::vector<SystemConfig> all_configs(Variant v, int max_n, int max_k, const std::vector<Rational>& taus) {
  std::vector<SystemConfig> out;
  auto seen = [&](const SystemConfig& c) {
    return std::any_of(out.begin(), out.end(), [&](const SystemConfig& o) { return same_parameters(o, c); });
  };
  for (int n1 = 1; n1 <= max_n; ++n1)
    for (int n2 = 0; n1 + n2 <= max_n; ++n2)
      for (int d = 1; d < n1 + n2; ++d)
        for (int k = 1; k <= std::min(max_k, n1 + n2 - 1); ++k)
          for (int d1e = 0; d1e <= d; ++d1e)
            for (int d2e = 0; d2e <= d; ++d2e)
              for (const auto& tau : taus) {
                SystemConfig raw = two_rack(v, k, n1, n2, d, d1e, d2e, tau);
                if (v == Variant::Symmetric && (d1e != 0 || d2e != 0 || n2 != 0)) continue;
                if (v == Variant::StaticCost && d2e != d1e) continue;
                try {
                  SystemConfig c = validate(raw);
                  if (!seen(c)) out.push_back(c);
                } catch (const ConfigError&) {
                }
              }
  return out;
}

// ---------------------------------------------------------------------------
// Independent reference computations

struct RefIncome {
  Rational coeff;
  Rational weight{1};
  int rack = 1;
};

inline std::vector<RefIncome> ref_i1(const SystemConfig& c) {
  std::vector<RefIncome> v;
  for (int i = 0; i <= c.d1c && i <= c.k - 1; ++i) v.push_back({c.tau * (c.d1c - i) + c.d1e, 1, 1});
  return v;
}

inline std::vector<RefIncome> ref_i2(const SystemConfig& c) {
  std::vector<RefIncome> v;
  for (int i = 1; i <= c.k - c.d1c - 1 && i <= c.n1 - c.d1c - 1; ++i) v.push_back({Rational(c.d1e), 1, 1});
  for (int i = 0; i <= c.d2c && i <= c.k - c.n1 - 1; ++i) v.push_back({c.tau * (c.d2c - i), 1, 2});
  return v;
}

inline std::vector<RefIncome> ref_i3(const SystemConfig& c) {
  std::vector<RefIncome> v;
  for (int i = 0; i <= c.d2c && i <= c.k - c.d1c - 2; ++i) v.push_back({c.tau * (c.d2c - i), 1, 2});
  return v;
}

/// Smallest alpha with sum_j min(c_j beta, w_j alpha) + padding * alpha >= M,
/// found by walking the kinks of the left-hand side in alpha. Empty when the
/// left-hand side saturates below M.
inline std::optional<Rational> ref_min_alpha(const std::vector<RefIncome>& incomes, int padding,
                                             const Rational& file_size, const Rational& beta) {
  std::vector<Rational> kinks;
  for (const auto& in : incomes) kinks.push_back(in.coeff * beta / in.weight);
  std::sort(kinks.begin(), kinks.end());
  auto lhs = [&](const Rational& a) {
    Rational s = padding * a;
    for (const auto& in : incomes) s += min_of(in.coeff * beta, in.weight * a);
    return s;
  };
  Rational prev = 0;
  for (const auto& kink : kinks) {
    if (lhs(kink) >= file_size) {
      // linear on [prev, kink]
      const Rational lo = lhs(prev);
      const Rational hi = lhs(kink);
      if (hi == lo) return prev;
      return prev + (file_size - lo) * (kink - prev) / (hi - lo);
    }
    prev = kink;
  }
  if (padding == 0) return std::nullopt;
  return prev + (file_size - lhs(prev)) / padding;
}

/// Symmetric mincut lower bound sum_{i<k} min((d - i) beta, alpha).
inline Rational ref_symmetric_mincut(int k, int d, const Rational& alpha, const Rational& beta) {
  Rational s = 0;
  for (int i = 0; i < k; ++i) s += min_of(Rational(d - i) * beta, alpha);
  return s;
}

/// Capacity of the minimum S-T cut by enumerating every vertex bipartition.
inline Rational brute_force_cut(const FlowGraph& g) {
  const int v = g.vertex_count;
  std::vector<int> others;
  for (int x = 0; x < v; ++x)
    if (x != g.source && x != g.sink) others.push_back(x);
  std::optional<Rational> best;
  const std::uint64_t masks = 1ULL << others.size();
  std::vector<char> source_side(static_cast<std::size_t>(v));
  for (std::uint64_t m = 0; m < masks; ++m) {
    std::fill(source_side.begin(), source_side.end(), 0);
    source_side[static_cast<std::size_t>(g.source)] = 1;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (m >> i & 1) source_side[static_cast<std::size_t>(others[i])] = 1;
    Rational cut = 0;
    for (const auto& e : g.edges)
      if (source_side[static_cast<std::size_t>(e.from)] && !source_side[static_cast<std::size_t>(e.to)])
        cut += e.capacity;
    if (!best || cut < *best) best = cut;
  }
  return *best;
}

/// The repair history of the [4,2,3] example: node 0 fails and is rebuilt
/// from 1, 2, 3; then node 1 fails and is rebuilt from 2, 3 and the first
/// newcomer. The collector reads both newcomers.
inline RepairHistory four_node_history() {
  RepairHistory h;
  h.events.push_back({0, Rack::One, {1, 2, 3}});
  h.events.push_back({1, Rack::One, {2, 3, 4}});
  return h;
}

inline const std::vector<int>& four_node_collectors() {
  static const std::vector<int> dc{4, 5};
  return dc;
}

}  // namespace dss::testing
