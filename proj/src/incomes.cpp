#include "incomes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace dss {
namespace {

Income make_income(Rational coeff, Rack rack, IncomeSource source) {
  Income in;
  in.coeff = std::move(coeff);
  in.rack = rack;
  in.source = source;
  return in;
}

// Static-cost sequences: the state after some newcomers is (cheap-group count,
// expensive-group count); the incomes seen so far are kept sorted so paths
// reaching the same multiset collapse.
using Path = std::vector<Rational>;

bool dominates(const Path& a, const Path& b) {
  // a (sorted) elementwise <= b (sorted): b's cut is never smaller than a's.
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<Path> pareto_minimal(std::vector<Path> paths) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  std::vector<Path> keep;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < paths.size() && !dominated; ++j)
      dominated = j != i && dominates(paths[j], paths[i]);
    if (!dominated) keep.push_back(paths[i]);
  }
  return keep;
}

Rational sequence_income(const SystemConfig& c, int cheap_cut, int expensive_cut) {
  const int lost_cheap = std::min(c.d1c, cheap_cut);
  const int lost_expensive = std::min(c.d1e, expensive_cut);
  return c.tau * (c.d1c - lost_cheap) + (c.d1e - lost_expensive);
}

std::vector<Path> static_paths(const SystemConfig& c) {
  // frontier[(p1, p2)] = Pareto-minimal sorted income lists
  std::map<std::pair<int, int>, std::vector<Path>> frontier;
  frontier[{0, 0}] = {Path{}};
  for (int step = 0; step < c.k; ++step) {
    std::map<std::pair<int, int>, std::vector<Path>> next;
    for (const auto& [state, paths] : frontier) {
      const auto [p1, p2] = state;
      const Rational income = sequence_income(c, p1, p2);
      for (int group = 1; group <= 2; ++group) {
        const int q1 = p1 + (group == 1 ? 1 : 0);
        const int q2 = p2 + (group == 2 ? 1 : 0);
        if (q1 > c.n1 || q2 > c.n2) continue;
        auto& bucket = next[{q1, q2}];
        for (const Path& p : paths) {
          Path extended = p;
          extended.insert(std::upper_bound(extended.begin(), extended.end(), income), income);
          bucket.push_back(std::move(extended));
        }
      }
    }
    for (auto& [state, paths] : next) paths = pareto_minimal(std::move(paths));
    frontier = std::move(next);
  }
  std::vector<Path> all;
  for (auto& [state, paths] : frontier)
    for (auto& p : paths) all.push_back(std::move(p));
  return pareto_minimal(std::move(all));
}

IncomeMultiset finish(std::vector<Income> entries, MultisetOrigin origin, const SystemConfig& c) {
  if (entries.empty()) throw Error(ErrorKind::InvalidConfig, "empty income multiset");
  IncomeMultiset ms;
  ms.entries = std::move(entries);
  ms.origin = origin;
  ms.slots = c.k;
  return sort_incomes(std::move(ms));
}

}  // namespace

Rational IncomeMultiset::max_coeff() const {
  Rational m = 0;
  for (const auto& e : entries) m = max_of(m, e.coeff);
  return m;
}

Rational IncomeMultiset::max_normalized() const {
  Rational m = 0;
  for (const auto& e : entries) m = max_of(m, e.normalized());
  return m;
}

std::vector<Income> leading_chain_incomes(const SystemConfig& c) {
  std::vector<Income> out;
  const int last = std::min(c.d1c, c.k - 1);
  for (int i = 0; i <= last; ++i)
    out.push_back(make_income(c.tau * (c.d1c - i) + c.d1e, Rack::One, IncomeSource::LeadingChain));
  return out;
}

std::vector<Income> mixed_tail_incomes(const SystemConfig& c) {
  std::vector<Income> out;
  const int rack1_last = std::min(c.k - c.d1c - 1, c.n1 - c.d1c - 1);
  for (int i = 1; i <= rack1_last; ++i)
    out.push_back(make_income(Rational(c.d1e), Rack::One, IncomeSource::MixedTail));
  const int rack2_last = std::min(c.d2c, c.k - c.n1 - 1);
  for (int i = 0; i <= rack2_last; ++i)
    out.push_back(make_income(c.tau * (c.d2c - i), Rack::Two, IncomeSource::MixedTail));
  return out;
}

std::vector<Income> rack2_tail_incomes(const SystemConfig& c) {
  std::vector<Income> out;
  const int last = std::min(c.d2c, c.k - c.d1c - 2);
  for (int i = 0; i <= last; ++i)
    out.push_back(make_income(c.tau * (c.d2c - i), Rack::Two, IncomeSource::Rack2Tail));
  return out;
}

std::vector<Income> sequence_incomes(const SystemConfig& c, const std::vector<Rack>& groups) {
  std::vector<Income> out;
  int p1 = 0;
  int p2 = 0;
  for (Rack g : groups) {
    out.push_back(make_income(sequence_income(c, p1, p2), g, IncomeSource::Sequence));
    (g == Rack::One ? p1 : p2) += 1;
  }
  return out;
}

Rational rack2_weight(const SystemConfig& c) {
  if (c.variant != Variant::TwoRackNonHomogeneous) return Rational(1);
  return derive_bandwidths(c).storage_weight;
}

std::vector<IncomeMultiset> candidate_multisets(const SystemConfig& c) {
  std::vector<IncomeMultiset> out;
  switch (c.variant) {
    case Variant::Symmetric: {
      std::vector<Rack> groups(static_cast<std::size_t>(c.k), Rack::One);
      out.push_back(finish(sequence_incomes(c, groups), MultisetOrigin::Sequence, c));
      break;
    }
    case Variant::StaticCost: {
      for (const Path& p : static_paths(c)) {
        std::vector<Income> entries;
        for (const Rational& v : p) entries.push_back(make_income(v, Rack::One, IncomeSource::Sequence));
        out.push_back(finish(std::move(entries), MultisetOrigin::Sequence, c));
      }
      break;
    }
    case Variant::TwoRackTraditional:
    case Variant::TwoRackNonHomogeneous: {
      const Rational w2 = rack2_weight(c);
      auto weighted = [&](std::vector<Income> v) {
        for (auto& e : v) e.weight = e.rack == Rack::Two ? w2 : Rational(1);
        return v;
      };
      const auto leading = leading_chain_incomes(c);
      auto with_mixed = leading;
      for (auto& e : mixed_tail_incomes(c)) with_mixed.push_back(e);
      auto with_rack2 = leading;
      for (auto& e : rack2_tail_incomes(c)) with_rack2.push_back(e);
      out.push_back(finish(weighted(std::move(with_mixed)), MultisetOrigin::LeadingAndMixed, c));
      out.push_back(finish(weighted(std::move(with_rack2)), MultisetOrigin::LeadingAndRack2, c));
      break;
    }
  }
  return out;
}

IncomeMultiset trim_traditional(IncomeMultiset ms, const Rational& gamma1_coeff) {
  for (;;) {
    if (!(ms.max_coeff() > gamma1_coeff)) break;
    // largest removable entry; last one among equals so the order of the rest is kept
    auto victim = ms.entries.end();
    for (auto it = ms.entries.begin(); it != ms.entries.end(); ++it) {
      if (it->source == IncomeSource::LeadingChain) continue;
      if (victim == ms.entries.end() || it->coeff >= victim->coeff) victim = it;
    }
    if (victim == ms.entries.end() || !(victim->coeff > gamma1_coeff)) break;
    ms.entries.erase(victim);
    ++ms.deleted_count;
  }
  return ms;
}

bool income_before(const Income& a, const Income& b) {
  const int c = cmp(a.normalized(), b.normalized());
  if (c != 0) return c < 0;
  if (a.rack != b.rack) return a.rack == Rack::One;
  return a.weight > b.weight;
}

IncomeMultiset sort_incomes(IncomeMultiset ms) {
  std::stable_sort(ms.entries.begin(), ms.entries.end(), income_before);
  return ms;
}

Rational mincut_value(const IncomeMultiset& ms, const Rational& alpha, const Rational& beta_e) {
  Rational total = alpha * ms.padding();
  for (const auto& e : ms.entries) total += min_of(e.coeff * beta_e, e.weight * alpha);
  return total;
}

}  // namespace dss
