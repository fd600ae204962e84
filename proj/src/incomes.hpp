#pragma once

#include <vector>

#include "model.hpp"

namespace dss {

/// Which part of the adversarial newcomer set an income came from.
enum class IncomeSource {
  LeadingChain,  // I1: the first d1c + 1 rack-1 newcomers
  MixedTail,     // I2: remaining rack-1 newcomers, then rack-2 newcomers
  Rack2Tail,     // I3: rack-2 newcomers only
  Sequence,      // symmetric / static-cost newcomer sequence
};

/// Information a newcomer receives from outside the cut, as coeff * beta_e.
struct Income {
  Rational coeff;
  Rack rack = Rack::One;
  Rational weight{1};  // storage of that node, in units of alpha
  IncomeSource source = IncomeSource::LeadingChain;

  Rational normalized() const { return coeff / weight; }
  bool operator==(const Income&) const = default;
};

enum class MultisetOrigin { LeadingAndMixed, LeadingAndRack2, Sequence };

/// The k incomes of a candidate min-cut newcomer set.
///
/// `slots` is k. Entries removed by trimming, or never produced because a
/// range in the income formulas was degenerate, are the `slots -
/// entries.size()` padding terms: they count as storage-bound (weight 1).
struct IncomeMultiset {
  std::vector<Income> entries;
  MultisetOrigin origin = MultisetOrigin::Sequence;
  int deleted_count = 0;
  int slots = 0;

  int padding() const { return slots - static_cast<int>(entries.size()); }
  Rational max_coeff() const;
  Rational max_normalized() const;
};

/// I1 = {((d1c - i) tau + d1e) | i = 0..min(d1c, k-1)}, rack 1, index order.
std::vector<Income> leading_chain_incomes(const SystemConfig& c);

/// I2 = {d1e | i = 1..min(k-d1c-1, n1-d1c-1)} followed by
///      {(d2c - i) tau | i = 0..min(d2c, k-n1-1)}; empty ranges give nothing.
std::vector<Income> mixed_tail_incomes(const SystemConfig& c);

/// I3 = {(d2c - i) tau | i = 0..min(d2c, k-d1c-2)}, rack 2.
std::vector<Income> rack2_tail_incomes(const SystemConfig& c);

/// Incomes of a newcomer sequence for the symmetric and static-cost models:
/// newcomer i loses one helper link to each earlier newcomer of the cut,
/// cheap links first. `groups[i]` is the group of the i-th newcomer.
std::vector<Income> sequence_incomes(const SystemConfig& c, const std::vector<Rack>& groups);

/// Storage weight of a rack-2 node for this variant (gamma2/gamma1 for the
/// non-homogeneous model, 1 otherwise).
Rational rack2_weight(const SystemConfig& c);

/// Every candidate multiset for the config, weighted and sorted.
///   two-rack: I1 u I2 then I1 u I3 (two entries, possibly equal)
///   symmetric: the single chain {d, d-1, ..., d-k+1}
///   static: one multiset per distinct cheap/expensive newcomer sequence
/// Throws Error(InvalidConfig) if a candidate would be empty.
std::vector<IncomeMultiset> candidate_multisets(const SystemConfig& c);

/// Removes the largest I2/I3 incomes while max(coeff) > gamma1_coeff.
/// I1 entries are never removed.
IncomeMultiset trim_traditional(IncomeMultiset ms, const Rational& gamma1_coeff);

/// Total order on incomes: ascending coeff/weight; ties put rack 1 first, then
/// the larger weight. Entries equal under this order keep input order.
bool income_before(const Income& a, const Income& b);

/// Sorts entries by income_before (stable), giving the ordered list L / Ln.
IncomeMultiset sort_incomes(IncomeMultiset ms);

/// Sum over entries of min(coeff * beta_e, weight * alpha), plus alpha for each
/// padding slot: the cut value of this newcomer set.
Rational mincut_value(const IncomeMultiset& ms, const Rational& alpha, const Rational& beta_e);

}  // namespace dss
