#pragma once

#include <optional>
#include <vector>

#include "incomes.hpp"

namespace dss {

/// How the storage-bound part of the cut is counted for income index i.
enum class DenominatorRule {
  RemainingSlots,   // k - i (every node stores alpha)
  RemainingWeight,  // sum of weights of entries i.. plus padding (non-homogeneous)
};

/// One affine piece alpha = (M - offset * beta_e) / divisor on
/// [beta_lo, beta_hi); beta_hi empty means +infinity.
struct CurveSegment {
  int index = 0;      // position of the binding income in the sorted list
  int candidate = 0;  // which candidate multiset supplies the piece
  Rational beta_lo;
  std::optional<Rational> beta_hi;
  Rational offset;   // sum of the incomes before `index`
  Rational divisor;  // storage-bound weight from `index` on
  Rational file_size;

  Rational alpha_at(const Rational& beta_e) const {
    return (file_size - offset * beta_e) / divisor;
  }
  Rational alpha_lo() const { return alpha_at(beta_lo); }
  /// alpha at beta_hi; the flat value for the unbounded segment.
  Rational alpha_hi() const { return beta_hi ? alpha_at(*beta_hi) : alpha_at(beta_lo); }
  bool contains(const Rational& beta_e) const {
    return beta_lo <= beta_e && (!beta_hi || beta_e < *beta_hi);
  }
};

struct CurvePoint {
  Rational beta_e;
  Rational alpha;
  bool operator==(const CurvePoint&) const = default;
};

struct TradeoffCurve {
  Variant variant = Variant::TwoRackTraditional;
  Rational file_size;
  Rational gamma1_coeff;
  Rational gamma2_coeff;
  Rational rack2_weight{1};
  // Unbounded minimum-storage segment first, then decreasing beta_e down to
  // the wall at the minimum-bandwidth point.
  std::vector<CurveSegment> segments;
  CurvePoint msr;
  CurvePoint mbr;
  int deleted_count = 0;
  bool feasible = true;
  bool candidates_disagree = false;
  int selected_candidate = 0;
  std::vector<IncomeMultiset> candidates;

  const Rational& wall() const { return segments.back().beta_lo; }
  /// Throws Error(Infeasible) below the wall; clamps to the MSR value above it.
  Rational alpha_at(const Rational& beta_e) const;
  const CurveSegment& segment_at(const Rational& beta_e) const;
  /// Segment start points, ascending (the wall first).
  std::vector<Rational> breakpoints() const;
};

struct CurveOptions {
  bool trim = true;           // traditional model: drop incomes above gamma1
  bool unit_weights = false;  // force every storage weight to 1
  std::optional<DenominatorRule> rule;  // default: by variant
};

DenominatorRule default_rule(Variant v);

/// Segments of the threshold for one sorted multiset, index order.
/// Breakpoints are f(i) = M / (offset(i) + divisor(i) * normalized(i)); pieces
/// whose interval is empty (zero incomes, tied normalized values) are dropped.
std::vector<CurveSegment> multiset_segments(const IncomeMultiset& ms, const Rational& file_size,
                                            DenominatorRule rule, int candidate = 0);

/// The tradeoff curve alpha*(beta_e) of a validated config: pointwise maximum
/// of the per-candidate thresholds (the binding min-cut).
TradeoffCurve build_curve(const SystemConfig& c, const CurveOptions& options = {});

/// The candidate multiset whose threshold is binding: the one that dominates
/// pointwise when there is one, otherwise the one binding at the MBR point.
IncomeMultiset select_mincut_multiset(const SystemConfig& c);

/// Minimal alpha with sum_{i<k} min((d - i) beta, alpha) >= M.
/// Throws Error(Infeasible) for beta below the minimum-bandwidth point.
Rational threshold_symmetric(const SystemConfig& c, const Rational& beta);

CurvePoint mbr_point(const TradeoffCurve& curve);
CurvePoint msr_point(const TradeoffCurve& curve);

struct SegmentFeasibility {
  int segment = 0;
  bool rack1_ok = true;  // gamma1 >= alpha
  bool rack2_ok = true;  // gamma2 >= weight * alpha
};

struct FeasibilityReport {
  std::vector<SegmentFeasibility> segments;
  bool feasible = true;
};

/// Checks gamma1 >= alpha (and gamma2 >= w alpha) at both ends of each
/// segment; affine pieces make the endpoint check exact.
FeasibilityReport check_feasibility(const TradeoffCurve& curve, const SystemConfig& c);

struct GridPoint {
  Rational beta_e;
  std::optional<Rational> alpha_a;  // empty below curve A's wall
  std::optional<Rational> alpha_b;
};

struct ComparisonReport {
  SystemConfig config_a;
  SystemConfig config_b;
  TradeoffCurve curve_a;
  TradeoffCurve curve_b;
  std::vector<GridPoint> grid;
  int differing_points = 0;
  bool identical = true;
  bool b_le_a = true;  // alpha_b <= alpha_a wherever both are defined
  bool a_le_b = true;
};

struct CompareOptions {
  int samples = 0;        // interior grid points per breakpoint gap
  unsigned threads = 1;
};

/// Both configs must agree on every parameter except the variant.
ComparisonReport compare(const SystemConfig& a, const SystemConfig& b,
                         const CompareOptions& options = {});

}  // namespace dss
