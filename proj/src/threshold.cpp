#include "threshold.hpp"

#include <algorithm>
#include <utility>

#include "parallel.hpp"

namespace dss {
namespace {

// alpha = intercept - slope * beta
struct Affine {
  Rational intercept;
  Rational slope;

  explicit Affine(const CurveSegment& s)
      : intercept(s.file_size / s.divisor), slope(s.offset / s.divisor) {}
  Rational at(const Rational& beta) const { return intercept - slope * beta; }
  bool operator==(const Affine&) const = default;
};

const CurveSegment* find_segment(const std::vector<CurveSegment>& segs, const Rational& beta) {
  for (const auto& s : segs)
    if (s.contains(beta)) return &s;
  return nullptr;
}

struct Envelope {
  std::vector<CurveSegment> segments;  // index order (decreasing beta)
  bool disagree = false;
};

Envelope upper_envelope(const std::vector<std::vector<CurveSegment>>& curves) {
  Envelope env;
  if (curves.size() == 1) {
    env.segments = curves.front();
    return env;
  }

  Rational start = curves.front().back().beta_lo;
  for (const auto& c : curves) {
    if (c.back().beta_lo != start) env.disagree = true;
    start = max_of(start, c.back().beta_lo);
  }

  std::vector<Rational> points{start};
  for (const auto& c : curves)
    for (const auto& s : c)
      if (s.beta_lo > start) points.push_back(s.beta_lo);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  auto probe = [&](std::size_t j, const std::vector<Rational>& pts) {
    return j + 1 < pts.size() ? Rational((pts[j] + pts[j + 1]) / 2) : Rational(pts[j] + 1);
  };

  // crossings strictly inside elementary intervals
  std::vector<Rational> refined = points;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Rational mid = probe(j, points);
    std::vector<Affine> pieces;
    for (const auto& c : curves) pieces.emplace_back(*find_segment(c, mid));
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      for (std::size_t b = a + 1; b < pieces.size(); ++b) {
        if (pieces[a].slope == pieces[b].slope) continue;
        Rational x = (pieces[a].intercept - pieces[b].intercept) / (pieces[a].slope - pieces[b].slope);
        const bool inside = x > points[j] && (j + 1 == points.size() || x < points[j + 1]);
        if (inside) refined.push_back(std::move(x));
      }
    }
  }
  std::sort(refined.begin(), refined.end());
  refined.erase(std::unique(refined.begin(), refined.end()), refined.end());

  std::vector<CurveSegment> ascending;
  for (std::size_t j = 0; j < refined.size(); ++j) {
    const Rational mid = probe(j, refined);
    const CurveSegment* best = nullptr;
    Rational best_alpha;
    for (const auto& c : curves) {
      const CurveSegment* s = find_segment(c, mid);
      Rational a = s->alpha_at(mid);
      if (best && a != best_alpha) env.disagree = true;
      if (!best || a > best_alpha) {
        best = s;
        best_alpha = std::move(a);
      }
    }
    CurveSegment piece = *best;
    piece.beta_lo = refined[j];
    piece.beta_hi = j + 1 < refined.size() ? std::optional<Rational>(refined[j + 1]) : std::nullopt;
    if (!ascending.empty() && Affine(ascending.back()) == Affine(piece)) {
      ascending.back().beta_hi = piece.beta_hi;
    } else {
      ascending.push_back(std::move(piece));
    }
  }
  // merged pieces keep the lower label; walk back to index order
  env.segments.assign(ascending.rbegin(), ascending.rend());
  return env;
}

bool same_curve(const std::vector<CurveSegment>& a, const std::vector<CurveSegment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].beta_lo != b[i].beta_lo || a[i].beta_hi != b[i].beta_hi) return false;
    if (!(Affine(a[i]) == Affine(b[i]))) return false;
  }
  return true;
}

}  // namespace

DenominatorRule default_rule(Variant v) {
  return v == Variant::TwoRackNonHomogeneous ? DenominatorRule::RemainingWeight
                                             : DenominatorRule::RemainingSlots;
}

std::vector<CurveSegment> multiset_segments(const IncomeMultiset& ms, const Rational& file_size,
                                            DenominatorRule rule, int candidate) {
  const auto& e = ms.entries;
  const int m = static_cast<int>(e.size());

  // suffix weights, padding counted as weight 1
  std::vector<Rational> suffix(static_cast<std::size_t>(m) + 1);
  suffix[static_cast<std::size_t>(m)] = ms.padding();
  for (int i = m - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + e[static_cast<std::size_t>(i)].weight;

  std::vector<CurveSegment> out;
  Rational prefix = 0;
  std::optional<Rational> upper;  // f(i-1); empty = +infinity
  for (int i = 0; i < m; ++i) {
    const Income& in = e[static_cast<std::size_t>(i)];
    CurveSegment s;
    s.index = i;
    s.candidate = candidate;
    s.offset = prefix;
    s.divisor = rule == DenominatorRule::RemainingSlots ? Rational(ms.slots - i)
                                                        : suffix[static_cast<std::size_t>(i)];
    s.file_size = file_size;
    const Rational denom = s.offset + s.divisor * in.normalized();
    prefix += in.coeff;
    if (denom <= 0) continue;  // f(i) = +infinity: empty interval
    Rational f = file_size / denom;
    if (upper && f >= *upper) continue;
    s.beta_lo = f;
    s.beta_hi = upper;
    upper = std::move(f);
    out.push_back(std::move(s));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidConfig, "income multiset yields an empty curve");
  return out;
}

Rational TradeoffCurve::alpha_at(const Rational& beta_e) const {
  return segment_at(beta_e).alpha_at(beta_e);
}

const CurveSegment& TradeoffCurve::segment_at(const Rational& beta_e) const {
  if (beta_e < wall())
    throw Error(ErrorKind::Infeasible, "infeasible bandwidth: beta_e = " + to_fraction_string(beta_e) +
                                           " is below the minimum-bandwidth point " +
                                           to_fraction_string(wall()));
  for (const auto& s : segments)
    if (s.contains(beta_e)) return s;
  throw Error(ErrorKind::Internal, "curve segments do not tile the domain");
}

std::vector<Rational> TradeoffCurve::breakpoints() const {
  std::vector<Rational> out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) out.push_back(it->beta_lo);
  return out;
}

TradeoffCurve build_curve(const SystemConfig& c, const CurveOptions& options) {
  const DerivedBandwidths bw = derive_bandwidths(c);
  TradeoffCurve curve;
  curve.variant = c.variant;
  curve.file_size = c.file_size;
  curve.gamma1_coeff = bw.gamma1_coeff;
  curve.gamma2_coeff = bw.gamma2_coeff;
  curve.rack2_weight = options.unit_weights ? Rational(1) : rack2_weight(c);

  const DenominatorRule rule = options.rule.value_or(default_rule(c.variant));
  std::vector<std::vector<CurveSegment>> per_candidate;
  for (IncomeMultiset ms : candidate_multisets(c)) {
    if (options.unit_weights)
      for (auto& e : ms.entries) e.weight = 1;
    if (c.variant == Variant::TwoRackTraditional && options.trim)
      ms = trim_traditional(std::move(ms), bw.gamma1_coeff);
    ms = sort_incomes(std::move(ms));
    per_candidate.push_back(multiset_segments(ms, c.file_size, rule,
                                              static_cast<int>(curve.candidates.size())));
    curve.candidates.push_back(std::move(ms));
  }

  Envelope env = upper_envelope(per_candidate);
  curve.segments = std::move(env.segments);
  curve.candidates_disagree = env.disagree;

  // binding candidate: one whose own curve equals the envelope, else the MBR one
  curve.selected_candidate = curve.segments.back().candidate;
  for (std::size_t i = 0; i < per_candidate.size(); ++i) {
    if (!env.disagree || same_curve(per_candidate[i], curve.segments)) {
      curve.selected_candidate = static_cast<int>(i);
      break;
    }
  }
  curve.deleted_count = curve.candidates[static_cast<std::size_t>(curve.selected_candidate)].deleted_count;

  curve.msr = msr_point(curve);
  curve.mbr = mbr_point(curve);
  curve.feasible = check_feasibility(curve, c).feasible;
  return curve;
}

IncomeMultiset select_mincut_multiset(const SystemConfig& c) {
  TradeoffCurve curve = build_curve(c);
  return curve.candidates[static_cast<std::size_t>(curve.selected_candidate)];
}

Rational threshold_symmetric(const SystemConfig& c, const Rational& beta) {
  if (c.variant != Variant::Symmetric)
    throw Error(ErrorKind::InvalidArgument, "threshold_symmetric needs a symmetric config");
  return build_curve(c).alpha_at(beta);
}

CurvePoint mbr_point(const TradeoffCurve& curve) {
  const CurveSegment& last = curve.segments.back();
  return {last.beta_lo, last.alpha_lo()};
}

CurvePoint msr_point(const TradeoffCurve& curve) {
  const CurveSegment& first = curve.segments.front();
  return {first.beta_lo, first.alpha_lo()};
}

FeasibilityReport check_feasibility(const TradeoffCurve& curve, const SystemConfig& c) {
  const DerivedBandwidths bw = derive_bandwidths(c);
  const Rational weight = curve.rack2_weight;
  FeasibilityReport report;
  for (std::size_t i = 0; i < curve.segments.size(); ++i) {
    const CurveSegment& s = curve.segments[i];
    SegmentFeasibility v;
    v.segment = static_cast<int>(i);
    std::vector<Rational> ends{s.beta_lo};
    if (s.beta_hi) ends.push_back(*s.beta_hi);
    for (const Rational& beta : ends) {
      const Rational alpha = s.alpha_at(beta);
      if (bw.gamma1_coeff * beta < alpha) v.rack1_ok = false;
      if (bw.gamma2_coeff * beta < weight * alpha) v.rack2_ok = false;
    }
    report.feasible = report.feasible && v.rack1_ok && v.rack2_ok;
    report.segments.push_back(v);
  }
  return report;
}

ComparisonReport compare(const SystemConfig& a, const SystemConfig& b,
                         const CompareOptions& options) {
  SystemConfig b_as_a = b;
  b_as_a.variant = a.variant;
  if (!same_parameters(a, b_as_a))
    throw Error(ErrorKind::InvalidArgument,
                "compared configs must share every parameter except the model variant");

  ComparisonReport r;
  r.config_a = a;
  r.config_b = b;
  r.curve_a = build_curve(a);
  r.curve_b = build_curve(b);

  std::vector<Rational> bps = r.curve_a.breakpoints();
  for (auto& x : r.curve_b.breakpoints()) bps.push_back(x);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<Rational> grid;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    grid.push_back(bps[i]);
    if (i + 1 < bps.size()) {
      for (int s = 1; s <= options.samples; ++s)
        grid.push_back(bps[i] + (bps[i + 1] - bps[i]) * s / (options.samples + 1));
    }
  }
  grid.push_back(bps.back() * 2);

  r.grid.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    GridPoint& p = r.grid[i];
    p.beta_e = grid[i];
    if (grid[i] >= r.curve_a.wall()) p.alpha_a = r.curve_a.alpha_at(grid[i]);
    if (grid[i] >= r.curve_b.wall()) p.alpha_b = r.curve_b.alpha_at(grid[i]);
  });

  for (const auto& p : r.grid) {
    if (p.alpha_a.has_value() != p.alpha_b.has_value() || (p.alpha_a && *p.alpha_a != *p.alpha_b)) {
      ++r.differing_points;
      r.identical = false;
    }
    if (p.alpha_a && p.alpha_b) {
      if (*p.alpha_b > *p.alpha_a) r.b_le_a = false;
      if (*p.alpha_a > *p.alpha_b) r.a_le_b = false;
    }
  }
  return r;
}

}  // namespace dss
