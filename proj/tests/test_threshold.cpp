#include <doctest.h>

#include "support.hpp"

using namespace dss;
using namespace dss::testing;

namespace {

const std::vector<Rational> kTaus{1, Rational(3, 2), 2, 4};

struct Expected {
  Rational beta;
  Rational alpha;
};

void check_breakpoints(const TradeoffCurve& curve, const std::vector<Expected>& ascending) {
  const auto bps = curve.breakpoints();
  REQUIRE(bps.size() == ascending.size());
  for (std::size_t i = 0; i < bps.size(); ++i) {
    CHECK(bps[i] == ascending[i].beta);
    CHECK(curve.alpha_at(bps[i]) == ascending[i].alpha);
  }
}

// Reference incomes of each candidate, with trimming for the traditional model.
struct RefCandidate {
  std::vector<RefIncome> incomes;
  int padding = 0;
};

std::vector<RefCandidate> ref_candidates(const SystemConfig& c, bool trim, bool unit_weights) {
  const auto bw = derive_bandwidths(c);
  const Rational w2 = c.variant == Variant::TwoRackNonHomogeneous && !unit_weights ? bw.storage_weight : Rational(1);
  std::vector<RefCandidate> out;
  for (const auto& tail : {ref_i2(c), ref_i3(c)}) {
    RefCandidate cand;
    cand.incomes = ref_i1(c);
    for (auto in : tail) {
      if (trim && c.variant == Variant::TwoRackTraditional && in.coeff > bw.gamma1_coeff) continue;
      if (in.rack == 2) in.weight = w2;
      cand.incomes.push_back(in);
    }
    cand.padding = c.k - static_cast<int>(cand.incomes.size());
    out.push_back(cand);
  }
  return out;
}

std::vector<RefCandidate> ref_static_candidates(const SystemConfig& c) {
  std::vector<RefCandidate> out;
  for (unsigned mask = 0; mask < (1u << c.k); ++mask) {
    int p1 = 0;
    int p2 = 0;
    RefCandidate cand;
    for (int i = 0; i < c.k; ++i) {
      const Rational income = c.tau * (c.d1c - std::min(p1, c.d1c)) + (c.d1e - std::min(p2, c.d1e));
      cand.incomes.push_back({income, 1, 1});
      (mask >> i & 1 ? p2 : p1) += 1;
    }
    if (p1 <= c.n1 && p2 <= c.n2) out.push_back(cand);
  }
  return out;
}

std::optional<Rational> ref_curve(const std::vector<RefCandidate>& cands, const Rational& M, const Rational& beta) {
  std::optional<Rational> best;
  for (const auto& cand : cands) {
    auto a = ref_min_alpha(cand.incomes, cand.padding, M, beta);
    if (!a) return std::nullopt;
    if (!best || *a > *best) best = a;
  }
  return best;
}

std::vector<Rational> probes(const TradeoffCurve& curve, Gen& gen) {
  std::vector<Rational> out = curve.breakpoints();
  const auto bps = curve.breakpoints();
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    out.push_back(bps[i] + (bps[i + 1] - bps[i]) * gen.positive_rational(9, 10) / 10);
  out.push_back(bps.back() * 2);
  out.push_back(bps.back() + gen.positive_rational(50, 3));
  return out;
}

}  // namespace

TEST_CASE("reference two-rack system, non-homogeneous curve") {
  const auto curve = build_curve(reference_two_rack(Variant::TwoRackNonHomogeneous));
  check_breakpoints(curve, {{Rational(1, 93), Rational(5, 31)},
                            {Rational(3, 274), Rational(20, 137)},
                            {Rational(9, 766), Rational(50, 383)},
                            {Rational(5, 423), Rational(55, 423)},
                            {Rational(9, 655), Rational(16, 131)},
                            {Rational(5, 294), Rational(5, 42)}});
  CHECK(curve.mbr == CurvePoint{Rational(1, 93), Rational(5, 31)});
  CHECK(curve.msr == CurvePoint{Rational(5, 294), Rational(5, 42)});
  CHECK(curve.mbr.alpha == curve.gamma1_coeff * curve.mbr.beta_e);
  CHECK(curve.feasible);
  CHECK(curve.deleted_count == 0);
}

TEST_CASE("reference two-rack system, traditional curve after trimming") {
  const auto curve = build_curve(reference_two_rack(Variant::TwoRackTraditional));
  check_breakpoints(curve, {{Rational(1, 78), Rational(5, 26)},
                            {Rational(1, 62), Rational(11, 62)},
                            {Rational(1, 42), Rational(1, 6)}});
  CHECK(curve.deleted_count == 3);
  CHECK(curve.feasible);
  CHECK(curve.msr.alpha == Rational(1, 6));
}

TEST_CASE("untrimmed traditional curves can be infeasible") {
  CurveOptions raw;
  raw.trim = false;
  CHECK_FALSE(build_curve(reference_two_rack(Variant::TwoRackTraditional), raw).feasible);
  const auto ex = build_curve(infeasible_example(Variant::TwoRackTraditional), raw);
  CHECK_FALSE(ex.feasible);
  const auto report = check_feasibility(ex, infeasible_example(Variant::TwoRackTraditional));
  bool some_rack1_violation = false;
  for (const auto& s : report.segments) some_rack1_violation = some_rack1_violation || !s.rack1_ok;
  CHECK(some_rack1_violation);

  const auto trimmed = build_curve(infeasible_example(Variant::TwoRackTraditional));
  CHECK(trimmed.feasible);
  CHECK(trimmed.deleted_count == 1);
  CHECK(trimmed.gamma1_coeff == 5);
  CHECK(trimmed.gamma2_coeff == 7);
}

TEST_CASE("symmetric [4,2,3] curve") {
  const auto curve = build_curve(four_node());
  check_breakpoints(curve, {{Rational(1, 5), Rational(3, 5)}, {Rational(1, 4), Rational(1, 2)}});
  CHECK(threshold_symmetric(four_node(), Rational(1, 4)) == Rational(1, 2));
  CHECK(threshold_symmetric(four_node(), 7) == Rational(1, 2));
  CHECK_THROWS_AS(threshold_symmetric(four_node(), Rational(1, 6)), Error);
  CHECK_THROWS_AS(threshold_symmetric(reference_two_rack(Variant::TwoRackTraditional), 1), Error);
}

TEST_CASE("symmetric d = k: storage point holds M/k and the bandwidth point has alpha = gamma") {
  for (int k = 1; k <= 5; ++k) {
    const auto c = symmetric(k + 2, k, k, 6);
    const auto curve = build_curve(c);
    CHECK(curve.msr.alpha == make_rational(6, k));
    CHECK(curve.mbr.alpha == curve.gamma1_coeff * curve.mbr.beta_e);
    CHECK(curve.gamma1_coeff == k);
  }
}

TEST_CASE("below the wall is infeasible") {
  const auto curve = build_curve(reference_two_rack(Variant::TwoRackNonHomogeneous));
  try {
    (void)curve.alpha_at(Rational(1, 94));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
}

TEST_CASE("curves match the reference threshold") {
  Gen gen(909);
  for (Variant v : {Variant::TwoRackTraditional, Variant::TwoRackNonHomogeneous}) {
    for (int i = 0; i < 400; ++i) {
      auto c = gen.two_rack_config(v, 6, 6, kTaus);
      c.file_size = gen.positive_rational(7, 3);
      const auto curve = build_curve(c);
      const auto cands = ref_candidates(c, true, false);
      for (const auto& beta : probes(curve, gen)) {
        const auto expected = ref_curve(cands, c.file_size, beta);
        REQUIRE(expected.has_value());
        CHECK(curve.alpha_at(beta) == *expected);
      }
      // just below the wall at least one candidate cannot reach M
      const Rational below = curve.wall() * 999 / 1000;
      const auto under = ref_curve(cands, c.file_size, below);
      if (under) CHECK(*under > min_of(curve.gamma1_coeff, curve.gamma2_coeff / curve.rack2_weight) * below);
    }
  }
}

TEST_CASE("static-cost curves match the reference over every group sequence") {
  Gen gen(919);
  int tested = 0;
  for (const auto& c : all_configs(Variant::StaticCost, 6, 4, {1, 2})) {
    const auto curve = build_curve(c);
    const auto cands = ref_static_candidates(c);
    for (const auto& beta : probes(curve, gen)) {
      const auto expected = ref_curve(cands, c.file_size, beta);
      REQUIRE(expected.has_value());
      CHECK(curve.alpha_at(beta) == *expected);
    }
    ++tested;
  }
  CHECK(tested > 50);
}

TEST_CASE("symmetric curves match the closed-form sum") {
  Gen gen(929);
  for (const auto& c : all_configs(Variant::Symmetric, 9, 8, {1})) {
    const auto curve = build_curve(c);
    for (const auto& beta : probes(curve, gen)) {
      const Rational alpha = curve.alpha_at(beta);
      CHECK(ref_symmetric_mincut(c.k, c.d, alpha, beta) == c.file_size);
      if (alpha > 0) CHECK(ref_symmetric_mincut(c.k, c.d, alpha * 999 / 1000, beta) < c.file_size);
    }
  }
}

TEST_CASE("curves are continuous, non-increasing and flat past the storage point") {
  Gen gen(939);
  for (int i = 0; i < 600; ++i) {
    const Variant v = i % 2 ? Variant::TwoRackTraditional : Variant::TwoRackNonHomogeneous;
    const auto c = gen.two_rack_config(v, 7, 6, kTaus);
    const auto curve = build_curve(c);
    const auto& segs = curve.segments;
    CHECK_FALSE(segs.front().beta_hi.has_value());
    CHECK(segs.front().offset == 0);
    for (std::size_t s = 0; s + 1 < segs.size(); ++s) {
      REQUIRE(segs[s + 1].beta_hi.has_value());
      CHECK(*segs[s + 1].beta_hi == segs[s].beta_lo);
      CHECK(segs[s + 1].alpha_hi() == segs[s].alpha_lo());
      CHECK(segs[s + 1].alpha_lo() > segs[s + 1].alpha_hi());
    }
    auto pts = probes(curve, gen);
    std::sort(pts.begin(), pts.end());
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) CHECK(curve.alpha_at(pts[p]) >= curve.alpha_at(pts[p + 1]));
    CHECK(curve.alpha_at(curve.msr.beta_e * 5) == curve.msr.alpha);
  }
}

TEST_CASE("minimum storage equals M divided by the total storage weight") {
  Gen gen(949);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const auto c = gen.two_rack_config(Variant::TwoRackTraditional, 7, 6, kTaus);
    const auto curve = build_curve(c);
    bool positive = true;
    for (const auto& ms : curve.candidates)
      for (const auto& e : ms.entries) positive = positive && e.coeff > 0;
    if (!positive) continue;
    CHECK(curve.msr.alpha == c.file_size / c.k);
    ++checked;
  }
  CHECK(checked > 200);
  const auto nh = build_curve(reference_two_rack(Variant::TwoRackNonHomogeneous));
  CHECK(nh.msr.alpha == Rational(1) / (3 + 3 * Rational(9, 5)));
}

TEST_CASE("a zero income leaves k - 1 storage-bound terms") {
  // d1e = 0: the third rack-1 newcomer hears only from the first two
  const auto c = validate(two_rack(Variant::TwoRackTraditional, 3, 3, 3, 2, 0, 0, 2));
  REQUIRE(c.d1e == 0);
  const auto curve = build_curve(c);
  CHECK(curve.msr.alpha == Rational(1, 2));
  CHECK(curve.alpha_at(1000) == Rational(1, 2));
}

TEST_CASE("traditional curves are feasible after trimming and store gamma1 at the bandwidth point") {
  Gen gen(959);
  for (int i = 0; i < 600; ++i) {
    const auto c = gen.two_rack_config(Variant::TwoRackTraditional, 7, 6, kTaus);
    const auto curve = build_curve(c);
    CHECK(curve.feasible);
    CHECK(curve.mbr.alpha <= curve.gamma1_coeff * curve.mbr.beta_e);
  }
}

TEST_CASE("non-homogeneous curves respect both rack bandwidths") {
  Gen gen(969);
  for (int i = 0; i < 600; ++i) {
    const auto c = gen.two_rack_config(Variant::TwoRackNonHomogeneous, 7, 6, kTaus);
    const auto curve = build_curve(c);
    CHECK(curve.feasible);
    CHECK(curve.mbr.alpha <= curve.gamma1_coeff * curve.mbr.beta_e);
    CHECK(curve.rack2_weight * curve.mbr.alpha <= curve.gamma2_coeff * curve.mbr.beta_e);
  }
}

TEST_CASE("unit weights reduce the non-homogeneous curve to the untrimmed traditional one") {
  Gen gen(979);
  CurveOptions untrimmed;
  untrimmed.trim = false;
  CurveOptions unit;
  unit.unit_weights = true;
  for (int i = 0; i < 400; ++i) {
    const auto nh = gen.two_rack_config(Variant::TwoRackNonHomogeneous, 7, 6, kTaus);
    auto tr = nh;
    tr.variant = Variant::TwoRackTraditional;
    const auto a = build_curve(nh, unit);
    const auto b = build_curve(tr, untrimmed);
    REQUIRE(a.breakpoints() == b.breakpoints());
    for (const auto& beta : a.breakpoints()) CHECK(a.alpha_at(beta) == b.alpha_at(beta));
  }
}

TEST_CASE("identical racks make the two variants coincide") {
  const auto tr = validate(two_rack(Variant::TwoRackTraditional, 3, 4, 4, 5, 2, 2, 1));
  auto nh = tr;
  nh.variant = Variant::TwoRackNonHomogeneous;
  const auto r = compare(tr, nh, {3, 1});
  CHECK(r.identical);
  CHECK(r.differing_points == 0);
}

TEST_CASE("comparison on the reference two-rack system") {
  const auto r = compare(reference_two_rack(Variant::TwoRackTraditional), reference_two_rack(Variant::TwoRackNonHomogeneous), {4, 1});
  CHECK_FALSE(r.identical);
  CHECK(r.differing_points > 0);
  CHECK(r.curve_a.deleted_count == 3);
  CHECK(r.curve_b.deleted_count == 0);
  for (const auto& p : r.grid) {
    CHECK(p.beta_e >= Rational(1, 93));
    CHECK(p.alpha_b.has_value());
  }
}

TEST_CASE("comparison requires matching parameters") {
  auto other = reference_two_rack(Variant::TwoRackNonHomogeneous);
  other.k = 5;
  CHECK_THROWS_AS(compare(reference_two_rack(Variant::TwoRackTraditional), other), Error);
}

TEST_CASE("comparison is independent of the thread count") {
  const auto a = reference_two_rack(Variant::TwoRackTraditional);
  const auto b = reference_two_rack(Variant::TwoRackNonHomogeneous);
  const auto one = compare(a, b, {16, 1});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = compare(a, b, {16, t});
    REQUIRE(many.grid.size() == one.grid.size());
    for (std::size_t i = 0; i < one.grid.size(); ++i) {
      CHECK(many.grid[i].beta_e == one.grid[i].beta_e);
      CHECK(many.grid[i].alpha_a == one.grid[i].alpha_a);
      CHECK(many.grid[i].alpha_b == one.grid[i].alpha_b);
    }
  }
}

TEST_CASE("file size scales alpha linearly and leaves breakpoints proportional") {
  Gen gen(989);
  for (int i = 0; i < 200; ++i) {
    auto c = gen.two_rack_config(Variant::TwoRackNonHomogeneous, 6, 5, kTaus);
    const auto base = build_curve(c);
    c.file_size = 7;
    const auto scaled = build_curve(c);
    REQUIRE(base.segments.size() == scaled.segments.size());
    CHECK(scaled.msr.alpha == 7 * base.msr.alpha);
    CHECK(scaled.mbr.beta_e == 7 * base.mbr.beta_e);
  }
}

TEST_CASE("the selected candidate is pointwise binding when the candidates differ") {
  Gen gen(999);
  for (int i = 0; i < 300; ++i) {
    const auto c = gen.two_rack_config(Variant::TwoRackNonHomogeneous, 7, 6, kTaus);
    const auto curve = build_curve(c);
    const auto& chosen = curve.candidates[static_cast<std::size_t>(curve.selected_candidate)];
    // at the wall the selected multiset's cut must be exactly M at the curve's alpha
    CHECK(mincut_value(chosen, curve.mbr.alpha, curve.mbr.beta_e) >= c.file_size);
    if (!curve.candidates_disagree)
      CHECK(mincut_value(chosen, curve.msr.alpha, curve.msr.beta_e) == c.file_size);
  }
}
