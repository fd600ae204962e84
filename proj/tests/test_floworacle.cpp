#include <doctest.h>

#include <functional>
#include <string>

#include "support.hpp"

using namespace dss;
using namespace dss::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("[4,2,3] repair chain") {
  const auto c = four_node();
  const auto g = build_graph(c, four_node_history(), four_node_collectors(), Rational(1, 2), Rational(1, 4));
  CHECK(max_flow(g) == 1);
  CHECK(brute_force_cut(g) == 1);

  Gen gen(11);
  for (int i = 0; i < 20; ++i) {
    const Rational alpha = gen.positive_rational(10, 10);
    const Rational beta = gen.positive_rational(10, 10);
    const auto gi = build_graph(c, four_node_history(), four_node_collectors(), alpha, beta);
    const Rational expected = min_of(3 * beta, alpha) + min_of(2 * beta, alpha);
    CHECK(max_flow(gi) == expected);
    const auto terms = income_decomposition(c, four_node_history(), four_node_collectors(), alpha, beta);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0] == min_of(3 * beta, alpha));
    CHECK(terms[1] == min_of(2 * beta, alpha));
  }
}

TEST_CASE("graph layout") {
  const auto g = build_graph(four_node(), four_node_history(), four_node_collectors(), 1, 1);
  CHECK(g.nodes.size() == 6);
  CHECK(g.vertex_count == 2 * 6 + 2);
  CHECK(g.sink == g.vertex_count - 1);
  CHECK_FALSE(g.nodes[0].live);
  CHECK_FALSE(g.nodes[1].live);
  CHECK(g.nodes[4].newcomer);
  CHECK(g.nodes[4].slot == 0);
  CHECK(g.nodes[5].slot == 1);
  int cheap = 0;
  for (const auto& e : g.edges) cheap += e.kind == EdgeKind::Cheap;
  CHECK(cheap == 6);
}

TEST_CASE("without failures the collector reads k alpha") {
  const auto c = four_node();
  for (const Rational& alpha : {Rational(1, 3), Rational(2), Rational(0)}) {
    const auto g = build_graph(c, {}, {0, 3}, alpha, 1);
    CHECK(max_flow(g) == 2 * alpha);
  }
}

TEST_CASE("zero storage or zero bandwidth cuts the flow") {
  const auto c = four_node();
  CHECK(max_flow(build_graph(c, four_node_history(), four_node_collectors(), 0, 1)) == 0);
  CHECK(max_flow(build_graph(c, four_node_history(), four_node_collectors(), 1, 0)) == 0);
  CHECK(max_flow(build_graph(c, four_node_history(), {2, 4}, 1, 0)) == 1);
  CHECK(min_mincut(c, 0, 1).value == 0);
}

TEST_CASE("two-rack links carry tau beta_e and beta_e") {
  // n1 = 2, n2 = 2, d = 2, every newcomer has one cheap and one expensive helper
  const auto c = validate(two_rack(Variant::TwoRackTraditional, 2, 2, 2, 2, 1, 1, 3));
  RepairHistory h;
  h.events.push_back({0, Rack::One, {1, 2}});
  const auto g = build_graph(c, h, {4, 3}, 10, 1);
  // newcomer 4: cheap link from 1 (tau), expensive from 2 (1), storage 10; node 3 stores 10
  CHECK(max_flow(g) == 4 + 10);
  CHECK(brute_force_cut(g) == 14);
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Cheap) CHECK(e.capacity == 3);
    if (e.kind == EdgeKind::Expensive) CHECK(e.capacity == 1);
  }
}

TEST_CASE("non-homogeneous rack-2 nodes store w alpha") {
  const auto c = reference_two_rack(Variant::TwoRackNonHomogeneous);
  const auto g = build_graph(c, {}, {0, 1, 2, 3, 4, 5}, 5, 1);
  CHECK(max_flow(g) == 3 * 5 + 3 * 5 * Rational(9, 5));
}

TEST_CASE("build_graph rejects malformed repairs") {
  const auto c = four_node();
  auto bad = [&](RepairHistory h, std::vector<int> dc) {
    return kind_of([&] { build_graph(c, h, dc, 1, 1); });
  };
  RepairHistory dead;
  dead.events.push_back({0, Rack::One, {1, 2, 3}});
  dead.events.push_back({1, Rack::One, {0, 2, 3}});
  CHECK(bad(dead, {4, 5}) == ErrorKind::InvalidArgument);

  RepairHistory dup;
  dup.events.push_back({0, Rack::One, {1, 1, 2}});
  CHECK(bad(dup, {4, 1}) == ErrorKind::InvalidArgument);

  RepairHistory few;
  few.events.push_back({0, Rack::One, {1, 2}});
  CHECK(bad(few, {4, 1}) == ErrorKind::InvalidArgument);

  CHECK(bad(four_node_history(), {0, 4}) == ErrorKind::InvalidArgument);
  CHECK(bad(four_node_history(), {4}) == ErrorKind::InvalidArgument);
  CHECK(bad(four_node_history(), {4, 4}) == ErrorKind::InvalidArgument);

  RepairHistory self;
  self.events.push_back({0, Rack::One, {0, 1, 2}});
  CHECK(bad(self, {4, 1}) == ErrorKind::InvalidArgument);

  // two cheap helpers where the split allows one
  const auto tr = validate(two_rack(Variant::TwoRackTraditional, 2, 2, 2, 2, 1, 1, 3));
  RepairHistory split;
  split.events.push_back({0, Rack::One, {1, 3}});
  split.events.back().helpers = {1, 2};
  CHECK_NOTHROW(build_graph(tr, split, {4, 1}, 1, 1));
  split.events.back().helpers = {2, 3};
  CHECK(kind_of([&] { build_graph(tr, split, {4, 1}, 1, 1); }) == ErrorKind::InvalidArgument);
  RepairHistory wrong_rack;
  wrong_rack.events.push_back({0, Rack::Two, {1, 2}});
  CHECK(kind_of([&] { build_graph(tr, wrong_rack, {4, 1}, 1, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("max flow equals the brute-force minimum cut on random graphs") {
  Gen gen(1234);
  for (int trial = 0; trial < 300; ++trial) {
    FlowGraph g;
    g.vertex_count = gen.uniform(2, 14);
    g.source = 0;
    g.sink = g.vertex_count - 1;
    const int edges = gen.uniform(0, 3 * g.vertex_count);
    for (int e = 0; e < edges; ++e) {
      FlowEdge fe;
      fe.from = gen.uniform(0, g.vertex_count - 1);
      fe.to = gen.uniform(0, g.vertex_count - 1);
      if (fe.from == fe.to) continue;
      fe.capacity = gen.rational(12, 6);
      g.edges.push_back(fe);
    }
    CHECK(max_flow(g) == brute_force_cut(g));
  }
}

TEST_CASE("max flow handles capacities beyond 64-bit scaling") {
  FlowGraph g;
  g.vertex_count = 4;
  g.sink = 3;
  Rational huge(mpz_class("123456789012345678901234567890"), 7);
  huge.canonicalize();
  g.edges.push_back({0, 1, huge, EdgeKind::Source});
  g.edges.push_back({1, 3, huge / 2, EdgeKind::Storage});
  g.edges.push_back({0, 2, Rational(1, 999983), EdgeKind::Source});
  g.edges.push_back({2, 3, Rational(1, 999979), EdgeKind::Storage});
  CHECK(max_flow(g) == huge / 2 + Rational(1, 999983));
}

TEST_CASE("minimum cut over histories matches the symmetric threshold") {
  const auto c = four_node();
  CHECK(min_mincut(c, Rational(1, 2), Rational(1, 4)).value == 1);
  CHECK(min_mincut(c, Rational(3, 5), Rational(1, 5)).value == 1);
  CHECK(min_mincut(c, Rational(1, 2) - Rational(1, 1000000), Rational(1, 4)).value < 1);

  Gen gen(77);
  for (int i = 0; i < 10; ++i) {
    const Rational alpha = gen.positive_rational(10, 10);
    const Rational beta = gen.positive_rational(10, 10);
    CHECK(min_mincut(c, alpha, beta).value == ref_symmetric_mincut(2, 3, alpha, beta));
  }
}

TEST_CASE("bisection on alpha recovers the curve value") {
  const auto c = four_node();
  const auto curve = build_curve(c);
  for (const auto& beta : certification_betas(curve, 1)) {
    Rational lo = 0;
    Rational hi = 1;
    for (int step = 0; step < 30; ++step) {
      const Rational mid = (lo + hi) / 2;
      (min_mincut(c, mid, beta, {2, 2'000'000, 1}).value >= c.file_size ? hi : lo) = mid;
    }
    const Rational expected = curve.alpha_at(beta);
    CHECK(lo <= expected);
    CHECK(expected <= hi);
  }
}

TEST_CASE("min-cut is monotone in alpha and beta_e") {
  const auto c = validate(two_rack(Variant::TwoRackNonHomogeneous, 2, 2, 2, 2, 1, 1, 2));
  Gen gen(88);
  for (int i = 0; i < 15; ++i) {
    const Rational a = gen.positive_rational(6, 6);
    const Rational b = gen.positive_rational(6, 6);
    const Rational base = min_mincut(c, a, b).value;
    CHECK(min_mincut(c, a + Rational(1, 3), b).value >= base);
    CHECK(min_mincut(c, a, b + Rational(1, 3)).value >= base);
  }
}

TEST_CASE("batch evaluation equals point-by-point evaluation") {
  const auto c = validate(two_rack(Variant::TwoRackTraditional, 2, 2, 3, 3, 2, 1, 2));
  const std::vector<OraclePoint> pts{{Rational(1, 2), Rational(1, 4)}, {1, 1}, {Rational(1, 3), Rational(1, 9)}};
  const auto batch = min_mincut_batch(c, pts);
  REQUIRE(batch.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto single = min_mincut(c, pts[i].alpha, pts[i].beta_e);
    CHECK(batch[i].value == single.value);
    CHECK(batch[i].witness.history == single.witness.history);
    CHECK(batch[i].witness.collectors == single.witness.collectors);
  }
}

TEST_CASE("the witness reproduces the minimum") {
  const auto c = validate(two_rack(Variant::TwoRackTraditional, 3, 2, 3, 3, 2, 1, 2));
  const auto r = min_mincut(c, Rational(1, 3), Rational(1, 6));
  const auto g = build_graph(c, r.witness.history, r.witness.collectors, Rational(1, 3), Rational(1, 6));
  CHECK(max_flow(g) == r.value);
}

TEST_CASE("results do not depend on the thread count") {
  const auto c = validate(two_rack(Variant::TwoRackTraditional, 3, 2, 3, 3, 2, 1, 2));
  const auto one = min_mincut(c, Rational(1, 3), Rational(1, 6), {3, 2'000'000, 1});
  for (unsigned t : {2u, 4u, 7u}) {
    const auto many = min_mincut(c, Rational(1, 3), Rational(1, 6), {3, 2'000'000, t});
    CHECK(many.value == one.value);
    CHECK(many.witness.history == one.witness.history);
    CHECK(many.witness.collectors == one.witness.collectors);
  }
}

TEST_CASE("search budget") {
  const auto c = reference_two_rack(Variant::TwoRackTraditional);
  // no failures: one history and C(10, 6) collector sets
  CHECK(search_space_size(c, 0) == 210);
  CHECK(search_space_size(c, 0, 4) == 840);
  CHECK(search_space_size(c, 1) > search_space_size(c, 0));
  CHECK(kind_of([&] { min_mincut(c, 1, 1, {3, 1000, 1}); }) == ErrorKind::BudgetExceeded);
  try {
    min_mincut(c, 1, 1, {3, 1000, 1});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("symmetric and static curves certify") {
  const auto ref = certify_curve(four_node(), build_curve(four_node()));
  CHECK(ref.passed);
  CHECK(ref.states == 4080);
  for (const auto& s : ref.samples) {
    CHECK(s.bound_ok);
    CHECK(s.tight_ok);
  }
  const auto st = static_cost(2, 2, 2, 2, 1, 2);
  CHECK(certify_curve(st, build_curve(st)).passed);
}

TEST_CASE("a perturbed curve fails with a witness") {
  CertifyOptions opts;
  opts.alpha_scale = Rational(99, 100);
  opts.epsilon = Rational(1, 100);
  const auto report = certify_curve(four_node(), build_curve(four_node()), opts);
  CHECK_FALSE(report.passed);
  bool found = false;
  for (const auto& s : report.samples) {
    if (s.bound_ok) continue;
    found = true;
    CHECK(s.at_alpha.value < 1);
    const auto g = build_graph(four_node(), s.at_alpha.witness.history, s.at_alpha.witness.collectors, s.alpha, s.beta_e);
    CHECK(max_flow(g) == s.at_alpha.value);
  }
  CHECK(found);
}

TEST_CASE("certification probes") {
  const auto curve = build_curve(four_node());
  const auto betas = certification_betas(curve, 2);
  CHECK(std::is_sorted(betas.begin(), betas.end()));
  CHECK(betas.front() == Rational(1, 5));
  CHECK(betas.back() == Rational(1, 2));
  CHECK(betas.size() == 2 + 2 + 1);
}
