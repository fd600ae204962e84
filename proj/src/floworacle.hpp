#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "threshold.hpp"

namespace dss {

/// One repair: `failed_node` (a live node id) is replaced by a newcomer in the
/// same rack, which downloads from `helpers` (live node ids).
struct RepairEvent {
  int failed_node = 0;
  Rack rack = Rack::One;
  std::vector<int> helpers;
  bool operator==(const RepairEvent&) const = default;
};

/// Node ids: 0..n-1 are the initial nodes (slot i holds node i, rack 1 first),
/// the j-th event creates node n + j in the failed node's slot.
struct RepairHistory {
  std::vector<RepairEvent> events;
  bool operator==(const RepairHistory&) const = default;
};

enum class EdgeKind { Source, Storage, Cheap, Expensive, Collector };

struct FlowEdge {
  int from = 0;
  int to = 0;
  Rational capacity;
  EdgeKind kind = EdgeKind::Storage;
};

struct StorageNode {
  int id = 0;
  int slot = 0;
  Rack rack = Rack::One;
  bool live = true;
  bool newcomer = false;
};

/// Information flow graph. Vertex 0 is the source, node id i owns vertices
/// 1 + 2i (in) and 2 + 2i (out), the data collector is the last vertex.
struct FlowGraph {
  int vertex_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<StorageNode> nodes;
  std::vector<FlowEdge> edges;
  Rational infinity;  // finite stand-in for unbounded capacity

  static int in_vertex(int node) { return 1 + 2 * node; }
  static int out_vertex(int node) { return 2 + 2 * node; }
};

/// Builds the graph for a repair history and a collector set. Throws
/// Error(InvalidArgument) on a dead or duplicated helper, a wrong
/// cheap/expensive split, or a collector on a failed node.
FlowGraph build_graph(const SystemConfig& c, const RepairHistory& history,
                      const std::vector<int>& collectors, const Rational& alpha,
                      const Rational& beta_e);

/// Exact maximum flow from source to sink (equal to the min-cut capacity).
Rational max_flow(const FlowGraph& g);

/// Per-collector terms of the cut that isolates each collector node either at
/// its storage edge or at its links from nodes outside the collector set.
/// Summing them bounds the min-cut from above; on adversarial chains it is exact.
std::vector<Rational> income_decomposition(const SystemConfig& c, const RepairHistory& history,
                                           const std::vector<int>& collectors,
                                           const Rational& alpha, const Rational& beta_e);

struct Witness {
  RepairHistory history;
  std::vector<int> collectors;
};

struct MincutResult {
  Rational value;
  Witness witness;
};

struct OracleOptions {
  int max_failures = 3;
  std::uint64_t budget = 2'000'000;  // max-flow evaluations
  unsigned threads = 1;
};

struct OraclePoint {
  Rational alpha;
  Rational beta_e;
};

/// Repair histories of up to max_failures events (all failure choices, all
/// valid helper sets), times collector sets, times probe points.
std::uint64_t search_space_size(const SystemConfig& c, int max_failures, std::size_t points = 1);

/// Minimum over every repair history and collector set of the S-DC min-cut.
/// Throws Error(BudgetExceeded) when the search space exceeds the budget.
/// The witness is the first minimizer in enumeration order, for any thread count.
MincutResult min_mincut(const SystemConfig& c, const Rational& alpha, const Rational& beta_e,
                        const OracleOptions& options = {});

/// min_mincut for several points in one enumeration pass.
std::vector<MincutResult> min_mincut_batch(const SystemConfig& c, std::span<const OraclePoint> points,
                                           const OracleOptions& options = {});

struct SampleCheck {
  Rational beta_e;
  Rational alpha;        // curve value (after any perturbation)
  Rational alpha_below;  // alpha * (1 - epsilon)
  MincutResult at_alpha;
  MincutResult below_alpha;
  bool bound_ok = false;  // min-cut >= M at alpha
  bool tight_ok = false;  // min-cut < M just below alpha
};

struct CertificationReport {
  std::vector<SampleCheck> samples;
  std::uint64_t states = 0;
  bool passed = false;
};

struct CertifyOptions {
  int samples = 1;  // interior points per finite segment, besides the breakpoints
  int max_failures = 3;
  std::uint64_t budget = 2'000'000;
  Rational epsilon = Rational(1, 1000);  // relative tightness probe
  Rational alpha_scale = 1;              // perturbation applied to the curve
  unsigned threads = 1;
};

/// beta_e values probed by certify_curve: every breakpoint, interior points of
/// each finite segment, and one point past the MSR point; ascending.
std::vector<Rational> certification_betas(const TradeoffCurve& curve, int samples);

CertificationReport certify_curve(const SystemConfig& c, const TradeoffCurve& curve,
                                  const CertifyOptions& options = {});

}  // namespace dss
