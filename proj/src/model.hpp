#pragma once

#include <optional>
#include <string_view>

#include "error.hpp"
#include "rational.hpp"

namespace dss {

enum class Variant { Symmetric, StaticCost, TwoRackTraditional, TwoRackNonHomogeneous };

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
inline bool is_two_rack(Variant v) {
  return v == Variant::TwoRackTraditional || v == Variant::TwoRackNonHomogeneous;
}

enum class Rack { One = 1, Two = 2 };

/// Parameters of a distributed storage system.
///
/// Two-rack variants: n1/n2 nodes per rack, a rack-r newcomer downloads from
/// d_rc same-rack helpers (tau * beta_e each) and d_re other-rack helpers
/// (beta_e each). Static-cost: rack 1 is the fixed cheap group, rack 2 the
/// fixed expensive group, and every newcomer uses the (d1c, d1e) split.
/// Symmetric: one group of n1 nodes, d1c = d helpers, tau = 1.
struct SystemConfig {
  Rational file_size{1};
  int k = 0;
  int n1 = 0;
  int n2 = 0;
  int d = 0;
  int d1c = 0;
  int d1e = 0;
  int d2c = 0;
  int d2e = 0;
  Rational tau{1};
  Variant variant = Variant::TwoRackTraditional;
  // Set when validation exchanged the rack labels to get d1c <= d2c.
  bool racks_swapped = false;

  int node_count() const { return n1 + n2; }
  bool operator==(const SystemConfig&) const = default;
};

/// Equality of every model parameter, ignoring the racks_swapped record.
bool same_parameters(const SystemConfig& a, const SystemConfig& b);

/// Normalizes and checks a raw parameter record. Throws ConfigError naming
/// the first violated invariant.
///
/// Two-rack configs get their rack labels exchanged when d1c > d2c (or when
/// d1c == d2c and n1 > n2), so callers need not pre-sort the racks.
/// Symmetric configs fold n2 into n1 and set the helper split to (d, 0).
SystemConfig validate(SystemConfig raw);

/// Rack-swapped copy of a config, without validation.
SystemConfig swap_racks(const SystemConfig& c);

/// Repair bandwidths as multiples of beta_e.
struct DerivedBandwidths {
  Rational gamma1_coeff;
  Rational gamma2_coeff;
  Rational storage_weight;  // gamma2_coeff / gamma1_coeff
};

DerivedBandwidths derive_bandwidths(const SystemConfig& c);

/// Per-unit sending costs of cheap and expensive links.
struct CostParams {
  Rational cheap;
  Rational expensive;
};

/// Throws ConfigError unless 0 <= cheap < expensive.
void validate_costs(const CostParams& costs);

/// gamma^rack at the given beta_e.
Rational repair_bandwidth(const SystemConfig& c, const Rational& beta_e, Rack rack);

/// C_T = d_c * Cc * tau * beta_e + d_e * Ce * beta_e for a newcomer in `rack`.
Rational repair_cost(const SystemConfig& c, const CostParams& costs, const Rational& beta_e,
                     Rack rack);

inline int cheap_helpers(const SystemConfig& c, Rack r) { return r == Rack::One ? c.d1c : c.d2c; }
inline int expensive_helpers(const SystemConfig& c, Rack r) {
  return r == Rack::One ? c.d1e : c.d2e;
}
inline int rack_size(const SystemConfig& c, Rack r) { return r == Rack::One ? c.n1 : c.n2; }

}  // namespace dss
