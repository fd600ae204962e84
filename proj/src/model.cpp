#include "model.hpp"

#include <array>
#include <string>
#include <utility>

namespace dss {
namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 4> kVariantNames{{
    {Variant::Symmetric, "symmetric"},
    {Variant::StaticCost, "static"},
    {Variant::TwoRackTraditional, "tworack"},
    {Variant::TwoRackNonHomogeneous, "nonhomog"},
}};

[[noreturn]] void fail(ConfigIssue issue, const std::string& msg) { throw ConfigError(issue, msg); }

void check_common(const SystemConfig& c) {
  if (c.file_size <= 0) fail(ConfigIssue::NonPositiveFileSize, "file size M must be positive");
  if (c.tau < 1) fail(ConfigIssue::TauBelowOne, "tau must be at least 1");
  if (c.k < 1) fail(ConfigIssue::NonPositiveK, "k must be positive");
  if (c.d < 1) fail(ConfigIssue::NonPositiveD, "d must be positive");
}

void check_sizes(const SystemConfig& c) {
  const int n = c.node_count();
  if (c.k > n - 1)
    fail(ConfigIssue::KTooLarge, "k too large: k = " + std::to_string(c.k) +
                                     " exceeds n - 1 = " + std::to_string(n - 1));
  if (c.d > n - 1)
    fail(ConfigIssue::DTooLarge, "d too large: d = " + std::to_string(c.d) +
                                     " exceeds n - 1 = " + std::to_string(n - 1));
}

void check_split(int dc, int de, int d, int rack) {
  if (dc < 0 || de < 0 || dc + de != d)
    fail(ConfigIssue::HelperSplitMismatch,
         "helper split mismatch for rack " + std::to_string(rack) + ": d" + std::to_string(rack) +
             "c + d" + std::to_string(rack) + "e = " + std::to_string(dc) + " + " +
             std::to_string(de) + " != d = " + std::to_string(d));
}

SystemConfig validate_symmetric(SystemConfig c) {
  check_common(c);
  if (c.tau != 1)
    fail(ConfigIssue::SymmetricTau, "symmetric model has a single helper bandwidth; tau must be 1");
  c.n1 += c.n2;
  c.n2 = 0;
  c.d1c = c.d2c = c.d;
  c.d1e = c.d2e = 0;
  c.racks_swapped = false;
  if (c.n1 < 2) fail(ConfigIssue::EmptyRack, "symmetric model needs at least 2 nodes");
  check_sizes(c);
  if (c.k > c.d)
    fail(ConfigIssue::KExceedsD, "symmetric model requires k <= d (k = " + std::to_string(c.k) +
                                     ", d = " + std::to_string(c.d) + ")");
  return c;
}

SystemConfig validate_static(SystemConfig c) {
  check_common(c);
  check_split(c.d1c, c.d1e, c.d, 1);
  if (c.d2c != c.d1c || c.d2e != c.d1e)
    fail(ConfigIssue::StaticSplitMismatch,
         "static cost model uses one helper split for every newcomer");
  if (c.n1 < 1) fail(ConfigIssue::EmptyRack, "static cost model needs a non-empty cheap group");
  if (c.n2 < 0) fail(ConfigIssue::EmptyRack, "group sizes must be non-negative");
  // A cheap-group newcomer cannot help itself; likewise for the expensive group.
  if (c.d1c > c.n1 - 1)
    fail(ConfigIssue::CheapHelpersExceedRack, "cheap helpers exceed rack survivors");
  if (c.d1e > (c.n2 > 0 ? c.n2 - 1 : 0))
    fail(ConfigIssue::ExpensiveHelpersExceedRack, "expensive helpers exceed group survivors");
  check_sizes(c);
  return c;
}

SystemConfig validate_two_rack(SystemConfig c) {
  check_common(c);
  if (c.n1 < 1 || c.n2 < 1) fail(ConfigIssue::EmptyRack, "both racks need at least one node");
  check_split(c.d1c, c.d1e, c.d, 1);
  check_split(c.d2c, c.d2e, c.d, 2);
  if (c.d1c > c.d2c || (c.d1c == c.d2c && c.n1 > c.n2)) {
    const bool swapped = !c.racks_swapped;
    c = swap_racks(c);
    c.racks_swapped = swapped;
  }
  if (c.d1c > c.n1 - 1 || c.d2c > c.n2 - 1)
    fail(ConfigIssue::CheapHelpersExceedRack, "cheap helpers exceed rack survivors");
  if (c.d1e > c.n2 || c.d2e > c.n1)
    fail(ConfigIssue::ExpensiveHelpersExceedRack, "expensive helpers exceed other-rack nodes");
  check_sizes(c);
  return c;
}

}  // namespace

std::string_view variant_name(Variant v) {
  for (const auto& [variant, name] : kVariantNames)
    if (variant == v) return name;
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames)
    if (n == name) return variant;
  return std::nullopt;
}

bool same_parameters(const SystemConfig& a, const SystemConfig& b) {
  return a.file_size == b.file_size && a.k == b.k && a.n1 == b.n1 && a.n2 == b.n2 &&
         a.d == b.d && a.d1c == b.d1c && a.d1e == b.d1e && a.d2c == b.d2c && a.d2e == b.d2e &&
         a.tau == b.tau && a.variant == b.variant;
}

SystemConfig swap_racks(const SystemConfig& c) {
  SystemConfig s = c;
  std::swap(s.n1, s.n2);
  std::swap(s.d1c, s.d2c);
  std::swap(s.d1e, s.d2e);
  return s;
}

SystemConfig validate(SystemConfig raw) {
  switch (raw.variant) {
    case Variant::Symmetric:
      return validate_symmetric(std::move(raw));
    case Variant::StaticCost:
      return validate_static(std::move(raw));
    case Variant::TwoRackTraditional:
    case Variant::TwoRackNonHomogeneous:
      return validate_two_rack(std::move(raw));
  }
  throw Error(ErrorKind::Internal, "unknown variant");
}

DerivedBandwidths derive_bandwidths(const SystemConfig& c) {
  DerivedBandwidths b;
  b.gamma1_coeff = c.tau * c.d1c + c.d1e;
  b.gamma2_coeff = c.tau * c.d2c + c.d2e;
  b.storage_weight = b.gamma2_coeff / b.gamma1_coeff;
  return b;
}

void validate_costs(const CostParams& costs) {
  if (costs.cheap < 0 || costs.expensive < 0)
    throw ConfigError(ConfigIssue::InvalidCosts, "sending costs must be non-negative");
  if (!(costs.expensive > costs.cheap))
    throw ConfigError(ConfigIssue::InvalidCosts,
                      "expensive sending cost must exceed the cheap one (Ce > Cc)");
}

Rational repair_bandwidth(const SystemConfig& c, const Rational& beta_e, Rack rack) {
  return (c.tau * cheap_helpers(c, rack) + expensive_helpers(c, rack)) * beta_e;
}

Rational repair_cost(const SystemConfig& c, const CostParams& costs, const Rational& beta_e,
                     Rack rack) {
  const Rational cheap_part = costs.cheap * cheap_helpers(c, rack) * c.tau * beta_e;
  const Rational expensive_part = costs.expensive * expensive_helpers(c, rack) * beta_e;
  return cheap_part + expensive_part;
}

}  // namespace dss
