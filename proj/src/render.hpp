#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floworacle.hpp"

namespace dss {

enum class Format { Csv, Json, Gnuplot, Text };

std::string_view format_name(Format f);
std::optional<Format> parse_format(std::string_view name);

enum class PointKind { Msr, Mbr };

struct RenderOptions {
  int samples = 0;                  // interior gnuplot points per segment
  std::optional<Rational> beta_max; // gnuplot extent of the flat segment
  bool color = false;               // ANSI highlighting in text reports
};

/// Curve output. CSV rows and gnuplot points run in ascending beta_e.
std::string render_curve(const SystemConfig& c, const TradeoffCurve& curve, Format format,
                         const RenderOptions& options = {});

std::string render_compare(const ComparisonReport& report, Format format,
                           const RenderOptions& options = {});

std::string render_point(const SystemConfig& c, const TradeoffCurve& curve, PointKind which,
                         Format format);

struct CostQuery {
  CostParams costs;
  std::optional<Rational> beta_e;  // default: the MBR point
};

std::string render_cost(const SystemConfig& c, const TradeoffCurve& curve, const CostQuery& query,
                        Format format, const RenderOptions& options = {});

std::string render_verify(const SystemConfig& c, const CertificationReport& report, Format format,
                          const RenderOptions& options = {});

/// One parsed line of the curve CSV schema.
struct CsvRow {
  std::string model;
  int segment = 0;
  Rational beta_e_lo;
  std::optional<Rational> beta_e_hi;  // "inf" when empty
  Rational alpha_lo;
  Rational alpha_hi;
  bool feasible = true;
};

extern const char* const kCurveCsvHeader;

/// Throws Error(InvalidArgument) on a malformed document.
std::vector<CsvRow> parse_curve_csv(std::string_view text);
std::string emit_curve_csv(const std::vector<CsvRow>& rows);

/// Parses a JSON document produced by render_* and re-serializes it.
std::string reformat_json(std::string_view text);

}  // namespace dss
