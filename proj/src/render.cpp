#include "render.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace dss {
namespace {

using Json = nlohmann::ordered_json;

std::string dec(const Rational& v) { return to_decimal_string(v, 12); }

Json number(const Rational& v) {
  Json j;
  j["exact"] = to_fraction_string(v);
  j["decimal"] = to_rounded_double(v, 12);
  return j;
}

Json parameters_json(const SystemConfig& c) {
  Json p;
  p["M"] = to_fraction_string(c.file_size);
  p["k"] = c.k;
  p["n1"] = c.n1;
  p["n2"] = c.n2;
  p["d"] = c.d;
  p["d1c"] = c.d1c;
  p["d1e"] = c.d1e;
  p["d2c"] = c.d2c;
  p["d2e"] = c.d2e;
  p["tau"] = to_fraction_string(c.tau);
  p["racks_swapped"] = c.racks_swapped;
  return p;
}

std::string paint(const std::string& text, const char* code, bool on) {
  if (!on) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

// Segments in ascending beta_e together with their feasibility flags.
struct OrderedSegment {
  const CurveSegment* segment;
  bool feasible;
};

std::vector<OrderedSegment> ascending(const SystemConfig& c, const TradeoffCurve& curve) {
  const FeasibilityReport feas = check_feasibility(curve, c);
  std::vector<OrderedSegment> out;
  for (std::size_t i = curve.segments.size(); i-- > 0;) {
    const auto& f = feas.segments[i];
    out.push_back({&curve.segments[i], f.rack1_ok && f.rack2_ok});
  }
  return out;
}

std::vector<CsvRow> curve_rows(const SystemConfig& c, const TradeoffCurve& curve) {
  std::vector<CsvRow> rows;
  int index = 0;
  for (const auto& [seg, ok] : ascending(c, curve)) {
    CsvRow r;
    r.model = std::string(variant_name(curve.variant));
    r.segment = index++;
    r.beta_e_lo = seg->beta_lo;
    r.beta_e_hi = seg->beta_hi;
    r.alpha_lo = seg->alpha_lo();
    r.alpha_hi = seg->alpha_hi();
    r.feasible = ok;
    rows.push_back(std::move(r));
  }
  return rows;
}

Json curve_json(const SystemConfig& c, const TradeoffCurve& curve) {
  Json j;
  j["model"] = std::string(variant_name(curve.variant));
  j["parameters"] = parameters_json(c);
  j["gamma1_coeff"] = number(curve.gamma1_coeff);
  j["gamma2_coeff"] = number(curve.gamma2_coeff);
  j["storage_weight"] = number(curve.rack2_weight);
  Json segs = Json::array();
  int index = 0;
  for (const auto& [seg, ok] : ascending(c, curve)) {
    Json s;
    s["segment"] = index++;
    s["income_index"] = seg->index;
    s["candidate"] = seg->candidate;
    s["beta_e_lo"] = number(seg->beta_lo);
    s["beta_e_hi"] = seg->beta_hi ? number(*seg->beta_hi) : Json(nullptr);
    s["alpha_lo"] = number(seg->alpha_lo());
    s["alpha_hi"] = number(seg->alpha_hi());
    // alpha = intercept + slope * beta_e
    s["alpha_intercept"] = number(seg->file_size / seg->divisor);
    s["alpha_slope"] = number(-seg->offset / seg->divisor);
    s["feasible"] = ok;
    segs.push_back(std::move(s));
  }
  j["segments"] = std::move(segs);
  j["msr"] = {{"beta_e", number(curve.msr.beta_e)}, {"alpha", number(curve.msr.alpha)}};
  j["mbr"] = {{"beta_e", number(curve.mbr.beta_e)}, {"alpha", number(curve.mbr.alpha)}};
  j["deleted"] = curve.deleted_count;
  j["feasible"] = curve.feasible;
  j["candidates_disagree"] = curve.candidates_disagree;
  return j;
}

Rational default_beta_max(const TradeoffCurve& curve) { return curve.msr.beta_e * 2; }

std::vector<CurvePoint> plot_points(const TradeoffCurve& curve, const RenderOptions& options) {
  const Rational beta_max = options.beta_max.value_or(default_beta_max(curve));
  std::vector<CurvePoint> pts;
  for (std::size_t i = curve.segments.size(); i-- > 0;) {
    const CurveSegment& s = curve.segments[i];
    const Rational hi = s.beta_hi ? *s.beta_hi : max_of(beta_max, s.beta_lo);
    if (pts.empty() || pts.back().beta_e != s.beta_lo) pts.push_back({s.beta_lo, s.alpha_lo()});
    for (int j = 1; j <= options.samples; ++j) {
      const Rational b = s.beta_lo + (hi - s.beta_lo) * Rational(j, options.samples + 1);
      pts.push_back({b, s.alpha_at(b)});
    }
    if (hi != s.beta_lo) pts.push_back({hi, s.alpha_at(hi)});
  }
  return pts;
}

void gnuplot_block(std::ostringstream& os, const TradeoffCurve& curve, const RenderOptions& options) {
  os << "# model " << variant_name(curve.variant) << "\n# beta_e alpha\n";
  for (const auto& p : plot_points(curve, options)) os << dec(p.beta_e) << ' ' << dec(p.alpha) << '\n';
}

std::string curve_text(const SystemConfig& c, const TradeoffCurve& curve, const RenderOptions& options) {
  std::ostringstream os;
  os << "model " << variant_name(curve.variant) << "  gamma1 = " << to_fraction_string(curve.gamma1_coeff)
     << " beta_e  gamma2 = " << to_fraction_string(curve.gamma2_coeff) << " beta_e  weight = "
     << to_fraction_string(curve.rack2_weight) << '\n';
  os << std::left << std::setw(4) << "seg" << std::setw(18) << "beta_e_lo" << std::setw(18) << "beta_e_hi"
     << std::setw(18) << "alpha_lo" << std::setw(18) << "alpha_hi" << "feasible\n";
  for (const auto& r : curve_rows(c, curve)) {
    os << std::setw(4) << r.segment << std::setw(18) << dec(r.beta_e_lo) << std::setw(18)
       << (r.beta_e_hi ? dec(*r.beta_e_hi) : std::string("inf")) << std::setw(18) << dec(r.alpha_lo)
       << std::setw(18) << dec(r.alpha_hi)
       << paint(r.feasible ? "yes" : "no", r.feasible ? "32" : "31", options.color) << '\n';
  }
  os << "msr: beta_e = " << to_fraction_string(curve.msr.beta_e) << " (" << dec(curve.msr.beta_e)
     << "), alpha = " << to_fraction_string(curve.msr.alpha) << " (" << dec(curve.msr.alpha) << ")\n";
  os << "mbr: beta_e = " << to_fraction_string(curve.mbr.beta_e) << " (" << dec(curve.mbr.beta_e)
     << "), alpha = " << to_fraction_string(curve.mbr.alpha) << " (" << dec(curve.mbr.alpha) << ")\n";
  os << "deleted: " << curve.deleted_count << '\n';
  os << "feasible: " << paint(curve.feasible ? "yes" : "no", curve.feasible ? "32" : "31", options.color)
     << '\n';
  return os.str();
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

Rational parse_field(const std::string& field, std::size_t line) {
  try {
    return parse_rational(field);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(line) + ": bad number '" + field + "'");
  }
}

std::string witness_text(const Witness& w) {
  std::ostringstream os;
  if (w.history.events.empty()) os << "    no repairs\n";
  for (std::size_t i = 0; i < w.history.events.size(); ++i) {
    const auto& ev = w.history.events[i];
    os << "    repair " << i << ": node " << ev.failed_node << " (rack " << static_cast<int>(ev.rack)
       << ") -> newcomer, helpers";
    for (int h : ev.helpers) os << ' ' << h;
    os << '\n';
  }
  os << "    collector:";
  for (int x : w.collectors) os << ' ' << x;
  os << '\n';
  return os.str();
}

Json witness_json(const Witness& w) {
  Json events = Json::array();
  for (const auto& ev : w.history.events)
    events.push_back({{"failed_node", ev.failed_node}, {"rack", static_cast<int>(ev.rack)}, {"helpers", ev.helpers}});
  return {{"repairs", std::move(events)}, {"collectors", w.collectors}};
}

std::string cost_tag(const TradeoffCurve& curve, const Rational& beta_e) {
  if (beta_e == curve.mbr.beta_e) return "MBR";
  if (beta_e == curve.msr.beta_e) return "MSR";
  return "";
}

}  // namespace

const char* const kCurveCsvHeader = "model,segment,beta_e_lo,beta_e_hi,alpha_lo,alpha_hi,feasible";

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Gnuplot: return "gnuplot";
    case Format::Text: return "text";
  }
  return "csv";
}

std::optional<Format> parse_format(std::string_view name) {
  for (Format f : {Format::Csv, Format::Json, Format::Gnuplot, Format::Text})
    if (format_name(f) == name) return f;
  return std::nullopt;
}

std::string emit_curve_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  os << kCurveCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.model << ',' << r.segment << ',' << dec(r.beta_e_lo) << ','
       << (r.beta_e_hi ? dec(*r.beta_e_hi) : std::string("inf")) << ',' << dec(r.alpha_lo) << ','
       << dec(r.alpha_hi) << ',' << (r.feasible ? "true" : "false") << '\n';
  }
  return os.str();
}

std::vector<CsvRow> parse_curve_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCurveCsvHeader)
    throw Error(ErrorKind::InvalidArgument, "missing curve CSV header");
  std::vector<CsvRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 7)
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(i + 1) + ": expected 7 fields");
    CsvRow r;
    r.model = f[0];
    if (!parse_variant(r.model))
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(i + 1) + ": unknown model");
    try {
      r.segment = std::stoi(f[1]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(i + 1) + ": bad segment");
    }
    r.beta_e_lo = parse_field(f[2], i + 1);
    if (f[3] != "inf") r.beta_e_hi = parse_field(f[3], i + 1);
    r.alpha_lo = parse_field(f[4], i + 1);
    r.alpha_hi = parse_field(f[5], i + 1);
    if (f[6] != "true" && f[6] != "false")
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(i + 1) + ": bad feasible flag");
    r.feasible = f[6] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string reformat_json(std::string_view text) {
  try {
    return Json::parse(text).dump(2) + "\n";
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

std::string render_curve(const SystemConfig& c, const TradeoffCurve& curve, Format format,
                         const RenderOptions& options) {
  switch (format) {
    case Format::Csv: return emit_curve_csv(curve_rows(c, curve));
    case Format::Json: return curve_json(c, curve).dump(2) + "\n";
    case Format::Gnuplot: {
      std::ostringstream os;
      gnuplot_block(os, curve, options);
      return os.str();
    }
    case Format::Text: return curve_text(c, curve, options);
  }
  return {};
}

std::string render_compare(const ComparisonReport& report, Format format, const RenderOptions& options) {
  const std::string name_a(variant_name(report.curve_a.variant));
  const std::string name_b(variant_name(report.curve_b.variant));
  switch (format) {
    case Format::Csv: {
      auto rows = curve_rows(report.config_a, report.curve_a);
      for (auto& r : curve_rows(report.config_b, report.curve_b)) rows.push_back(std::move(r));
      return emit_curve_csv(rows);
    }
    case Format::Json: {
      Json j;
      j["models"] = Json::array({curve_json(report.config_a, report.curve_a),
                                 curve_json(report.config_b, report.curve_b)});
      Json grid = Json::array();
      for (const auto& p : report.grid) {
        Json g;
        g["beta_e"] = number(p.beta_e);
        g[name_a] = p.alpha_a ? number(*p.alpha_a) : Json(nullptr);
        g[name_a == name_b ? name_b + "_b" : name_b] = p.alpha_b ? number(*p.alpha_b) : Json(nullptr);
        grid.push_back(std::move(g));
      }
      j["grid"] = std::move(grid);
      j["differing_points"] = report.differing_points;
      j["identical"] = report.identical;
      j["second_le_first"] = report.b_le_a;
      j["first_le_second"] = report.a_le_b;
      j["deleted"] = {{"first", report.curve_a.deleted_count}, {"second", report.curve_b.deleted_count}};
      return j.dump(2) + "\n";
    }
    case Format::Gnuplot: {
      std::ostringstream os;
      gnuplot_block(os, report.curve_a, options);
      os << "\n\n";
      gnuplot_block(os, report.curve_b, options);
      return os.str();
    }
    case Format::Text: {
      std::ostringstream os;
      os << "compare " << name_a << " vs " << name_b << '\n';
      for (const auto* curve : {&report.curve_a, &report.curve_b}) {
        os << "  " << std::left << std::setw(10) << variant_name(curve->variant)
           << "deleted: " << curve->deleted_count << "  feasible: " << (curve->feasible ? "yes" : "no")
           << "  msr (" << dec(curve->msr.beta_e) << ", " << dec(curve->msr.alpha) << ")  mbr ("
           << dec(curve->mbr.beta_e) << ", " << dec(curve->mbr.alpha) << ")\n";
      }
      os << "grid points: " << report.grid.size() << ", differing: " << report.differing_points << '\n';
      if (report.identical) {
        os << "curves identical\n";
      } else if (report.b_le_a) {
        os << paint(name_b + " needs no more storage than " + name_a + " wherever both are defined", "32",
                    options.color)
           << '\n';
      } else if (report.a_le_b) {
        os << paint(name_a + " needs no more storage than " + name_b + " wherever both are defined", "32",
                    options.color)
           << '\n';
      } else {
        os << "curves cross\n";
      }
      return os.str();
    }
  }
  return {};
}

std::string render_point(const SystemConfig& c, const TradeoffCurve& curve, PointKind which, Format format) {
  const CurvePoint p = which == PointKind::Msr ? curve.msr : curve.mbr;
  const std::string label = which == PointKind::Msr ? "msr" : "mbr";
  const Rational g1 = repair_bandwidth(c, p.beta_e, Rack::One);
  const Rational g2 = repair_bandwidth(c, p.beta_e, Rack::Two);
  switch (format) {
    case Format::Json: {
      Json j;
      j["model"] = std::string(variant_name(curve.variant));
      j["point"] = label;
      j["beta_e"] = number(p.beta_e);
      j["alpha"] = number(p.alpha);
      j["gamma1"] = number(g1);
      if (is_two_rack(c.variant)) j["gamma2"] = number(g2);
      return j.dump(2) + "\n";
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "model,point,beta_e,alpha,gamma1,gamma2\n"
         << variant_name(curve.variant) << ',' << label << ',' << dec(p.beta_e) << ',' << dec(p.alpha) << ','
         << dec(g1) << ',' << (is_two_rack(c.variant) ? dec(g2) : std::string()) << '\n';
      return os.str();
    }
    case Format::Gnuplot:
      return "# " + label + " beta_e alpha\n" + dec(p.beta_e) + ' ' + dec(p.alpha) + '\n';
    case Format::Text: {
      std::ostringstream os;
      os << label << ": beta_e = " << to_fraction_string(p.beta_e) << " (" << dec(p.beta_e)
         << "), alpha = " << to_fraction_string(p.alpha) << " (" << dec(p.alpha) << ")\n";
      os << "gamma1 = " << to_fraction_string(g1) << " (" << dec(g1) << ")\n";
      if (is_two_rack(c.variant)) os << "gamma2 = " << to_fraction_string(g2) << " (" << dec(g2) << ")\n";
      return os.str();
    }
  }
  return {};
}

std::string render_cost(const SystemConfig& c, const TradeoffCurve& curve, const CostQuery& query,
                        Format format, const RenderOptions& /*options*/) {
  validate_costs(query.costs);
  const bool two = is_two_rack(c.variant);
  struct Row {
    std::string tag;
    Rational beta_e;
    std::optional<Rational> alpha;
    Rational gamma1, gamma2, cost1, cost2;
  };
  auto make_row = [&](std::string tag, const Rational& b) {
    Row r;
    r.tag = std::move(tag);
    r.beta_e = b;
    if (b >= curve.wall()) r.alpha = curve.alpha_at(b);
    r.gamma1 = repair_bandwidth(c, b, Rack::One);
    r.gamma2 = repair_bandwidth(c, b, Rack::Two);
    r.cost1 = repair_cost(c, query.costs, b, Rack::One);
    r.cost2 = repair_cost(c, query.costs, b, Rack::Two);
    return r;
  };
  const Rational qb = query.beta_e.value_or(curve.mbr.beta_e);
  const std::string qtag = cost_tag(curve, qb);
  const Row head = make_row(qtag.empty() ? "query" : qtag, qb);
  std::vector<Row> along;
  for (const auto& b : curve.breakpoints()) along.push_back(make_row(cost_tag(curve, b), b));

  switch (format) {
    case Format::Json: {
      auto row_json = [&](const Row& r) {
        Json j;
        j["tag"] = r.tag;
        j["beta_e"] = number(r.beta_e);
        j["alpha"] = r.alpha ? number(*r.alpha) : Json(nullptr);
        j["gamma1"] = number(r.gamma1);
        j["cost_rack1"] = number(r.cost1);
        if (two) {
          j["gamma2"] = number(r.gamma2);
          j["cost_rack2"] = number(r.cost2);
        }
        return j;
      };
      Json j;
      j["model"] = std::string(variant_name(curve.variant));
      j["cc"] = to_fraction_string(query.costs.cheap);
      j["ce"] = to_fraction_string(query.costs.expensive);
      j["query"] = row_json(head);
      Json rows = Json::array();
      for (const auto& r : along) rows.push_back(row_json(r));
      j["curve"] = std::move(rows);
      return j.dump(2) + "\n";
    }
    case Format::Csv:
    case Format::Gnuplot: {
      std::ostringstream os;
      os << (format == Format::Gnuplot ? "# " : "") << "tag,beta_e,alpha,gamma1,cost_rack1"
         << (two ? ",gamma2,cost_rack2" : "") << '\n';
      auto emit = [&](const Row& r) {
        os << r.tag << ',' << dec(r.beta_e) << ',' << (r.alpha ? dec(*r.alpha) : std::string("")) << ','
           << dec(r.gamma1) << ',' << dec(r.cost1);
        if (two) os << ',' << dec(r.gamma2) << ',' << dec(r.cost2);
        os << '\n';
      };
      emit(head);
      for (const auto& r : along) emit(r);
      return os.str();
    }
    case Format::Text: {
      std::ostringstream os;
      os << "repair cost with Cc = " << to_fraction_string(query.costs.cheap)
         << ", Ce = " << to_fraction_string(query.costs.expensive) << '\n';
      os << "at beta_e = " << to_fraction_string(head.beta_e) << (qtag.empty() ? "" : " [" + qtag + "]") << '\n';
      os << "  rack 1: gamma = " << to_fraction_string(head.gamma1) << "  C_T = " << to_fraction_string(head.cost1)
         << " (" << dec(head.cost1) << ")\n";
      if (two)
        os << "  rack 2: gamma = " << to_fraction_string(head.gamma2)
           << "  C_T = " << to_fraction_string(head.cost2) << " (" << dec(head.cost2) << ")\n";
      os << "along the curve:\n";
      os << "  " << std::left << std::setw(5) << "tag" << std::setw(18) << "beta_e" << std::setw(18) << "alpha"
         << std::setw(18) << "C_T rack 1" << (two ? "C_T rack 2" : "") << '\n';
      for (const auto& r : along) {
        os << "  " << std::setw(5) << r.tag << std::setw(18) << dec(r.beta_e) << std::setw(18)
           << (r.alpha ? dec(*r.alpha) : std::string("-")) << std::setw(18) << dec(r.cost1)
           << (two ? dec(r.cost2) : std::string()) << '\n';
      }
      return os.str();
    }
  }
  return {};
}

std::string render_verify(const SystemConfig& c, const CertificationReport& report, Format format,
                          const RenderOptions& options) {
  if (format == Format::Json) {
    Json j;
    j["model"] = std::string(variant_name(c.variant));
    j["parameters"] = parameters_json(c);
    j["states"] = report.states;
    j["passed"] = report.passed;
    Json samples = Json::array();
    for (const auto& s : report.samples) {
      Json x;
      x["beta_e"] = number(s.beta_e);
      x["alpha"] = number(s.alpha);
      x["mincut"] = number(s.at_alpha.value);
      x["alpha_below"] = number(s.alpha_below);
      x["mincut_below"] = number(s.below_alpha.value);
      x["bound_ok"] = s.bound_ok;
      x["tight_ok"] = s.tight_ok;
      if (!s.bound_ok) x["bound_witness"] = witness_json(s.at_alpha.witness);
      if (!s.tight_ok) x["tight_witness"] = witness_json(s.below_alpha.witness);
      samples.push_back(std::move(x));
    }
    j["samples"] = std::move(samples);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "verify " << variant_name(c.variant) << ": " << report.samples.size() << " samples, " << report.states
     << " states\n";
  for (const auto& s : report.samples) {
    const bool ok = s.bound_ok && s.tight_ok;
    os << (ok ? paint("PASS", "32", options.color) : paint("FAIL", "31", options.color))
       << " beta_e=" << dec(s.beta_e) << " alpha=" << dec(s.alpha) << " mincut=" << to_fraction_string(s.at_alpha.value)
       << " mincut_below=" << to_fraction_string(s.below_alpha.value) << '\n';
    if (!s.bound_ok) {
      os << "  min-cut below M at alpha; witness:\n" << witness_text(s.at_alpha.witness);
    }
    if (!s.tight_ok) {
      os << "  not tight: min-cut still >= M at alpha_below = " << to_fraction_string(s.alpha_below)
         << "; witness:\n"
         << witness_text(s.below_alpha.witness);
    }
  }
  os << (report.passed ? "certified\n" : "certification failed\n");
  return os.str();
}

}  // namespace dss
