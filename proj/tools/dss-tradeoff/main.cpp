#include <dss/dss_tradeoff.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <unistd.h>

namespace {

// Exit codes
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCertification = 3;
constexpr int kExitBudget = 4;

struct SystemFlags {
  std::string model = "tworack";
  std::string file_size = "1";
  int k = 0;
  int n1 = 0;
  int n2 = 0;
  int d = 0;
  std::optional<int> d1c, d1e, d2c, d2e;
  std::string tau = "1";
  std::string format;
  std::string out;
  unsigned threads = 1;
};

struct Options {
  SystemFlags sys;
  int samples = -1;  // per command default when unset
  std::string beta_max;
  std::string models = "tworack,nonhomog";
  std::string which;
  int max_failures = 3;
  std::string budget = "2000000";
  std::string epsilon = "0.001";
  std::string perturb = "1";
  std::string cc, ce, beta_e;
};

void add_system_flags(CLI::App* cmd, SystemFlags& f, bool with_model) {
  if (with_model)
    cmd->add_option("--model", f.model, "symmetric | static | tworack | nonhomog")
        ->check(CLI::IsMember({"symmetric", "static", "tworack", "nonhomog"}));
  cmd->add_option("--M", f.file_size, "file size (p/q or decimal)");
  cmd->add_option("--k", f.k, "nodes contacted by a data collector")->required();
  cmd->add_option("--n1", f.n1, "nodes in rack 1 (all nodes for the symmetric model)")->required();
  cmd->add_option("--n2", f.n2, "nodes in rack 2");
  cmd->add_option("--d", f.d, "helpers per repair")->required();
  cmd->add_option("--d1c", f.d1c, "same-rack helpers of a rack-1 newcomer (default d - d1e)");
  cmd->add_option("--d1e", f.d1e, "other-rack helpers of a rack-1 newcomer");
  cmd->add_option("--d2c", f.d2c, "same-rack helpers of a rack-2 newcomer (default d - d2e)");
  cmd->add_option("--d2e", f.d2e, "other-rack helpers of a rack-2 newcomer");
  cmd->add_option("--tau", f.tau, "cheap/expensive bandwidth ratio, at least 1");
  cmd->add_option("--format", f.format, "csv | json | gnuplot | text")
      ->check(CLI::IsMember({"csv", "json", "gnuplot", "text"}));
  cmd->add_option("--out", f.out, "output file (default: standard output)");
  cmd->add_option("--threads", f.threads, "worker threads, 0 for all cores");
}

int exit_code(dss_status s) {
  switch (s) {
    case DSS_OK: return 0;
    case DSS_ERR_USAGE: return kExitUsage;
    case DSS_ERR_CONFIG: return kExitConfig;
    case DSS_ERR_CERTIFICATION: return kExitCertification;
    case DSS_ERR_BUDGET: return kExitBudget;
    case DSS_ERR_INFEASIBLE: return kExitConfig;
    case DSS_ERR_INTERNAL: return kExitUsage;
  }
  return kExitUsage;
}

int report(dss_status s) {
  std::fprintf(stderr, "error: %s\n", dss_last_error());
  return exit_code(s);
}

// Owning wrappers around the C handles.
struct Config {
  dss_config* ptr = nullptr;
  ~Config() { dss_config_destroy(ptr); }
};
struct Curve {
  dss_curve* ptr = nullptr;
  ~Curve() { dss_curve_destroy(ptr); }
};
struct Text {
  char* ptr = nullptr;
  ~Text() { dss_string_free(ptr); }
};

dss_status make_config(const SystemFlags& f, const std::string& model, Config& out) {
  dss_params p;
  dss_params_init(&p);
  if (dss_status s = dss_parse_model(model.c_str(), &p.model); s != DSS_OK) return s;
  p.file_size = f.file_size.c_str();
  p.tau = f.tau.c_str();
  p.k = f.k;
  p.n1 = f.n1;
  p.n2 = f.n2;
  p.d = f.d;
  p.d1c = f.d1c.value_or(-1);
  p.d1e = f.d1e.value_or(-1);
  p.d2c = f.d2c.value_or(-1);
  p.d2e = f.d2e.value_or(-1);
  return dss_config_create(&p, &out.ptr);
}

unsigned resolve_threads(unsigned t) {
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

bool use_color(const SystemFlags& f) {
  return f.out.empty() && std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
}

int emit(const SystemFlags& f, const char* text) {
  if (f.out.empty()) {
    std::fputs(text, stdout);
    std::fflush(stdout);
    return 0;
  }
  std::ofstream os(f.out, std::ios::binary);
  os << text;
  if (!os) {
    std::fprintf(stderr, "error: cannot write %s\n", f.out.c_str());
    return kExitUsage;
  }
  return 0;
}

dss_status format_of(const SystemFlags& f, const char* fallback, dss_format& out) {
  return dss_parse_format(f.format.empty() ? fallback : f.format.c_str(), &out);
}

int cmd_curve(const Options& o) {
  Config cfg;
  if (dss_status s = make_config(o.sys, o.sys.model, cfg); s != DSS_OK) return report(s);
  Curve curve;
  if (dss_status s = dss_curve_create(cfg.ptr, &curve.ptr); s != DSS_OK) return report(s);
  dss_format fmt;
  if (dss_status s = format_of(o.sys, "csv", fmt); s != DSS_OK) return report(s);
  dss_render_options ro;
  dss_render_options_init(&ro);
  ro.samples = std::max(0, o.samples);
  ro.beta_max = o.beta_max.empty() ? nullptr : o.beta_max.c_str();
  ro.color = use_color(o.sys);
  Text text;
  if (dss_status s = dss_render_curve(curve.ptr, fmt, &ro, &text.ptr); s != DSS_OK) return report(s);
  return emit(o.sys, text.ptr);
}

int cmd_compare(const Options& o) {
  const auto comma = o.models.find(',');
  if (comma == std::string::npos) {
    std::fprintf(stderr, "error: --models expects two comma-separated models\n");
    return kExitUsage;
  }
  Config a, b;
  if (dss_status s = make_config(o.sys, o.models.substr(0, comma), a); s != DSS_OK) return report(s);
  if (dss_status s = make_config(o.sys, o.models.substr(comma + 1), b); s != DSS_OK) return report(s);
  dss_format fmt;
  if (dss_status s = format_of(o.sys, "text", fmt); s != DSS_OK) return report(s);
  dss_render_options ro;
  dss_render_options_init(&ro);
  ro.samples = std::max(0, o.samples);
  ro.beta_max = o.beta_max.empty() ? nullptr : o.beta_max.c_str();
  ro.color = use_color(o.sys);
  ro.threads = resolve_threads(o.sys.threads);
  Text text;
  if (dss_status s = dss_render_compare(a.ptr, b.ptr, fmt, &ro, &text.ptr); s != DSS_OK) return report(s);
  return emit(o.sys, text.ptr);
}

int cmd_point(const Options& o) {
  Config cfg;
  if (dss_status s = make_config(o.sys, o.sys.model, cfg); s != DSS_OK) return report(s);
  Curve curve;
  if (dss_status s = dss_curve_create(cfg.ptr, &curve.ptr); s != DSS_OK) return report(s);
  dss_format fmt;
  if (dss_status s = format_of(o.sys, "text", fmt); s != DSS_OK) return report(s);
  Text text;
  const dss_point which = o.which == "msr" ? DSS_POINT_MSR : DSS_POINT_MBR;
  if (dss_status s = dss_render_point(curve.ptr, which, fmt, &text.ptr); s != DSS_OK) return report(s);
  return emit(o.sys, text.ptr);
}

int cmd_verify(const Options& o) {
  Config cfg;
  if (dss_status s = make_config(o.sys, o.sys.model, cfg); s != DSS_OK) return report(s);
  Curve curve;
  if (dss_status s = dss_curve_create(cfg.ptr, &curve.ptr); s != DSS_OK) return report(s);
  dss_format fmt;
  if (dss_status s = format_of(o.sys, "text", fmt); s != DSS_OK) return report(s);
  dss_verify_options vo;
  dss_verify_options_init(&vo);
  if (o.samples >= 0) vo.samples = o.samples;
  vo.max_failures = o.max_failures;
  // accept 2e6 style budgets
  char* end = nullptr;
  const double budget = std::strtod(o.budget.c_str(), &end);
  if (end == o.budget.c_str() || *end != '\0' || !(budget >= 0) || budget != std::floor(budget) ||
      budget > 1.8e19) {
    std::fprintf(stderr, "error: --budget expects a non-negative integer\n");
    return kExitUsage;
  }
  vo.budget = static_cast<unsigned long long>(budget);
  vo.epsilon = o.epsilon.c_str();
  vo.perturb = o.perturb.c_str();
  vo.threads = resolve_threads(o.sys.threads);
  vo.color = use_color(o.sys);
  Text text;
  const dss_status s = dss_verify(curve.ptr, &vo, fmt, &text.ptr);
  if (text.ptr) {
    if (int rc = emit(o.sys, text.ptr); rc != 0) return rc;
  }
  if (s == DSS_ERR_CERTIFICATION) {
    std::fprintf(stderr, "error: certification failed\n");
    return kExitCertification;
  }
  if (s != DSS_OK) return report(s);
  return 0;
}

int cmd_cost(const Options& o) {
  Config cfg;
  if (dss_status s = make_config(o.sys, o.sys.model, cfg); s != DSS_OK) return report(s);
  Curve curve;
  if (dss_status s = dss_curve_create(cfg.ptr, &curve.ptr); s != DSS_OK) return report(s);
  dss_format fmt;
  if (dss_status s = format_of(o.sys, "text", fmt); s != DSS_OK) return report(s);
  Text text;
  const char* beta = o.beta_e.empty() ? nullptr : o.beta_e.c_str();
  if (dss_status s = dss_render_cost(curve.ptr, o.cc.c_str(), o.ce.c_str(), beta, fmt, &text.ptr); s != DSS_OK)
    return report(s);
  return emit(o.sys, text.ptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Storage / repair-bandwidth tradeoff curves for regenerating codes", "dss-tradeoff"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dss_version());
  Options o;

  auto* curve = app.add_subcommand("curve", "tradeoff curve segments");
  add_system_flags(curve, o.sys, true);
  curve->add_option("--samples", o.samples, "interior gnuplot points per segment");
  curve->add_option("--beta-max", o.beta_max, "gnuplot extent of the flat segment");

  auto* compare = app.add_subcommand("compare", "two models on the same system");
  add_system_flags(compare, o.sys, false);
  compare->add_option("--models", o.models, "two models, comma separated")->capture_default_str();
  compare->add_option("--samples", o.samples, "extra grid points between breakpoints");
  compare->add_option("--beta-max", o.beta_max, "gnuplot extent of the flat segment");

  auto* point = app.add_subcommand("point", "minimum-storage or minimum-bandwidth point");
  add_system_flags(point, o.sys, true);
  point->add_option("--which", o.which, "msr | mbr")->required()->check(CLI::IsMember({"msr", "mbr"}));

  auto* verify = app.add_subcommand("verify", "certify the curve against the flow-graph oracle");
  add_system_flags(verify, o.sys, true);
  verify->add_option("--samples", o.samples, "interior probe points per segment (default 1)");
  verify->add_option("--max-failures", o.max_failures, "repair events per history")
      ->capture_default_str()
      ->check(CLI::Range(0, 16));
  verify->add_option("--budget", o.budget, "max enumerated states")->capture_default_str();
  verify->add_option("--alpha-epsilon", o.epsilon, "relative alpha reduction for the tightness probe")
      ->capture_default_str();
  verify->add_option("--perturb", o.perturb, "scale the curve's alpha before certifying")->capture_default_str();

  auto* cost = app.add_subcommand("cost", "repair bandwidth and cost");
  add_system_flags(cost, o.sys, true);
  cost->add_option("--cc", o.cc, "cost per unit over a cheap link")->required();
  cost->add_option("--ce", o.ce, "cost per unit over an expensive link")->required();
  cost->add_option("--beta-e", o.beta_e, "expensive-link bandwidth (default: MBR point)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n";
    const auto chosen = app.get_subcommands();
    std::cerr << (chosen.empty() ? app.help() : chosen.front()->help());
    return kExitUsage;
  }

  if (curve->parsed()) return cmd_curve(o);
  if (compare->parsed()) return cmd_compare(o);
  if (point->parsed()) return cmd_point(o);
  if (verify->parsed()) return cmd_verify(o);
  if (cost->parsed()) return cmd_cost(o);
  return kExitUsage;
}
