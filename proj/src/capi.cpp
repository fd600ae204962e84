#include "dss/dss_tradeoff.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "render.hpp"

struct dss_config {
  dss_params raw;
  dss::Rational file_size;
  dss::Rational tau;
  dss::SystemConfig config;
};

struct dss_curve {
  dss::SystemConfig config;
  dss::TradeoffCurve curve;
};

namespace {

thread_local std::string g_last_error;

dss_status fail(dss_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Translates the exception in flight into a status code.
dss_status current_status() {
  try {
    throw;
  } catch (const dss::Error& e) {
    switch (e.kind()) {
      case dss::ErrorKind::InvalidArgument: return fail(DSS_ERR_USAGE, e.what());
      case dss::ErrorKind::InvalidConfig: return fail(DSS_ERR_CONFIG, e.what());
      case dss::ErrorKind::Infeasible: return fail(DSS_ERR_INFEASIBLE, e.what());
      case dss::ErrorKind::BudgetExceeded: return fail(DSS_ERR_BUDGET, e.what());
      case dss::ErrorKind::Internal: return fail(DSS_ERR_INTERNAL, e.what());
    }
  } catch (const std::invalid_argument& e) {
    return fail(DSS_ERR_USAGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DSS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DSS_ERR_INTERNAL, e.what());
  }
  return fail(DSS_ERR_INTERNAL, "unknown error");
}

template <typename Fn>
dss_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (...) {
    return current_status();
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dss::Rational parse_named(const char* text, const char* name, const dss::Rational& fallback) {
  if (!text) return fallback;
  try {
    return dss::parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw dss::Error(dss::ErrorKind::InvalidArgument,
                     std::string("invalid value for ") + name + ": '" + text + "'");
  }
}

dss::Variant to_variant(dss_model m) {
  switch (m) {
    case DSS_MODEL_SYMMETRIC: return dss::Variant::Symmetric;
    case DSS_MODEL_STATIC: return dss::Variant::StaticCost;
    case DSS_MODEL_TWORACK: return dss::Variant::TwoRackTraditional;
    case DSS_MODEL_NONHOMOG: return dss::Variant::TwoRackNonHomogeneous;
  }
  throw dss::Error(dss::ErrorKind::InvalidArgument, "unknown model");
}

dss::Format to_format(dss_format f) {
  switch (f) {
    case DSS_FORMAT_CSV: return dss::Format::Csv;
    case DSS_FORMAT_JSON: return dss::Format::Json;
    case DSS_FORMAT_GNUPLOT: return dss::Format::Gnuplot;
    case DSS_FORMAT_TEXT: return dss::Format::Text;
  }
  throw dss::Error(dss::ErrorKind::InvalidArgument, "unknown format");
}

// Fills in a helper split from whichever half was given.
void derive_split(int d, int& dc, int& de, int rack) {
  if (dc < 0 && de < 0)
    throw dss::Error(dss::ErrorKind::InvalidArgument,
                     "missing helper split for rack " + std::to_string(rack) + " (give --d" +
                         std::to_string(rack) + "e)");
  if (dc < 0) dc = d - de;
  if (de < 0) de = d - dc;
}

dss::SystemConfig make_config(const dss_params& p, const dss::Rational& file_size, const dss::Rational& tau) {
  dss::SystemConfig c;
  c.variant = to_variant(p.model);
  c.file_size = file_size;
  c.tau = tau;
  c.k = p.k;
  c.n1 = p.n1;
  c.n2 = p.n2;
  c.d = p.d;
  c.d1c = p.d1c;
  c.d1e = p.d1e;
  c.d2c = p.d2c;
  c.d2e = p.d2e;
  if (c.variant != dss::Variant::Symmetric) {
    derive_split(c.d, c.d1c, c.d1e, 1);
    if (c.variant == dss::Variant::StaticCost && c.d2c < 0 && c.d2e < 0) {
      c.d2c = c.d1c;
      c.d2e = c.d1e;
    } else {
      derive_split(c.d, c.d2c, c.d2e, 2);
    }
  }
  return dss::validate(c);
}

dss::RenderOptions render_options(const dss_render_options* o) {
  dss::RenderOptions r;
  if (!o) return r;
  if (o->samples < 0) throw dss::Error(dss::ErrorKind::InvalidArgument, "samples must be >= 0");
  r.samples = o->samples;
  if (o->beta_max) r.beta_max = parse_named(o->beta_max, "beta-max", 0);
  r.color = o->color != 0;
  return r;
}

}  // namespace

extern "C" {

void dss_params_init(dss_params* params) {
  if (!params) return;
  params->model = DSS_MODEL_TWORACK;
  params->file_size = nullptr;
  params->k = params->n1 = params->n2 = params->d = 0;
  params->d1c = params->d1e = params->d2c = params->d2e = -1;
  params->tau = nullptr;
}

const char* dss_model_name(dss_model model) {
  switch (model) {
    case DSS_MODEL_SYMMETRIC: return "symmetric";
    case DSS_MODEL_STATIC: return "static";
    case DSS_MODEL_TWORACK: return "tworack";
    case DSS_MODEL_NONHOMOG: return "nonhomog";
  }
  return "unknown";
}

dss_status dss_parse_model(const char* name, dss_model* out) {
  if (!name || !out) return fail(DSS_ERR_USAGE, "null argument");
  for (dss_model m : {DSS_MODEL_SYMMETRIC, DSS_MODEL_STATIC, DSS_MODEL_TWORACK, DSS_MODEL_NONHOMOG}) {
    if (std::strcmp(name, dss_model_name(m)) == 0) {
      *out = m;
      return DSS_OK;
    }
  }
  return fail(DSS_ERR_USAGE, std::string("unknown model '") + name + "'");
}

dss_status dss_parse_format(const char* name, dss_format* out) {
  if (!name || !out) return fail(DSS_ERR_USAGE, "null argument");
  const auto f = dss::parse_format(name);
  if (!f) return fail(DSS_ERR_USAGE, std::string("unknown format '") + name + "'");
  *out = static_cast<dss_format>(*f);
  return DSS_OK;
}

dss_status dss_config_create(const dss_params* params, dss_config** out) {
  if (!params || !out) return fail(DSS_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<dss_config>();
    cfg->raw = *params;
    cfg->raw.file_size = nullptr;
    cfg->raw.tau = nullptr;
    cfg->file_size = parse_named(params->file_size, "M", 1);
    cfg->tau = parse_named(params->tau, "tau", 1);
    cfg->config = make_config(cfg->raw, cfg->file_size, cfg->tau);
    *out = cfg.release();
    return DSS_OK;
  });
}

void dss_config_destroy(dss_config* config) { delete config; }

dss_status dss_config_with_model(const dss_config* config, dss_model model, dss_config** out) {
  if (!config || !out) return fail(DSS_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<dss_config>(*config);
    cfg->raw.model = model;
    cfg->config = make_config(cfg->raw, cfg->file_size, cfg->tau);
    *out = cfg.release();
    return DSS_OK;
  });
}

int dss_config_racks_swapped(const dss_config* config) { return config && config->config.racks_swapped ? 1 : 0; }

dss_status dss_curve_create(const dss_config* config, dss_curve** out) {
  if (!config || !out) return fail(DSS_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto curve = std::make_unique<dss_curve>();
    curve->config = config->config;
    curve->curve = dss::build_curve(config->config);
    *out = curve.release();
    return DSS_OK;
  });
}

void dss_curve_destroy(dss_curve* curve) { delete curve; }

size_t dss_curve_segment_count(const dss_curve* curve) { return curve ? curve->curve.segments.size() : 0; }

int dss_curve_deleted_count(const dss_curve* curve) { return curve ? curve->curve.deleted_count : 0; }

int dss_curve_feasible(const dss_curve* curve) { return curve && curve->curve.feasible ? 1 : 0; }

dss_status dss_curve_point(const dss_curve* curve, dss_point which, char** beta_e, char** alpha) {
  if (!curve || !beta_e || !alpha) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    const dss::CurvePoint& p = which == DSS_POINT_MSR ? curve->curve.msr : curve->curve.mbr;
    char* b = copy_string(dss::to_fraction_string(p.beta_e));
    try {
      *alpha = copy_string(dss::to_fraction_string(p.alpha));
    } catch (...) {
      std::free(b);
      throw;
    }
    *beta_e = b;
    return DSS_OK;
  });
}

dss_status dss_curve_alpha_at(const dss_curve* curve, const char* beta_e, char** alpha) {
  if (!curve || !beta_e || !alpha) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    const dss::Rational b = parse_named(beta_e, "beta_e", 0);
    *alpha = copy_string(dss::to_fraction_string(curve->curve.alpha_at(b)));
    return DSS_OK;
  });
}

void dss_render_options_init(dss_render_options* options) {
  if (!options) return;
  options->samples = 0;
  options->beta_max = nullptr;
  options->color = 0;
  options->threads = 1;
}

dss_status dss_render_curve(const dss_curve* curve, dss_format format, const dss_render_options* options,
                            char** out) {
  if (!curve || !out) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    *out = copy_string(dss::render_curve(curve->config, curve->curve, to_format(format), render_options(options)));
    return DSS_OK;
  });
}

dss_status dss_render_point(const dss_curve* curve, dss_point which, dss_format format, char** out) {
  if (!curve || !out) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    const auto kind = which == DSS_POINT_MSR ? dss::PointKind::Msr : dss::PointKind::Mbr;
    *out = copy_string(dss::render_point(curve->config, curve->curve, kind, to_format(format)));
    return DSS_OK;
  });
}

dss_status dss_render_compare(const dss_config* a, const dss_config* b, dss_format format,
                              const dss_render_options* options, char** out) {
  if (!a || !b || !out) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    dss::CompareOptions co;
    co.samples = options ? options->samples : 0;
    co.threads = options ? options->threads : 1;
    const auto report = dss::compare(a->config, b->config, co);
    *out = copy_string(dss::render_compare(report, to_format(format), render_options(options)));
    return DSS_OK;
  });
}

dss_status dss_render_cost(const dss_curve* curve, const char* cheap_cost, const char* expensive_cost,
                           const char* beta_e, dss_format format, char** out) {
  if (!curve || !cheap_cost || !expensive_cost || !out) return fail(DSS_ERR_USAGE, "null argument");
  return guarded([&] {
    dss::CostQuery q;
    q.costs.cheap = parse_named(cheap_cost, "cc", 0);
    q.costs.expensive = parse_named(expensive_cost, "ce", 0);
    if (beta_e) {
      q.beta_e = parse_named(beta_e, "beta-e", 0);
      if (*q.beta_e < 0) throw dss::Error(dss::ErrorKind::InvalidArgument, "beta-e must be non-negative");
    }
    *out = copy_string(dss::render_cost(curve->config, curve->curve, q, to_format(format)));
    return DSS_OK;
  });
}

void dss_verify_options_init(dss_verify_options* options) {
  if (!options) return;
  options->samples = 1;
  options->max_failures = 3;
  options->budget = 2000000ULL;
  options->epsilon = nullptr;
  options->perturb = nullptr;
  options->threads = 1;
  options->color = 0;
}

dss_status dss_verify(const dss_curve* curve, const dss_verify_options* options, dss_format format, char** out) {
  if (!curve || !out) return fail(DSS_ERR_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    dss_verify_options o;
    dss_verify_options_init(&o);
    if (options) o = *options;
    dss::CertifyOptions co;
    co.samples = o.samples;
    co.max_failures = o.max_failures;
    co.budget = o.budget;
    co.epsilon = parse_named(o.epsilon, "alpha-epsilon", dss::Rational(1, 1000));
    co.alpha_scale = parse_named(o.perturb, "perturb", 1);
    co.threads = o.threads;
    if (co.alpha_scale <= 0) throw dss::Error(dss::ErrorKind::InvalidArgument, "perturb must be positive");
    const auto report = dss::certify_curve(curve->config, curve->curve, co);
    dss::RenderOptions ro;
    ro.color = o.color != 0;
    *out = copy_string(dss::render_verify(curve->config, report, to_format(format), ro));
    if (!report.passed) return fail(DSS_ERR_CERTIFICATION, "certification failed");
    return DSS_OK;
  });
}

void dss_string_free(char* s) { std::free(s); }

const char* dss_last_error(void) { return g_last_error.c_str(); }

const char* dss_version(void) { return "0.1.0"; }

}  // extern "C"
