#include "curvfun/curvfun.h"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvfun/compute.hpp"
#include "curvfun/error.hpp"
#include "curvfun/expr.hpp"
#include "curvfun/functionals.hpp"
#include "curvfun/reproduce.hpp"
#include "curvfun/zoo.hpp"

using namespace curvfun;

struct cf_config {
  std::string manifold;
  std::string spec_file;
  std::string spec_json;
  std::map<std::string, std::string> params;
  std::string functional = "gamma_d";
  std::string frame = "coordinate";
  std::optional<std::pair<int, int>> plane;  // 1-based
  double angle = 0;
  bool angle_set = false;
  std::vector<int> grid;
  long samples = 64;
  std::uint64_t seed = 0;
  int workers = 1;
  bool timing = false;
  int angles = 5;
  std::string case_name;

  // filled by validation
  std::optional<ManifoldSpec> spec;
  ComputeOptions options;
};

struct cf_report {
  nlohmann::json record;
  std::string rendered;
};

namespace {

thread_local std::string g_last_error;

cf_status fail(cf_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

cf_status status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
    case ErrorCode::kParse:
      return CF_ERR_CONFIG;
    default:
      return CF_ERR_NUMERIC;
  }
}

template <class T>
T parse_int(const std::string& key, const std::string& v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error(ErrorCode::kConfig, key + " expects an integer, got '" + v + "'");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

void set_key(cf_config& c, const std::string& key, const std::string& v) {
  if (key == "manifold") {
    c.manifold = v;
  } else if (key == "spec_file") {
    c.spec_file = v;
  } else if (key == "spec_json") {
    c.spec_json = v;
  } else if (key == "param") {
    const auto eq = v.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::kConfig, "param expects key=value, got '" + v + "'");
    c.params[v.substr(0, eq)] = v.substr(eq + 1);
  } else if (key == "functional") {
    functional_from_string(v);
    c.functional = v;
  } else if (key == "frame") {
    if (v != "coordinate" && v != "rotated" && v != "haar")
      throw Error(ErrorCode::kConfig, "frame must be coordinate, rotated or haar");
    c.frame = v;
  } else if (key == "rotate_plane") {
    const auto parts = split(v, ',');
    if (parts.size() != 2) throw Error(ErrorCode::kConfig, "rotate_plane expects a,b");
    c.plane = std::make_pair(parse_int<int>(key, parts[0]), parse_int<int>(key, parts[1]));
  } else if (key == "rotate_angle") {
    try {
      c.angle = eval_constant(v);
    } catch (const Error&) {
      throw Error(ErrorCode::kConfig, "rotate_angle is not a number: '" + v + "'");
    }
    c.angle_set = true;
  } else if (key == "grid") {
    c.grid.clear();
    for (const auto& p : split(v, ',')) c.grid.push_back(parse_int<int>(key, p));
    if (c.grid.empty()) throw Error(ErrorCode::kConfig, "grid expects n or n1,n2,...");
  } else if (key == "samples") {
    c.samples = parse_int<long>(key, v);
  } else if (key == "seed") {
    c.seed = parse_int<std::uint64_t>(key, v);
  } else if (key == "workers") {
    c.workers = parse_int<int>(key, v);
  } else if (key == "timing") {
    if (v != "0" && v != "1") throw Error(ErrorCode::kConfig, "timing expects 0 or 1");
    c.timing = v == "1";
  } else if (key == "angles") {
    c.angles = parse_int<int>(key, v);
  } else if (key == "case") {
    c.case_name = v;
  } else {
    throw Error(ErrorCode::kConfig, "unknown configuration key '" + key + "'");
  }
}

ManifoldSpec load_manifold(const cf_config& c) {
  const int sources = !c.manifold.empty() + !c.spec_file.empty() + !c.spec_json.empty();
  if (sources != 1) throw Error(ErrorCode::kConfig, "give exactly one of --manifold or --spec-file");
  if (!c.manifold.empty()) return make_manifold(c.manifold, c.params);
  if (!c.params.empty()) throw Error(ErrorCode::kConfig, "--param applies to named manifolds only");
  std::string text = c.spec_json;
  if (!c.spec_file.empty()) {
    std::ifstream in(c.spec_file);
    if (!in) throw Error(ErrorCode::kConfig, "cannot read spec file '" + c.spec_file + "'");
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("spec is not valid JSON: ") + e.what());
  }
  return manifold_from_json(j);
}

enum class Op { kCompute, kSweep };

void validate(cf_config& c, Op op) {
  ManifoldSpec m = load_manifold(c);
  ComputeOptions opt;
  opt.functional = functional_from_string(c.functional);
  opt.seed = c.seed;
  if (c.workers < 1 || c.workers > 256) throw Error(ErrorCode::kConfig, "workers must be between 1 and 256");
  opt.workers = c.workers;
  if (c.samples < 2) throw Error(ErrorCode::kConfig, "samples must be at least 2");
  opt.samples = c.samples;

  const bool needs_even = opt.functional == Functional::kGammaD || opt.functional == Functional::kGammaMc ||
                          opt.functional == Functional::kGbc;
  if (needs_even && (m.dim % 2 != 0 || m.dim > 8))
    throw Error(ErrorCode::kConfig, std::string(to_string(opt.functional)) + " needs an even dimension up to 8; " +
                                        m.name + " has dimension " + std::to_string(m.dim));

  if (c.plane) {
    const auto [a, b] = *c.plane;
    if (a == b || a < 1 || b < 1 || a > m.dim || b > m.dim)
      throw Error(ErrorCode::kConfig, "rotate_plane must name two distinct axes in 1.." + std::to_string(m.dim));
  }
  if (op == Op::kSweep) {
    if (!c.plane) throw Error(ErrorCode::kConfig, "frame sweep needs --rotate-plane");
    if (c.angles < 2) throw Error(ErrorCode::kConfig, "frame sweep needs at least 2 angles");
    if (c.frame != "coordinate") throw Error(ErrorCode::kConfig, "frame sweep rotates the coordinate frame; omit --frame");
  } else if (c.frame == "rotated") {
    if (!c.plane || !c.angle_set)
      throw Error(ErrorCode::kConfig, "--frame rotated needs --rotate-plane and --rotate-angle");
    opt.frame = FrameStrategy::rotated(givens(m.dim, c.plane->first - 1, c.plane->second - 1, c.angle));
  } else {
    if (c.plane || c.angle_set) throw Error(ErrorCode::kConfig, "rotation parameters need --frame rotated");
    opt.frame = c.frame == "haar" ? FrameStrategy::haar() : FrameStrategy::coordinate();
  }

  if (!c.grid.empty()) {
    if (!m.chart_based()) throw Error(ErrorCode::kConfig, m.name + " is homogeneous and has no quadrature grid");
    GridSpec g = m.grid;
    if (c.grid.size() != 1 && static_cast<int>(c.grid.size()) != m.dim)
      throw Error(ErrorCode::kConfig, "grid needs one node count or one per axis (" + std::to_string(m.dim) + ")");
    for (std::size_t i = 0; i < g.axes.size(); ++i) g.axes[i].nodes = c.grid.size() == 1 ? c.grid[0] : c.grid[i];
    g.validate();
    opt.grid = g;
  }
  c.spec = std::move(m);
  c.options = opt;
}

cf_report* error_report(const Error& e) {
  auto* r = new cf_report;
  r->record = {{"schema_version", kSchemaVersion},
               {"kind", "error"},
               {"code", to_string(e.code())},
               {"message", e.what()}};
  if (!e.point().empty()) r->record["point"] = e.point();
  return r;
}

template <class F>
cf_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(status_for(e), e.what());
  } catch (const std::exception& e) {
    return fail(CF_ERR_INTERNAL, e.what());
  }
}

/// Runs `body` after validation; numerical failures become error reports.
template <class F>
cf_status run(cf_config* cfg, Op op, cf_report** out, F&& body) {
  if (!cfg) return fail(CF_ERR_CONFIG, "null config");
  if (out) *out = nullptr;
  const cf_status s = guarded([&] {
    validate(*cfg, op);
    return CF_OK;
  });
  if (s != CF_OK) return s;
  try {
    auto* r = new cf_report{body(*cfg), {}};
    if (out) *out = r;
    else delete r;
    return CF_OK;
  } catch (const Error& e) {
    const cf_status st = status_for(e);
    g_last_error = e.what();
    if (out && st == CF_ERR_NUMERIC) *out = error_report(e);
    return st;
  } catch (const std::exception& e) {
    return fail(CF_ERR_INTERNAL, e.what());
  }
}

std::string render_other(const nlohmann::json& rec, const std::string& format) {
  if (format == "json") return rec.dump(2) + "\n";
  std::ostringstream os;
  const std::string kind = rec.at("kind").get<std::string>();
  if (kind == "error") {
    if (format == "csv") os << "code,message\n" << rec.at("code").get<std::string>() << ",\"" << rec.at("message").get<std::string>() << "\"\n";
    else {
      os << "error: " << rec.at("message").get<std::string>() << "\n";
      if (rec.contains("point")) os << "  at point " << rec.at("point").dump() << "\n";
    }
    return os.str();
  }
  if (format == "csv") os << "kind,name,description\n";
  for (const auto& m : rec.at("manifolds")) {
    if (format == "csv") os << "manifold," << m.at("name").get<std::string>() << ",\"" << m.at("description").get<std::string>() << "\"\n";
    else os << "  " << m.at("name").get<std::string>() << "  " << m.at("description").get<std::string>() << "\n";
  }
  if (format == "text") os << "reproduce cases:";
  for (const auto& c : rec.at("reproduce_cases")) {
    if (format == "csv") os << "case," << c.get<std::string>() << ",\n";
    else os << " " << c.get<std::string>();
  }
  if (format == "text") os << "\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* cf_version(void) { return kVersion; }

const char* cf_last_error(void) { return g_last_error.c_str(); }

cf_config* cf_config_new(void) {
  try {
    return new cf_config;
  } catch (...) {
    g_last_error = "out of memory";
    return nullptr;
  }
}

void cf_config_free(cf_config* cfg) { delete cfg; }

cf_status cf_config_set(cf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(CF_ERR_CONFIG, "null argument");
  return guarded([&] {
    set_key(*cfg, key, value);
    cfg->spec.reset();
    return CF_OK;
  });
}

cf_status cf_config_validate(cf_config* cfg) {
  if (!cfg) return fail(CF_ERR_CONFIG, "null config");
  return guarded([&] {
    validate(*cfg, Op::kCompute);
    return CF_OK;
  });
}

cf_status cf_compute(cf_config* cfg, cf_report** out) {
  return run(cfg, Op::kCompute, out, [](cf_config& c) {
    const ComputeResult r = compute(*c.spec, c.options);
    return make_record(*c.spec, c.options, r, c.timing);
  });
}

cf_status cf_frame_sweep(cf_config* cfg, cf_report** out) {
  return run(cfg, Op::kSweep, out, [](cf_config& c) {
    const int a = c.plane->first - 1, b = c.plane->second - 1;
    const auto rows = frame_sweep(*c.spec, c.options, a, b, c.angles);
    return make_sweep_record(*c.spec, c.options, a, b, rows);
  });
}

cf_status cf_reproduce(cf_config* cfg, cf_report** out) {
  if (!cfg) return fail(CF_ERR_CONFIG, "null config");
  if (out) *out = nullptr;
  return guarded([&] {
    if (cfg->case_name.empty()) throw Error(ErrorCode::kConfig, "reproduce needs a case name");
    if (cfg->workers < 1 || cfg->workers > 256) throw Error(ErrorCode::kConfig, "workers must be between 1 and 256");
    auto* r = new cf_report{reproduce(cfg->case_name, cfg->seed, cfg->workers), {}};
    const bool ok = reproduce_passed(r->record);
    if (out) *out = r;
    else delete r;
    if (!ok) return fail(CF_ERR_REPRODUCE, "reproduction case '" + cfg->case_name + "' has failing checks");
    return CF_OK;
  });
}

cf_status cf_catalog(cf_report** out) {
  if (!out) return fail(CF_ERR_CONFIG, "null argument");
  return guarded([&] {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& [name, desc] : manifold_catalog()) ms.push_back({{"name", name}, {"description", desc}});
    *out = new cf_report{{{"schema_version", kSchemaVersion},
                          {"kind", "catalog"},
                          {"manifolds", ms},
                          {"reproduce_cases", reproduce_cases()}},
                         {}};
    return CF_OK;
  });
}

const char* cf_report_render(cf_report* report, const char* format) {
  if (!report || !format) {
    g_last_error = "null argument";
    return nullptr;
  }
  try {
    const std::string f = format;
    if (f != "json" && f != "csv" && f != "text") throw Error(ErrorCode::kConfig, "format must be json, csv or text");
    const std::string kind = report->record.value("kind", std::string());
    report->rendered = (kind == "error" || kind == "catalog") ? render_other(report->record, f) : render(report->record, f);
    return report->rendered.c_str();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

cf_status cf_report_value(const cf_report* report, double* value, double* error_estimate) {
  if (!report) return fail(CF_ERR_CONFIG, "null report");
  if (!report->record.contains("value")) return fail(CF_ERR_CONFIG, "report has no scalar value");
  if (value) *value = report->record.at("value").get<double>();
  if (error_estimate) *error_estimate = report->record.value("error_estimate", 0.0);
  return CF_OK;
}

void cf_report_free(cf_report* report) { delete report; }

cf_status cf_k_discrete(const double* k, int n, double* out) {
  if (!k || !out) return fail(CF_ERR_CONFIG, "null argument");
  return guarded([&] {
    if (n < 1 || n > 8) throw Error(ErrorCode::kBadDimension, "dimension must be between 1 and 8");
    Mat<double> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = k[i * n + j];
    *out = k_discrete(m);
    return CF_OK;
  });
}

cf_status cf_k_gbc(const double* r, int n, double* raw, double* normalized) {
  if (!r) return fail(CF_ERR_CONFIG, "null argument");
  return guarded([&] {
    if (n < 2 || n > 8 || n % 2) throw Error(ErrorCode::kBadDimension, "dimension must be even, 2..8");
    Tensor4<double> t(n);
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) t(a, b, c, d) = r[idx++];
    const GbcValue v = k_gbc(t);
    if (raw) *raw = v.raw;
    if (normalized) *normalized = v.normalized;
    return CF_OK;
  });
}

}  // extern "C"
