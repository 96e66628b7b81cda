// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvfun/curvfun.h"

namespace {

struct Options {
  std::string manifold;
  std::string spec_file;
  std::vector<std::string> params;
  std::string functional = "gamma_d";
  std::string frame;
  std::string plane;
  std::string angle;
  std::string grid;
  std::string samples;
  std::string seed;
  std::string workers;
  std::string format = "json";
  std::string out;
  bool timing = false;
  std::string angles = "5";
  std::string case_name;
};

class Config {
 public:
  Config() : cfg_(cf_config_new()) {}
  ~Config() { cf_config_free(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  cf_config* get() { return cfg_; }

  // Records the first failure; later calls are skipped.
  void set(const char* key, const std::string& value) {
    if (status_ != CF_OK || value.empty()) return;
    status_ = cf_config_set(cfg_, key, value.c_str());
    if (status_ != CF_OK) message_ = cf_last_error();
  }
  cf_status status() const { return status_; }
  const std::string& message() const { return message_; }

 private:
  cf_config* cfg_;
  cf_status status_ = CF_OK;
  std::string message_;
};

class Report {
 public:
  ~Report() { cf_report_free(r_); }
  cf_report** out() { return &r_; }
  cf_report* get() { return r_; }

 private:
  cf_report* r_ = nullptr;
};

int emit(cf_report* report, const Options& o) {
  const char* text = cf_report_render(report, o.format.c_str());
  if (!text) {
    std::cerr << "curvfun: " << cf_last_error() << "\n";
    return CF_ERR_CONFIG;
  }
  if (o.out.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "curvfun: cannot write " << o.out << "\n";
    return CF_ERR_CONFIG;
  }
  return 0;
}

void fill(Config& c, const Options& o) {
  c.set("manifold", o.manifold);
  c.set("spec_file", o.spec_file);
  for (const auto& p : o.params) c.set("param", p);
  c.set("functional", o.functional);
  c.set("frame", o.frame);
  c.set("rotate_plane", o.plane);
  c.set("rotate_angle", o.angle);
  c.set("grid", o.grid);
  c.set("samples", o.samples);
  c.set("seed", o.seed);
  c.set("workers", o.workers);
  c.set("timing", o.timing ? "1" : "0");
  c.set("angles", o.angles);
  c.set("case", o.case_name);
}

using Runner = cf_status (*)(cf_config*, cf_report**);

int execute(const Options& o, Runner run) {
  Config c;
  fill(c, o);
  if (c.status() != CF_OK) {
    std::cerr << "curvfun: " << c.message() << "\n";
    return c.status();
  }
  Report r;
  const cf_status s = run(c.get(), r.out());
  const std::string message = cf_last_error();
  if (r.get()) {
    const int e = emit(r.get(), o);
    if (e != 0) return e;
  }
  if (s != CF_OK) std::cerr << "curvfun: " << message << "\n";
  return s;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed (u64)");
  cmd->add_option("--workers", o.workers, "Worker threads");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", o.out, "Write the report to this file instead of stdout");
}

void add_manifold(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifold", o.manifold, "Named manifold (see `curvfun list`)");
  cmd->add_option("--spec-file", o.spec_file, "JSON manifold spec");
  cmd->add_option("--param", o.params, "Manifold parameter key=value (repeatable)");
  cmd->add_option("--functional", o.functional, "gamma_d, gamma_mc, gbc, hilbert or volume");
  cmd->add_option("--grid", o.grid, "Nodes per axis: n or n1,n2,...");
  cmd->add_option("--samples", o.samples, "Haar frames per point for gamma_mc");
  add_common(cmd, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvfun: curvature functionals of Riemannian manifolds"};
  app.set_version_flag("--version", std::string(cf_version()));
  app.require_subcommand(1);
  Options o;

  auto* compute = app.add_subcommand("compute", "Integrate a functional over a manifold");
  add_manifold(compute, o);
  compute->add_option("--frame", o.frame, "coordinate, rotated or haar");
  compute->add_option("--rotate-plane", o.plane, "Rotation plane a,b (1-based)");
  compute->add_option("--rotate-angle", o.angle, "Rotation angle in radians; expressions like pi/4 allowed");
  compute->add_flag("--timing", o.timing, "Include wall_time in the record");

  auto* sweep = app.add_subcommand("sweep", "Functional as the frame rotates through [0, pi/2] in one plane");
  add_manifold(sweep, o);
  sweep->add_option("--rotate-plane", o.plane, "Rotation plane a,b (1-based)")->required();
  sweep->add_option("--angles", o.angles, "Number of equally spaced angles (>= 2)");

  auto* reproduce = app.add_subcommand("reproduce", "Check a reproduction case against its reference values");
  reproduce->add_option("case", o.case_name, "Case name or 'all'")->required();
  add_common(reproduce, o);

  auto* list = app.add_subcommand("list", "List named manifolds and reproduce cases");
  list->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : CF_ERR_CONFIG;
  }

  if (*compute) return execute(o, cf_compute);
  if (*sweep) return execute(o, cf_frame_sweep);
  if (*reproduce) return execute(o, cf_reproduce);
  if (*list) {
    if (o.format == "json" && list->count("--format") == 0) o.format = "text";
    Report r;
    if (cf_catalog(r.out()) != CF_OK) {
      std::cerr << "curvfun: " << cf_last_error() << "\n";
      return CF_ERR_INTERNAL;
    }
    return emit(r.get(), o);
  }
  return CF_ERR_CONFIG;
}
