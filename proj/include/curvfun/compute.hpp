#pragma once

// Integration of pointwise functionals over a manifold and the
// self-describing result records emitted by the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvfun/frames.hpp"
#include "curvfun/functionals.hpp"
#include "curvfun/quadrature.hpp"
#include "curvfun/zoo.hpp"

namespace curvfun {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

enum class Functional { kGammaD, kGammaMc, kGbc, kHilbert, kVolume };

Functional functional_from_string(const std::string& s);
const char* to_string(Functional f);
/// Name of the reference quantity a functional's total is compared against.
const char* reference_quantity(Functional f);
const char* normalization(Functional f);

struct ComputeOptions {
  Functional functional = Functional::kGammaD;
  FrameStrategy frame = FrameStrategy::coordinate();
  std::optional<GridSpec> grid;  // defaults to the manifold's grid
  std::uint64_t seed = 0;
  int workers = 1;
  long samples = 64;  // Haar frames per point for gamma_mc
};

struct ComputeResult {
  IntegralResult integral;
  /// Same integral with the closed-form density, when the manifold has one.
  std::optional<double> oracle_value;
  nlohmann::json exact;  // exact rational side results (homogeneous spaces)
  GridSpec grid;
};

/// Density (before multiplication by dV) of a functional at a chart point.
/// `rng` is only drawn from by Haar strategies and gamma_mc.
NodeValue density_at(const ManifoldSpec& m, const ComputeOptions& opt, std::span<const double> x, RandomStream& rng);

ComputeResult compute(const ManifoldSpec& m, const ComputeOptions& opt);

/// JSON record: schema_version, functional, normalization, frame_strategy,
/// manifold, value, error_estimate, n_points, grid, seed, workers, samples,
/// versions, and optional oracle, exact, references and wall_time.
nlohmann::json make_record(const ManifoldSpec& m, const ComputeOptions& opt, const ComputeResult& r,
                           bool include_timing);

struct SweepRow {
  double angle = 0;
  double value = 0;
  double error_estimate = 0;
};

/// gamma (per `opt.functional`) with the coordinate frame rotated by angles
/// k (pi/2) / (n - 1), k = 0..n-1, in the plane (a, b) (0-based).
std::vector<SweepRow> frame_sweep(const ManifoldSpec& m, ComputeOptions opt, int a, int b, int n_angles);

nlohmann::json make_sweep_record(const ManifoldSpec& m, const ComputeOptions& opt, int a, int b,
                                 const std::vector<SweepRow>& rows);

/// Renderers for the record produced by make_record / make_sweep_record.
std::string render(const nlohmann::json& record, const std::string& format);

/// CSV column order for compute records.
const std::vector<std::string>& csv_columns();

}  // namespace curvfun
