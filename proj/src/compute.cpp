#include "curvfun/compute.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <gmp.h>
#include <Eigen/Core>

#include "curvfun/error.hpp"
#include "curvfun/tensor.hpp"

namespace curvfun {

Functional functional_from_string(const std::string& s) {
  if (s == "gamma_d") return Functional::kGammaD;
  if (s == "gamma_mc" || s == "gamma") return Functional::kGammaMc;
  if (s == "gbc") return Functional::kGbc;
  if (s == "hilbert") return Functional::kHilbert;
  if (s == "volume") return Functional::kVolume;
  throw Error(ErrorCode::kConfig, "unknown functional '" + s + "' (gamma_d, gamma_mc, gbc, hilbert, volume)");
}

const char* to_string(Functional f) {
  switch (f) {
    case Functional::kGammaD:
      return "gamma_d";
    case Functional::kGammaMc:
      return "gamma_mc";
    case Functional::kGbc:
      return "gbc";
    case Functional::kHilbert:
      return "hilbert";
    case Functional::kVolume:
      return "volume";
  }
  return "unknown";
}

const char* reference_quantity(Functional f) {
  switch (f) {
    case Functional::kGammaD:
      return "gamma_d";
    case Functional::kGammaMc:
      return "gamma";
    case Functional::kGbc:
      return "gbc_total";
    case Functional::kHilbert:
      return "hilbert";
    case Functional::kVolume:
      return "volume";
  }
  return "unknown";
}

const char* normalization(Functional f) {
  switch (f) {
    case Functional::kGammaD:
      return kKdNormalization;
    case Functional::kGammaMc:
      return kHaarNormalization;
    case Functional::kGbc:
      return kGbcNormalization;
    case Functional::kHilbert:
      return kScalarNormalization;
    case Functional::kVolume:
      return "sqrt(det g)";
  }
  return "";
}

namespace {

bool frame_invariant(Functional f) { return f != Functional::kGammaD; }

NodeValue from_frame(Functional f, const Tensor4<double>& r_frame) {
  switch (f) {
    case Functional::kGammaD:
      return {k_discrete(sectional_matrix(r_frame)), 0};
    case Functional::kGbc:
      return {k_gbc(r_frame).normalized, 0};
    case Functional::kHilbert:
      return {scalar_curvature(sectional_matrix(r_frame)), 0};
    default:
      break;
  }
  return {1, 0};
}

struct PointValue {
  NodeValue density;
  double dv = 1;
};

PointValue eval_point(const ManifoldSpec& m, const ComputeOptions& opt, std::span<const double> x, RandomStream& rng) {
  const Eigen::MatrixXd g = m.metric->value(x);
  PointValue pv;
  pv.dv = volume_element(g);
  if (opt.functional == Functional::kVolume) {
    pv.density = {1, 0};
    return pv;
  }
  const Tensor4<double> r = riemann(*m.metric, x);
  if (opt.functional == Functional::kGammaMc) {
    const FunctionalValue fv = k_haar_estimate(PointCurvature{g, r}, opt.samples, rng);
    pv.density = {fv.value, fv.std_error};
    return pv;
  }
  const Frame f = opt.frame.frame_at(g, &rng);
  pv.density = from_frame(opt.functional, to_frame(r, f.vectors()));
  return pv;
}

Mat<double> homogeneous_sectional(const Homogeneous& h, const Eigen::MatrixXd& q) {
  if (h.sectional) return h.sectional(q);
  return sectional_matrix(to_frame(h.riemann, q));
}

ComputeResult compute_homogeneous(const ManifoldSpec& m, const ComputeOptions& opt) {
  const Homogeneous& h = *m.homogeneous;
  const int n = m.dim;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  RandomStream rng = RandomStream::substream(opt.seed, 0);
  ComputeResult out;
  out.integral.n_points = 1;
  out.exact = nlohmann::json::object();
  switch (opt.functional) {
    case Functional::kVolume:
      out.integral.value = h.volume;
      break;
    case Functional::kGammaMc: {
      if (opt.samples < 2) throw Error(ErrorCode::kConfig, "gamma_mc needs at least 2 samples");
      // Welford over Haar-rotated orthonormal bases
      double mean = 0, m2 = 0;
      for (long s = 0; s < opt.samples; ++s) {
        const double v = k_discrete(homogeneous_sectional(h, haar_orthogonal(n, rng)));
        const double delta = v - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (v - mean);
      }
      const double se = std::sqrt(std::max(m2 / static_cast<double>(opt.samples - 1), 0.0) /
                                  static_cast<double>(opt.samples));
      out.integral.value = mean * h.volume;
      out.integral.mc_std_error = se * h.volume;
      out.integral.error_estimate = out.integral.mc_std_error;
      break;
    }
    default: {
      const Eigen::MatrixXd q = opt.frame.frame_at(id, &rng).vectors();
      if (opt.functional == Functional::kGammaD) {
        const Mat<double> k = homogeneous_sectional(h, q);
        out.integral.value = k_discrete(k) * h.volume;
        // entries of the sectional matrix are rational for the built-in bases
        try {
          Mat<Rational> kq(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) kq(i, j) = rationalize(k(i, j));
          const Rational ms = matching_sum(kq), ps = permutation_sum(kq);
          out.exact["matching_sum"] = to_string(ms);
          out.exact["permutation_sum"] = to_string(ps);
          if (h.exact_volume) {
            const int d = n / 2;
            // C_d = 1 / (d! 4^d pi^d)
            Rational coef = ps * h.exact_volume->first / Rational(factorial(d) * (1L << (2 * d)));
            coef.canonicalize();
            out.exact["gamma_d"] = to_string(coef) + " * pi^" + std::to_string(h.exact_volume->second - d);
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNotExact) throw;
          out.exact["note"] = "sectional matrix is not rational in this frame";
        }
      } else {
        out.integral.value = from_frame(opt.functional, to_frame(h.riemann, q)).value * h.volume;
      }
      break;
    }
  }
  return out;
}

double integrate_oracle(const ManifoldSpec& m, const PointOracle& density, const GridSpec& grid, int workers) {
  const Integrand f = [&](std::span<const double> x, std::uint64_t) {
    const double dv = m.dv_oracle ? m.dv_oracle(x) : volume_element(m.metric->value(x));
    return NodeValue{density(x) * dv, 0};
  };
  return quadrature(grid, f, workers).value;
}

}  // namespace

NodeValue density_at(const ManifoldSpec& m, const ComputeOptions& opt, std::span<const double> x, RandomStream& rng) {
  if (!m.metric) throw Error(ErrorCode::kConfig, "manifold " + m.name + " has no chart");
  return eval_point(m, opt, x, rng).density;
}

ComputeResult compute(const ManifoldSpec& m, const ComputeOptions& opt) {
  if (opt.workers < 1) throw Error(ErrorCode::kConfig, "workers must be at least 1");
  if (opt.functional == Functional::kGammaMc && opt.samples < 2)
    throw Error(ErrorCode::kConfig, "gamma_mc needs at least 2 samples per point");
  if (opt.frame.kind() == FrameStrategy::Kind::kRotated && opt.frame.rotation().rows() != m.dim)
    throw Error(ErrorCode::kConfig, "rotation matrix size does not match the manifold dimension");
  if (opt.functional != Functional::kVolume && opt.functional != Functional::kHilbert && m.dim % 2 != 0)
    throw Error(ErrorCode::kBadDimension, to_string(opt.functional) + std::string(" needs an even-dimensional manifold"));
  if (m.homogeneous) {
    ComputeResult r = compute_homogeneous(m, opt);
    return r;
  }
  if (!m.metric) throw Error(ErrorCode::kConfig, "manifold " + m.name + " has neither chart nor homogeneous data");
  ComputeResult out;
  out.grid = opt.grid ? *opt.grid : m.grid;
  if (static_cast<int>(out.grid.axes.size()) != m.dim)
    throw Error(ErrorCode::kConfig, "grid has " + std::to_string(out.grid.axes.size()) + " axes, manifold has dimension " +
                                        std::to_string(m.dim));
  out.grid.validate();
  const Integrand f = [&](std::span<const double> x, std::uint64_t index) {
    RandomStream rng = RandomStream::substream(opt.seed, index);
    const PointValue pv = eval_point(m, opt, x, rng);
    return NodeValue{pv.density.value * pv.dv, pv.density.std_error * pv.dv};
  };
  out.integral = integrate(out.grid, f, opt.workers);
  const bool coordinate = opt.frame.kind() == FrameStrategy::Kind::kCoordinate;
  if (opt.functional == Functional::kGammaD && coordinate && m.kd_oracle)
    out.oracle_value = integrate_oracle(m, m.kd_oracle, out.grid, opt.workers);
  else if (opt.functional == Functional::kGbc && m.gbc_oracle)
    out.oracle_value = integrate_oracle(m, m.gbc_oracle, out.grid, opt.workers);
  else if (opt.functional == Functional::kVolume && m.dv_oracle)
    out.oracle_value = integrate_oracle(m, [](std::span<const double>) { return 1.0; }, out.grid, opt.workers);
  return out;
}

namespace {

nlohmann::json versions() {
  return {{"curvfun", kVersion},
          {"schema", kSchemaVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"gmp", gmp_version}};
}

nlohmann::json manifold_json(const ManifoldSpec& m) {
  return {{"name", m.name}, {"dim", m.dim}, {"params", m.params}, {"description", m.description}};
}

}  // namespace

nlohmann::json make_record(const ManifoldSpec& m, const ComputeOptions& opt, const ComputeResult& r,
                           bool include_timing) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "compute";
  j["functional"] = to_string(opt.functional);
  j["normalization"] = normalization(opt.functional);
  nlohmann::json frame = opt.frame.describe();
  if (opt.functional == Functional::kGammaMc) frame = {{"kind", "haar"}, {"samples_per_point", opt.samples}};
  j["frame_strategy"] = frame;
  j["manifold"] = manifold_json(m);
  j["value"] = r.integral.value;
  j["error_estimate"] = r.integral.error_estimate;
  j["n_points"] = r.integral.n_points;
  j["grid"] = m.homogeneous ? nlohmann::json("homogeneous: density x volume") : r.grid.describe();
  j["seed"] = opt.seed;
  j["workers"] = opt.workers;
  if (opt.functional == Functional::kGammaMc) {
    j["samples"] = opt.samples;
    j["mc_std_error"] = r.integral.mc_std_error;
  }
  j["versions"] = versions();
  if (r.oracle_value) {
    j["oracle"] = {{"value", *r.oracle_value},
                   {"source", "closed-form density integrated on the same grid"},
                   {"difference", r.integral.value - *r.oracle_value}};
  }
  if (!r.exact.is_null() && !r.exact.empty()) j["exact"] = r.exact;
  const bool coordinate = opt.frame.kind() == FrameStrategy::Kind::kCoordinate;
  nlohmann::json refs = nlohmann::json::array();
  if (coordinate || frame_invariant(opt.functional)) {
    for (const auto& ref : m.references) {
      if (ref.quantity != reference_quantity(opt.functional)) continue;
      const bool ok = std::fabs(r.integral.value - ref.value) <= ref.tolerance;
      nlohmann::json e{{"quantity", ref.quantity}, {"value", ref.value}, {"tag", ref.tag}, {"tolerance", ref.tolerance}};
      e["verdict"] = ok ? "PASS" : (ref.documented_discrepancy ? "DISCREPANCY-DOCUMENTED" : "FAIL");
      if (!ref.note.empty()) e["note"] = ref.note;
      refs.push_back(e);
    }
  }
  if (!refs.empty()) j["references"] = refs;
  if (include_timing) j["wall_time"] = r.integral.wall_time;
  return j;
}

std::vector<SweepRow> frame_sweep(const ManifoldSpec& m, ComputeOptions opt, int a, int b, int n_angles) {
  if (n_angles < 2) throw Error(ErrorCode::kConfig, "frame sweep needs at least 2 angles");
  if (a == b || a < 0 || b < 0 || a >= m.dim || b >= m.dim)
    throw Error(ErrorCode::kConfig, "rotation plane must name two distinct axes within the dimension");
  std::vector<SweepRow> rows;
  for (int k = 0; k < n_angles; ++k) {
    const double angle = 0.5 * std::numbers::pi * k / (n_angles - 1);
    opt.frame = FrameStrategy::rotated(givens(m.dim, a, b, angle));
    const ComputeResult r = compute(m, opt);
    rows.push_back({angle, r.integral.value, r.integral.error_estimate});
  }
  return rows;
}

nlohmann::json make_sweep_record(const ManifoldSpec& m, const ComputeOptions& opt, int a, int b,
                                 const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "frame_sweep";
  j["functional"] = to_string(opt.functional);
  j["normalization"] = normalization(opt.functional);
  j["frame_strategy"] = {{"kind", "rotated"}, {"plane", {a + 1, b + 1}}, {"angles", "k (pi/2) / (n - 1)"}};
  j["manifold"] = manifold_json(m);
  j["seed"] = opt.seed;
  j["workers"] = opt.workers;
  nlohmann::json table = nlohmann::json::array();
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.push_back({{"angle", rows[i].angle}, {"value", rows[i].value}, {"error_estimate", rows[i].error_estimate}});
    if (rows[i].value > rows[best].value) best = i;
  }
  j["rows"] = table;
  j["argmax_angle"] = rows.empty() ? 0.0 : rows[best].angle;
  j["versions"] = versions();
  return j;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"functional", "manifold",   "frame_strategy", "value",
                                             "error_estimate", "n_points", "seed",         "workers",
                                             "normalization",  "oracle_value"};
  return cols;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string render(const nlohmann::json& rec, const std::string& format) {
  if (format == "json") return rec.dump(2) + "\n";
  const bool sweep = rec.value("kind", std::string()) == "frame_sweep";
  const bool reproduce = rec.value("kind", std::string()) == "reproduce";
  auto cell = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  std::ostringstream os;
  if (format == "csv") {
    if (sweep) {
      os << "angle,value,error_estimate\n";
      for (const auto& r : rec.at("rows"))
        os << num(r.at("angle").get<double>()) << "," << num(r.at("value").get<double>()) << ","
           << num(r.at("error_estimate").get<double>()) << "\n";
      return os.str();
    }
    if (reproduce) {
      os << "case,quantity,tag,expected,measured,tolerance,verdict\n";
      for (const auto& c : rec.at("checks"))
        os << csv_escape(c.at("case").get<std::string>()) << "," << csv_escape(c.at("quantity").get<std::string>())
           << "," << c.at("tag").get<std::string>() << "," << csv_escape(cell(c.at("expected"))) << ","
           << csv_escape(cell(c.at("measured"))) << "," << num(c.at("tolerance").get<double>()) << ","
           << c.at("verdict").get<std::string>() << "\n";
      return os.str();
    }
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    os << rec.at("functional").get<std::string>() << "," << csv_escape(rec.at("manifold").at("name").get<std::string>())
       << "," << csv_escape(rec.at("frame_strategy").at("kind").get<std::string>()) << ","
       << num(rec.at("value").get<double>()) << "," << num(rec.at("error_estimate").get<double>()) << ","
       << rec.at("n_points").get<long>() << "," << rec.at("seed").get<std::uint64_t>() << ","
       << rec.at("workers").get<int>() << "," << csv_escape(rec.at("normalization").get<std::string>()) << ",";
    if (rec.contains("oracle")) os << num(rec.at("oracle").at("value").get<double>());
    os << "\n";
    return os.str();
  }
  if (format == "text") {
    if (sweep) {
      os << "frame sweep on " << rec.at("manifold").at("name").get<std::string>() << ", plane "
         << rec.at("frame_strategy").at("plane").dump() << ", functional " << rec.at("functional").get<std::string>()
         << "\n";
      for (const auto& r : rec.at("rows"))
        os << "  angle " << std::setw(10) << std::fixed << std::setprecision(6) << r.at("angle").get<double>()
           << "  value " << std::setprecision(10) << r.at("value").get<double>() << "\n";
      return os.str();
    }
    if (reproduce) {
      for (const auto& c : rec.at("checks"))
        os << std::left << std::setw(24) << c.at("verdict").get<std::string>() << c.at("case").get<std::string>()
           << " / " << c.at("quantity").get<std::string>() << " [" << c.at("tag").get<std::string>()
           << "] expected " << c.at("expected").dump() << " measured " << c.at("measured").dump() << "\n";
      os << "summary: " << rec.at("summary").dump() << "\n";
      return os.str();
    }
    os << rec.at("functional").get<std::string>() << " on " << rec.at("manifold").at("name").get<std::string>()
       << " = " << std::setprecision(15) << rec.at("value").get<double>() << " +- "
       << std::setprecision(3) << rec.at("error_estimate").get<double>() << "\n";
    os << "  normalization: " << rec.at("normalization").get<std::string>() << "\n";
    os << "  frame: " << rec.at("frame_strategy").dump() << "\n";
    os << "  points: " << rec.at("n_points").get<long>() << ", seed " << rec.at("seed").get<std::uint64_t>()
       << ", workers " << rec.at("workers").get<int>() << "\n";
    if (rec.contains("oracle"))
      os << "  closed-form oracle: " << std::setprecision(15) << rec.at("oracle").at("value").get<double>() << "\n";
    if (rec.contains("exact"))
      for (const auto& [k, v] : rec.at("exact").items()) os << "  exact " << k << ": " << v.get<std::string>() << "\n";
    if (rec.contains("references"))
      for (const auto& r : rec.at("references"))
        os << "  reference [" << r.at("tag").get<std::string>() << "] " << std::setprecision(12)
           << r.at("value").get<double>() << ": " << r.at("verdict").get<std::string>() << "\n";
    if (rec.contains("wall_time")) os << "  wall time: " << rec.at("wall_time").get<double>() << " s\n";
    return os.str();
  }
  throw Error(ErrorCode::kConfig, "unknown output format '" + format + "' (json, csv, text)");
}

}  // namespace curvfun
