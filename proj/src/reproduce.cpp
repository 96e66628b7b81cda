#include "curvfun/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "curvfun/compute.hpp"
#include "curvfun/discrete.hpp"
#include "curvfun/error.hpp"
#include "curvfun/liegroups.hpp"
#include "curvfun/tensor.hpp"
#include "curvfun/zoo.hpp"

namespace curvfun {

namespace {

constexpr double kPi = std::numbers::pi;

class Report {
 public:
  Report(std::string name, std::uint64_t seed, int workers) : name_(std::move(name)), seed_(seed), workers_(workers) {}

  std::uint64_t seed() const { return seed_; }
  int workers() const { return workers_; }
  const std::string& name() const { return name_; }

  void numeric(const std::string& quantity, const std::string& tag, double expected, double measured, double tol,
               bool documented = false, const std::string& note = {}) {
    const bool ok = std::isfinite(measured) && std::fabs(measured - expected) <= tol;
    add(quantity, tag, expected, measured, tol, ok, documented, note);
  }

  void exact(const std::string& quantity, const std::string& tag, const std::string& expected,
             const std::string& measured, const std::string& note = {}) {
    add(quantity, tag, expected, measured, 0, expected == measured, false, note);
  }

  void predicate(const std::string& quantity, const std::string& tag, const std::string& expected,
                 nlohmann::json measured, bool ok, double tol = 0, const std::string& note = {}) {
    add(quantity, tag, expected, std::move(measured), tol, ok, false, note);
  }

  void failure(const std::string& quantity, const std::string& what) {
    add(quantity, "derived", "no error", what, 0, false, false, "computation raised an error");
  }

  /// Runs one functional and checks every matching reference.
  ComputeResult references(const ManifoldSpec& m, Functional f, std::optional<GridSpec> grid = std::nullopt) {
    ComputeOptions opt;
    opt.functional = f;
    opt.seed = seed_;
    opt.workers = workers_;
    opt.grid = std::move(grid);
    ComputeResult r = compute(m, opt);
    for (const auto& ref : m.references) {
      if (ref.quantity != reference_quantity(f)) continue;
      numeric(m.name + " " + ref.quantity, ref.tag, ref.value, r.integral.value, ref.tolerance,
              ref.documented_discrepancy, ref.note);
    }
    if (r.oracle_value)
      numeric(m.name + " " + to_string(f) + " pipeline vs closed-form density", "derived", *r.oracle_value,
              r.integral.value, 1e-8);
    return r;
  }

  nlohmann::json record() const {
    long pass = 0, fail = 0, documented = 0;
    for (const auto& c : checks_) {
      const auto v = c.at("verdict").get<std::string>();
      if (v == "PASS") ++pass;
      else if (v == "FAIL") ++fail;
      else ++documented;
    }
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "reproduce";
    j["case"] = name_;
    j["seed"] = seed_;
    j["workers"] = workers_;
    j["checks"] = checks_;
    j["summary"] = {{"total", checks_.size()}, {"pass", pass}, {"fail", fail}, {"documented_discrepancy", documented}};
    j["versions"] = {{"curvfun", kVersion}, {"schema", kSchemaVersion}};
    return j;
  }

  std::string current_case;

 private:
  void add(const std::string& quantity, const std::string& tag, nlohmann::json expected, nlohmann::json measured,
           double tol, bool ok, bool documented, const std::string& note) {
    nlohmann::json c{{"case", current_case},
                     {"quantity", quantity},
                     {"tag", tag},
                     {"expected", std::move(expected)},
                     {"measured", std::move(measured)},
                     {"tolerance", tol},
                     {"verdict", ok ? "PASS" : (documented ? "DISCREPANCY-DOCUMENTED" : "FAIL")}};
    if (!note.empty()) c["note"] = note;
    checks_.push_back(std::move(c));
  }

  std::string name_;
  std::uint64_t seed_;
  int workers_;
  nlohmann::json checks_ = nlohmann::json::array();
};

/// Sample points inside the chart domain, away from its edges.
std::vector<std::vector<double>> interior_points(const GridSpec& grid, int count, RandomStream& rng) {
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < count; ++k) {
    std::vector<double> x;
    for (const auto& ax : grid.axes) {
      const double pad = ax.periodic ? 0.0 : 0.05 * (ax.hi - ax.lo);
      x.push_back(rng.uniform(ax.lo + pad, ax.hi - pad));
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

CurvatureAtPoint pipeline(const ManifoldSpec& m, std::span<const double> x) {
  const Eigen::MatrixXd g = m.metric->value(x);
  return curvature_at(*m.metric, x, coordinate_frame(g));
}

std::string exact_matrix_diff(const Mat<Rational>& k, const std::vector<std::vector<std::string>>& printed) {
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      if (k(i, j) != Rational(printed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + to_string(k(i, j));
  return "all entries equal";
}

Mat<Rational> rationalize_matrix(const Mat<double>& k) {
  Mat<Rational> q(k.rows(), k.cols());
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) q(i, j) = rationalize(k(i, j));
  return q;
}

void case_spheres(Report& rep) {
  const ManifoldSpec s2 = make_manifold("s2");
  rep.references(s2, Functional::kGammaD);
  rep.references(s2, Functional::kGbc);
  rep.references(s2, Functional::kVolume);
  const ManifoldSpec s4 = make_manifold("s4");
  rep.references(s4, Functional::kVolume);
  rep.references(s4, Functional::kGammaD);
  rep.references(s4, Functional::kGbc);
  const std::vector<double> x{1.0, 0.7, 2.0, 0.3};
  const double kd = k_discrete(pipeline(s4, x).sectional);
  for (const auto& ref : s4.references)
    if (ref.quantity == "curvature_constant")
      rep.numeric("s4 pointwise K_d", ref.tag, ref.value, kd, ref.tolerance, ref.documented_discrepancy, ref.note);
  rep.numeric("s4 pointwise K_d = 4! C_2", "derived", 3.0 / (4 * kPi * kPi), kd, 1e-12);
}

void case_taubes(Report& rep) {
  RandomStream rng = RandomStream::substream(rep.seed(), 3);
  double gamma[2] = {0, 0};
  const char* us[2] = {"cos(x1)+cos(x2)", "cos(x1+x2)"};
  for (int k = 0; k < 2; ++k) {
    const ManifoldSpec m = make_manifold("taubes", {{"u", us[k]}});
    gamma[k] = rep.references(m, Functional::kGammaD).integral.value;
    double sec = 0, kd = 0;
    for (const auto& x : interior_points(m.grid, 20, rng)) {
      const CurvatureAtPoint c = pipeline(m, x);
      const Mat<double> want = m.sectional_oracle(x);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sec = std::max(sec, std::fabs(c.sectional(i, j) - want(i, j)));
      kd = std::max(kd, std::fabs(k_discrete(c.sectional) - m.kd_oracle(x)));
    }
    rep.numeric(std::string("taubes u=") + us[k] + " max sectional-matrix deviation, 20 points", "paper", 0, sec, 1e-8);
    rep.numeric(std::string("taubes u=") + us[k] + " max K_d deviation from (u_s^2 u_t^2 - u_ss u_tt)/(2 pi^2)",
                "paper", 0, kd, 1e-8);
  }
  rep.numeric("taubes gamma_d ratio", "paper", -2, gamma[0] / gamma[1], 1e-6);
}

void case_ellipsoids(Report& rep) {
  rep.references(make_manifold("ellipsoid2"), Functional::kGammaD);
  rep.references(make_manifold("exe"), Functional::kGammaD);

  const ManifoldSpec e4 = make_manifold("ellipsoid4");
  RandomStream rng = RandomStream::substream(rep.seed(), 8);
  double kd = 0, dv = 0;
  for (const auto& x : interior_points(e4.grid, 20, rng)) {
    const double want = e4.kd_oracle(x);
    kd = std::max(kd, std::fabs(k_discrete(pipeline(e4, x).sectional) - want) / std::max(1.0, std::fabs(want)));
    dv = std::max(dv, std::fabs(volume_element(e4.metric->value(x)) - e4.dv_oracle(x)));
  }
  rep.numeric("ellipsoid4 max K_d deviation from closed form, 20 points", "derived", 0, kd, 1e-6);
  rep.numeric("ellipsoid4 max dV deviation from closed form, 20 points", "derived", 0, dv, 1e-6);

  const ManifoldSpec gen = make_manifold("ellipsoid4_general");
  ComputeOptions opt;
  opt.seed = rep.seed();
  opt.workers = rep.workers();
  const double g = compute(gen, opt).integral.value;
  rep.predicate("ellipsoid4_general gamma_d on 5^4 grid is finite", "derived", "finite", g, std::isfinite(g));
  double defect = 0;
  for (const auto& x : interior_points(gen.grid, 5, rng)) defect = std::max(defect, symmetry_defect(riemann(*gen.metric, x)));
  rep.numeric("ellipsoid4_general Riemann symmetry defect", "derived", 0, defect, 1e-8);
}

void case_rp2(Report& rep) {
  const ManifoldSpec m = make_manifold("rp2");
  RandomStream rng = RandomStream::substream(rep.seed(), 2);
  double dev = 0;
  for (const auto& x : interior_points(m.grid, 20, rng)) dev = std::max(dev, std::fabs(pipeline(m, x).sectional(0, 1) - 0.5));
  rep.numeric("rp2 max |K - 1/2|, 20 points", "paper", 0, dev, 1e-10);
  rep.references(m, Functional::kVolume);
  rep.references(m, Functional::kGammaD);
  rep.references(m, Functional::kGammaMc);
}

void case_products(Report& rep) {
  const ManifoldSpec s2s2 = make_manifold("s2xs2");
  rep.references(s2s2, Functional::kGammaD);
  rep.references(s2s2, Functional::kGbc);
  const ManifoldSpec s3s1 = make_manifold("s3xs1");
  rep.references(s3s1, Functional::kGammaD);
  RandomStream rng = RandomStream::substream(rep.seed(), 4);
  double kd = 0;
  for (const auto& x : interior_points(s3s1.grid, 1000, rng)) kd = std::max(kd, std::fabs(k_discrete(pipeline(s3s1, x).sectional)));
  rep.numeric("s3xs1 max |K_d| aligned frame, 1000 points", "paper", 0, kd, 1e-10);

  ComputeOptions opt;
  opt.seed = rep.seed();
  opt.workers = rep.workers();
  const auto rows = frame_sweep(s2s2, opt, 0, 2, 3);
  rep.numeric("s2xs2 sweep plane (1,3) angle 0", "paper", 4, rows[0].value, 1e-3);
  rep.predicate("s2xs2 sweep plane (1,3) angle pi/4 below angle 0", "derived", "< value at 0", rows[1].value,
                rows[1].value < rows[0].value - 1e-3);
  rep.numeric("s2xs2 sweep plane (1,3) angle pi/2", "trivial", 4, rows[2].value, 1e-3);
  const auto s31 = frame_sweep(s3s1, opt, 0, 3, 3);
  rep.predicate("s3xs1 sweep plane (1,4) nonconstant", "paper", "nonzero at pi/4", s31[1].value,
                std::fabs(s31[1].value - s31[0].value) > 1e-3);
}

void case_cp2(Report& rep) {
  const ManifoldSpec m = make_manifold("cp2");
  const double r = std::sqrt(0.5);
  Eigen::MatrixXd rotated(4, 4);
  rotated << r, 0, r, 0,  //
      0, 1, 0, 0,         //
      r, 0, -r, 0,        //
      0, 0, 0, 1;
  const Mat<Rational> k1 = rationalize_matrix(cp2_sectional(Eigen::MatrixXd::Identity(4, 4)));
  const Mat<Rational> k2 = rationalize_matrix(cp2_sectional(rotated));
  rep.exact("cp2 permutation sum, basis (1,0),(i,0),(0,1),(0,i)", "paper", "144", to_string(permutation_sum(k1)));
  rep.exact("cp2 permutation sum, basis (1,1)/sqrt2,(i,0),(1,-1)/sqrt2,(0,i)", "paper", "108",
            to_string(permutation_sum(k2)));
  rep.exact("cp2 rotated basis K_13", "derived", "1", to_string(k2(0, 2)),
            "the printed list names K_13 and K_23; the squared formula gives K_13 = K_24 = 1");
  rep.exact("cp2 rotated basis K_24", "derived", "1", to_string(k2(1, 3)));
  rep.exact("cp2 rotated basis K_12", "paper", "5/2", to_string(k2(0, 1)));
  rep.references(m, Functional::kGbc);
  rep.references(m, Functional::kVolume);
}

void case_so4(Report& rep) {
  const ManifoldSpec m = make_manifold("so4");
  const Mat<Rational> k = biinvariant_sectional_exact(so4());
  rep.exact("so4 aligned matching sum", "paper", "0", to_string(matching_sum(k)));
  rep.references(m, Functional::kGammaD);
  rep.references(m, Functional::kGbc);
}

void case_su3(Report& rep) {
  const ManifoldSpec m = make_manifold("su3");
  const Mat<Rational> k = biinvariant_sectional_exact(su3());
  rep.exact("su3 sectional matrix", "paper", "all entries equal", exact_matrix_diff(k, su3_printed_sectional()));
  rep.exact("su3 K_12 K_34 K_56 K_78", "paper", "3/16384", to_string(k(0, 1) * k(2, 3) * k(4, 5) * k(6, 7)));
  const Rational ps = permutation_sum(k);
  const Rational ms = matching_sum(k);
  rep.exact("su3 sum over quadruples, full permutation convention", "paper", "351/64", to_string(ps),
            "only the full (2d)! permutation sum gives the printed value");
  rep.predicate("su3 sum over quadruples, matching convention differs", "derived", "!= 351/64", to_string(ms),
                ms != Rational(351, 64));
  Mat<double> kd(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) kd(i, j) = k(i, j).get_d();
  rep.numeric("su3 brute-force permutation sum", "derived", 351.0 / 64.0, brute_force_perm_sum(kd), 1e-10);
  ComputeOptions opt;
  opt.seed = rep.seed();
  const ComputeResult r = compute(m, opt);
  rep.exact("su3 gamma_d exact", "paper", "117/131072 * pi^1", r.exact.value("gamma_d", std::string()));
  rep.references(m, Functional::kGammaD);
}

void case_klembeck(Report& rep) {
  const ManifoldSpec m = make_manifold("klembeck");
  const std::vector<Rational> origin(6, Rational(0));
  const Tensor4<Rational> r = riemann_exact(*m.metric, origin);
  rep.exact("klembeck sectional pattern at origin", "paper", "all entries equal",
            exact_matrix_diff(sectional_matrix(r), klembeck_printed_sectional()));
  const Rational raw = gbc_raw_sum(r);
  rep.exact("klembeck raw GBC sum at origin", "derived", "-9216", to_string(raw));
  Rational printed(-9216, 720 * 720);
  printed.canonicalize();
  rep.exact("klembeck raw GBC / (6!)^2 at origin", "paper", to_string(printed),
            to_string(raw / Rational(720 * 720)));
  rep.predicate("klembeck K_GBC sign at origin", "paper", "negative", to_string(raw), raw < 0);
  rep.numeric("klembeck K_d at origin", "derived", 0, k_discrete(pipeline(m, std::vector<double>(6, 0.0)).sectional),
              1e-12);
}

void case_discrete(Report& rep) {
  std::mt19937_64 rng(rep.seed() ^ 0x5eedULL);
  const double ps[] = {0.3, 0.5, 0.7};
  long ph_bad = 0, transport_bad = 0, min_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Graph g = Graph::erdos_renyi(n, ps[t % 3], rng);
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = i;
    std::shuffle(f.begin(), f.end(), rng);
    const long chi = euler_characteristic(SimplicialComplex::whitney(g));
    long sum = 0, sum_min = 0;
    for (int v = 0; v < n; ++v) {
      const long i = ph_index(g, f, v);
      sum += i;
      sum_min += transport_index_min(g, f, v);
      if (transport_index(g, f, v) != i) ++transport_bad;
    }
    if (sum != chi) ++ph_bad;
    if (sum_min != chi) ++min_bad;
  }
  rep.exact("sum of Poincare-Hopf indices = chi, 200 random graphs (failures)", "paper", "0", std::to_string(ph_bad));
  rep.exact("argmax transport index = 1 - chi(S^-), all vertices (failures)", "derived", "0", std::to_string(transport_bad));
  rep.exact("argmin transport indices sum to chi (failures)", "derived", "0", std::to_string(min_bad));

  const auto corpus = random_complex_corpus(100, 12, rep.seed());
  long det_bad = 0, green_bad = 0, omega_bad = 0;
  std::uniform_int_distribution<int> pick(-3, 3);
  std::bernoulli_distribution coin(0.5);
  for (const auto& c : corpus) {
    std::vector<Rational> h;
    Rational prod(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      int v = 0;
      while (v == 0) v = pick(rng);
      h.emplace_back(v);
      prod *= v;
    }
    if (determinant(counting_matrix(c, h)) != prod) ++det_bad;
    std::vector<Rational> unit;
    Rational total(0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      unit.emplace_back(coin(rng) ? 1 : -1);
      total += unit.back();
    }
    if (green_sum(c, unit) != total) ++green_bad;
    const Rational d = determinant(counting_matrix(c, omega_energy(c)));
    if (d != 1 && d != -1) ++omega_bad;
  }
  rep.exact("det L_h = prod h, 100 random complexes (failures)", "paper", "0", std::to_string(det_bad));
  rep.exact("sum of Green function = sum of h for h = +-1, 100 complexes (failures)", "paper", "0",
            std::to_string(green_bad), "for non-unit energies the identity does not hold; see README");
  rep.exact("|det L| = 1 for h = omega (failures)", "paper", "0", std::to_string(omega_bad));
}

const std::map<std::string, std::function<void(Report&)>>& registry() {
  static const std::map<std::string, std::function<void(Report&)>> r{
      {"taubes", case_taubes}, {"spheres", case_spheres}, {"ellipsoids", case_ellipsoids},
      {"rp2", case_rp2},       {"products", case_products}, {"cp2", case_cp2},
      {"so4", case_so4},       {"su3", case_su3},          {"klembeck", case_klembeck},
      {"discrete", case_discrete}};
  return r;
}

}  // namespace

const std::vector<std::string>& reproduce_cases() {
  static const std::vector<std::string> names{"taubes", "spheres", "ellipsoids", "rp2",      "products",
                                              "cp2",    "so4",     "su3",        "klembeck", "discrete"};
  return names;
}

nlohmann::json reproduce(const std::string& name, std::uint64_t seed, int workers) {
  std::vector<std::string> run;
  if (name == "all") {
    run = reproduce_cases();
  } else {
    if (!registry().count(name)) throw Error(ErrorCode::kConfig, "unknown reproduce case '" + name + "'");
    run = {name};
  }
  Report rep(name, seed, workers);
  for (const auto& c : run) {
    rep.current_case = c;
    try {
      registry().at(c)(rep);
    } catch (const std::exception& e) {
      rep.failure(c, e.what());
    }
  }
  return rep.record();
}

bool reproduce_passed(const nlohmann::json& record) {
  for (const auto& c : record.at("checks"))
    if (c.at("verdict").get<std::string>() == "FAIL") return false;
  return true;
}

const std::vector<std::vector<std::string>>& su3_printed_sectional() {
  static const std::vector<std::vector<std::string>> k{
      {"0", "1/4", "1/4", "1/16", "1/16", "1/16", "1/16", "0"},
      {"1/4", "0", "1/4", "1/16", "1/16", "1/16", "1/16", "0"},
      {"1/4", "1/4", "0", "1/16", "1/16", "1/16", "1/16", "0"},
      {"1/16", "1/16", "1/16", "0", "1/4", "1/16", "1/16", "3/16"},
      {"1/16", "1/16", "1/16", "1/4", "0", "1/16", "1/16", "3/16"},
      {"1/16", "1/16", "1/16", "1/16", "1/16", "0", "1/4", "3/16"},
      {"1/16", "1/16", "1/16", "1/16", "1/16", "1/4", "0", "3/16"},
      {"0", "0", "0", "3/16", "3/16", "3/16", "3/16", "0"}};
  return k;
}

const std::vector<std::vector<std::string>>& klembeck_printed_sectional() {
  static const std::vector<std::vector<std::string>> k{
      {"0", "0", "3", "0", "3", "0"}, {"0", "0", "0", "3", "0", "3"}, {"3", "0", "0", "0", "3", "0"},
      {"0", "3", "0", "0", "0", "3"}, {"3", "0", "3", "0", "0", "0"}, {"0", "3", "0", "3", "0", "0"}};
  return k;
}

}  // namespace curvfun
