#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvfun/error.hpp"
#include "curvfun/compute.hpp"
#include "curvfun/reproduce.hpp"

using namespace curvfun;

namespace {

constexpr double kPi = std::numbers::pi;

ComputeOptions opts(Functional f, int workers = 1, std::uint64_t seed = 0) {
  ComputeOptions o;
  o.functional = f;
  o.workers = workers;
  o.seed = seed;
  return o;
}

void check_self_describing(const nlohmann::json& rec) {
  CHECK(rec.at("schema_version") == kSchemaVersion);
  CHECK(rec.at("normalization").is_string());
  CHECK(!rec.at("normalization").get<std::string>().empty());
  CHECK(rec.at("frame_strategy").contains("kind"));
  CHECK(rec.contains("functional"));
  CHECK(rec.contains("seed"));
  CHECK(rec.contains("versions"));
  CHECK(rec.contains("grid"));
}

}  // namespace

TEST_SUITE("compute") {
  TEST_CASE("records are self-describing") {
    const ManifoldSpec s2 = make_manifold("s2");
    for (Functional f : {Functional::kGammaD, Functional::kGammaMc, Functional::kGbc, Functional::kHilbert,
                         Functional::kVolume}) {
      ComputeOptions o = opts(f);
      o.samples = 4;
      const auto rec = make_record(s2, o, compute(s2, o), false);
      check_self_describing(rec);
      CHECK_FALSE(rec.contains("wall_time"));
    }
    const ManifoldSpec su3 = make_manifold("su3");
    const auto rec = make_record(su3, opts(Functional::kGammaD), compute(su3, opts(Functional::kGammaD)), true);
    check_self_describing(rec);
    CHECK(rec.contains("wall_time"));
    CHECK(rec.at("exact").at("permutation_sum") == "351/64");
  }

  TEST_CASE("sphere functionals") {
    const ManifoldSpec s2 = make_manifold("s2");
    CHECK(compute(s2, opts(Functional::kGammaD)).integral.value == doctest::Approx(2).epsilon(1e-10));
    CHECK(compute(s2, opts(Functional::kVolume)).integral.value == doctest::Approx(4 * kPi).epsilon(1e-10));
    CHECK(compute(s2, opts(Functional::kHilbert)).integral.value == doctest::Approx(8 * kPi).epsilon(1e-10));
    const ComputeResult mc = compute(s2, opts(Functional::kGammaMc));
    CHECK(mc.integral.value == doctest::Approx(2).epsilon(1e-10));
  }

  TEST_CASE("odd dimensions are rejected for even-only functionals") {
    const ManifoldSpec s3 = make_manifold("s3");
    CHECK_THROWS_AS(compute(s3, opts(Functional::kGammaD)), Error);
    CHECK(compute(s3, opts(Functional::kVolume)).integral.value == doctest::Approx(2 * kPi * kPi).epsilon(1e-6));
  }

  TEST_CASE("haar frames are deterministic across worker counts") {
    const ManifoldSpec m = make_manifold("taubes", {{"u", "cos(x1)+cos(x2)"}});
    ComputeOptions o = opts(Functional::kGammaD, 1, 99);
    o.frame = FrameStrategy::haar();
    o.grid = GridSpec{{{8, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true},
                       {8, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true},
                       {4, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true},
                       {4, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true}}};
    const double one = compute(m, o).integral.value;
    o.workers = 3;
    CHECK(compute(m, o).integral.value == one);
    o.seed = 100;
    CHECK(compute(m, o).integral.value != one);
  }

  TEST_CASE("frame sweep record") {
    const ManifoldSpec m = make_manifold("s2xs2");
    ComputeOptions o = opts(Functional::kGammaD);
    o.grid = GridSpec{{{8, QuadratureRule::kGaussLegendre, 0, kPi, false},
                       {8, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true},
                       {8, QuadratureRule::kGaussLegendre, 0, kPi, false},
                       {8, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true}}};
    const auto rows = frame_sweep(m, o, 0, 2, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].angle == doctest::Approx(kPi / 4));
    const auto rec = make_sweep_record(m, o, 0, 2, rows);
    CHECK(rec.at("frame_strategy").at("plane") == nlohmann::json({1, 3}));
    CHECK(rec.at("argmax_angle") == 0.0);
    CHECK(render(rec, "csv").rfind("angle,value,error_estimate\n", 0) == 0);
    CHECK_THROWS_AS(frame_sweep(m, o, 0, 0, 3), Error);
    CHECK_THROWS_AS(frame_sweep(m, o, 0, 2, 1), Error);
  }

  TEST_CASE("renderers") {
    const ManifoldSpec m = make_manifold("s2");
    const auto rec = make_record(m, opts(Functional::kGammaD), compute(m, opts(Functional::kGammaD)), false);
    const std::string csv = render(rec, "csv");
    std::string header;
    for (std::size_t i = 0; i < csv_columns().size(); ++i) header += (i ? "," : "") + csv_columns()[i];
    CHECK(csv.rfind(header + "\n", 0) == 0);
    CHECK(render(rec, "text").find("gamma_d on s2") != std::string::npos);
    CHECK(nlohmann::json::parse(render(rec, "json")) == rec);
    CHECK_THROWS_AS(render(rec, "xml"), Error);
  }

  TEST_CASE("reproduce records") {
    const auto rec = reproduce("cp2");
    CHECK(rec.at("kind") == "reproduce");
    CHECK(reproduce_passed(rec));
    CHECK(rec.at("summary").at("fail") == 0);
    for (const auto& c : rec.at("checks")) {
      CHECK(c.contains("tag"));
      CHECK(c.contains("tolerance"));
    }
    CHECK(render(rec, "csv").rfind("case,quantity,tag,expected,measured,tolerance,verdict\n", 0) == 0);
    CHECK_THROWS_AS(reproduce("nope"), Error);
  }

  TEST_CASE("documented discrepancies do not fail a case") {
    const auto rec = reproduce("taubes");
    CHECK(reproduce_passed(rec));
    CHECK(rec.at("summary").at("documented_discrepancy") == 2);
  }

  TEST_CASE("functional names") {
    CHECK(functional_from_string("gamma") == Functional::kGammaMc);
    CHECK(std::string(to_string(Functional::kGbc)) == "gbc");
    CHECK(std::string(reference_quantity(Functional::kGbc)) == "gbc_total");
    CHECK_THROWS_AS(functional_from_string("nope"), Error);
  }
}
