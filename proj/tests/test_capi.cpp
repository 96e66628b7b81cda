#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "curvfun/curvfun.h"

namespace {

struct Cfg {
  cf_config* c = cf_config_new();
  ~Cfg() { cf_config_free(c); }
  cf_status set(const char* k, const char* v) { return cf_config_set(c, k, v); }
};

struct Rep {
  cf_report* r = nullptr;
  ~Rep() { cf_report_free(r); }
};

}  // namespace

TEST_CASE("version and catalog") {
  CHECK(std::string(cf_version()) == "0.1.0");
  Rep r;
  REQUIRE(cf_catalog(&r.r) == CF_OK);
  const auto j = nlohmann::json::parse(cf_report_render(r.r, "json"));
  CHECK(j.at("manifolds").size() > 10);
  CHECK(j.at("reproduce_cases").size() == 10);
}

TEST_CASE("compute through the C API") {
  Cfg c;
  REQUIRE(c.set("manifold", "s2") == CF_OK);
  REQUIRE(c.set("functional", "gamma_d") == CF_OK);
  CHECK(cf_config_validate(c.c) == CF_OK);
  Rep r;
  REQUIRE(cf_compute(c.c, &r.r) == CF_OK);
  double v = 0, e = -1;
  REQUIRE(cf_report_value(r.r, &v, &e) == CF_OK);
  CHECK(v == doctest::Approx(2).epsilon(1e-10));
  CHECK(e >= 0);
  const auto j = nlohmann::json::parse(cf_report_render(r.r, "json"));
  CHECK(j.at("normalization").is_string());
  CHECK(j.at("frame_strategy").at("kind") == "coordinate");
  CHECK_FALSE(j.contains("wall_time"));
  CHECK(std::string(cf_report_render(r.r, "csv")).rfind("functional,manifold,", 0) == 0);
  CHECK(cf_report_render(r.r, "yaml") == nullptr);
  CHECK(std::strlen(cf_last_error()) > 0);
}

TEST_CASE("byte-identical output for identical configuration") {
  std::string first;
  for (int rep = 0; rep < 2; ++rep) {
    Cfg c;
    c.set("manifold", "taubes");
    c.set("param", "u=cos(x1)+cos(x2)");
    c.set("frame", "haar");
    c.set("grid", "8,8,4,4");
    c.set("seed", "17");
    c.set("workers", "2");
    Rep r;
    REQUIRE(cf_compute(c.c, &r.r) == CF_OK);
    const std::string out = cf_report_render(r.r, "json");
    if (rep == 0) first = out;
    else CHECK(out == first);
  }
}

TEST_CASE("configuration errors map to status 2") {
  {
    Cfg c;
    CHECK(c.set("bogus", "1") == CF_ERR_CONFIG);
    CHECK(c.set("functional", "nope") == CF_ERR_CONFIG);
    CHECK(c.set("seed", "-3") == CF_ERR_CONFIG);
    CHECK(c.set("rotate_plane", "1") == CF_ERR_CONFIG);
    CHECK(c.set("param", "novalue") == CF_ERR_CONFIG);
    CHECK(cf_config_validate(c.c) == CF_ERR_CONFIG);  // no manifold
  }
  {
    Cfg c;
    c.set("manifold", "s3");
    Rep r;
    CHECK(cf_compute(c.c, &r.r) == CF_ERR_CONFIG);
    CHECK(r.r == nullptr);
    CHECK(std::string(cf_last_error()).find("even") != std::string::npos);
  }
  {
    Cfg c;
    c.set("manifold", "s2");
    c.set("frame", "rotated");
    CHECK(cf_config_validate(c.c) == CF_ERR_CONFIG);
    c.set("rotate_plane", "1,3");
    c.set("rotate_angle", "pi/4");
    CHECK(cf_config_validate(c.c) == CF_ERR_CONFIG);
    c.set("rotate_plane", "1,2");
    CHECK(cf_config_validate(c.c) == CF_OK);
  }
  {
    Cfg c;
    c.set("manifold", "su3");
    c.set("grid", "8");
    CHECK(cf_config_validate(c.c) == CF_ERR_CONFIG);
  }
  {
    Cfg c;
    c.set("manifold", "s2");
    c.set("grid", "3");
    CHECK(cf_config_validate(c.c) == CF_ERR_CONFIG);
  }
}

TEST_CASE("numerical failures map to status 3 with the failing point") {
  Cfg c;
  c.set("spec_json", R"({"dim": 1, "domain": [{"lo": -1, "hi": 1, "nodes": 4}], "metric": [["x1"]]})");
  c.set("functional", "volume");
  Rep r;
  REQUIRE(cf_compute(c.c, &r.r) == CF_ERR_NUMERIC);
  REQUIRE(r.r != nullptr);
  const auto j = nlohmann::json::parse(cf_report_render(r.r, "json"));
  CHECK(j.at("kind") == "error");
  CHECK(j.at("point").size() == 1);
  CHECK(j.at("point")[0].get<double>() < 0);
}

TEST_CASE("frame sweep and reproduce") {
  Cfg c;
  c.set("manifold", "s2xs2");
  c.set("rotate_plane", "1,3");
  c.set("angles", "3");
  c.set("grid", "8");
  Rep r;
  REQUIRE(cf_frame_sweep(c.c, &r.r) == CF_OK);
  const auto j = nlohmann::json::parse(cf_report_render(r.r, "json"));
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("argmax_angle") == 0.0);

  Cfg d;
  d.set("case", "su3");
  Rep s;
  CHECK(cf_reproduce(d.c, &s.r) == CF_OK);
  Cfg e;
  e.set("case", "nope");
  Rep t;
  CHECK(cf_reproduce(e.c, &t.r) == CF_ERR_CONFIG);
}

TEST_CASE("pointwise functionals") {
  double k[16] = {0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k[i * 4 + j] = i != j;
  double out = 0;
  REQUIRE(cf_k_discrete(k, 4, &out) == CF_OK);
  CHECK(out == doctest::Approx(3 / (4 * M_PI * M_PI)));
  CHECK(cf_k_discrete(k, 3, &out) != CF_OK);

  double r[16] = {0};
  // unit 2-sphere: R_0101 = R_1010 = 1, R_0110 = R_1001 = -1
  r[0 * 8 + 1 * 4 + 0 * 2 + 1] = 1;
  r[1 * 8 + 0 * 4 + 1 * 2 + 0] = 1;
  r[0 * 8 + 1 * 4 + 1 * 2 + 0] = -1;
  r[1 * 8 + 0 * 4 + 0 * 2 + 1] = -1;
  double raw = 0, norm = 0;
  REQUIRE(cf_k_gbc(r, 2, &raw, &norm) == CF_OK);
  CHECK(norm == doctest::Approx(1 / (2 * M_PI)));
  CHECK(cf_k_gbc(nullptr, 2, &raw, &norm) == CF_ERR_CONFIG);
}
