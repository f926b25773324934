#include <sstream>

#include "doctest.h"
#include "vlcsec/config.hpp"
#include "vlcsec/error.hpp"
#include "vlcsec/sweep.hpp"

using namespace vlcsec;

TEST_CASE("defaults are the reference parameter set") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.model.lambertian.m == 6.0);
  CHECK(cfg.model.lambertian.g == 3.0);
  CHECK(cfg.model.geometry.D == 8.0);
  CHECK(cfg.mode == Mode::Closed);
}

TEST_CASE("power may be given in dB or linear, not both") {
  CHECK(parse_config(R"({"secrecy": {"P_dB": 50}})").model.secrecy.P == doctest::Approx(1e5));
  CHECK(parse_config(R"({"secrecy": {"P_linear": 42}})").model.secrecy.P == 42.0);
  CHECK_THROWS_AS(parse_config(R"({"secrecy": {"P_dB": 50, "P_linear": 2}})"), ConfigError);
}

TEST_CASE("config errors name the field") {
  auto message = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"geometry": {"radius": 3}})").find("geometry.radius") != std::string::npos);
  CHECK(message(R"({"geometry": {"rho": 9}})").find("rho") != std::string::npos);
  CHECK(message(R"({"mc": {"seed": -1}})").find("mc.seed") != std::string::npos);
  CHECK(message(R"({"mode": "fast"})").find("mode") != std::string::npos);
  CHECK(message(R"({"sweep": {"axis": "P_dB", "values": [3, 2]}})").find("increasing") != std::string::npos);
  CHECK(message("{not json").find("JSON") != std::string::npos);
  CHECK(message(R"({"bogus": 1})").find("bogus") != std::string::npos);
}

TEST_CASE("range sweeps are snapped to clean decimals") {
  const auto cfg = parse_config(R"({"sweep": {"axis": "xi", "start": 0.1, "stop": 0.3, "step": 0.05}})");
  REQUIRE(cfg.sweep.values.size() == 5);
  CHECK(cfg.sweep.values[1] == 0.15);
  CHECK(cfg.sweep.values[4] == 0.3);
}

TEST_CASE("an empty axis list is rejected when the sweep runs") {
  const auto cfg = parse_config(R"({"sweep": {"axis": "P_dB", "values": []}})");
  CHECK_THROWS_AS(run_asc_sweep(cfg), ConfigError);
}

TEST_CASE("sweep expansion is curve-major in axis order") {
  const auto cfg = parse_config(
      R"({"sweep": {"axis": "P_dB", "values": [40, 50], "curves": {"param": "rho", "values": [0, 2]}}})");
  const auto pts = expand_sweep(cfg);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].curve_id == "rho=0");
  CHECK(pts[1].axis_value == 50.0);
  CHECK(pts[2].curve_id == "rho=2");
  CHECK(pts[3].params.geometry.rho == 2.0);
  CHECK(pts[3].params.secrecy.P == doctest::Approx(1e5));
}

TEST_CASE("closed-form sweep leaves the other columns empty and bits rescale") {
  auto cfg = parse_config(R"({"sweep": {"axis": "P_dB", "values": [50, 60]}})");
  std::ostringstream nats;
  write_sweep_csv(run_asc_sweep(cfg), nats);
  CHECK(nats.str().rfind("axis_value,curve_id,closed_form,quadrature,mc_mean,mc_stderr,mc_exact_mean,mc_exact_stderr\n", 0) == 0);
  CHECK(nats.str().find(",,,,,\n") != std::string::npos);
  const auto t_nats = run_asc_sweep(cfg);
  cfg.bits = true;
  const auto t_bits = run_asc_sweep(cfg);
  CHECK(*t_bits.rows[1].closed_form == doctest::Approx(*t_nats.rows[1].closed_form / std::log(2.0)));
}

TEST_CASE("sweep output does not depend on the worker count") {
  auto cfg = parse_config(R"({"sweep": {"axis": "eta_b", "values": [-5, 0, 5]}, "mode": "all",
                              "secrecy": {"P_dB": 60}, "mc": {"samples": 20000}})");
  std::ostringstream a, b;
  write_sweep_csv(run_sop_sweep(cfg), a);
  cfg.mc.n_streams = 3;
  write_sweep_csv(run_sop_sweep(cfg), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("PDF dump covers the support with exact endpoints") {
  const auto cfg = parse_config(R"({"geometry": {"D": 5, "l": 3, "rho": 1},
                                    "lambertian": {"m": 1, "A": 1e-4, "Ts": 1, "g": 1},
                                    "pdf": {"which": "gain_eve", "points": 2000}})");
  const auto rows = run_pdf_dump(cfg);
  REQUIRE(rows.size() == 2000);
  CHECK(rows.front().x == rows.front().support_lo);
  CHECK(rows.back().x == rows.back().support_hi);
  double area = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].density > 0.0);
    area += 0.5 * (rows[i].density + rows[i - 1].density) * (rows[i].x - rows[i - 1].x);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(3.0) == "3");
}
