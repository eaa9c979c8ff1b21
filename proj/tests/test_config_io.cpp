#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "optomech/config.hpp"
#include "optomech/io.hpp"

#include "oracle_values.hpp"

using namespace optomech;

namespace {

std::string minimal_config() {
  return R"({
  "sphere": {"radius_m": 1.0e-7, "refractive_index": 1.45},
  "beam": {"wavelength_m": 1.064e-6, "rayleigh_range_m": 5.3e-7,
           "cavity_length_m": 4.0e-3, "power_w": 0.015}
})";
}

TEST(ConfigIo, MinimalConfigResolvesPhotonNumberFromPower) {
  const RunConfig c = parse_config(minimal_config());
  EXPECT_NEAR(c.photon_number / oracle::kPhotonsFrom15mW, 1.0, 1e-6);
  EXPECT_EQ(c.sphere.density_si, 2200.0);
  EXPECT_FALSE(c.has_path);
  EXPECT_FALSE(c.has_sweep);
  EXPECT_EQ(c.quadrature.radial_order, QuadratureSpec{}.radial_order);
}

TEST(ConfigIo, ExplicitPhotonNumberWins) {
  std::string text = minimal_config();
  text.insert(text.rfind('}'), R"(, "photon_number": 1.0e6)");
  const RunConfig c = parse_config(text);
  EXPECT_DOUBLE_EQ(c.photon_number, 1.0e6);
}

TEST(ConfigIo, UnknownKeyIsRejectedWithPath) {
  std::string text = minimal_config();
  text.insert(text.rfind('}'), R"(, "sphre": {"radius_m": 1e-7})");
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("sphre"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("unknown key"), std::string::npos);
  }
}

TEST(ConfigIo, NestedUnknownKeyNamesTheSection) {
  std::string text = R"({
  "sphere": {"radius_m": 1.0e-7, "refractive_index": 1.45, "radius_nm": 100},
  "beam": {"wavelength_m": 1.064e-6, "rayleigh_range_m": 5.3e-7,
           "cavity_length_m": 4.0e-3}
})";
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/sphere/radius_nm"), std::string::npos);
  }
}

TEST(ConfigIo, MissingRequiredKeyIsNamed) {
  const std::string text = R"({
  "sphere": {"refractive_index": 1.45},
  "beam": {"wavelength_m": 1.064e-6, "rayleigh_range_m": 5.3e-7,
           "cavity_length_m": 4.0e-3}
})";
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/sphere/radius_m"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("missing required key"), std::string::npos);
  }
}

TEST(ConfigIo, MalformedJsonReportsLineAndColumn) {
  const std::string text = "{\n  \"sphere\": {,}\n}";
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("parse error"), std::string::npos);
    EXPECT_NE(msg.find("line 2"), std::string::npos);
  }
}

TEST(ConfigIo, SweepValidation) {
  std::string text = minimal_config();
  text.insert(text.rfind('}'), R"(, "sweep": {"min_m": 1.0, "max_m": -1.0})");
  EXPECT_THROW(parse_config(text), ConfigError);
}

TEST(ConfigIo, ModesEvolveValidation) {
  std::string text = minimal_config();
  text.insert(text.rfind('}'),
              R"(, "modes_evolve": {"family": "sideways",
                  "box_lo_m": [0,0,0], "box_hi_m": [1,1,1],
                  "wavenumbers_per_m": [10.0, 10.1],
                  "center_m": [0.5,0.5,0.5], "drive_amplitude_m": 0.1})");
  EXPECT_THROW(parse_config(text), ConfigError);
}

TEST(ConfigIo, ResolvedJsonRoundTrips) {
  std::string text = minimal_config();
  text.insert(text.rfind('}'), R"(, "photon_number": 1.0e6,
    "sweep": {"min_m": -5.32e-7, "max_m": 5.32e-7, "points": 11})");
  const RunConfig c1 = parse_config(text);
  const json j = resolved_json(c1);
  const RunConfig c2 = parse_config(j.dump());
  EXPECT_DOUBLE_EQ(c2.photon_number, c1.photon_number);
  EXPECT_DOUBLE_EQ(c2.sphere.radius, c1.sphere.radius);
  EXPECT_EQ(c2.sweep.points, c1.sweep.points);
  EXPECT_EQ(c2.has_sweep, c1.has_sweep);
  EXPECT_DOUBLE_EQ(c2.beam.power_si, c1.beam.power_si);
}

TEST(ConfigIo, EnvelopeCarriesVersionAndConfig) {
  const RunConfig c = parse_config(minimal_config());
  const json env = result_envelope(c, "phase", json{{"theta_rad", -16.5}});
  EXPECT_EQ(env.at("version").get<std::string>(), kVersion);
  EXPECT_EQ(env.at("subcommand").get<std::string>(), "phase");
  EXPECT_TRUE(env.contains("config_resolved"));
  EXPECT_NEAR(env.at("config_resolved").at("sphere").at("radius_m").get<double>(),
              1e-7, 1e-20);
  EXPECT_NEAR(env.at("result").at("theta_rad").get<double>(), -16.5, 1e-12);
}

TEST(ConfigIo, CsvEscapingAndPrecision) {
  std::ostringstream os;
  CsvWriter w(os);
  w.header({"plain", "with,comma", "with\"quote"});
  w.row({1.0 / 3.0, -2.5e-300, 0.0});
  const std::string text = os.str();
  EXPECT_NE(text.find("\"with,comma\""), std::string::npos);
  EXPECT_NE(text.find("\"with\"\"quote\""), std::string::npos);
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
  // Round-trip: 17 significant digits reproduce the double exactly.
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(std::stod(format_double(-2.5e-300)), -2.5e-300);
}

TEST(ConfigIo, FormatDoubleIsLocaleStableDecimalPoint) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(-1.25), "-1.25");
}

} // namespace
