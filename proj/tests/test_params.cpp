#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eeqos/params.hpp"
#include "eeqos/rng.hpp"
#include "eeqos/units.hpp"
#include "oracles.hpp"

using namespace eeqos;

TEST_CASE("path loss formula") {
  CHECK(path_loss_db(1.0) == doctest::Approx(128.1).epsilon(1e-14));
  CHECK(path_loss_db(10.0) == doctest::Approx(128.1 + 37.6).epsilon(1e-14));
  CHECK_THROWS_AS(path_loss_db(0.0), ConfigError);
  CHECK_THROWS_AS(path_loss_db(-1.0), ConfigError);
}

TEST_CASE("dB conversions round-trip") {
  Xoshiro256pp rng(11);
  for (int i = 0; i < 200; ++i) {
    const double db = -200.0 + 400.0 * rng.uniform01();
    const double lin = db_to_linear(db);
    CHECK(linear_to_db(lin) == doctest::Approx(db).epsilon(1e-12));
    const double w = dbm_to_watts(db);
    CHECK(watts_to_dbm(w) == doctest::Approx(db).epsilon(1e-12));
  }
  CHECK_THROWS_AS(linear_to_db(0.0), ConfigError);
  CHECK_THROWS_AS(watts_to_dbm(-1.0), ConfigError);
}

TEST_CASE("table-1 config parses with unit conversions") {
  const Config cfg = parse_config(test::table1_config_text());
  CHECK(cfg.sys.N0 == doctest::Approx(3.981e-21).epsilon(1e-3));
  CHECK(cfg.sys.N0 == doctest::Approx(std::pow(10.0, -20.4)).epsilon(1e-12));
  CHECK(cfg.sys.gamma_bar == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(cfg.sys.Lp == doctest::Approx(std::pow(10.0, 12.81)).epsilon(1e-12));
  CHECK(cfg.sys.Pmax == 10.0);  // documented default
  CHECK(cfg.traffic.mu == 1488.0 * 0.5 / 1e-3);
  // derived fields recompute bit-for-bit
  CHECK(cfg.traffic.mu == cfg.traffic.Lbar * cfg.traffic.p / cfg.traffic.Ts);
  CHECK(cfg.qos.beta ==
        doctest::Approx(std::pow(0.01, -1e-3 / (10e-3 + 1e-3))).epsilon(1e-12));
  CHECK(cfg.qos.beta > 1.0);
}

TEST_CASE("config errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config("Ts_s = 1e-3\n"), doctest::Contains("Bc_hz"),
                       ConfigError);
  std::string doc = test::table1_config_text();
  CHECK_THROWS_WITH_AS(parse_config(doc + "eps = 1.5\n"), doctest::Contains("eps"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(doc + "m = 0.4\n"), doctest::Contains("m:"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(doc + "p = zero\n"), doctest::Contains("p"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(doc + "bogus_key = 1\n"),
                       doctest::Contains("bogus_key"), ConfigError);
}

TEST_CASE("overrides replace values and reject unknown keys") {
  const std::string doc = test::table1_config_text();
  const Config cfg = parse_config(doc, {"gamma_bar_db=13", "p=0.25"});
  CHECK(cfg.sys.gamma_bar == doctest::Approx(std::pow(10.0, 1.3)).epsilon(1e-14));
  CHECK(cfg.traffic.p == 0.25);
  CHECK_THROWS_WITH_AS(parse_config(doc, {"nope=1"}), doctest::Contains("nope"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config(doc, {"justakey"}), ConfigError);
}

TEST_CASE("validation ranges") {
  CHECK_THROWS_AS(make_traffic(0.0, 700, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_traffic(1.5, 700, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_traffic(0.5, -1, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_qos(0.0, 0.01, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_qos(10e-3, 0.0, 1e-3), ConfigError);
  CHECK_THROWS_AS(make_qos(10e-3, 1.0, 1e-3), ConfigError);
  // Nakagami shape below 0.5 and idle power above the search bound
  CHECK_THROWS_AS(make_system_params(1e-3, 180e3, 4e-21, 0.4, 10, 1, 0.1, 0.03, 10),
                  ConfigError);
  CHECK_THROWS_AS(make_system_params(1e-3, 180e3, 4e-21, 2, 10, 1, 0.1, 11.0, 10),
                  ConfigError);
  // distance so small the path loss would drop below 0 dB
  CHECK_THROWS_AS(make_system_params(1e-3, 180e3, 4e-21, 2, 10, 1e-4, 0.1, 0.03, 10),
                  ConfigError);
}

TEST_CASE("beta recomputes from (eps, Dmax, Ts)") {
  Xoshiro256pp rng(7);
  for (int i = 0; i < 100; ++i) {
    const double Ts = 1e-4 + 1e-2 * rng.uniform01();
    const double Dmax = Ts * (1.0 + 100.0 * rng.uniform01());
    const double eps = 1e-6 + 0.9 * rng.uniform01();
    const QoSTarget qos = make_qos(Dmax, eps, Ts);
    CHECK(qos.beta ==
          doctest::Approx(std::pow(eps, -Ts / (Dmax + Ts))).epsilon(1e-12));
  }
}
