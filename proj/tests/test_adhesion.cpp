#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "riso/adhesion.hpp"

using namespace riso;

TEST_CASE("compliance endpoints and monotonicity") {
  AdhesionParams p;
  CHECK(compliance(p.P_min, p) == p.C0);
  CHECK(compliance(-5.0, p) < compliance(-4.0, p));
  p.c_p = 0.0;
  CHECK(compliance(p.P_min, p) == compliance(p.P_max, p));
  CHECK_THROWS_AS(compliance(p.P_max + 0.1, p), std::out_of_range);
  CHECK_THROWS_AS(compliance(p.P_min - 0.1, p), std::out_of_range);
}

TEST_CASE("hand-evaluated capacity") {
  AdhesionParams p;
  p.k_cal = 1.0;
  p.C0 = 1e-4;
  CHECK(force_capacity(p.P_min, 0.01, 1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("default calibration gives 5 N at the reference point") {
  const AdhesionParams p;
  CHECK(force_capacity(p.P_min, 0.03, 10.0, p) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("capacity scaling laws") {
  const AdhesionParams p;
  for (double P : {-13.0, -7.5, 0.0, 2.5}) {
    const double f = force_capacity(P, 0.01, 2.0, p);
    CHECK(force_capacity(P, 0.02, 2.0, p) == 2 * f);
    CHECK(force_capacity(P, 0.01, 8.0, p) == 2 * f);
    CHECK(force_capacity(P, 0.03, 2.0, p) == force_capacity(P, 0.3, 2.0, p));
  }
}

TEST_CASE("capacity strictly decreasing over the whole pressure range") {
  const AdhesionParams p;
  double prev = force_capacity(p.P_min, 0.01, 1.0, p);
  for (int i = 1; i <= 500; ++i) {
    const double f = force_capacity(p.P_min + (p.P_max - p.P_min) * i / 500.0, 0.01, 1.0, p);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("release threshold and malformed arguments") {
  AdhesionParams p;
  p.P_release = 1.0;
  CHECK(force_capacity(1.0, 0.01, 1.0, p) > 0.0);
  CHECK(force_capacity(1.5, 0.01, 1.0, p) == 0.0);
  CHECK_THROWS_AS(force_capacity(0.0, 0.0, 1.0, p), std::invalid_argument);
  CHECK_THROWS_AS(force_capacity(0.0, 0.01, -1.0, p), std::invalid_argument);
}

TEST_CASE("delayed pressure is a pure transport delay") {
  const AdhesionParams p;
  const std::vector<PressureCommand> h{{0.0, 2.0}, {1.0, -13.0}};
  // Still the old value over [1.0, 1.1).
  for (double t : {1.0, 1.05, 1.0999})
    CHECK(delayed_pressure(h, t, 0.0, 0.1) == 2.0);
  CHECK(delayed_pressure(h, 1.1, 0.0, 0.1) == -13.0);
  CHECK(delayed_pressure(h, 0.05, 0.7, 0.1) == 0.7);  // before any command
  CHECK(delayed_pressure(h, 1.0, 0.0, 0.0) == -13.0);

  const double before = effective_capacity(h, 1.05, 0.0, 0.01, 3.0, p);
  CHECK(before == force_capacity(2.0, 0.01, 3.0, p));
  CHECK(effective_capacity(h, 1.2, 0.0, 0.01, 3.0, p) == force_capacity(-13.0, 0.01, 3.0, p));

  const std::vector<PressureCommand> flat{{0.0, -4.0}};
  for (double t : {0.0, 0.5, 10.0})
    CHECK(effective_capacity(flat, t, -4.0, 0.01, 3.0, p) == force_capacity(-4.0, 0.01, 3.0, p));
}

TEST_CASE("parameter validation") {
  AdhesionParams p;
  CHECK_NOTHROW(p.validate());
  p.P_min = 5.0;
  CHECK_THROWS(p.validate());
}
