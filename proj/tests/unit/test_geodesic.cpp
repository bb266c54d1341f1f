// Copyright 2026 The revgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "revgeo/error.hpp"
#include "revgeo/geodesic.hpp"
#include "revgeo/profile.hpp"

using namespace revgeo;
using oracle::kPi;
using oracle::kTwoPi;

namespace {

ScalarMap identity_map() { return {[](double x) { return x; }, [](double) { return 1.0; }}; }

ProfileCurve sphere() { return make_profile_from_h(sphere_h()); }
ProfileCurve tannery() { return embed_profile(from_constant_period_family(2, identity_map())); }
ProfileCurve void_surface() {
  return embed_profile(from_constant_period_family(std::sqrt(5.0), identity_map()));
}
ProfileCurve twobump() { return make_profile_from_h(twobump_h()); }
ProfileCurve ellipsoid() { return embed_profile(ellipsoid_metric(2.0)); }

std::vector<ProfileCurve> zoo() { return {sphere(), tannery(), void_surface(), twobump(), ellipsoid()}; }

}  // namespace

TEST_CASE("geodesic_rhs hand-evaluated cases") {
  const MetricCoefficients s(sphere());
  const StateDerivative a = geodesic_rhs({0, kPi / 4, 0, 0, 2.0}, s);
  CHECK(a.du == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a.dv == 0.0);
  CHECK(a.u == 0.0);
  CHECK(a.v == 2.0);

  const StateDerivative eq = geodesic_rhs({0, kPi / 2, 0, 0, 1.0}, s);
  CHECK(std::abs(eq.du) < 1e-16);
  CHECK(std::abs(eq.dv) < 1e-16);

  const MetricCoefficients tb(twobump());
  const StateDerivative par = geodesic_rhs({0, kPi / 2, 0, 0, 1 / oracle::twobump::kNeckH}, tb);
  CHECK(std::abs(par.du) < 1e-15);
  CHECK(std::abs(par.dv) < 1e-15);

  CHECK_THROWS_AS(geodesic_rhs({0, 0.0, 0, 1, 0}, s), DomainError);
  CHECK_THROWS_AS(geodesic_rhs({0, kPi, 0, -1, 0}, s), DomainError);
}

TEST_CASE("metric coefficients: G = h^2 and derivatives match finite differences") {
  for (const ProfileCurve& p : zoo()) {
    CAPTURE(p.name());
    const MetricCoefficients m(p);
    const Interval d = p.domain();
    for (int i = 1; i < 40; ++i) {
      const double u = d.lo + d.length() * i / 40;
      CHECK(m.g(u) == p.h(u) * p.h(u));
      const double step = 1e-5;
      const double fe = (m.e(u + step) - m.e(u - step)) / (2 * step);
      const double fg = (m.g(u + step) - m.g(u - step)) / (2 * step);
      CHECK(std::abs(fe - m.e_u(u)) <= 1e-6 * std::max(1.0, std::abs(m.e_u(u))));
      CHECK(std::abs(fg - m.g_u(u)) <= 1e-6 * std::max(1.0, std::abs(m.g_u(u))));
    }
  }
}

TEST_CASE("slant and launch helpers") {
  const MetricCoefficients m(tannery());
  CHECK(slant_of({0, 1.0, 0, 0.3, 0}, m) == 0.0);
  const GeodesicState s = launch_tangent_to_parallel(0.7, m);
  CHECK(s.du == 0.0);
  CHECK(s.dv == 1 / std::sin(0.7));
  CHECK(slant_of(s, m) == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
  CHECK(std::abs(speed_sq(s, m) - 1) < 1e-15);
  for (const double phi : {0.0, 0.4, 1.0, 2.5}) {
    const GeodesicState a = launch_at_angle(1.1, phi, m);
    CHECK(std::abs(speed_sq(a, m) - 1) < 1e-14);
    CHECK(slant_of(a, m) == doctest::Approx(std::sin(1.1) * std::sin(phi)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(launch_tangent_to_parallel(0.0, m), DomainError);
  CHECK_THROWS_AS(launch_tangent_to_parallel(kPi, m), DomainError);
}

TEST_CASE("integrate rejects bad input") {
  const MetricCoefficients m(sphere());
  const GeodesicState s = launch_tangent_to_parallel(0.5, m);
  CHECK_THROWS_AS(integrate(s, m, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate(s, m, 1.0, -1e-8), DomainError);
  CHECK_THROWS_AS(integrate(s, m, 0.0, 1e-8), DomainError);
  GeodesicState slow = s;
  slow.dv *= 0.5;
  CHECK_THROWS_AS(integrate(slow, m, 1.0, 1e-8), DomainError);
}

TEST_CASE("sphere: great circle against the closed form") {
  const MetricCoefficients m(sphere());
  const double u0 = kPi / 4;
  const Trajectory tr = integrate(launch_tangent_to_parallel(u0, m), m, 20, 1e-11);
  CHECK(tr.slant == doctest::Approx(std::sin(u0)).epsilon(1e-15));
  for (const GeodesicState& st : tr.states) {
    CHECK(std::abs(std::cos(st.u) - std::cos(u0) * std::cos(st.t)) < 1e-9);
  }
  for (std::size_t i = 1; i < tr.states.size(); ++i) CHECK(tr.states[i].t > tr.states[i - 1].t);
  const auto& tp = tr.diagnostics.turning_points;
  REQUIRE(tp.size() >= 6);
  for (std::size_t i = 0; i < tp.size(); ++i) {
    // Turning points every half great circle, alternating b1, b0.
    CHECK(tp[i].t == doctest::Approx(kPi * (i + 1)).epsilon(1e-10));
    CHECK(tp[i].upper == (i % 2 == 0));
    CHECK(std::abs(tp[i].u - (tp[i].upper ? 3 * kPi / 4 : kPi / 4)) < 1e-9);
    CHECK(tp[i].v == doctest::Approx(kPi * (i + 1)).epsilon(1e-9));
  }
  CHECK_FALSE(tr.diagnostics.pole_approach);
  CHECK_FALSE(tr.diagnostics.dv_sign_changed);
}

TEST_CASE("launch tangent at a critical point stays on the parallel") {
  const MetricCoefficients m(sphere());
  const Trajectory tr = integrate(launch_tangent_to_parallel(kPi / 2, m), m, 50, 1e-10);
  for (const GeodesicState& st : tr.states) CHECK(st.u == kPi / 2);
  CHECK(tr.states.back().t == 50.0);
  CHECK(tr.states.back().v == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(tr.diagnostics.turning_points.empty());

  // Off the critical point the launch oscillates about the equator.
  const Trajectory osc = integrate(launch_tangent_to_parallel(kPi / 2 - 1e-3, m), m, 10, 1e-10);
  REQUIRE(osc.diagnostics.turning_points.size() >= 2);
  CHECK(osc.diagnostics.turning_points[0].u == doctest::Approx(kPi / 2 + 1e-3).epsilon(1e-9));
}

TEST_CASE("tannery: one oscillation advances v by 4 pi") {
  const MetricCoefficients m(tannery());
  IntegrateOptions opts;
  opts.stop_after_turning_points = 2;
  const Trajectory tr = integrate(launch_tangent_to_parallel(0.7, m), m, 1e3, 1e-11, opts);
  const auto& tp = tr.diagnostics.turning_points;
  REQUIRE(tp.size() == 2);
  CHECK(tp[0].upper);
  CHECK_FALSE(tp[1].upper);
  CHECK(std::abs(tp[1].u - 0.7) < 1e-8);
  CHECK(std::abs(tp[1].v - 2 * kTwoPi) < 1e-5);
  CHECK(std::abs(tr.states.back().t - tp[1].t) < 1e-12);
}

TEST_CASE("two-bump: slant at the neck radius spirals onto the neck") {
  const ProfileCurve p = twobump();
  const MetricCoefficients m(p);
  const double a = oracle::twobump::kLevelA;
  const Trajectory tr = integrate(launch_tangent_to_parallel(a, m), m, 40, 1e-11);
  CHECK(tr.slant == doctest::Approx(oracle::twobump::kNeckH).epsilon(1e-14));
  CHECK(tr.diagnostics.turning_points.empty());
  double prev = kPi / 2 - a;
  for (std::size_t i = 1; i < tr.states.size(); ++i) {
    const double gap = kPi / 2 - tr.states[i].u;
    CHECK(gap > 0);
    CHECK(gap <= prev);
    prev = gap;
  }
  CHECK(prev < 0.2);
}

TEST_CASE("conservation, confinement and tangency on random geodesics") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> frac(0.1, 0.9), ang(0.3, kPi / 2);
  const double tol = 1e-10, t_end = 60;
  for (const ProfileCurve& p : zoo()) {
    CAPTURE(p.name());
    const MetricCoefficients m(p);
    const Interval d = p.domain();
    for (int k = 0; k < 4; ++k) {
      const double u0 = d.lo + d.length() * frac(rng);
      const Trajectory tr = integrate(launch_at_angle(u0, ang(rng), m), m, t_end, tol);
      const TrajectoryDiagnostics& dg = tr.diagnostics;
      CHECK(dg.max_slant_drift < 10 * tol * (1 + t_end));
      CHECK(dg.max_speed_drift < 10 * tol * (1 + t_end));
      CHECK_FALSE(dg.dv_sign_changed);
      CHECK_FALSE(dg.pole_approach);
      double slant_worst = 0, speed_worst = 0;
      for (const GeodesicState& st : tr.states) {
        CHECK(p.h(st.u) >= tr.slant - 1e-9);
        slant_worst = std::max(slant_worst, std::abs(slant_of(st, m) - tr.slant));
        speed_worst = std::max(speed_worst, std::abs(speed_sq(st, m) - 1));
      }
      CHECK(slant_worst <= dg.max_slant_drift);
      CHECK(speed_worst <= dg.max_speed_drift);
      for (const TurningPoint& t : dg.turning_points) CHECK(std::abs(p.h(t.u) - tr.slant) < 1e-8);
    }
  }
}

TEST_CASE("halving the tolerance halves the drift") {
  const MetricCoefficients m(tannery());
  const GeodesicState s = launch_at_angle(0.6, 1.0, m);
  double prev = 0;
  double tol = 1e-6 / 8192;
  for (int k = 0; k < 7; ++k, tol /= 2) {
    const double drift = integrate(s, m, 100, tol).diagnostics.max_slant_drift;
    CAPTURE(tol);
    if (prev > 0) CHECK(drift <= 0.5 * prev);
    prev = drift;
  }
}

TEST_CASE("near-meridian launch stops at the pole guard") {
  const MetricCoefficients m(sphere());
  const Trajectory tr = integrate(launch_at_angle(0.5, 1e-9, m), m, 10, 1e-10);
  CHECK(tr.diagnostics.pole_approach);
  CHECK(tr.states.back().t < 3.0);
  CHECK(tr.states.back().u > kPi - 1e-3);
}

TEST_CASE("trajectory CSV export") {
  const MetricCoefficients m(sphere());
  IntegrateOptions opts;
  opts.stop_after_turning_points = 1;
  const Trajectory tr = integrate(launch_tangent_to_parallel(0.5, m), m, 10, 1e-10, opts);
  std::ostringstream os;
  write_trajectory_csv(os, tr, m);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,u,v,du,dv,slant_drift,speed_drift");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == tr.states.size());
  std::ostringstream again;
  write_trajectory_csv(again, integrate(launch_tangent_to_parallel(0.5, m), m, 10, 1e-10, opts), m);
  CHECK(again.str() == os.str());
}
