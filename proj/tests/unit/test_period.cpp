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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "revgeo/classify.hpp"
#include "revgeo/error.hpp"
#include "revgeo/period.hpp"
#include "revgeo/profile.hpp"

using namespace revgeo;
using oracle::kPi;
using oracle::kTwoPi;
namespace tb = oracle::twobump;

namespace {

ScalarMap identity_map() { return {[](double x) { return x; }, [](double) { return 1.0; }}; }
ScalarMap cube_map() {
  return {[](double x) { return 0.6 * x * x * x; }, [](double x) { return 1.8 * x * x; }};
}
ScalarMap bent_map() {
  return {[](double x) { return 0.6 * x * x * x + 0.1 * x * x; },
          [](double x) { return 1.8 * x * x + 0.2 * x; }};
}

ProfileCurve sphere() { return make_profile_from_h(sphere_h()); }
ProfileCurve tannery() { return embed_profile(from_constant_period_family(2, identity_map())); }
ProfileCurve void_surface() {
  return embed_profile(from_constant_period_family(std::sqrt(5.0), identity_map()));
}
ProfileCurve twobump() { return make_profile_from_h(twobump_h()); }
ProfileCurve ellipsoid() { return embed_profile(ellipsoid_metric(2.0)); }
ProfileCurve lopsided() {
  return make_profile_from_h(AnalyticH{
      "lopsided",
      {0, kPi},
      [](double u) { return 0.8 * std::sin(u) + 0.1 * std::sin(2 * u); },
      [](double u) { return 0.8 * std::cos(u) + 0.2 * std::cos(2 * u); },
      [](double u) { return -0.8 * std::sin(u) - 0.4 * std::sin(2 * u); }});
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("sphere period is 2 pi") {
  const ProfileCurve p = sphere();
  for (const double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.5}) {
    const PeriodValue v = period(x, p);
    REQUIRE(v.is_finite());
    CHECK(std::abs(v.value() - kTwoPi) < 1e-10);
    CHECK(v.err_est() < 1e-9);
  }
  // Close to the equator h - c is formed by cancellation; the estimate says so.
  for (const double x : {1.56, 1.57, 1.5707}) {
    const PeriodValue v = period(x, p);
    CHECK(std::abs(v.value() - kTwoPi) <= v.err_est());
  }
}

TEST_CASE("constant periods of the reference metrics") {
  const ProfileCurve t = tannery();
  for (const double x : {0.3, 0.7, 1.2}) CHECK(std::abs(period(x, t).value() - 2 * kTwoPi) < 1e-9);
  const ProfileCurve v = void_surface();
  CHECK(std::abs(period(0.5, v).value() - std::sqrt(5.0) * kTwoPi) < 1e-9);
  CHECK(period(0.5, v).value() == doctest::Approx(14.0496).epsilon(1e-5));
  // Mirrored launches give the same period.
  CHECK(std::abs(period(kPi - 0.7, t).value() - 2 * kTwoPi) < 1e-9);
}

TEST_CASE("two-bump periods match the high-precision reference") {
  const ProfileCurve p = twobump();
  CHECK(rel(period(0.3, p).value(), tb::kPhi0p3) < 1e-10);
  CHECK(rel(period(0.6, p).value(), tb::kPhi0p6) < 1e-10);
  CHECK(rel(period(0.85, p).value(), tb::kPhi0p85) < 1e-10);
  CHECK(rel(period(1.2, p).value(), tb::kPhi1p2) < 1e-10);
  CHECK(rel(period(1.9, p).value(), tb::kPhi1p9) < 1e-10);
  CHECK(rel(period(tb::kLevelA - 1e-5, p).value(), tb::kPhiAminus1e5) < 1e-8);
  CHECK(rel(period(tb::kLevelA - 1e-7, p).value(), tb::kPhiAminus1e7) < 1e-6);
  CHECK(rel(period(tb::kLevelA + 1e-7, p).value(), tb::kPhiAplus1e7) < 1e-6);
}

TEST_CASE("period blows up at the asymptote endpoint") {
  const ProfileCurve p = twobump();
  const double a = admissible_set(p).intervals()[0].hi;
  double prev = 0;
  for (const double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
    const PeriodValue v = period(a - d, p);
    REQUIRE(v.is_finite());
    CHECK(v.value() > prev);
    prev = v.value();
  }
  CHECK(prev > 1e3);
  const PeriodValue inf = period(a - 5e-9, p);
  CHECK_FALSE(inf.is_finite());
  CHECK(inf.near_boundary());
  CHECK(std::isinf(inf.value()));
  CHECK_FALSE(period(a, p).is_finite());
  // From the other side the geodesic also lingers at the neck.
  prev = 0;
  for (const double d : {1e-3, 1e-5, 1e-7}) {
    const double v = period(a + d, p).value();
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 1e3);
}

TEST_CASE("period rejects parallels and bad tolerances") {
  CHECK_THROWS_AS(period(kPi / 2, sphere()), DomainError);
  CHECK_THROWS_AS(period(0.5, sphere(), 0.0), DomainError);
  CHECK_THROWS_AS(period(0.5, sphere(), -1.0), DomainError);
}

TEST_CASE("ellipsoid period against the substitution oracle") {
  const ProfileCurve p = ellipsoid();
  const auto sqrt_e = [](double u) { return std::sqrt(std::cos(u) * std::cos(u) + 4 * std::sin(u) * std::sin(u)); };
  for (const double x : {0.01, 0.1, 0.3, 0.8, 1.2, 1.55}) {
    CAPTURE(x);
    CHECK(rel(period(x, p).value(), oracle::sin_profile_period(sqrt_e, x)) < 1e-10);
  }
  CHECK(period(0.3, p).value() / kTwoPi == doctest::Approx(1.34697).epsilon(1e-5));
}

TEST_CASE("family metrics against the substitution oracle") {
  const CanonicalMetric odd = from_constant_period_family(1.3, cube_map());
  const CanonicalMetric bent = metric_from_generator(1.3, bent_map());
  const ProfileCurve po = intrinsic_profile(odd), pb = intrinsic_profile(bent);
  for (const double x : {0.05, 0.4, 0.9, 1.4}) {
    CAPTURE(x);
    CHECK(std::abs(period(x, po).value() - 1.3 * kTwoPi) < 1e-9);
    const double want = oracle::sin_profile_period([&](double u) { return bent.sqrt_e(u); }, x);
    CHECK(rel(period(x, pb).value(), want) < 1e-10);
  }
}

TEST_CASE("ODE oracle agrees with quadrature") {
  struct Probe {
    ProfileCurve p;
    double u1;
  };
  for (const Probe& k : {Probe{sphere(), 0.8}, Probe{tannery(), 0.9}, Probe{void_surface(), 1.0},
                         Probe{twobump(), 0.85}, Probe{twobump(), 1.9}, Probe{ellipsoid(), 0.4},
                         Probe{lopsided(), 0.5}}) {
    CAPTURE(k.p.name());
    CAPTURE(k.u1);
    const double q = period(k.u1, k.p).value();
    const double ode = period_oracle_ode(k.u1, k.p);
    CHECK(std::abs(q - ode) < 1e-7);
  }
  CHECK(std::abs(period_oracle_ode(0.8, sphere()) - kTwoPi) < 1e-7);
  CHECK(std::abs(period_oracle_ode(0.9, tannery()) - 2 * kTwoPi) < 1e-5);
  CHECK(std::abs(period_oracle_ode(1.0, void_surface()) - std::sqrt(5.0) * kTwoPi) < 1e-5);
  CHECK_THROWS_AS(period_oracle_ode(kPi / 2, sphere()), DomainError);
}

TEST_CASE("period is invariant under scaling") {
  for (const ProfileCurve& p : {twobump(), lopsided()}) {
    CAPTURE(p.name());
    for (const double lam : {0.25, 3.0}) {
      const ProfileCurve q = scale_profile(p, lam);
      for (const double u1 : {0.3, 0.85, 1.9}) {
        if (!admissible_set(p).contains(u1) && !(p.dh(u1) < 0)) continue;
        CHECK(rel(period(lam * u1, q).value(), period(u1, p).value()) < 1e-8);
      }
    }
  }
}

TEST_CASE("period survives canonicalization") {
  for (const ProfileCurve& p : {lopsided(), ellipsoid()}) {
    CAPTURE(p.name());
    const CanonicalMetric m = canonicalize(p);
    const ProfileCurve c = intrinsic_profile(m);
    const double top = p.critical_points()[0].u;
    for (const double f : {0.1, 0.4, 0.7, 0.9}) {
      const double u1 = f * top;
      const double r1 = std::asin(p.h(u1) / m.scale());
      CAPTURE(u1);
      CHECK(rel(period(r1, c).value(), period(u1, p).value()) < 1e-8);
    }
  }
}

TEST_CASE("sweeps: chebyshev nodes, continuity and flatness") {
  const std::vector<double> x = chebyshev_nodes({0.2, 1.0}, 7);
  REQUIRE(x.size() == 7);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i] > 0.2);
    CHECK(x[i] < 1.0);
    if (i > 0) CHECK(x[i] > x[i - 1]);
  }
  CHECK(x[3] == doctest::Approx(0.6).epsilon(1e-15));

  const auto max_gap = [](const PeriodSweep& s) {
    double g = 0;
    for (std::size_t i = 1; i < s.samples.size(); ++i)
      g = std::max(g, std::abs(s.samples[i].phi.value() - s.samples[i - 1].phi.value()));
    return g;
  };
  const ProfileCurve tbp = twobump();
  for (const auto& [p, iv] : {std::pair{ellipsoid(), Interval{0.1, 1.4}},
                              std::pair{tbp, Interval{0.81, 0.9}},
                              std::pair{tbp, Interval{1.65, 2.2}}}) {
    CAPTURE(p.name());
    const double g1 = max_gap(period_sweep(iv, 40, p));
    const double g2 = max_gap(period_sweep(iv, 80, p));
    const double g3 = max_gap(period_sweep(iv, 160, p));
    CHECK(g2 < 0.6 * g1);
    CHECK(g3 < 0.6 * g2);
  }

  const PeriodSweep sp = period_sweep({0.05, kPi / 2 - 0.05}, 50, sphere());
  CHECK(sp.samples.size() == 50);
  for (const SweepSample& s : sp.samples) CHECK(std::abs(s.phi.value() - kTwoPi) < 1e-8);

  const PeriodSweep odd = period_sweep({0.05, kPi / 2 - 0.05}, 60, intrinsic_profile(from_constant_period_family(1.3, cube_map())));
  double lo = 1e300, hi = -1e300;
  for (const SweepSample& s : odd.samples) {
    lo = std::min(lo, s.phi.value());
    hi = std::max(hi, s.phi.value());
  }
  CHECK(hi - lo < 1e-9);

  const PeriodSweep ell = period_sweep({0.05, kPi / 2 - 0.05}, 30, ellipsoid());
  CHECK(ell.samples.back().phi.value() - ell.samples.front().phi.value() > 1e-3);
}

TEST_CASE("sweep preconditions") {
  const ProfileCurve p = twobump();
  CHECK_THROWS_AS(period_sweep({0.7, 0.85}, 10, p), DomainError);  // straddles a
  CHECK_THROWS_AS(period_sweep({0.1, 0.2}, 1, p), DomainError);
  CHECK_THROWS_AS(period_sweep({2.3, 2.4}, 5, p), DomainError);
  CHECK_THROWS_AS(period_sweep_at({0.3, 0.25}, p), DomainError);
  CHECK_NOTHROW(period_sweep({0.1, 0.2}, 3, p));
}

TEST_CASE("sweep output is deterministic across worker counts") {
  const ProfileCurve p = twobump();
  auto run = [&](const char* threads) {
    setenv("REVGEO_THREADS", threads, 1);
    std::ostringstream os;
    write_sweep_csv(os, period_sweep({1.6, 2.2}, 25, p));
    return os.str();
  };
  const std::string one = run("1");
  const std::string three = run("3");
  unsetenv("REVGEO_THREADS");
  CHECK(one == three);
  std::istringstream is(one);
  std::string header;
  std::getline(is, header);
  CHECK(header == "u1,phi,phi_over_2pi,err_est,flags");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 25);
}
