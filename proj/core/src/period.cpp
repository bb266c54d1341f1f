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

#include "revgeo/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "revgeo/classify.hpp"
#include "revgeo/error.hpp"
#include "revgeo/geodesic.hpp"
#include "revgeo/io.hpp"
#include "revgeo/parallel.hpp"

namespace revgeo {
namespace {

constexpr double kPi = std::numbers::pi;
// Below this distance from the turning parallel, h - c is taken from its
// second-order expansion instead of a cancelling subtraction.
constexpr double kTaylorZone = 1e-6;
constexpr double kOnCritical = 1e-12;

const CriticalPoint* nearest_critical(double u, const ProfileCurve& p) {
  const CriticalPoint* best = nullptr;
  for (const auto& cp : p.critical_points()) {
    if (!best || std::abs(cp.u - u) < std::abs(best->u - u)) best = &cp;
  }
  return best;
}

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> q;
  return q;
}

template <class F>
double de_integrate(F&& f, double a, double b, double tol, double& err) {
  double e = 0, l1 = 0;
  const double v = integrator().integrate(f, a, b, tol, &e, &l1);
  if (!std::isfinite(v)) {
    throw NumericError("period quadrature produced a non-finite value", a);
  }
  err += e;
  return v;
}

// Half-open stretch between the turning parallel at `end` and `far`, with the
// inverse-square-root singularity removed by u = root + sigma * t^2.
double singular_piece(const ProfileCurve& p, double c, double end, double far,
                      double tol, double& err) {
  const double sigma = far > end ? 1.0 : -1.0;
  const double r = p.h(end) - c;
  const double s = sigma * p.dh(end);
  const double h2 = p.d2h(end);
  const double wstar = s > 0 ? -r / s : 0.0;
  const double sstar = s + h2 * wstar;
  const double root = end + sigma * wstar;
  const double len = sigma * (far - root);
  if (!(len > 0) || !(sstar > 0)) {
    throw NumericError("degenerate turning parallel in period quadrature", end);
  }
  auto f = [&](double t) {
    const double e = t * t;
    const double u = root + sigma * e;
    double hv, q;
    if (e < kTaylorZone) {
      q = sstar + 0.5 * h2 * e;
      hv = c + q * e;
    } else {
      hv = p.h(u);
      q = (hv - c) / e;
    }
    return 2 * c * p.sqrt_e(u) / (hv * std::sqrt(q * (hv + c)));
  };
  return de_integrate(f, 0.0, std::sqrt(len), tol, err);
}

double regular_piece(const ProfileCurve& p, double c, double a, double b,
                     double tol, double& err) {
  auto f = [&](double u) {
    const double hv = p.h(u);
    return c * p.sqrt_e(u) / (hv * std::sqrt((hv - c) * (hv + c)));
  };
  return de_integrate(f, a, b, tol, err);
}

}  // namespace

PeriodValue PeriodValue::finite(double value, double err_est, bool near_boundary) {
  PeriodValue v;
  v.finite_ = true;
  v.value_ = value;
  v.err_ = err_est;
  v.near_boundary_ = near_boundary;
  return v;
}

PeriodValue PeriodValue::infinite(bool near_boundary) {
  PeriodValue v;
  v.finite_ = false;
  v.value_ = std::numeric_limits<double>::infinity();
  v.near_boundary_ = near_boundary;
  return v;
}

double PeriodValue::value() const {
  return finite_ ? value_ : std::numeric_limits<double>::infinity();
}

PeriodValue period(double u1, const ProfileCurve& p, double tol) {
  if (!(tol > 0)) throw DomainError("tol", "must be positive");
  const GeodesicClassification cls = classify_from_launch(u1, p);
  switch (cls.variant) {
    case GeodesicVariant::parallel: {
      // |h'(u1)| is below crit_tol but u1 is off the critical point: next to
      // a min that is the asymptote limit, where the period diverges.
      const CriticalPoint* near = nearest_critical(u1, p);
      if (near && near->kind != CriticalKind::max && std::abs(u1 - near->u) > kOnCritical) {
        return PeriodValue::infinite(true);
      }
      throw DomainError("u1", "launch is a geodesic parallel; the period is undefined");
    }
    case GeodesicVariant::meridian:
      throw DomainError("u1", "launch is a geodesic parallel; the period is undefined");
    case GeodesicVariant::asymptotic:
    case GeodesicVariant::bi_asymptotic:
      return PeriodValue::infinite(cls.near_boundary);
    case GeodesicVariant::oscillating:
      break;
  }
  const double c = p.h(u1);
  const double b0 = cls.boundary.b0, b1 = cls.boundary.b1;

  // Split at every critical point inside: each piece is monotone in h, so
  // h - c vanishes at most at an outer end.
  std::vector<double> cuts;
  for (const auto& cp : p.critical_points()) {
    if (cp.u > b0 && cp.u < b1) cuts.push_back(cp.u);
  }
  if (cuts.empty()) cuts.push_back(0.5 * (b0 + b1));

  double err = 0;
  double sum = singular_piece(p, c, b0, cuts.front(), tol, err);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += regular_piece(p, c, cuts[i], cuts[i + 1], tol, err);
  }
  sum += singular_piece(p, c, b1, cuts.back(), tol, err);
  return PeriodValue::finite(2 * sum, 2 * err, cls.near_boundary);
}

std::vector<double> chebyshev_nodes(Interval iv, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  const double mid = 0.5 * (iv.lo + iv.hi), half = 0.5 * (iv.hi - iv.lo);
  for (int k = 0; k < n; ++k) {
    x[static_cast<std::size_t>(k)] = mid - half * std::cos((2 * k + 1) * kPi / (2 * n));
  }
  return x;
}

PeriodSweep period_sweep(Interval iv, int n, const ProfileCurve& p, double tol) {
  if (n < 2) throw DomainError("n", "a sweep needs at least 2 samples");
  if (!(iv.hi > iv.lo)) throw DomainError("interval", "needs lo < hi");
  const AdmissibleSet set = admissible_set(p);
  const bool inside = std::any_of(
      set.intervals().begin(), set.intervals().end(),
      [&](const AdmissibleInterval& a) { return a.lo <= iv.lo && iv.hi <= a.hi; });
  if (!inside) {
    throw DomainError("interval", "[" + format_double(iv.lo) + ", " +
                                      format_double(iv.hi) +
                                      "] leaves the admissible set");
  }
  PeriodSweep s = period_sweep_at(chebyshev_nodes(iv, n), p, tol);
  s.interval = iv;
  return s;
}

PeriodSweep period_sweep_at(std::vector<double> u1s, const ProfileCurve& p,
                            double tol) {
  if (!(tol > 0)) throw DomainError("tol", "must be positive");
  const AdmissibleSet set = admissible_set(p);
  for (std::size_t i = 0; i < u1s.size(); ++i) {
    if (i > 0 && !(u1s[i] > u1s[i - 1])) {
      throw DomainError("u1", "sweep points must be strictly increasing");
    }
    if (!set.contains(u1s[i])) {
      throw DomainError("u1", format_double(u1s[i]) + " is not in the admissible set");
    }
  }
  PeriodSweep s;
  s.tol = tol;
  s.surface = p.name();
  if (!u1s.empty()) s.interval = {u1s.front(), u1s.back()};
  s.samples.resize(u1s.size());
  parallel_for(u1s.size(), [&](std::size_t i) {
    s.samples[i] = {u1s[i], period(u1s[i], p, tol)};
  });
  return s;
}

double period_oracle_ode(double u1, const ProfileCurve& p, double tol) {
  const GeodesicClassification cls = classify_from_launch(u1, p);
  if (cls.variant != GeodesicVariant::oscillating || cls.near_boundary) {
    throw DomainError("u1", "ODE oracle needs an oscillating launch away from the boundary");
  }
  const MetricCoefficients m(p);
  const GeodesicState s0 = launch_tangent_to_parallel(u1, m);
  IntegrateOptions opts;
  opts.stop_after_turning_points = 2;
  opts.record_states = false;
  const Trajectory tr = integrate(s0, m, 1e7, tol, opts);
  const auto& tp = tr.diagnostics.turning_points;
  if (tr.diagnostics.pole_approach) {
    throw NumericError("integration reached the pole guard",
                       tr.diagnostics.turning_points.empty() ? 0.0 : tp.back().t);
  }
  if (tp.size() < 2) throw NumericError("no full oscillation within the horizon", 1e7);
  return tp[1].v - s0.v;
}

void write_sweep_csv(std::ostream& os, const PeriodSweep& s) {
  os << "u1,phi,phi_over_2pi,err_est,flags\n";
  for (const auto& smp : s.samples) {
    std::string flags;
    if (!smp.phi.is_finite()) flags = "infinite";
    if (smp.phi.near_boundary()) flags += flags.empty() ? "near_boundary" : ";near_boundary";
    os << format_double(smp.u1) << ',' << format_double(smp.phi.value()) << ','
       << format_double(smp.phi.value() / (2 * kPi)) << ','
       << format_double(smp.phi.err_est()) << ',' << flags << '\n';
  }
}

}  // namespace revgeo
