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

#include "revgeo/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "revgeo/error.hpp"
#include "revgeo/io.hpp"

namespace revgeo {
namespace {

using Vec = std::array<double, 4>;  // u, v, du, dv

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

struct Dense {
  Vec r1, r2, r3, r4, r5;
  double at(int i, double theta) const {
    const double t1 = 1 - theta;
    return r1[i] +
           theta * (r2[i] + t1 * (r3[i] + theta * (r4[i] + t1 * r5[i])));
  }
};

class Rhs {
 public:
  explicit Rhs(const MetricCoefficients& m)
      : m_(m), lo_(m.profile().domain().lo), hi_(m.profile().domain().hi) {}

  // False when u has left the open domain (the stage is unusable).
  bool operator()(const Vec& y, Vec& f) const {
    if (!(y[0] > lo_ && y[0] < hi_)) return false;
    GeodesicState s{0, y[0], y[1], y[2], y[3]};
    const StateDerivative d = geodesic_rhs(s, m_);
    f = {d.u, d.v, d.du, d.dv};
    return std::isfinite(d.du) && std::isfinite(d.dv);
  }

 private:
  const MetricCoefficients& m_;
  double lo_, hi_;
};

int sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

StateDerivative geodesic_rhs(const GeodesicState& s, const MetricCoefficients& m) {
  const Interval d = m.profile().domain();
  if (!(s.u > d.lo && s.u < d.hi)) {
    throw DomainError("u", "state at or beyond a pole (u = " + format_double(s.u) + ")");
  }
  const double e = m.e(s.u), eu = m.e_u(s.u);
  const double g = m.g(s.u), gu = m.g_u(s.u);
  StateDerivative out;
  out.u = s.du;
  out.v = s.dv;
  out.du = -(eu / (2 * e)) * s.du * s.du + (gu / (2 * e)) * s.dv * s.dv;
  out.dv = -(gu / g) * s.du * s.dv;
  return out;
}

double slant_of(const GeodesicState& s, const MetricCoefficients& m) {
  return m.g(s.u) * s.dv;
}

double speed_sq(const GeodesicState& s, const MetricCoefficients& m) {
  return m.e(s.u) * s.du * s.du + m.g(s.u) * s.dv * s.dv;
}

GeodesicState launch_tangent_to_parallel(double u0, const MetricCoefficients& m) {
  const Interval d = m.profile().domain();
  if (!(u0 > d.lo && u0 < d.hi)) {
    throw DomainError("u0", "launch point must be interior (got " +
                                format_double(u0) + ")");
  }
  const double h = m.profile().h(u0);
  if (!(h > 0)) throw DomainError("u0", "h(u0) must be positive");
  return {0, u0, 0, 0, 1 / h};
}

GeodesicState launch_at_angle(double u0, double phi, const MetricCoefficients& m) {
  GeodesicState s = launch_tangent_to_parallel(u0, m);
  s.du = std::cos(phi) / std::sqrt(m.e(u0));
  s.dv = std::sin(phi) / m.profile().h(u0);
  return s;
}

Trajectory integrate(const GeodesicState& initial, const MetricCoefficients& m,
                     double t_end, double tol) {
  return integrate(initial, m, t_end, tol, IntegrateOptions{});
}

Trajectory integrate(const GeodesicState& initial, const MetricCoefficients& m,
                     double t_end, double tol, const IntegrateOptions& opts) {
  if (!(tol > 0)) throw DomainError("tol", "must be positive");
  if (!(t_end > initial.t)) throw DomainError("t_end", "must exceed the initial time");
  const Interval dom = m.profile().domain();
  if (!(initial.u > dom.lo && initial.u < dom.hi)) {
    throw DomainError("u", "initial state must be interior");
  }
  if (std::abs(speed_sq(initial, m) - 1) > 1e-12) {
    throw DomainError("initial", "state is not unit speed");
  }

  Trajectory tr;
  tr.slant = slant_of(initial, m);
  auto& diag = tr.diagnostics;
  if (opts.record_states) tr.states.push_back(initial);

  // Tangent launch on a geodesic parallel: the solution is u = u0 exactly.
  // Integrating it would only amplify rounding in h'(u0) into fake turns.
  const ProfileCurve& prof = m.profile();
  if (initial.du == 0 && std::abs(prof.dh(initial.u)) < prof.crit_tol()) {
    const double span = t_end - initial.t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span)));
    for (long i = 1; i <= n && opts.record_states; ++i) {
      const double ts = i == n ? t_end : initial.t + span * static_cast<double>(i) / n;
      tr.states.push_back({ts, initial.u, initial.v + (ts - initial.t) * initial.dv, 0,
                           initial.dv});
    }
    diag.max_speed_drift = std::abs(speed_sq(initial, m) - 1);
    diag.accepted_steps = n;
    return tr;
  }

  const Rhs rhs(m);

  const double atol = tol, rtol = tol;
  const int dv_sign0 = sign(initial.dv);
  int du_sign = sign(initial.du);

  auto scale = [&](const Vec& a, const Vec& b, int i) {
    return atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double t = initial.t;
  Vec y{initial.u, initial.v, initial.du, initial.dv};
  Vec k1, k2, k3, k4, k5, k6, k7, ys, y1;
  if (!rhs(y, k1)) throw DomainError("u", "initial state must be interior");

  // Initial step guess.
  double h;
  {
    double dnf = 0, dny = 0;
    for (int i = 0; i < 4; ++i) {
      const double sk = atol + rtol * std::abs(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, t_end - t);
    for (int i = 0; i < 4; ++i) ys[i] = y[i] + h * k1[i];
    Vec f1;
    double der2 = 0;
    if (rhs(ys, f1)) {
      for (int i = 0; i < 4; ++i) {
        const double sk = atol + rtol * std::abs(y[i]);
        der2 += ((f1[i] - k1[i]) / sk) * ((f1[i] - k1[i]) / sk);
      }
      der2 = std::sqrt(der2) / h;
    }
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3)
                                     : std::pow(0.01 / der12, 0.2);
    h = std::min({100 * h, h1, t_end - t});
  }

  constexpr double beta = 0.04, safe = 0.9;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 5.0, facc2 = 0.1;
  double facold = 1e-4;
  bool last_rejected = false;

  auto record = [&](const Vec& s, double ts) {
    const GeodesicState st{ts, s[0], s[1], s[2], s[3]};
    diag.max_speed_drift = std::max(diag.max_speed_drift, std::abs(speed_sq(st, m) - 1));
    diag.max_slant_drift =
        std::max(diag.max_slant_drift, std::abs(slant_of(st, m) - tr.slant));
    if (dv_sign0 != 0 && sign(s[3]) != dv_sign0) diag.dv_sign_changed = true;
    if (opts.record_states) tr.states.push_back(st);
  };

  while (t < t_end) {
    if (diag.accepted_steps + diag.rejected_steps >= opts.max_steps) {
      throw NumericError("step budget exhausted", t);
    }
    if (h < 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw NumericError("step size underflow at t = " + format_double(t), t);
    }
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;

    bool ok = true;
    auto stage = [&](Vec& out, auto&& combine) {
      if (!ok) return;
      for (int i = 0; i < 4; ++i) ys[i] = y[i] + h * combine(i);
      ok = rhs(ys, out);
    };
    stage(k2, [&](int i) { return a21 * k1[i]; });
    stage(k3, [&](int i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(k4, [&](int i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(k5, [&](int i) {
      return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
    });
    stage(k6, [&](int i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    if (ok) {
      for (int i = 0; i < 4; ++i) {
        y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                            a75 * k5[i] + a76 * k6[i]);
      }
      ok = rhs(y1, k7);
    }
    if (!ok) {
      // A stage left the domain; shrink and retry.
      h *= 0.25;
      ++diag.rejected_steps;
      last_rejected = true;
      continue;
    }

    double err = 0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double r = ei / scale(y, y1, i);
      err += r * r;
    }
    err = std::sqrt(err / 4);

    const double fac11 = std::pow(err, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = h / fac;

    if (err > 1) {
      h /= std::min(facc1, fac11 / safe);
      ++diag.rejected_steps;
      last_rejected = true;
      continue;
    }

    facold = std::max(err, 1e-4);
    ++diag.accepted_steps;
    const double t_new = last ? t_end : t + h;

    // Turning points: sign change of du inside the step.
    const int s1 = sign(y1[2]);
    bool stop = false;
    if (du_sign != 0 && s1 != 0 && s1 != du_sign) {
      Dense dense;
      for (int i = 0; i < 4; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        dense.r1[i] = y[i];
        dense.r2[i] = ydiff;
        dense.r3[i] = bspl;
        dense.r4[i] = ydiff - h * k7[i] - bspl;
        dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                           d6 * k6[i] + d7 * k7[i]);
      }
      double lo = 0, hi = 1;
      while (h * (hi - lo) > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (sign(dense.at(2, mid)) == du_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double th = 0.5 * (lo + hi);
      diag.turning_points.push_back(
          {t + h * th, dense.at(0, th), dense.at(1, th), du_sign > 0});
      if (opts.stop_after_turning_points > 0 &&
          static_cast<int>(diag.turning_points.size()) >=
              opts.stop_after_turning_points) {
        Vec ye;
        for (int i = 0; i < 4; ++i) ye[i] = dense.at(i, th);
        record(ye, t + h * th);
        stop = true;
      }
    }
    if (s1 != 0) du_sign = s1;
    if (stop) break;

    y = y1;
    k1 = k7;
    t = t_new;
    record(y, t);

    if (y[0] - dom.lo < opts.pole_guard || dom.hi - y[0] < opts.pole_guard) {
      diag.pole_approach = true;
      break;
    }
    if (last_rejected) hnew = std::min(hnew, h);
    last_rejected = false;
    h = hnew;
  }
  return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const MetricCoefficients& m) {
  os << "t,u,v,du,dv,slant_drift,speed_drift\n";
  for (const auto& s : tr.states) {
    os << format_double(s.t) << ',' << format_double(s.u) << ','
       << format_double(s.v) << ',' << format_double(s.du) << ','
       << format_double(s.dv) << ','
       << format_double(std::abs(slant_of(s, m) - tr.slant)) << ','
       << format_double(std::abs(speed_sq(s, m) - 1)) << '\n';
  }
}

}  // namespace revgeo
