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

#ifndef REVGEO_GEODESIC_HPP_
#define REVGEO_GEODESIC_HPP_

#include <iosfwd>
#include <vector>

#include "revgeo/profile.hpp"

namespace revgeo {

// First fundamental form of the surface: E du^2 + G dv^2, F = 0.
class MetricCoefficients {
 public:
  explicit MetricCoefficients(ProfileCurve p) : p_(std::move(p)) {}

  double e(double u) const { return p_.metric_e(u); }
  double e_u(double u) const { return p_.metric_de(u); }
  double g(double u) const {
    const double h = p_.h(u);
    return h * h;
  }
  double g_u(double u) const { return 2 * p_.h(u) * p_.dh(u); }
  const ProfileCurve& profile() const { return p_; }

 private:
  ProfileCurve p_;
};

struct GeodesicState {
  double t = 0;
  double u = 0;
  double v = 0;
  double du = 0;
  double dv = 0;
};

struct StateDerivative {
  double u = 0;
  double v = 0;
  double du = 0;
  double dv = 0;
};

struct TurningPoint {
  double t = 0;
  double u = 0;
  double v = 0;
  // True where u reaches a local maximum (right boundary side).
  bool upper = false;
};

struct TrajectoryDiagnostics {
  double max_speed_drift = 0;
  double max_slant_drift = 0;
  std::vector<TurningPoint> turning_points;
  bool pole_approach = false;
  bool dv_sign_changed = false;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

struct Trajectory {
  std::vector<GeodesicState> states;
  double slant = 0;
  TrajectoryDiagnostics diagnostics;
};

struct IntegrateOptions {
  double pole_guard = 1e-6;
  long max_steps = 2'000'000;
  // Stop right after this many turning points (0 = run to t_end).
  int stop_after_turning_points = 0;
  bool record_states = true;
};

StateDerivative geodesic_rhs(const GeodesicState& s, const MetricCoefficients& m);

Trajectory integrate(const GeodesicState& initial, const MetricCoefficients& m,
                     double t_end, double tol);
Trajectory integrate(const GeodesicState& initial, const MetricCoefficients& m,
                     double t_end, double tol, const IntegrateOptions& opts);

double slant_of(const GeodesicState& s, const MetricCoefficients& m);
double speed_sq(const GeodesicState& s, const MetricCoefficients& m);

GeodesicState launch_tangent_to_parallel(double u0, const MetricCoefficients& m);

// Unit-speed state at u0 making angle phi with the meridian direction
// (phi = pi/2 is tangent to the parallel).
GeodesicState launch_at_angle(double u0, double phi, const MetricCoefficients& m);

// Header t,u,v,du,dv,slant_drift,speed_drift.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const MetricCoefficients& m);

}  // namespace revgeo

#endif  // REVGEO_GEODESIC_HPP_
