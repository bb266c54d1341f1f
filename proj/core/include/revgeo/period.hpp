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

#ifndef REVGEO_PERIOD_HPP_
#define REVGEO_PERIOD_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "revgeo/profile.hpp"

namespace revgeo {

class PeriodValue {
 public:
  static PeriodValue finite(double value, double err_est, bool near_boundary = false);
  static PeriodValue infinite(bool near_boundary);

  bool is_finite() const { return finite_; }
  // +inf for the infinite variant.
  double value() const;
  double err_est() const { return err_; }
  bool near_boundary() const { return near_boundary_; }

 private:
  bool finite_ = true;
  double value_ = 0;
  double err_ = 0;
  bool near_boundary_ = false;
};

inline constexpr double kDefaultPeriodTol = 1e-10;

// Change in v over one oscillation of the geodesic launched tangent to the
// parallel at u1. Launches with h'(u1) < 0 are treated as right boundaries.
PeriodValue period(double u1, const ProfileCurve& p, double tol = kDefaultPeriodTol);

struct SweepSample {
  double u1 = 0;
  PeriodValue phi;
};

struct PeriodSweep {
  std::vector<SweepSample> samples;
  double tol = kDefaultPeriodTol;
  std::string surface;
  Interval interval;
};

// n Chebyshev nodes of [lo, hi] (endpoints excluded), increasing.
std::vector<double> chebyshev_nodes(Interval iv, int n);

PeriodSweep period_sweep(Interval iv, int n, const ProfileCurve& p,
                         double tol = kDefaultPeriodTol);
// Same, at caller-chosen strictly increasing points.
PeriodSweep period_sweep_at(std::vector<double> u1s, const ProfileCurve& p,
                            double tol = kDefaultPeriodTol);

// Delta v between the launch and the second turning point, by integration.
double period_oracle_ode(double u1, const ProfileCurve& p, double tol = 1e-11);

// Header u1,phi,phi_over_2pi,err_est,flags.
void write_sweep_csv(std::ostream& os, const PeriodSweep& s);

}  // namespace revgeo

#endif  // REVGEO_PERIOD_HPP_
