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

#ifndef REVGEO_SPLINE_HPP_
#define REVGEO_SPLINE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace revgeo {

// Clamped cubic spline (C2) through strictly increasing knots.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y, double slope_lo,
              double slope_hi);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  std::span<const double> knots() const { return x_; }
  std::span<const double> values() const { return y_; }

  // Exact max of |S'| over the whole range (S' is piecewise quadratic).
  double max_abs_derivative() const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at knots
};

// Derivative at the first (at_end = false) or last sample of the cubic
// interpolating the four samples nearest that end.
double four_point_end_slope(std::span<const double> x, std::span<const double> y,
                            bool at_end);

}  // namespace revgeo

#endif  // REVGEO_SPLINE_HPP_
