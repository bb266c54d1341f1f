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

#include "revgeo/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revgeo/error.hpp"

namespace revgeo {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y,
                         double slope_lo, double slope_hi)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) {
    throw DomainError("u", "spline needs at least 4 samples and equal lengths");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw DomainError("u", "knots must be strictly increasing (index " +
                                 std::to_string(i) + ")");
    }
  }

  // Tridiagonal system for the knot second derivatives, clamped ends.
  std::vector<double> a(n), b(n), c(n), d(n);
  const double h0 = x_[1] - x_[0];
  b[0] = 2 * h0;
  c[0] = h0;
  d[0] = 6 * ((y_[1] - y_[0]) / h0 - slope_lo);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    a[i] = hl;
    b[i] = 2 * (hl + hr);
    c[i] = hr;
    d[i] = 6 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  const double hn = x_[n - 1] - x_[n - 2];
  a[n - 1] = hn;
  b[n - 1] = 2 * hn;
  d[n - 1] = 6 * (slope_hi - (y_[n - 1] - y_[n - 2]) / hn);

  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }
}

std::size_t CubicSpline::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = x - x_[i];
  const double slope =
      (y_[i + 1] - y_[i]) / h - h * (2 * m_[i] + m_[i + 1]) / 6;
  return y_[i] + t * (slope + t * (m_[i] / 2 + t * (m_[i + 1] - m_[i]) / (6 * h)));
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = x - x_[i];
  const double slope =
      (y_[i + 1] - y_[i]) / h - h * (2 * m_[i] + m_[i + 1]) / 6;
  return slope + t * (m_[i] + t * (m_[i + 1] - m_[i]) / (2 * h));
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  return m_[i] + (x - x_[i]) * (m_[i + 1] - m_[i]) / h;
}

double CubicSpline::max_abs_derivative() const {
  double best = 0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double h = x_[i + 1] - x_[i];
    best = std::max({best, std::abs(derivative(x_[i])),
                     std::abs(derivative(x_[i + 1]))});
    // Interior extremum of the quadratic S' where S'' = 0.
    if ((m_[i] < 0) != (m_[i + 1] < 0) && m_[i] != m_[i + 1]) {
      const double t = -m_[i] * h / (m_[i + 1] - m_[i]);
      if (t > 0 && t < h) best = std::max(best, std::abs(derivative(x_[i] + t)));
    }
  }
  return best;
}

double four_point_end_slope(std::span<const double> x, std::span<const double> y,
                            bool at_end) {
  const std::size_t n = x.size();
  double xs[4], ys[4];
  for (int k = 0; k < 4; ++k) {
    const std::size_t i = at_end ? n - 1 - k : static_cast<std::size_t>(k);
    xs[k] = x[i];
    ys[k] = y[i];
  }
  // Derivative of the Lagrange cubic at xs[0].
  double sum = 0;
  for (int j = 0; j < 4; ++j) {
    double w;
    if (j == 0) {
      w = 0;
      for (int k = 1; k < 4; ++k) w += 1 / (xs[0] - xs[k]);
    } else {
      double num = 1, den = 1;
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        den *= xs[j] - xs[k];
        if (k != 0) num *= xs[0] - xs[k];
      }
      w = num / den;
    }
    sum += w * ys[j];
  }
  return sum;
}

}  // namespace revgeo
