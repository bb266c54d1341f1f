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

// Independent reference computations used by the tests. Nothing here calls
// the quadrature, root finding or integration code under test.

#ifndef REVGEO_TESTS_ORACLES_HPP_
#define REVGEO_TESTS_ORACLES_HPP_

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2 * std::numbers::pi;

// Period for a metric E(u) du^2 + sin^2 u dv^2, launch x < pi/2 with the
// mirror point pi - x as right boundary (E symmetric about pi/2 is NOT
// assumed). Substituting cos u = cos x cos(theta) turns the singular integral
// into int_0^pi 2 sin x sqrtE(u) / sin^2 u d(theta), which is smooth and
// periodic in theta, so the trapezoid rule converges geometrically.
inline double sin_profile_period(const std::function<double(double)>& sqrt_e,
                                 double x, int n = 4000) {
  const double cx = std::cos(x), sx = std::sin(x);
  auto f = [&](double th) {
    const double c = cx * std::cos(th);
    const double u = std::acos(c);
    return 2 * sx * sqrt_e(u) / (1 - c * c);
  };
  double sum = 0.5 * (f(0) + f(kPi));
  for (int i = 1; i < n; ++i) sum += f(kPi * i / n);
  return sum * kPi / n;
}

inline double midpoint(const std::function<double(double)>& f, double a, double b,
                       long n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0;
  for (long i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

// First u > u1 where h falls back to h(u1), by a uniform scan of n cells
// and linear interpolation inside the bracketing cell.
inline double first_crossing(const std::function<double(double)>& h, double u1,
                             double hi, long n) {
  const double c = h(u1);
  const double dx = (hi - u1) / static_cast<double>(n);
  double prev_u = u1, prev_f = 0;
  bool left_start = false;
  for (long i = 1; i <= n; ++i) {
    const double u = u1 + dx * static_cast<double>(i);
    const double f = h(u) - c;
    if (!left_start) {
      left_start = f > 0;
    } else if (f <= 0) {
      return prev_u + dx * prev_f / (prev_f - f);
    }
    prev_u = u;
    prev_f = f;
  }
  return hi;
}

// Two-bump builtin in closed form (independent transcription).
inline double twobump_h(double u) {
  const double w = std::cos(u) * std::cos(u);
  return std::sin(u) * (72 + 36 * w + 27 * w * w + 40 * w * w * w) / 175;
}

// Values computed offline with mpmath at 40 digits (bisection roots,
// tanh-sinh split at the critical points), rounded to 17 digits.
namespace twobump {
inline constexpr double kMax1 = 0.91173829096848769;
inline constexpr double kMax2 = 2.2298543626213054;
inline constexpr double kMaxH = 0.4129313462496656;
inline constexpr double kNeckH = 72.0 / 175;  // h(pi/2)
inline constexpr double kLevelA = 0.79428653466612986;  // h(a) = h(pi/2), a < max1
inline constexpr double kLevelA2 = 2.3473061189236635;  // same level, a2 > max2
inline constexpr double kPhi0p3 = 14.405260967241666;
inline constexpr double kPhi0p6 = 33.800928535174485;
inline constexpr double kPhi0p85 = 28.81375724747619;
inline constexpr double kPhi1p2 = 50.536695862225869;  // mirrored launch
inline constexpr double kPhi1p9 = 60.88444115491675;
inline constexpr double kB1at0p85 = 0.99804877670499637;
inline constexpr double kB0at1p2 = 0.80010854419724164;
inline constexpr double kB1at1p9 = 2.344248641986904;
inline constexpr double kPhiAminus1e5 = 1374.8491052095797;
inline constexpr double kPhiAminus1e7 = 6251.5027194977144;
inline constexpr double kPhiAplus1e7 = 1576.3852717623782;
}  // namespace twobump

}  // namespace oracle

#endif  // REVGEO_TESTS_ORACLES_HPP_
