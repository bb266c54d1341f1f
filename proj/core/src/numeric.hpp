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

#ifndef REVGEO_SRC_NUMERIC_HPP_
#define REVGEO_SRC_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace revgeo::detail {

// Root of f on [a, b] given a sign change (or zero) at the ends, refined
// until the bracket cannot shrink further in double precision.
template <class F>
double bisect_root(F&& f, double a, double b) {
  double fa = f(a);
  if (fa == 0) return a;
  const double fb = f(b);
  if (fb == 0) return b;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double fm = f(m);
    if (fm == 0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double gk_integrate(const std::function<double(double)>& f, double a,
                           double b) {
  if (a == b) return 0;
  // Cells are short and integrands smooth; the depth cap only matters where
  // rounding noise keeps the error estimate from settling.
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 5, 1e-12);
}

// Running integral F(x) = int_lo^x f on a fixed node grid; evaluation adds one
// partial cell.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(std::function<double(double)> f, std::vector<double> nodes)
      : f_(std::move(f)), nodes_(std::move(nodes)), cum_(nodes_.size(), 0.0) {
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      cum_[i] = cum_[i - 1] + gk_integrate(f_, nodes_[i - 1], nodes_[i]);
    }
  }

  static std::vector<double> uniform(double lo, double hi, int cells) {
    std::vector<double> x(cells + 1);
    for (int i = 0; i <= cells; ++i) x[i] = lo + (hi - lo) * i / cells;
    x.back() = hi;
    return x;
  }

  double operator()(double x) const {
    if (x <= nodes_.front()) return 0;
    if (x >= nodes_.back()) return cum_.back();
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double left = nodes_[i], right = nodes_[i + 1];
    // Integrate from the nearer node to keep the partial piece short.
    if (x - left <= right - x) return cum_[i] + gk_integrate(f_, left, x);
    return cum_[i + 1] - gk_integrate(f_, x, right);
  }

 private:
  std::function<double(double)> f_;
  std::vector<double> nodes_;
  std::vector<double> cum_;
};

}  // namespace revgeo::detail

#endif  // REVGEO_SRC_NUMERIC_HPP_
