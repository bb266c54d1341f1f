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

#include "revgeo/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "numeric.hpp"
#include "revgeo/error.hpp"
#include "revgeo/spline.hpp"

namespace revgeo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCensusCells = 4096;
constexpr double kAnalyticCritTol = 1e-9;
constexpr double kSplineCritTol = 1e-6;
constexpr int kAxialCells = 256;
// Half-width of the window around r = pi/2 where canonicalize interpolates
// instead of dividing two small numbers.
constexpr double kSeamWindow = 2e-3;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double one_minus_sq(double d) { return std::max(0.0, (1 - d) * (1 + d)); }

class AnalyticModel final : public ProfileModel {
 public:
  explicit AnalyticModel(AnalyticH spec) : spec_(std::move(spec)) {
    auto dh = spec_.dh;
    axial_ = detail::CumulativeIntegral(
        [dh](double u) { return std::sqrt(one_minus_sq(dh(u))); },
        detail::CumulativeIntegral::uniform(spec_.domain.lo, spec_.domain.hi,
                                            kAxialCells));
  }
  std::string name() const override { return spec_.name; }
  Interval domain() const override { return spec_.domain; }
  double h(double u) const override { return spec_.h(u); }
  double dh(double u) const override { return spec_.dh(u); }
  double d2h(double u) const override { return spec_.d2h(u); }
  bool has_axial() const override { return true; }
  double g(double u) const override { return axial_(u); }
  double dg(double u) const override {
    return std::sqrt(one_minus_sq(spec_.dh(u)));
  }
  double metric_e(double) const override { return 1; }
  double metric_de(double) const override { return 0; }
  double sqrt_e(double) const override { return 1; }
  bool arclength() const override { return true; }
  double crit_tol() const override { return kAnalyticCritTol; }

 private:
  AnalyticH spec_;
  detail::CumulativeIntegral axial_;
};

class SplineModel final : public ProfileModel {
 public:
  explicit SplineModel(const TableH& t)
      : spline_(t.u, t.h, end_slope_of(t, false), end_slope_of(t, true)),
        slope_n_(end_slope_of(t, false)),
        slope_s_(end_slope_of(t, true)) {
    // Interpolating a smooth pole (|h'| = 1) overshoots by O(dx^4); accept
    // that as long as the arclength defect stays below 1e-9.
    const double m = spline_.max_abs_derivative();
    if (m > 1 + 5e-10) {
      throw DomainError("h", "|h'| reaches " + num(m) +
                                 " > 1; not realizable by an arclength profile");
    }
    const CubicSpline* s = &spline_;
    std::vector<double> nodes(t.u.begin(), t.u.end());
    axial_ = detail::CumulativeIntegral(
        [s](double u) { return std::sqrt(one_minus_sq(s->derivative(u))); },
        std::move(nodes));
  }
  std::string name() const override { return "table"; }
  Interval domain() const override { return {spline_.lo(), spline_.hi()}; }
  double h(double u) const override { return spline_(u); }
  double dh(double u) const override { return spline_.derivative(u); }
  double d2h(double u) const override { return spline_.second_derivative(u); }
  bool has_axial() const override { return true; }
  double g(double u) const override { return axial_(u); }
  double dg(double u) const override {
    return std::sqrt(one_minus_sq(spline_.derivative(u)));
  }
  double metric_e(double) const override { return 1; }
  double metric_de(double) const override { return 0; }
  double sqrt_e(double) const override { return 1; }
  bool arclength() const override { return true; }
  double crit_tol() const override { return kSplineCritTol; }
  double end_slope(bool south) const override {
    return south ? slope_s_ : slope_n_;
  }

 private:
  static double end_slope_of(const TableH& t, bool south) {
    if (t.u.size() < 4 || t.u.size() != t.h.size()) {
      throw DomainError("u", "table needs at least 4 samples and equal lengths");
    }
    return four_point_end_slope(t.u, t.h, south);
  }

  CubicSpline spline_;
  double slope_n_;
  double slope_s_;
  detail::CumulativeIntegral axial_;
};

// h = sin u with a canonical metric; optionally carries the embedding g.
class MetricModel final : public ProfileModel {
 public:
  MetricModel(CanonicalMetric m, bool embed) : m_(std::move(m)), embed_(embed) {
    if (embed_) {
      for (int i = 0; i <= kCensusCells; ++i) {
        const double t = kPi * i / kCensusCells;
        const double c = std::cos(t);
        const double gap = m_.e(t) - c * c;
        if (gap < -1e-12) {
          throw DomainError("E", "non-embeddable: E(" + num(t) + ") = " +
                                     num(m_.e(t)) + " < cos^2");
        }
      }
      const CanonicalMetric* mp = &m_;
      axial_ = detail::CumulativeIntegral(
          [mp](double t) {
            const double c = std::cos(t);
            return std::sqrt(std::max(0.0, mp->e(t) - c * c));
          },
          detail::CumulativeIntegral::uniform(0, kPi, kAxialCells));
    }
  }
  std::string name() const override { return m_.name(); }
  Interval domain() const override { return {0, kPi}; }
  double h(double u) const override { return std::sin(u); }
  double dh(double u) const override { return std::cos(u); }
  double d2h(double u) const override { return -std::sin(u); }
  bool has_axial() const override { return embed_; }
  double g(double u) const override { return axial_(u); }
  double dg(double u) const override {
    const double c = std::cos(u);
    return std::sqrt(std::max(0.0, m_.e(u) - c * c));
  }
  double metric_e(double u) const override { return m_.e(u); }
  double metric_de(double u) const override { return m_.de(u); }
  double sqrt_e(double u) const override { return m_.sqrt_e(u); }
  bool arclength() const override { return false; }
  double crit_tol() const override { return kAnalyticCritTol; }

 private:
  CanonicalMetric m_;
  bool embed_;
  detail::CumulativeIntegral axial_;
};

class ScaledModel final : public ProfileModel {
 public:
  ScaledModel(ProfileCurve base, double lambda)
      : base_(std::move(base)), k_(lambda) {}
  std::string name() const override { return base_.name() + "*" + num(k_); }
  Interval domain() const override {
    return {k_ * base_.domain().lo, k_ * base_.domain().hi};
  }
  double h(double u) const override { return k_ * base_.h(u / k_); }
  double dh(double u) const override { return base_.dh(u / k_); }
  double d2h(double u) const override { return base_.d2h(u / k_) / k_; }
  bool has_axial() const override { return base_.has_axial(); }
  double g(double u) const override { return k_ * base_.g(u / k_); }
  double dg(double u) const override { return base_.dg(u / k_); }
  double metric_e(double u) const override { return base_.metric_e(u / k_); }
  double metric_de(double u) const override {
    return base_.metric_de(u / k_) / k_;
  }
  double sqrt_e(double u) const override { return base_.sqrt_e(u / k_); }
  bool arclength() const override { return base_.arclength(); }
  double crit_tol() const override { return base_.crit_tol(); }
  double end_slope(bool south) const override { return base_.end_slope(south); }

 private:
  ProfileCurve base_;
  double k_;
};

std::vector<CriticalPoint> census(const ProfileModel& m, Interval d) {
  std::vector<CriticalPoint> out;
  int last_sign = 0;
  double last_x = d.lo;
  for (int i = 0; i <= kCensusCells; ++i) {
    const double x = i == kCensusCells
                         ? d.hi
                         : d.lo + (d.hi - d.lo) * i / kCensusCells;
    const double v = m.dh(x);
    const int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      const double u = detail::bisect_root(
          [&m](double t) { return m.dh(t); }, last_x, x);
      if (u > d.lo && u < d.hi) {
        out.push_back({u, m.h(u),
                       last_sign > 0 ? CriticalKind::max : CriticalKind::min});
      }
    }
    last_sign = s;
    last_x = x;
  }
  return out;
}

std::optional<int> integer_order(double sin_phi) {
  const double inv = 1 / sin_phi;
  const double m = std::round(inv);
  if (m >= 1 && std::abs(inv - m) < kIntegerTolerance) {
    return static_cast<int>(m);
  }
  return std::nullopt;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0);
}

double Polynomial::operator()(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * i);
  return Polynomial(std::move(d));
}

ScalarMap Polynomial::as_map() const {
  Polynomial p = *this;
  Polynomial dp = derivative();
  return {[p](double x) { return p(x); }, [dp](double x) { return dp(x); }};
}

CanonicalMetric::CanonicalMetric(std::string name, std::function<double(double)> e,
                                 std::function<double(double)> de,
                                 std::function<double(double)> sqrt_e,
                                 std::optional<Generator> generator, double scale)
    : name_(std::move(name)),
      e_(std::move(e)),
      de_(std::move(de)),
      sqrt_e_(std::move(sqrt_e)),
      generator_(std::move(generator)),
      scale_(scale) {}

double CanonicalMetric::sqrt_e(double r) const {
  return sqrt_e_ ? sqrt_e_(r) : std::sqrt(e_(r));
}

std::optional<double> CanonicalMetric::c_hint() const {
  if (generator_) return generator_->c;
  return std::nullopt;
}

double ProfileModel::sqrt_e(double u) const { return std::sqrt(metric_e(u)); }

double ProfileModel::end_slope(bool south) const {
  return dh(south ? domain().hi : domain().lo);
}

ProfileCurve::ProfileCurve(std::shared_ptr<const ProfileModel> model)
    : model_(std::move(model)), domain_(model_->domain()) {
  if (!(domain_.hi > domain_.lo)) {
    throw DomainError("u", "empty parameter domain");
  }
  double scale = 0;
  for (int i = 1; i < kCensusCells; ++i) {
    const double u = domain_.lo + domain_.length() * i / kCensusCells;
    const double hu = model_->h(u);
    if (!(hu > 0)) {
      throw DomainError("h", "h vanishes in the interior near u = " + num(u));
    }
    scale = std::max(scale, hu);
    if (model_->arclength() && std::abs(model_->dh(u)) > 1 + 1e-12) {
      throw DomainError("h", "|h'(" + num(u) +
                                 ")| > 1; not realizable by an arclength profile");
    }
  }
  const double end_tol = 1e-10 * std::max(1.0, scale);
  if (std::abs(model_->h(domain_.lo)) > end_tol ||
      std::abs(model_->h(domain_.hi)) > end_tol) {
    throw DomainError("h", "h must vanish at both ends of the domain");
  }
  census_ = std::make_shared<const std::vector<CriticalPoint>>(
      census(*model_, domain_));
}

double ProfileCurve::g(double u) const {
  if (!model_->has_axial()) {
    throw DomainError("g", "profile '" + name() + "' has no axial coordinate");
  }
  return model_->g(u);
}

double ProfileCurve::dg(double u) const {
  if (!model_->has_axial()) {
    throw DomainError("g", "profile '" + name() + "' has no axial coordinate");
  }
  return model_->dg(u);
}

ProfileCurve make_profile_from_h(const HSpec& spec) {
  if (const auto* a = std::get_if<AnalyticH>(&spec)) {
    if (!a->h || !a->dh || !a->d2h) {
      throw DomainError("h", "analytic profile needs h, h' and h''");
    }
    return ProfileCurve(std::make_shared<AnalyticModel>(*a));
  }
  return ProfileCurve(std::make_shared<SplineModel>(std::get<TableH>(spec)));
}

AnalyticH sphere_h() {
  return {"sphere",
          {0, kPi},
          [](double u) { return std::sin(u); },
          [](double u) { return std::cos(u); },
          [](double u) { return -std::sin(u); }};
}

AnalyticH twobump_h() {
  // h = sin u * Q(cos^2 u) with Q(w) = (72 + 36 w + 27 w^2 + 40 w^3) / 175,
  // i.e. h' = cos^5 u (1.6 cos^2 u - 0.6). The derivatives are kept in
  // factored form so that the sixth-order flat minimum at pi/2 is resolved
  // without cancellation.
  return {"twobump",
          {0, kPi},
          [](double u) {
            const double w = std::cos(u) * std::cos(u);
            return std::sin(u) * (72 + w * (36 + w * (27 + w * 40))) / 175;
          },
          [](double u) {
            const double c = std::cos(u);
            const double c2 = c * c;
            return c2 * c2 * c * (1.6 * c2 - 0.6);
          },
          [](double u) {
            const double c = std::cos(u);
            const double c2 = c * c;
            return std::sin(u) * c2 * c2 * (3.0 - 11.2 * c2);
          }};
}

CanonicalMetric metric_from_generator(double c, ScalarMap f, std::string name) {
  if (!(c > 0) || !std::isfinite(c)) {
    throw DomainError("c", "must be a positive finite number");
  }
  if (!f.value || !f.derivative) {
    throw DomainError("f", "generator needs value and derivative");
  }
  for (int i = 0; i <= kCensusCells; ++i) {
    const double x = -1 + 2.0 * i / kCensusCells;
    const double s = c + f.value(x);
    if (!(s > 1e-12 * c)) {
      throw DomainError("f", "c + f(x) must stay positive; fails at x = " + num(x));
    }
  }
  auto fv = f.value;
  auto fd = f.derivative;
  return CanonicalMetric(
      std::move(name),
      [c, fv](double r) {
        const double s = c + fv(std::cos(r));
        return s * s;
      },
      [c, fv, fd](double r) {
        const double x = std::cos(r);
        return -2 * (c + fv(x)) * fd(x) * std::sin(r);
      },
      [c, fv](double r) { return c + fv(std::cos(r)); },
      CanonicalMetric::Generator{c, std::move(f)});
}

CanonicalMetric from_constant_period_family(double c, ScalarMap f, std::string name) {
  if (!f.value) throw DomainError("f", "generator missing");
  for (int i = 0; i <= 256; ++i) {
    const double x = static_cast<double>(i) / 256;
    const double a = f.value(x), b = f.value(-x);
    if (std::abs(a + b) > 1e-12 * (1 + std::abs(a) + std::abs(b))) {
      throw DomainError("f", "generator is not odd: f(" + num(x) + ") + f(" +
                                 num(-x) + ") = " + num(a + b));
    }
  }
  return metric_from_generator(c, std::move(f), std::move(name));
}

CanonicalMetric ellipsoid_metric(double a) {
  if (!(a > 0)) throw DomainError("a", "must be positive");
  const double a2 = a * a;
  return CanonicalMetric(
      "ellipsoid(" + num(a) + ")",
      [a2](double r) {
        const double c = std::cos(r), s = std::sin(r);
        return c * c + a2 * s * s;
      },
      [a2](double r) { return 2 * std::sin(r) * std::cos(r) * (a2 - 1); },
      {});
}

CanonicalMetric canonicalize(const ProfileCurve& p) {
  const auto crit = p.critical_points();
  if (crit.empty()) {
    throw DomainError("h", "no interior critical point");
  }
  if (crit.size() > 1) {
    const auto& extra = crit[1];
    throw DomainError("h", "expected one critical point; extra " +
                               std::string(to_string(extra.kind)) +
                               " at u = " + num(extra.u));
  }
  const CriticalPoint top = crit[0];
  if (top.kind != CriticalKind::max) {
    throw DomainError("h", "critical point at u = " + num(top.u) +
                               " is not a maximum");
  }
  const double h2 = p.d2h(top.u);
  if (!(h2 < -p.crit_tol())) {
    throw DomainError("h", "degenerate maximum at u = " + num(top.u) +
                               " (h'' = " + num(h2) + ")");
  }
  const double lambda = top.h;
  const Interval d = p.domain();

  auto direct = [p, lambda, top, d](double r) {
    const double target = lambda * std::sin(r);
    const bool north = r <= kPi / 2;
    const double u = detail::bisect_root(
        [&p, target](double t) { return p.h(t) - target; },
        north ? d.lo : top.u, north ? top.u : d.hi);
    const double c = std::cos(r);
    const double s = p.dh(u);
    return p.metric_e(u) * c * c / (s * s);
  };
  const double mid = -p.metric_e(top.u) / (lambda * h2);
  const double left = direct(kPi / 2 - kSeamWindow);
  const double right = direct(kPi / 2 + kSeamWindow);

  auto e = [direct, mid, left, right](double r) {
    const double x = r - kPi / 2;
    if (std::abs(x) < kSeamWindow) {
      const double w = kSeamWindow;
      // Quadratic through the seam value and the two window edges.
      return mid + x * (right - left) / (2 * w) +
             x * x * (right - 2 * mid + left) / (2 * w * w);
    }
    return direct(r);
  };
  auto de = [e](double r) {
    const double step = 1e-4;
    const double a = std::max(0.0, r - step), b = std::min(kPi, r + step);
    return (e(b) - e(a)) / (b - a);
  };
  return CanonicalMetric("canonical(" + p.name() + ")", e, de, {}, std::nullopt,
                         lambda);
}

ProfileCurve embed_profile(const CanonicalMetric& m) {
  return ProfileCurve(std::make_shared<MetricModel>(m, true));
}

ProfileCurve intrinsic_profile(const CanonicalMetric& m) {
  return ProfileCurve(std::make_shared<MetricModel>(m, false));
}

ProfileCurve scale_profile(const ProfileCurve& p, double lambda) {
  if (!(lambda > 0)) throw DomainError("lambda", "scale must be positive");
  return ProfileCurve(std::make_shared<ScaledModel>(p, lambda));
}

ConeAngles cone_angles(const ProfileCurve& p) {
  const Interval d = p.domain();
  const double sn = p.end_slope(false);
  const double ss = p.end_slope(true);
  if (!(sn > 0)) {
    throw DomainError("h", "h'(u_N) = " + num(sn) + " <= 0; not transverse to the axis");
  }
  if (!(ss < 0)) {
    throw DomainError("h", "h'(u_S) = " + num(ss) + " >= 0; not transverse to the axis");
  }
  auto angle = [](double v, const char* pole) {
    if (v > 1 + 1e-9) {
      throw DomainError("h", std::string("sin phi at ") + pole + " = " + num(v) +
                                 " exceeds 1");
    }
    return std::min(v, 1.0);
  };
  ConeAngles a;
  a.sin_phi_n = angle(sn / p.sqrt_e(d.lo), "N");
  a.sin_phi_s = angle(-ss / p.sqrt_e(d.hi), "S");
  a.order_n = integer_order(a.sin_phi_n);
  a.order_s = integer_order(a.sin_phi_s);
  return a;
}

OrbifoldStatus orbifold_status(const ConeAngles& a) {
  OrbifoldStatus s;
  s.order_n = a.order_n;
  s.order_s = a.order_s;
  if (!a.order_n || !a.order_s) {
    s.kind = OrbifoldKind::not_orbifold;
  } else if (*a.order_n == 1 && *a.order_s == 1) {
    s.kind = OrbifoldKind::smooth;
  } else if (*a.order_n == *a.order_s) {
    s.kind = OrbifoldKind::good_orbifold;
  } else {
    s.kind = OrbifoldKind::bad_orbifold;
    s.shape = (*a.order_n == 1 || *a.order_s == 1) ? BadOrbifoldShape::teardrop
                                                   : BadOrbifoldShape::unequal;
  }
  return s;
}

const char* to_string(CriticalKind k) {
  return k == CriticalKind::max ? "max" : "min";
}

const char* to_string(OrbifoldKind k) {
  switch (k) {
    case OrbifoldKind::smooth: return "smooth";
    case OrbifoldKind::good_orbifold: return "good_orbifold";
    case OrbifoldKind::bad_orbifold: return "bad_orbifold";
    case OrbifoldKind::not_orbifold: return "not_orbifold";
  }
  return "?";
}

const char* to_string(BadOrbifoldShape s) {
  switch (s) {
    case BadOrbifoldShape::none: return "none";
    case BadOrbifoldShape::teardrop: return "teardrop";
    case BadOrbifoldShape::unequal: return "unequal";
  }
  return "?";
}

}  // namespace revgeo
