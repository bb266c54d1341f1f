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

#ifndef REVGEO_PROFILE_HPP_
#define REVGEO_PROFILE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace revgeo {

struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
};

// Real function with derivative access.
struct ScalarMap {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

// Polynomial in ascending powers: c[0] + c[1] x + ...
class Polynomial {
 public:
  explicit Polynomial(std::vector<double> coeffs);
  double operator()(double x) const;
  Polynomial derivative() const;
  ScalarMap as_map() const;
  std::span<const double> coefficients() const { return c_; }

 private:
  std::vector<double> c_;
};

enum class CriticalKind { max, min };

struct CriticalPoint {
  double u = 0;
  double h = 0;
  CriticalKind kind = CriticalKind::max;
};

// Radius function given in closed form, with exact derivatives.
struct AnalyticH {
  std::string name;
  Interval domain;
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::function<double(double)> d2h;
};

// Sampled radius function; interpolated by a clamped cubic spline.
struct TableH {
  std::vector<double> u;
  std::vector<double> h;
};

using HSpec = std::variant<AnalyticH, TableH>;

// Metric E(r) dr^2 + sin^2 r dv^2 on [0, pi].
class CanonicalMetric {
 public:
  // E(r) = (c + f(cos r))^2.
  struct Generator {
    double c = 1;
    ScalarMap f;
  };

  CanonicalMetric(std::string name, std::function<double(double)> e,
                  std::function<double(double)> de,
                  std::function<double(double)> sqrt_e = {},
                  std::optional<Generator> generator = std::nullopt,
                  double scale = 1);

  double e(double r) const { return e_(r); }
  double de(double r) const { return de_(r); }
  double sqrt_e(double r) const;

  const std::string& name() const { return name_; }
  std::optional<double> c_hint() const;
  const std::optional<Generator>& generator() const { return generator_; }
  // Radius factor divided out by canonicalize; 1 for metrics built directly.
  double scale() const { return scale_; }

 private:
  std::string name_;
  std::function<double(double)> e_;
  std::function<double(double)> de_;
  std::function<double(double)> sqrt_e_;
  std::optional<Generator> generator_;
  double scale_ = 1;
};

// Backend behind a ProfileCurve. Implementations must be immutable.
class ProfileModel {
 public:
  virtual ~ProfileModel() = default;
  virtual std::string name() const = 0;
  virtual Interval domain() const = 0;
  virtual double h(double u) const = 0;
  virtual double dh(double u) const = 0;
  virtual double d2h(double u) const = 0;
  virtual bool has_axial() const = 0;
  virtual double g(double u) const = 0;
  virtual double dg(double u) const = 0;
  virtual double metric_e(double u) const = 0;
  virtual double metric_de(double u) const = 0;
  virtual double sqrt_e(double u) const;
  // False when the arclength check is waived (metric-based profiles).
  virtual bool arclength() const = 0;
  virtual double crit_tol() const = 0;
  // One-sided dh at the north (south = false) or south pole.
  virtual double end_slope(bool south) const;
};

// Generating curve (g(u), h(u)) of a spherical surface of revolution.
// Cheap to copy; the underlying model is shared and immutable.
class ProfileCurve {
 public:
  explicit ProfileCurve(std::shared_ptr<const ProfileModel> model);

  std::string name() const { return model_->name(); }
  Interval domain() const { return domain_; }
  double h(double u) const { return model_->h(u); }
  double dh(double u) const { return model_->dh(u); }
  double d2h(double u) const { return model_->d2h(u); }
  bool has_axial() const { return model_->has_axial(); }
  // Throws DomainError when has_axial() is false.
  double g(double u) const;
  double dg(double u) const;
  double metric_e(double u) const { return model_->metric_e(u); }
  double metric_de(double u) const { return model_->metric_de(u); }
  double sqrt_e(double u) const { return model_->sqrt_e(u); }
  bool arclength() const { return model_->arclength(); }
  double crit_tol() const { return model_->crit_tol(); }
  double end_slope(bool south) const { return model_->end_slope(south); }

  // Interior critical points of h, increasing in u.
  std::span<const CriticalPoint> critical_points() const { return *census_; }
  const ProfileModel& model() const { return *model_; }

 private:
  std::shared_ptr<const ProfileModel> model_;
  Interval domain_;
  std::shared_ptr<const std::vector<CriticalPoint>> census_;
};

struct ConeAngles {
  double sin_phi_n = 1;
  double sin_phi_s = 1;
  std::optional<int> order_n;
  std::optional<int> order_s;
};

enum class OrbifoldKind { smooth, good_orbifold, bad_orbifold, not_orbifold };
enum class BadOrbifoldShape { none, teardrop, unequal };

struct OrbifoldStatus {
  OrbifoldKind kind = OrbifoldKind::not_orbifold;
  BadOrbifoldShape shape = BadOrbifoldShape::none;
  std::optional<int> order_n;
  std::optional<int> order_s;
};

inline constexpr double kIntegerTolerance = 1e-6;

ProfileCurve make_profile_from_h(const HSpec& spec);

AnalyticH sphere_h();
// Three interior critical points (max, flat min, max), |h'| <= 1.
AnalyticH twobump_h();

// Checks c + f > 0 only.
CanonicalMetric metric_from_generator(double c, ScalarMap f,
                                      std::string name = "family");
// Also checks that f is odd on [-1, 1].
CanonicalMetric from_constant_period_family(double c, ScalarMap f,
                                           std::string name = "family");
// Oblate/prolate test metric E = cos^2 r + a^2 sin^2 r (h = sin r, g = a cos).
CanonicalMetric ellipsoid_metric(double a);

CanonicalMetric canonicalize(const ProfileCurve& p);

// h = sin u plus g(u) = int_0^u sqrt(E - cos^2); requires E >= cos^2.
ProfileCurve embed_profile(const CanonicalMetric& m);
// h = sin u with metric E and no axial coordinate; always valid.
ProfileCurve intrinsic_profile(const CanonicalMetric& m);
// Homothety u -> lambda u, (g, h) -> lambda (g, h).
ProfileCurve scale_profile(const ProfileCurve& p, double lambda);

ConeAngles cone_angles(const ProfileCurve& p);
OrbifoldStatus orbifold_status(const ConeAngles& a);

const char* to_string(CriticalKind k);
const char* to_string(OrbifoldKind k);
const char* to_string(BadOrbifoldShape s);

}  // namespace revgeo

#endif  // REVGEO_PROFILE_HPP_
