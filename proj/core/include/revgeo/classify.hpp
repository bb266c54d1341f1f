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

#ifndef REVGEO_CLASSIFY_HPP_
#define REVGEO_CLASSIFY_HPP_

#include <optional>
#include <vector>

#include "revgeo/profile.hpp"

namespace revgeo {

struct BoundaryPair {
  double b0 = 0;
  double b1 = 0;
};

enum class GeodesicVariant { meridian, parallel, oscillating, asymptotic, bi_asymptotic };

struct GeodesicClassification {
  double u1 = 0;
  BoundaryPair boundary;
  GeodesicVariant variant = GeodesicVariant::parallel;
  // Launch within kNearBoundary of an admissible-interval endpoint.
  bool near_boundary = false;
};

// What bounds an admissible interval on one side.
enum class EndpointKind {
  pole,        // u_N: geodesics degenerate towards the meridian
  parallel,    // a local max of h: oscillations shrink onto that parallel
  asymptote,   // launches here spiral into the parallel at `target`
};

struct AdmissibleInterval {
  double lo = 0;
  double hi = 0;
  EndpointKind lo_kind = EndpointKind::pole;
  EndpointKind hi_kind = EndpointKind::parallel;
  // Critical point approached asymptotically from an asymptote endpoint.
  double lo_target = 0;
  double hi_target = 0;
};

struct Membership {
  bool inside = false;
  bool near_boundary = false;
  int interval = -1;
};

class AdmissibleSet {
 public:
  AdmissibleSet() = default;
  explicit AdmissibleSet(std::vector<AdmissibleInterval> iv) : iv_(std::move(iv)) {}

  const std::vector<AdmissibleInterval>& intervals() const { return iv_; }
  // Open-interval membership plus the near-boundary flag.
  Membership membership(double u1) const;
  bool contains(double u1) const { return membership(u1).inside; }

 private:
  std::vector<AdmissibleInterval> iv_;
};

inline constexpr double kNearBoundary = 1e-8;

// Smallest u > u1 with h(u) = h(u1); requires h'(u1) > 0.
double right_boundary(double u1, const ProfileCurve& p);
// Largest u < u1 with h(u) = h(u1); requires h'(u1) < 0.
double left_boundary(double u1, const ProfileCurve& p);

AdmissibleSet admissible_set(const ProfileCurve& p);

GeodesicClassification classify_from_launch(double u1, const ProfileCurve& p);
// Same with an explicit threshold for the h' = 0 decisions.
GeodesicClassification classify_from_launch(double u1, const ProfileCurve& p,
                                            double crit_tol);

bool has_asymptotic(const ProfileCurve& p);

const char* to_string(GeodesicVariant v);

}  // namespace revgeo

#endif  // REVGEO_CLASSIFY_HPP_
