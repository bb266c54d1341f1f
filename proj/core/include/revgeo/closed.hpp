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

#ifndef REVGEO_CLOSED_HPP_
#define REVGEO_CLOSED_HPP_

#include <iosfwd>
#include <optional>
#include <vector>

#include "revgeo/period.hpp"
#include "revgeo/profile.hpp"

namespace revgeo {

struct RationalWitness {
  long r = 0;  // turns in v
  long s = 0;  // oscillations
  double residual = 0;  // |phi - 2 (r/s) pi|
};

enum class ClosedKind { oscillating, parallel, meridian_class };

struct ClosedGeodesicRecord {
  double u1 = 0;
  RationalWitness witness;
  double phi = 0;
  ClosedKind kind = ClosedKind::oscillating;
  // Summary record standing for a whole interval on which phi is constant.
  bool continuum = false;
  // Admissible-interval index for oscillating records, -1 otherwise.
  int interval = -1;
};

struct FindClosedOptions {
  int s_max = 50;
  int n_scan = 200;
  double tol = 1e-6;
  double quad_tol = 1e-10;
  double flatness_tol = 1e-7;
  double x_tol = 1e-10;
  // Scan grid keeps this fraction of each interval away from its ends.
  double clip = 1e-3;
  // Targets with r/s above this are not searched. Near an asymptote the
  // period is unbounded and every rational would be hit.
  double max_turns = 20;
};

std::optional<RationalWitness> detect_rational(const PeriodValue& phi, int s_max,
                                               double tol);

// Sorted by (kind, u1, s, r).
std::vector<ClosedGeodesicRecord> find_closed(const ProfileCurve& p, int s_max,
                                              int n_scan, double tol);
std::vector<ClosedGeodesicRecord> find_closed(const ProfileCurve& p,
                                              const FindClosedOptions& opts);

struct VoidReport {
  enum class Kind { void_candidate, non_void, constant_rational };
  Kind kind = Kind::non_void;
  // mean(phi) / 2 pi for flat sweeps (snapped to n/2 for constant_rational).
  double c = 0;
  double mean = 0;
  double range = 0;
  bool unbounded = false;
};

VoidReport void_diagnosis(const ProfileCurve& p, int n_scan,
                          double flatness_tol = 1e-7);

const char* to_string(ClosedKind k);
const char* to_string(VoidReport::Kind k);

// JSON array of records.
void write_census_json(std::ostream& os, const std::vector<ClosedGeodesicRecord>& recs);

}  // namespace revgeo

#endif  // REVGEO_CLOSED_HPP_
