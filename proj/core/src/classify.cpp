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

#include "revgeo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numeric.hpp"
#include "revgeo/error.hpp"
#include "revgeo/io.hpp"

namespace revgeo {
namespace {

// Two levels closer than this count as equal (tangency to a critical parallel).
double level_tol(double c) {
  return 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c));
}

void require_interior(double u, const ProfileCurve& p, const char* field) {
  const Interval d = p.domain();
  if (!(u > d.lo && u < d.hi)) {
    throw DomainError(field, "must lie strictly inside (" + format_double(d.lo) +
                                 ", " + format_double(d.hi) + ")");
  }
}

// First point right of `from` where h drops to level c, walking the census.
double walk_right(double from, double c, const ProfileCurve& p) {
  auto f = [&p, c](double u) { return p.h(u) - c; };
  double prev = from;
  for (const auto& cp : p.critical_points()) {
    if (cp.u <= from) continue;
    if (cp.kind == CriticalKind::min) {
      if (std::abs(cp.h - c) <= level_tol(c)) return cp.u;
      if (cp.h < c) return detail::bisect_root(f, prev, cp.u);
    }
    prev = cp.u;
  }
  return detail::bisect_root(f, prev, p.domain().hi);
}

double walk_left(double from, double c, const ProfileCurve& p) {
  auto f = [&p, c](double u) { return p.h(u) - c; };
  double prev = from;
  const auto crit = p.critical_points();
  for (auto it = crit.rbegin(); it != crit.rend(); ++it) {
    if (it->u >= from) continue;
    if (it->kind == CriticalKind::min) {
      if (std::abs(it->h - c) <= level_tol(c)) return it->u;
      if (it->h < c) return detail::bisect_root(f, it->u, prev);
    }
    prev = it->u;
  }
  return detail::bisect_root(f, p.domain().lo, prev);
}

// Nearest admissible-interval endpoint to u and its description.
struct Endpoint {
  double at = 0;
  EndpointKind kind = EndpointKind::pole;
  double target = 0;
};

Endpoint nearest_endpoint(const AdmissibleSet& set, double u) {
  Endpoint best;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& iv : set.intervals()) {
    if (std::abs(u - iv.lo) < dist) {
      dist = std::abs(u - iv.lo);
      best = {iv.lo, iv.lo_kind, iv.lo_target};
    }
    if (std::abs(u - iv.hi) < dist) {
      dist = std::abs(u - iv.hi);
      best = {iv.hi, iv.hi_kind, iv.hi_target};
    }
  }
  return best;
}

// Launch from a left boundary b0 (h'(b0) > 0) that sits within the
// near-boundary band of an asymptote endpoint: report the limiting geodesic.
GeodesicClassification limiting_asymptotic(double u1, const Endpoint& e,
                                           const ProfileCurve& p, double b1_side,
                                           double tol) {
  GeodesicClassification out;
  out.u1 = u1;
  out.near_boundary = true;
  if (e.target > e.at) {
    // Level point: the geodesic spirals onto the min parallel at `target`.
    out.boundary = {std::min(u1, b1_side), e.target};
    out.variant = GeodesicVariant::asymptotic;
  } else {
    // Just right of a min: leaves that parallel and comes back to level.
    const double b1 = walk_right(e.target, p.h(e.target), p);
    out.boundary = {e.target, b1};
    out.variant = std::abs(p.dh(b1)) <= tol ? GeodesicVariant::bi_asymptotic
                                                     : GeodesicVariant::asymptotic;
  }
  return out;
}

}  // namespace

Membership AdmissibleSet::membership(double u1) const {
  Membership m;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < iv_.size(); ++i) {
    const auto& iv = iv_[i];
    const double d = std::min(std::abs(u1 - iv.lo), std::abs(u1 - iv.hi));
    if (u1 > iv.lo && u1 < iv.hi) {
      m.inside = true;
      m.interval = static_cast<int>(i);
      m.near_boundary = d < kNearBoundary;
      return m;
    }
    if (d < dist) {
      dist = d;
      m.interval = static_cast<int>(i);
    }
  }
  m.near_boundary = dist < kNearBoundary;
  if (!m.near_boundary) m.interval = -1;
  return m;
}

double right_boundary(double u1, const ProfileCurve& p) {
  require_interior(u1, p, "u1");
  if (!(p.dh(u1) > 0)) throw DomainError("u1", "right_boundary needs h'(u1) > 0");
  return walk_right(u1, p.h(u1), p);
}

double left_boundary(double u1, const ProfileCurve& p) {
  require_interior(u1, p, "u1");
  if (!(p.dh(u1) < 0)) throw DomainError("u1", "left_boundary needs h'(u1) < 0");
  return walk_left(u1, p.h(u1), p);
}

AdmissibleSet admissible_set(const ProfileCurve& p) {
  const auto crit = p.critical_points();
  const Interval d = p.domain();
  std::vector<AdmissibleInterval> out;
  for (std::size_t j = 0; j < crit.size(); ++j) {
    if (crit[j].kind != CriticalKind::max) continue;
    const bool from_pole = j == 0;
    const double lo = from_pole ? d.lo : crit[j - 1].u;
    const double h_lo = from_pole ? 0.0 : crit[j - 1].h;
    const double top = crit[j].u, h_top = crit[j].h;

    // Levels of later minima that a launch in (lo, top) reaches tangentially.
    struct Cut {
      double at;
      double target;
    };
    std::vector<Cut> cuts;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = j + 1; k < crit.size(); ++k) {
      if (crit[k].kind != CriticalKind::min) continue;
      const double hm = crit[k].h;
      if (hm < lowest && hm < h_top && hm > h_lo) {
        const double a = detail::bisect_root(
            [&p, hm](double u) { return p.h(u) - hm; }, lo, top);
        cuts.push_back({a, crit[k].u});
      }
      lowest = std::min(lowest, hm);
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const Cut& x, const Cut& y) { return x.at < y.at; });

    AdmissibleInterval cur;
    cur.lo = lo;
    cur.lo_kind = from_pole ? EndpointKind::pole : EndpointKind::asymptote;
    cur.lo_target = lo;
    for (const auto& cut : cuts) {
      cur.hi = cut.at;
      cur.hi_kind = EndpointKind::asymptote;
      cur.hi_target = cut.target;
      if (cur.hi > cur.lo) out.push_back(cur);
      cur = AdmissibleInterval{};
      cur.lo = cut.at;
      cur.lo_kind = EndpointKind::asymptote;
      cur.lo_target = cut.target;
    }
    cur.hi = top;
    cur.hi_kind = EndpointKind::parallel;
    cur.hi_target = top;
    if (cur.hi > cur.lo) out.push_back(cur);
  }
  return AdmissibleSet(std::move(out));
}

GeodesicClassification classify_from_launch(double u1, const ProfileCurve& p) {
  return classify_from_launch(u1, p, p.crit_tol());
}

GeodesicClassification classify_from_launch(double u1, const ProfileCurve& p,
                                            double tol) {
  require_interior(u1, p, "u1");
  if (!(tol >= 0)) throw DomainError("crit_tol", "must be non-negative");
  const double slope = p.dh(u1);
  GeodesicClassification out;
  out.u1 = u1;
  if (std::abs(slope) <= tol) {
    out.boundary = {u1, u1};
    out.variant = GeodesicVariant::parallel;
    return out;
  }

  const AdmissibleSet set = admissible_set(p);
  const double c = p.h(u1);
  double b0, b1;
  if (slope > 0) {
    b0 = u1;
    const Membership mem = set.membership(b0);
    if (mem.near_boundary) {
      const Endpoint e = nearest_endpoint(set, b0);
      if (e.kind == EndpointKind::asymptote) return limiting_asymptotic(u1, e, p, b0, tol);
    }
    b1 = walk_right(u1, c, p);
    out.near_boundary = mem.near_boundary;
  } else {
    b1 = u1;
    b0 = walk_left(u1, c, p);
    if (std::abs(p.dh(b0)) > tol) {
      const Membership mem = set.membership(b0);
      if (mem.near_boundary) {
        const Endpoint e = nearest_endpoint(set, b0);
        if (e.kind == EndpointKind::asymptote) {
          auto r = limiting_asymptotic(u1, e, p, b0, tol);
          if (e.target > e.at) r.boundary = {b0, u1};
          return r;
        }
      }
      out.near_boundary = mem.near_boundary;
    }
  }
  out.boundary = {b0, b1};
  const bool crit0 = std::abs(p.dh(b0)) <= tol;
  const bool crit1 = std::abs(p.dh(b1)) <= tol;
  if (crit0 && crit1) {
    out.variant = GeodesicVariant::bi_asymptotic;
  } else if (crit0 || crit1) {
    out.variant = GeodesicVariant::asymptotic;
  } else {
    out.variant = GeodesicVariant::oscillating;
  }
  return out;
}

bool has_asymptotic(const ProfileCurve& p) {
  for (const auto& cp : p.critical_points()) {
    if (cp.kind != CriticalKind::max) return true;
  }
  return false;
}

const char* to_string(GeodesicVariant v) {
  switch (v) {
    case GeodesicVariant::meridian: return "meridian";
    case GeodesicVariant::parallel: return "parallel";
    case GeodesicVariant::oscillating: return "oscillating";
    case GeodesicVariant::asymptotic: return "asymptotic";
    case GeodesicVariant::bi_asymptotic: return "bi_asymptotic";
  }
  return "?";
}

}  // namespace revgeo
