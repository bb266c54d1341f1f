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

#include "revgeo/closed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <tuple>

#include <boost/math/tools/toms748_solve.hpp>

#include "revgeo/classify.hpp"
#include "revgeo/error.hpp"
#include "revgeo/io.hpp"
#include "revgeo/parallel.hpp"

namespace revgeo {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<double> scan_grid(const AdmissibleInterval& iv, int n, double clip) {
  const double margin = clip * (iv.hi - iv.lo);
  const double lo = iv.lo + margin, hi = iv.hi - margin;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
  }
  return x;
}

std::vector<PeriodValue> scan(const std::vector<double>& xs, const ProfileCurve& p,
                              double quad_tol) {
  std::vector<PeriodValue> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = period(xs[i], p, quad_tol); });
  return out;
}

struct Job {
  std::size_t pair;
  long r;
  long s;
};

}  // namespace

std::optional<RationalWitness> detect_rational(const PeriodValue& phi, int s_max,
                                               double tol) {
  if (s_max < 1) throw DomainError("s_max", "must be at least 1");
  if (!(tol > 0)) throw DomainError("tol", "must be positive");
  if (!phi.is_finite()) return std::nullopt;
  const double x = phi.value() / kTwoPi;
  if (!(x > 0)) return std::nullopt;

  // Convergents p_k / q_k of the continued fraction of x.
  double a = std::floor(x);
  double frac = x - a;
  long p_prev = 1, q_prev = 0;
  long p = static_cast<long>(a), q = 1;
  for (int k = 0; k < 64; ++k) {
    if (q > s_max) break;
    if (p > 0 && std::abs(x - static_cast<double>(p) / q) < tol / kTwoPi) {
      const long g = std::gcd(p, q);
      RationalWitness w{p / g, q / g, 0};
      w.residual = std::abs(phi.value() - kTwoPi * static_cast<double>(w.r) / w.s);
      return w;
    }
    if (frac < 1e-15) break;
    const double inv = 1 / frac;
    a = std::floor(inv);
    frac = inv - a;
    if (a > 1e12) break;
    const long ai = static_cast<long>(a);
    const long pn = ai * p + p_prev, qn = ai * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  return std::nullopt;
}

std::vector<ClosedGeodesicRecord> find_closed(const ProfileCurve& p, int s_max,
                                              int n_scan, double tol) {
  FindClosedOptions o;
  o.s_max = s_max;
  o.n_scan = n_scan;
  o.tol = tol;
  return find_closed(p, o);
}

std::vector<ClosedGeodesicRecord> find_closed(const ProfileCurve& p,
                                              const FindClosedOptions& o) {
  if (o.s_max < 1) throw DomainError("s_max", "must be at least 1");
  if (o.n_scan < 2) throw DomainError("n_scan", "must be at least 2");
  if (!(o.tol > 0)) throw DomainError("tol", "must be positive");
  if (!(o.max_turns > 0)) throw DomainError("max_turns", "must be positive");

  std::vector<ClosedGeodesicRecord> out;
  for (const auto& cp : p.critical_points()) {
    out.push_back({cp.u, {1, 1, 0}, kTwoPi, ClosedKind::parallel, false, -1});
  }
  try {
    if (orbifold_status(cone_angles(p)).kind == OrbifoldKind::smooth) {
      out.push_back({p.domain().lo, {1, 1, 0}, kTwoPi, ClosedKind::meridian_class,
                     false, -1});
    }
  } catch (const DomainError&) {
    // Non-transverse poles: no closed meridian to report.
  }

  const AdmissibleSet set = admissible_set(p);
  std::vector<ClosedGeodesicRecord> osc;
  for (std::size_t k = 0; k < set.intervals().size(); ++k) {
    const auto& iv = set.intervals()[k];
    const std::vector<double> xs = scan_grid(iv, o.n_scan, o.clip);
    const std::vector<PeriodValue> phis = scan(xs, p, o.quad_tol);

    bool all_finite = true;
    double lo_v = phis[0].value(), hi_v = lo_v, sum = 0;
    for (const auto& v : phis) {
      all_finite = all_finite && v.is_finite();
      lo_v = std::min(lo_v, v.value());
      hi_v = std::max(hi_v, v.value());
      sum += v.value();
    }
    if (all_finite && hi_v - lo_v < o.flatness_tol) {
      const double mean = sum / static_cast<double>(phis.size());
      if (auto w = detect_rational(PeriodValue::finite(mean, 0), o.s_max, o.tol)) {
        osc.push_back({xs[xs.size() / 2], *w, mean, ClosedKind::oscillating, true,
                       static_cast<int>(k)});
      }
      continue;
    }

    std::vector<Job> jobs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!phis[i].is_finite() || !phis[i + 1].is_finite()) continue;
      const double a = std::min(phis[i].value(), phis[i + 1].value());
      const double b = std::min(std::max(phis[i].value(), phis[i + 1].value()),
                                o.max_turns * kTwoPi);
      for (long s = 1; s <= o.s_max; ++s) {
        const long r_lo = static_cast<long>(std::ceil(s * a / kTwoPi));
        const long r_hi = static_cast<long>(std::floor(s * b / kTwoPi));
        for (long r = std::max(1L, r_lo); r <= r_hi; ++r) {
          if (std::gcd(r, s) == 1) jobs.push_back({i, r, s});
        }
      }
    }

    std::vector<std::optional<ClosedGeodesicRecord>> found(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t j) {
      const Job& job = jobs[j];
      const double target = kTwoPi * static_cast<double>(job.r) / job.s;
      auto f = [&](double x) { return period(x, p, o.quad_tol).value() - target; };
      const double xa = xs[job.pair], xb = xs[job.pair + 1];
      const double fa = phis[job.pair].value() - target;
      const double fb = phis[job.pair + 1].value() - target;
      double root;
      if (fa == 0) {
        root = xa;
      } else if (fb == 0) {
        root = xb;
      } else if ((fa < 0) == (fb < 0)) {
        return;
      } else {
        std::uintmax_t iters = 200;
        const double xtol = o.x_tol;
        auto r = boost::math::tools::toms748_solve(
            f, xa, xb, fa, fb,
            [xtol](double lo, double hi) { return std::abs(hi - lo) < xtol; }, iters);
        root = 0.5 * (r.first + r.second);
        // Where phi is steep, x_tol alone can leave the residual above tol.
        if (!(std::abs(f(root)) < o.tol) && r.second > r.first) {
          const double ga = f(r.first), gb = f(r.second);
          if ((ga < 0) != (gb < 0)) {
            iters = 200;
            auto fine = boost::math::tools::toms748_solve(
                f, r.first, r.second, ga, gb, boost::math::tools::eps_tolerance<double>(),
                iters);
            root = 0.5 * (fine.first + fine.second);
          }
        }
      }
      const PeriodValue phi = period(root, p, o.quad_tol);
      const double residual = std::abs(phi.value() - target);
      if (phi.is_finite() && residual < o.tol) {
        found[j] = ClosedGeodesicRecord{root, {job.r, job.s, residual}, phi.value(),
                                        ClosedKind::oscillating, false,
                                        static_cast<int>(k)};
      }
    });

    std::vector<ClosedGeodesicRecord> here;
    for (auto& f : found) {
      if (f) here.push_back(*f);
    }
    std::sort(here.begin(), here.end(), [](const auto& x, const auto& y) {
      return std::tie(x.witness.r, x.witness.s, x.u1) <
             std::tie(y.witness.r, y.witness.s, y.u1);
    });
    for (const auto& rec : here) {
      const bool dup = !osc.empty() && osc.back().interval == rec.interval &&
                       osc.back().witness.r == rec.witness.r &&
                       osc.back().witness.s == rec.witness.s &&
                       std::abs(osc.back().u1 - rec.u1) < 1e-8;
      if (!dup) osc.push_back(rec);
    }
  }
  out.insert(out.end(), osc.begin(), osc.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::make_tuple(static_cast<int>(x.kind), x.u1, x.witness.s, x.witness.r) <
           std::make_tuple(static_cast<int>(y.kind), y.u1, y.witness.s, y.witness.r);
  });
  return out;
}

VoidReport void_diagnosis(const ProfileCurve& p, int n_scan, double flatness_tol) {
  if (n_scan < 2) throw DomainError("n_scan", "must be at least 2");
  const AdmissibleSet set = admissible_set(p);
  VoidReport rep;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
  std::size_t count = 0;
  for (const auto& iv : set.intervals()) {
    for (const auto& v : scan(scan_grid(iv, n_scan, 1e-3), p, kDefaultPeriodTol)) {
      if (!v.is_finite()) rep.unbounded = true;
      lo = std::min(lo, v.value());
      hi = std::max(hi, v.value());
      sum += v.value();
      ++count;
    }
  }
  if (count == 0 || rep.unbounded) {
    rep.kind = VoidReport::Kind::non_void;
    rep.range = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.mean = sum / static_cast<double>(count);
  rep.range = hi - lo;
  if (rep.range >= flatness_tol) {
    rep.kind = VoidReport::Kind::non_void;
    return rep;
  }
  rep.c = rep.mean / kTwoPi;
  const double twice = std::round(2 * rep.c);
  if (twice >= 1 && std::abs(rep.c - twice / 2) < 1e-6) {
    rep.kind = VoidReport::Kind::constant_rational;
    rep.c = twice / 2;
  } else {
    rep.kind = VoidReport::Kind::void_candidate;
  }
  return rep;
}

const char* to_string(ClosedKind k) {
  switch (k) {
    case ClosedKind::oscillating: return "oscillating";
    case ClosedKind::parallel: return "parallel";
    case ClosedKind::meridian_class: return "meridian_class";
  }
  return "?";
}

const char* to_string(VoidReport::Kind k) {
  switch (k) {
    case VoidReport::Kind::void_candidate: return "void_candidate";
    case VoidReport::Kind::non_void: return "non_void";
    case VoidReport::Kind::constant_rational: return "constant_rational";
  }
  return "?";
}

void write_census_json(std::ostream& os, const std::vector<ClosedGeodesicRecord>& recs) {
  JsonOut j(os);
  j.begin_array();
  for (const auto& r : recs) {
    j.begin_object();
    j.key("kind").value(to_string(r.kind));
    j.key("u1").value(r.u1);
    j.key("r").value(r.witness.r);
    j.key("s").value(r.witness.s);
    j.key("phi").value(r.phi);
    j.key("residual").value(r.witness.residual);
    j.key("continuum").value(r.continuum);
    j.key("interval").value(r.interval);
    j.end_object();
  }
  j.end_array();
}

}  // namespace revgeo
