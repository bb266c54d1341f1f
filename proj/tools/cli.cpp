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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "revgeo/classify.hpp"
#include "revgeo/closed.hpp"
#include "revgeo/error.hpp"
#include "revgeo/geodesic.hpp"
#include "revgeo/io.hpp"
#include "revgeo/period.hpp"
#include "revgeo/profile.hpp"
#include "revgeo/surface_spec.hpp"

namespace revgeo::cli {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct RunConfig {
  std::string surface;
  std::string spec;
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::optional<double> crit_tol;
  std::uint64_t seed = 0;

  double u1 = 0;
  int n = 0;
  std::optional<double> lo, hi;
  int interval = 0;
  double clip = 0.05;
  bool near_asymptote = false;
  bool random = false;
  int s_max = 50;
  int n_scan = 200;
  double max_turns = 20;
  double t_end = 10;
  std::optional<double> angle;
  std::vector<double> state;
};

// Routes data to --out (or the data stream) and summaries to the other one.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!cfg.out.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.out);
      if (!*file_) throw SpecError("out", "cannot open '" + cfg.out + "' for writing");
    }
  }
  std::ostream& data() { return file_ ? *file_ : out_; }
  std::ostream& note() { return file_ ? out_ : err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
};

Surface resolve_surface(const RunConfig& cfg) {
  if (cfg.surface.empty() == cfg.spec.empty()) {
    throw SpecError("surface", "give exactly one of --surface or --spec");
  }
  return cfg.surface.empty() ? surface_from_file(cfg.spec) : builtin_surface(cfg.surface);
}

bool json_format(const RunConfig& cfg, bool json_default) {
  return cfg.format.empty() ? json_default : cfg.format == "json";
}

int cmd_classify(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  const GeodesicClassification c =
      classify_from_launch(cfg.u1, s.profile, cfg.crit_tol.value_or(s.profile.crit_tol()));
  std::ostream& os = sink.data();
  if (json_format(cfg, true)) {
    JsonOut j(os);
    j.begin_object();
    j.key("u1").value(cfg.u1);
    j.key("b0").value(c.boundary.b0);
    j.key("b1").value(c.boundary.b1);
    j.key("variant").value(to_string(c.variant));
    j.key("flags").begin_array();
    if (c.near_boundary) j.value("near_boundary");
    j.end_array();
    j.end_object();
  } else {
    os << "u1,b0,b1,variant,flags\n"
       << format_double(cfg.u1) << ',' << format_double(c.boundary.b0) << ','
       << format_double(c.boundary.b1) << ',' << to_string(c.variant) << ','
       << (c.near_boundary ? "near_boundary" : "") << '\n';
  }
  return kOk;
}

std::vector<double> sweep_points(const RunConfig& cfg, const ProfileCurve& p,
                                 Interval& iv_out, std::string& mode) {
  if (cfg.n < 2) throw DomainError("n", "a sweep needs at least 2 samples");
  const AdmissibleSet set = admissible_set(p);
  const auto& ivs = set.intervals();
  if (cfg.near_asymptote) {
    // Geometric approach to the first asymptote endpoint.
    for (const auto& iv : ivs) {
      const bool at_hi = iv.hi_kind == EndpointKind::asymptote;
      const bool at_lo = iv.lo_kind == EndpointKind::asymptote;
      if (!at_hi && !at_lo) continue;
      const double e = at_hi ? iv.hi : iv.lo;
      const double d_max = std::min(1e-2, 0.25 * (iv.hi - iv.lo));
      const double d_min = 2e-8;
      std::vector<double> x;
      for (int k = 0; k < cfg.n; ++k) {
        const double d = d_max * std::pow(d_min / d_max, static_cast<double>(k) / (cfg.n - 1));
        x.push_back(at_hi ? e - d : e + d);
      }
      std::sort(x.begin(), x.end());
      iv_out = {x.front(), x.back()};
      mode = "near_asymptote";
      return x;
    }
    throw DomainError("near-asymptote", "surface has no asymptote endpoint");
  }
  Interval iv;
  if (cfg.lo || cfg.hi) {
    if (!cfg.lo || !cfg.hi) throw DomainError("lo", "--lo and --hi go together");
    iv = {*cfg.lo, *cfg.hi};
  } else {
    if (cfg.interval < 0 || cfg.interval >= static_cast<int>(ivs.size())) {
      throw DomainError("interval", "index out of range (surface has " +
                                        std::to_string(ivs.size()) + " intervals)");
    }
    const auto& a = ivs[static_cast<std::size_t>(cfg.interval)];
    iv = {a.lo + cfg.clip, a.hi - cfg.clip};
    if (!(iv.hi > iv.lo)) throw DomainError("clip", "clip leaves an empty interval");
  }
  const bool inside = std::any_of(ivs.begin(), ivs.end(), [&](const AdmissibleInterval& a) {
    return a.lo <= iv.lo && iv.hi <= a.hi && iv.lo < iv.hi;
  });
  if (!inside) {
    throw DomainError("interval", "[" + format_double(iv.lo) + ", " + format_double(iv.hi) +
                                      "] leaves the admissible set");
  }
  iv_out = iv;
  if (cfg.random) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
    std::vector<double> x(static_cast<std::size_t>(cfg.n));
    for (auto& v : x) v = dist(rng);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    mode = "random";
    return x;
  }
  mode = "chebyshev";
  return chebyshev_nodes(iv, cfg.n);
}

int cmd_period_sweep(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  const double tol = cfg.tol.value_or(kDefaultPeriodTol);
  Interval iv;
  std::string mode;
  const std::vector<double> x = sweep_points(cfg, s.profile, iv, mode);
  PeriodSweep sweep = period_sweep_at(x, s.profile, tol);
  sweep.surface = s.id;
  sweep.interval = iv;

  std::ostream& os = sink.data();
  if (json_format(cfg, false)) {
    JsonOut j(os);
    j.begin_array();
    for (const auto& smp : sweep.samples) {
      j.begin_object();
      j.key("u1").value(smp.u1);
      j.key("phi").value(smp.phi.value());
      j.key("phi_over_2pi").value(smp.phi.value() / kTwoPi);
      j.key("err_est").value(smp.phi.err_est());
      j.key("flags").begin_array();
      if (!smp.phi.is_finite()) j.value("infinite");
      if (smp.phi.near_boundary()) j.value("near_boundary");
      j.end_array();
      j.end_object();
    }
    j.end_array();
  } else {
    write_sweep_csv(os, sweep);
  }

  if (!cfg.out.empty()) {
    std::ofstream side(cfg.out + ".json");
    if (!side) throw SpecError("out", "cannot write sidecar '" + cfg.out + ".json'");
    JsonOut j(side);
    j.begin_object();
    j.key("surface").raw(s.spec_json);
    j.key("quad_tol").value(tol);
    j.key("n").value(static_cast<long long>(sweep.samples.size()));
    j.key("interval").begin_array().value(iv.lo).value(iv.hi).end_array();
    j.key("sampling").value(mode);
    if (mode == "random") j.key("seed").value(static_cast<long long>(cfg.seed));
    j.end_object();
  }

  double lo = INFINITY, hi = -INFINITY, sum = 0;
  for (const auto& smp : sweep.samples) {
    lo = std::min(lo, smp.phi.value());
    hi = std::max(hi, smp.phi.value());
    sum += smp.phi.value();
  }
  const double mean = sum / static_cast<double>(sweep.samples.size());
  const double range = hi - lo;
  sink.note() << "samples=" << sweep.samples.size() << " mean=" << format_double(mean)
              << " mean_over_2pi=" << format_double(mean / kTwoPi)
              << " range=" << format_double(range)
              << " flat=" << (std::isfinite(range) && range < 1e-7 ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_find_closed(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  FindClosedOptions o;
  o.s_max = cfg.s_max;
  o.n_scan = cfg.n_scan;
  o.max_turns = cfg.max_turns;
  o.tol = cfg.tol.value_or(1e-6);
  const auto recs = find_closed(s.profile, o);
  std::ostream& os = sink.data();
  if (json_format(cfg, true)) {
    write_census_json(os, recs);
  } else {
    os << "kind,u1,r,s,phi,residual,continuum,interval\n";
    for (const auto& r : recs) {
      os << to_string(r.kind) << ',' << format_double(r.u1) << ',' << r.witness.r << ','
         << r.witness.s << ',' << format_double(r.phi) << ','
         << format_double(r.witness.residual) << ',' << (r.continuum ? 1 : 0) << ','
         << r.interval << '\n';
    }
  }
  int osc = 0, par = 0, mer = 0, cont = 0;
  for (const auto& r : recs) {
    if (r.kind == ClosedKind::oscillating) ++osc;
    if (r.kind == ClosedKind::parallel) ++par;
    if (r.kind == ClosedKind::meridian_class) ++mer;
    if (r.continuum) ++cont;
  }
  sink.note() << "parallel=" << par << " oscillating=" << osc << " continuum=" << cont
              << " meridian_class=" << mer << '\n';
  return kOk;
}

int cmd_trace(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  const MetricCoefficients m(s.profile);
  GeodesicState init;
  if (!cfg.state.empty()) {
    if (cfg.state.size() != 4) throw DomainError("state", "expected u,v,du,dv");
    init = {0, cfg.state[0], cfg.state[1], cfg.state[2], cfg.state[3]};
  } else if (cfg.angle) {
    init = launch_at_angle(cfg.u1, *cfg.angle, m);
  } else {
    init = launch_tangent_to_parallel(cfg.u1, m);
  }
  const Trajectory tr = integrate(init, m, cfg.t_end, cfg.tol.value_or(1e-10));
  const auto& d = tr.diagnostics;

  std::ostream& os = sink.data();
  if (json_format(cfg, false)) {
    JsonOut j(os);
    j.begin_object();
    j.key("states").begin_array();
    for (const auto& st : tr.states) {
      j.begin_object();
      j.key("t").value(st.t).key("u").value(st.u).key("v").value(st.v);
      j.key("du").value(st.du).key("dv").value(st.dv);
      j.key("slant_drift").value(std::abs(slant_of(st, m) - tr.slant));
      j.key("speed_drift").value(std::abs(speed_sq(st, m) - 1));
      j.end_object();
    }
    j.end_array();
    j.key("summary").begin_object();
    j.key("slant").value(tr.slant);
    j.key("max_slant_drift").value(d.max_slant_drift);
    j.key("max_speed_drift").value(d.max_speed_drift);
    j.key("pole_approach").value(d.pole_approach);
    j.key("turning_points").begin_array();
    for (const auto& tp : d.turning_points) {
      j.begin_object().key("t").value(tp.t).key("u").value(tp.u).key("v").value(tp.v);
      j.key("side").value(tp.upper ? "b1" : "b0").end_object();
    }
    j.end_array();
    j.end_object();
    j.end_object();
  } else {
    write_trajectory_csv(os, tr, m);
    os << "# summary,slant=" << format_double(tr.slant)
       << ",max_slant_drift=" << format_double(d.max_slant_drift)
       << ",max_speed_drift=" << format_double(d.max_speed_drift)
       << ",turning_points=" << d.turning_points.size()
       << ",pole_approach=" << (d.pole_approach ? 1 : 0) << '\n';
    for (const auto& tp : d.turning_points) {
      os << "# turning_point,t=" << format_double(tp.t) << ",u=" << format_double(tp.u)
         << ",v=" << format_double(tp.v) << ",side=" << (tp.upper ? "b1" : "b0") << '\n';
    }
  }

  std::ostream& note = sink.note();
  note << "max_slant_drift=" << format_double(d.max_slant_drift)
       << " max_speed_drift=" << format_double(d.max_speed_drift)
       << " turning_points=" << d.turning_points.size();
  // Mean change in v between returns to the same boundary side.
  const auto& tp = d.turning_points;
  if (tp.size() >= 3) {
    const double dv = (tp[tp.size() - 1 - (tp.size() - 1) % 2].v - tp[0].v) /
                      static_cast<double>((tp.size() - 1) / 2);
    note << " delta_v_per_oscillation=" << format_double(dv)
         << " over_2pi=" << format_double(dv / kTwoPi);
  }
  note << '\n';
  if (d.pole_approach) {
    note << "error: trajectory reached the pole guard; output is partial\n";
    return kDomainError;
  }
  return kOk;
}

int cmd_orbifold(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  const ConeAngles a = cone_angles(s.profile);
  const OrbifoldStatus st = orbifold_status(a);
  std::ostream& os = sink.data();
  auto order = [](const std::optional<int>& o) { return o ? std::to_string(*o) : std::string(); };
  if (json_format(cfg, true)) {
    JsonOut j(os);
    j.begin_object();
    j.key("sin_phi_n").value(a.sin_phi_n);
    j.key("sin_phi_s").value(a.sin_phi_s);
    j.key("order_n");
    if (a.order_n) j.value(*a.order_n); else j.null();
    j.key("order_s");
    if (a.order_s) j.value(*a.order_s); else j.null();
    j.key("status").value(to_string(st.kind));
    j.key("shape").value(to_string(st.shape));
    j.end_object();
  } else {
    os << "sin_phi_n,sin_phi_s,order_n,order_s,status,shape\n"
       << format_double(a.sin_phi_n) << ',' << format_double(a.sin_phi_s) << ','
       << order(a.order_n) << ',' << order(a.order_s) << ',' << to_string(st.kind) << ','
       << to_string(st.shape) << '\n';
  }
  std::ostream& note = sink.note();
  if (st.kind == OrbifoldKind::bad_orbifold && st.shape == BadOrbifoldShape::teardrop) {
    note << "Z" << std::max(*st.order_n, *st.order_s) << "-teardrop (bad orbifold)\n";
  } else {
    note << to_string(st.kind) << '\n';
  }
  return kOk;
}

int cmd_embed(const RunConfig& cfg, Sink& sink) {
  const Surface s = resolve_surface(cfg);
  const ProfileCurve& p = s.profile;
  if (cfg.n < 2) throw DomainError("n", "need at least 2 points");
  if (!p.has_axial()) {
    throw DomainError("E", "surface '" + s.id + "' is not embeddable (E < cos^2 somewhere)");
  }
  const Interval d = p.domain();
  std::ostream& os = sink.data();
  const bool json = json_format(cfg, false);
  std::optional<JsonOut> j;
  if (json) {
    j.emplace(os);
    j->begin_array();
  } else {
    os << "u,g,h\n";
  }
  for (int i = 0; i < cfg.n; ++i) {
    const double u = i == cfg.n - 1 ? d.hi : d.lo + d.length() * i / (cfg.n - 1);
    if (json) {
      j->begin_object().key("u").value(u).key("g").value(p.g(u)).key("h").value(p.h(u));
      j->end_object();
    } else {
      os << format_double(u) << ',' << format_double(p.g(u)) << ',' << format_double(p.h(u))
         << '\n';
    }
  }
  if (json) j->end_array();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Geodesics on spherical surfaces of revolution", "revgeo"};
  app.require_subcommand(1);
  app.add_option("--surface", cfg.surface, "Builtin surface: sphere, tannery, void, twobump");
  app.add_option("--spec", cfg.spec, "Surface spec JSON file");
  app.add_option("--out", cfg.out, "Write data here instead of standard output");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", cfg.tol, "Tolerance (quadrature, integrator or detection)");
  app.add_option("--seed", cfg.seed, "Seed for randomized sampling");

  auto* classify = app.add_subcommand("classify", "Classify the geodesic launched at u1");
  classify->add_option("--u1", cfg.u1, "Launch parameter")->required();
  classify->add_option("--crit-tol", cfg.crit_tol,
                       "Threshold on |h'| for parallel/asymptote decisions");

  auto* sweep = app.add_subcommand("period-sweep", "Sample the period function");
  cfg.n = 100;
  sweep->add_option("--n", cfg.n, "Number of samples");
  sweep->add_option("--lo", cfg.lo, "Sweep start");
  sweep->add_option("--hi", cfg.hi, "Sweep end");
  sweep->add_option("--interval", cfg.interval, "Admissible interval index");
  sweep->add_option("--clip", cfg.clip, "Distance kept from the interval ends");
  sweep->add_flag("--near-asymptote", cfg.near_asymptote,
                  "Approach the first asymptote endpoint geometrically");
  sweep->add_flag("--random", cfg.random, "Uniform random samples (see --seed)");

  auto* closed = app.add_subcommand("find-closed", "Census of closed geodesics");
  closed->add_option("--smax", cfg.s_max, "Largest oscillation count s");
  closed->add_option("--nscan", cfg.n_scan, "Scan points per admissible interval");
  closed->add_option("--max-turns", cfg.max_turns, "Largest r/s searched");

  auto* trace = app.add_subcommand("trace", "Integrate one geodesic");
  trace->add_option("--u1", cfg.u1, "Launch parameter");
  trace->add_option("--angle", cfg.angle, "Launch angle from the meridian (default pi/2)");
  trace->add_option("--state", cfg.state, "Full initial state u,v,du,dv")->delimiter(',');
  trace->add_option("--tend", cfg.t_end, "Final time");

  auto* orbifold = app.add_subcommand("orbifold", "Cone angles and orbifold status");
  auto* embed = app.add_subcommand("embed", "Profile table u,g(u),h(u)");
  embed->add_option("--n", cfg.n, "Number of rows");

  for (auto* sub : {classify, sweep, closed, trace, orbifold, embed}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSpecError;
  }
  if (embed->parsed() && embed->count("--n") == 0) cfg.n = 201;
  if (trace->parsed() && cfg.state.empty() && trace->count("--u1") == 0) {
    err << "error: trace needs --u1 or --state\n";
    return kSpecError;
  }

  try {
    Sink sink(cfg, out, err);
    if (classify->parsed()) return cmd_classify(cfg, sink);
    if (sweep->parsed()) return cmd_period_sweep(cfg, sink);
    if (closed->parsed()) return cmd_find_closed(cfg, sink);
    if (trace->parsed()) return cmd_trace(cfg, sink);
    if (orbifold->parsed()) return cmd_orbifold(cfg, sink);
    if (embed->parsed()) return cmd_embed(cfg, sink);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kDomainError;
  }
  return kSpecError;
}

}  // namespace revgeo::cli
