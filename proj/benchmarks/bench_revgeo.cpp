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

#include <cmath>
#include <string>

#include <benchmark/benchmark.h>

#include "revgeo/classify.hpp"
#include "revgeo/closed.hpp"
#include "revgeo/geodesic.hpp"
#include "revgeo/period.hpp"
#include "revgeo/surface_spec.hpp"

namespace {

using namespace revgeo;

const ProfileCurve& surface(const char* name) {
  static const ProfileCurve tannery = builtin_surface("tannery").profile;
  static const ProfileCurve twobump = builtin_surface("twobump").profile;
  static const ProfileCurve sphere = builtin_surface("sphere").profile;
  const std::string n = name;
  return n == "tannery" ? tannery : n == "twobump" ? twobump : sphere;
}

void BM_PeriodTannery(benchmark::State& state) {
  const ProfileCurve& p = surface("tannery");
  for (auto _ : state) benchmark::DoNotOptimize(period(0.7, p).value());
}
BENCHMARK(BM_PeriodTannery);

// Launch points approaching the asymptote endpoint.
void BM_PeriodTwobumpNearNeck(benchmark::State& state) {
  const ProfileCurve& p = surface("twobump");
  const double a = admissible_set(p).intervals()[0].hi;
  const double u1 = a - std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(period(u1, p).value());
}
BENCHMARK(BM_PeriodTwobumpNearNeck)->DenseRange(2, 7, 1);

void BM_PeriodSweepTwobump(benchmark::State& state) {
  const ProfileCurve& p = surface("twobump");
  for (auto _ : state) {
    benchmark::DoNotOptimize(period_sweep({0.05, 0.75}, static_cast<int>(state.range(0)), p));
  }
}
BENCHMARK(BM_PeriodSweepTwobump)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PeriodOracleOde(benchmark::State& state) {
  const ProfileCurve& p = surface("tannery");
  for (auto _ : state) benchmark::DoNotOptimize(period_oracle_ode(0.7, p));
}
BENCHMARK(BM_PeriodOracleOde)->Unit(benchmark::kMillisecond);

void BM_IntegrateSphere(benchmark::State& state) {
  const MetricCoefficients m(surface("sphere"));
  const GeodesicState s0 = launch_at_angle(0.8, 1.0, m);
  IntegrateOptions o;
  o.record_states = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(s0, m, static_cast<double>(state.range(0)), 1e-10, o));
  }
}
BENCHMARK(BM_IntegrateSphere)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DetectRational(benchmark::State& state) {
  const PeriodValue phi = PeriodValue::finite(2 * 3.141592653589793 * 1.2360679774997898, 0);
  const int s_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(detect_rational(phi, s_max, 1e-6));
}
BENCHMARK(BM_DetectRational)->Arg(10)->Arg(50)->Arg(1000);

void BM_FindClosedEllipsoid(benchmark::State& state) {
  const ProfileCurve p = embed_profile(ellipsoid_metric(2.0));
  const int s_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_closed(p, s_max, 200, 1e-6));
}
BENCHMARK(BM_FindClosedEllipsoid)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
