// Serial kernels against their OpenMP versions. Thread count from QF_THREADS.
#include <benchmark/benchmark.h>

#include "qf/fixtures.hpp"
#include "qf/przyjalkowski.hpp"
#include "qf/sagbi.hpp"

using namespace qf;

namespace {

const Fixture& fixture(const std::string& name) {
  static const std::vector<Fixture> fx = load_fixtures(default_fixture_dir());
  return find_fixture(fx, name);
}

const MirrorRun& gr86() {
  static const MirrorRun run =
      mirror_pipeline(*fixture("gr86-wedge5").quiver, bundle_from_json(fixture("gr86-wedge5").bundle));
  return run;
}

const Laurent& pid20() {
  static const Laurent f = parse_laurent(fixture("pid20").value("polynomial").get<std::string>());
  return f;
}

void BM_period_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(classical_period(pid20(), (unsigned)s.range(0)));
}
void BM_period_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(classical_period_parallel(pid20(), (unsigned)s.range(0)));
}
void BM_toric_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(toric_ci_period(gr86().mp, (unsigned)s.range(0)));
}
void BM_toric_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(toric_ci_period_parallel(gr86().mp, (unsigned)s.range(0)));
}

struct MinorSetup {
  CoordinateMatrices cm;
  VariableOrder ord;
  MinorSetup() {
    Quiver q = *fixture("yshaped2").quiver;
    cm = build_matrices(q);
    ord = plucker_order(cm, y_shape_decompose(q));
  }
};
const MinorSetup& minors() {
  static const MinorSetup m;
  return m;
}

void BM_minors_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(nonzero_minors(minors().cm.a.at(3), minors().ord));
}
void BM_minors_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(nonzero_minors_parallel(minors().cm.a.at(3), minors().ord));
}

struct ConeSetup {
  LadderQuiver lq;
  ToricGitData gd;
  ConeSetup() {
    lq = build_ladder_quiver(build_ladder(*fixture("yshaped1").quiver));
    gd = git_data(lq);
  }
};
const ConeSetup& cones() {
  static const ConeSetup c;
  return c;
}

void BM_anticones_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(minimal_anticones_bruteforce(cones().gd, cones().lq));
}
void BM_anticones_parallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(minimal_anticones_parallel(cones().gd, cones().lq));
}

}  // namespace

BENCHMARK(BM_period_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_period_parallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_toric_serial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_toric_parallel)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_minors_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_minors_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_anticones_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_anticones_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
