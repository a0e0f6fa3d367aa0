// Serial reference vs OpenMP for each parallel kernel. Arg 0 is serial, 1 is parallel.

#include <benchmark/benchmark.h>

#include "ocm/acquisition.hpp"
#include "ocm/centroid_image.hpp"
#include "ocm/centroid_psf.hpp"
#include "ocm/coincidence.hpp"
#include "ocm/event_io.hpp"
#include "ocm/special.hpp"

using namespace ocm;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

SourceSpec bench_source() {
  SourceSpec s;
  s.pair_rate = 1.1e7;
  return s;
}

DetectorConfig bench_detector() {
  DetectorConfig d;
  d.pde = 1.0;
  d.dark_count_rate = 2e4;
  return d;
}

// Shared event stream for the reconstruction kernels.
const std::vector<PhotonEvent>& bench_events() {
  static const std::vector<PhotonEvent> events = [] {
    const PreparedSource src(bench_source());
    EventCollector sink;
    run_acquisition_frames(src, bench_detector(), 200'000, 1, sink, Exec::Serial);
    return sink.events;
  }();
  return events;
}

void BM_Rasterize(benchmark::State& state) {
  const Aperture a = Aperture::slits(3, 70e-6, 110e-6, 350e-6).with_pump_waist(400e-6);
  const GridSpec g = GridSpec::centered(1024, 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(a.rasterize(g, exec_of(state)));
}

void BM_FarField(benchmark::State& state) {
  const Aperture a = Aperture::slits(2, 70e-6, 110e-6, 350e-6);
  const GridSpec obj = GridSpec::centered(256, 4e-6), pupil = GridSpec::centered(128, 20e-6);
  for (auto _ : state) benchmark::DoNotOptimize(far_field_pattern(a, 2, 0.4 * 810e-9 / kTwoPi, obj, pupil, exec_of(state)));
}

void BM_Acquisition(benchmark::State& state) {
  const PreparedSource src(bench_source());
  const DetectorConfig det = bench_detector();
  for (auto _ : state) {
    EventCollector sink;
    run_acquisition_frames(src, det, 100'000, 7, sink, exec_of(state));
    benchmark::DoNotOptimize(sink.events.data());
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}

void BM_Coincidences(benchmark::State& state) {
  const auto& events = bench_events();
  for (auto _ : state) benchmark::DoNotOptimize(extract_coincidences(events, {}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}

void BM_Accidentals(benchmark::State& state) {
  const auto& events = bench_events();
  const DetectorConfig det = bench_detector();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_accidentals(events, 200'000, {}, det, 1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}

}  // namespace

BENCHMARK(BM_Rasterize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FarField)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Acquisition)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coincidences)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Accidentals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
