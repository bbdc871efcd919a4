#include <benchmark/benchmark.h>

#include <random>

#include "lpvoc/analysis/analysis.hpp"
#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/dsp/pitch.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d(0.0, 1000.0);
  std::vector<double> x(n);
  for (double& v : x) v = d(gen);
  return x;
}

void BM_Levinson(benchmark::State& state) {
  const auto r = lpvoc::dsp::autocorrelate(noise(240, 1), 10);
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::dsp::levinson_durbin(r, 10));
}

void BM_Autocorrelate(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::dsp::autocorrelate(x, 50));
}

void BM_Spectrogram(benchmark::State& state) {
  const auto x = noise(8000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::analysis::spectrogram(x));
}

void BM_PitchContour(benchmark::State& state) {
  const auto x = noise(8000, 4);
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::analysis::pitch_contour(x));
}

}  // namespace

BENCHMARK(BM_Levinson);
BENCHMARK(BM_Autocorrelate)->Arg(240)->Arg(1024);
BENCHMARK(BM_Spectrogram)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PitchContour)->Unit(benchmark::kMillisecond);
