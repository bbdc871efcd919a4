#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lpvoc/bitstream/container.hpp"
#include "lpvoc/codec/vocoder.hpp"

namespace {

// One second of a noisy 110 Hz harmonic signal.
lpvoc::AudioSignal test_signal() {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise(0.0, 200.0);
  std::vector<double> x(lpvoc::kSampleRate);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = static_cast<double>(n) / lpvoc::kSampleRate;
    for (int h = 1; h <= 8; ++h) x[n] += 3000.0 / h * std::sin(2 * std::numbers::pi * 110.0 * h * t);
    x[n] += noise(gen);
  }
  return lpvoc::from_double(x);
}

void BM_Encode(benchmark::State& state) {
  const auto codec = static_cast<lpvoc::CodecId>(state.range(0));
  const auto x = test_signal();
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::encode_signal(x, codec));
  state.SetLabel(std::string(lpvoc::bitstream::codec_name(codec)));
  // Items = seconds of audio.
  state.SetItemsProcessed(state.iterations());
}

void BM_Decode(benchmark::State& state) {
  const auto codec = static_cast<lpvoc::CodecId>(state.range(0));
  const auto container = lpvoc::encode_signal(test_signal(), codec).container;
  for (auto _ : state) benchmark::DoNotOptimize(lpvoc::decode_container(container));
  state.SetLabel(std::string(lpvoc::bitstream::codec_name(codec)));
  state.SetItemsProcessed(state.iterations());
}

void BM_ContainerRoundTrip(benchmark::State& state) {
  const auto container = lpvoc::encode_signal(test_signal(), lpvoc::CodecId::kLdcelp).container;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpvoc::bitstream::container_read(lpvoc::bitstream::container_write(container)));
  }
}

}  // namespace

BENCHMARK(BM_Encode)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decode)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContainerRoundTrip)->Unit(benchmark::kMicrosecond);
