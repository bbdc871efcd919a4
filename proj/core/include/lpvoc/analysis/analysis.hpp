#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpvoc/dsp/types.hpp"

// Waveform measurements: STFT spectrogram, pitch and intensity contours,
// segmental SNR, CSV export. Levels in dB are relative to full scale.

namespace lpvoc::analysis {

inline constexpr double kDefaultFloorDb = -100.0;

struct SpectrogramConfig {
  std::size_t window = 200;  // 25 ms
  std::size_t hop = 80;      // 10 ms
  std::size_t fft_size = 512;
  double floor_db = kDefaultFloorDb;
};

struct SpectrogramData {
  std::vector<double> times;        // frame centres, s
  std::vector<double> frequencies;  // bin k * fs / fft_size, k = 0..fft_size/2
  // [frame][bin]; |X_k| in dB re a full-scale sine, clamped at the floor.
  std::vector<std::vector<double>> magnitudes_db;
  // [frame][bin]; |X_k|^2 of the Hamming-windowed frame.
  std::vector<std::vector<double>> power;
  double floor_db = kDefaultFloorDb;

  // Frequency of the largest bin in a frame.
  double peak_frequency(std::size_t frame) const;
};

// Frames start every `hop` samples while a full window fits. Throws
// kBadWindowConfig (window 0 or > fft_size, hop 0, fft_size < 2) or
// kSignalTooShort.
SpectrogramData spectrogram(std::span<const double> signal, const SpectrogramConfig& config = {});

struct ContourConfig {
  std::size_t frame = 320;  // 40 ms; pitch needs >= 2 * max lag
  std::size_t hop = 80;
  double floor_db = kDefaultFloorDb;
};

enum class ContourKind { kPitch, kIntensity };

struct Contour {
  ContourKind kind = ContourKind::kPitch;
  std::vector<double> times;   // frame centres, s
  std::vector<double> values;  // Hz (0 where unvoiced) or dB
  std::vector<bool> voiced;    // pitch only

  std::size_t size() const noexcept { return times.size(); }
};

// Per-frame estimate_pitch, converted to Hz. Throws kSignalTooShort,
// kBadWindowConfig.
Contour pitch_contour(std::span<const double> signal, const ContourConfig& config = {});
// Per-frame RMS in dBFS, clamped at the floor.
Contour intensity_contour(std::span<const double> signal, const ContourConfig& config = {});

// Mean over segments of 10 log10(sum ref^2 / sum (ref - deg)^2), each
// clamped to [-10, 35] dB; segments whose reference RMS is below
// `silence_rms` are skipped. Throws kLengthMismatch, kBadWindowConfig
// (segment 0), kAllSegmentsSilent.
inline constexpr double kSegSnrMinDb = -10.0;
inline constexpr double kSegSnrMaxDb = 35.0;
double segmental_snr(std::span<const double> reference, std::span<const double> degraded,
                     std::size_t segment = 160, double silence_rms = 1e-5 * kFullScale);

// CSV with a header row and one row per frame, 6 decimal places.
// Pitch: time_s,pitch_hz,voiced (pitch cell empty when unvoiced).
// Intensity: time_s,intensity_db.
// Spectrogram: time_s,peak_hz,<one column per bin, headed by its Hz>.
std::string contour_csv(const Contour& contour);
std::string spectrogram_csv(const SpectrogramData& data);
// Throws kIoFailure.
void export_contours_csv(const Contour& contour, const std::filesystem::path& path);
void export_spectrogram_csv(const SpectrogramData& data, const std::filesystem::path& path);

}  // namespace lpvoc::analysis
