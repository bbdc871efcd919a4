#include "lpvoc/analysis/analysis.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/dsp/pitch.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc::analysis {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(fftw_alloc_real(n)),
        out_(fftw_alloc_complex(n / 2 + 1)) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }
  // |X_k|^2, k = 0..n/2.
  void power(std::vector<double>& out) {
    fftw_execute(plan_);
    out.resize(n_ / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    }
  }

 private:
  std::size_t n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

void check_frames(std::size_t signal, std::size_t frame, std::size_t hop) {
  if (frame == 0 || hop == 0) throw Error(ErrorCode::kBadWindowConfig, "frame and hop must be positive");
  if (signal < frame) {
    throw Error(ErrorCode::kSignalTooShort,
                fmt::format("signal has {} samples, one frame needs {}", signal, frame));
  }
}

std::size_t frame_count(std::size_t signal, std::size_t frame, std::size_t hop) {
  return (signal - frame) / hop + 1;
}

double centre_time(std::size_t f, std::size_t frame, std::size_t hop) {
  return (static_cast<double>(f * hop) + static_cast<double>(frame) / 2.0) / kSampleRate;
}

std::string fixed(double v) {
  const auto s = fmt::format("{:.6f}", v);
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

double SpectrogramData::peak_frequency(std::size_t frame) const {
  const auto& row = power.at(frame);
  return frequencies[static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin())];
}

SpectrogramData spectrogram(std::span<const double> signal, const SpectrogramConfig& config) {
  if (config.fft_size < 2 || config.window == 0 || config.window > config.fft_size || config.hop == 0) {
    throw Error(ErrorCode::kBadWindowConfig,
                fmt::format("need 0 < window ({}) <= fft size ({}), hop > 0", config.window, config.fft_size));
  }
  check_frames(signal.size(), config.window, config.hop);

  const auto w = dsp::hamming_window(config.window);
  double wsum = 0.0;
  for (double v : w) wsum += v;
  // A full-scale sine centred on a bin reads 0 dB.
  const double ref = kFullScale * wsum / 2.0;

  SpectrogramData out;
  out.floor_db = config.floor_db;
  for (std::size_t k = 0; k <= config.fft_size / 2; ++k) {
    out.frequencies.push_back(static_cast<double>(k) * kSampleRate / static_cast<double>(config.fft_size));
  }
  RealFft fft(config.fft_size);
  const std::size_t frames = frame_count(signal.size(), config.window, config.hop);
  for (std::size_t f = 0; f < frames; ++f) {
    double* in = fft.input();
    std::fill(in, in + config.fft_size, 0.0);
    for (std::size_t n = 0; n < config.window; ++n) in[n] = w[n] * signal[f * config.hop + n];
    std::vector<double> p;
    fft.power(p);
    std::vector<double> db(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double mag = std::sqrt(p[k]) / ref;
      db[k] = mag > 0.0 ? std::max(config.floor_db, 20.0 * std::log10(mag)) : config.floor_db;
    }
    out.times.push_back(centre_time(f, config.window, config.hop));
    out.power.push_back(std::move(p));
    out.magnitudes_db.push_back(std::move(db));
  }
  return out;
}

Contour pitch_contour(std::span<const double> signal, const ContourConfig& config) {
  check_frames(signal.size(), config.frame, config.hop);
  Contour out;
  out.kind = ContourKind::kPitch;
  const std::size_t frames = frame_count(signal.size(), config.frame, config.hop);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto est = dsp::estimate_pitch(signal.subspan(f * config.hop, config.frame));
    out.times.push_back(centre_time(f, config.frame, config.hop));
    out.voiced.push_back(est.voiced);
    out.values.push_back(est.voiced ? static_cast<double>(kSampleRate) / est.period : 0.0);
  }
  return out;
}

Contour intensity_contour(std::span<const double> signal, const ContourConfig& config) {
  check_frames(signal.size(), config.frame, config.hop);
  Contour out;
  out.kind = ContourKind::kIntensity;
  const std::size_t frames = frame_count(signal.size(), config.frame, config.hop);
  for (std::size_t f = 0; f < frames; ++f) {
    double e = 0.0;
    for (double v : signal.subspan(f * config.hop, config.frame)) e += v * v;
    const double rms = std::sqrt(e / static_cast<double>(config.frame)) / kFullScale;
    out.times.push_back(centre_time(f, config.frame, config.hop));
    out.values.push_back(rms > 0.0 ? std::max(config.floor_db, 20.0 * std::log10(rms)) : config.floor_db);
  }
  return out;
}

double segmental_snr(std::span<const double> reference, std::span<const double> degraded,
                     std::size_t segment, double silence_rms) {
  if (reference.size() != degraded.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("reference has {} samples, degraded {}", reference.size(), degraded.size()));
  }
  if (segment == 0) throw Error(ErrorCode::kBadWindowConfig, "segment length must be positive");
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t start = 0; start < reference.size(); start += segment) {
    const std::size_t end = std::min(reference.size(), start + segment);
    double s = 0.0, e = 0.0;
    for (std::size_t n = start; n < end; ++n) {
      const double d = reference[n] - degraded[n];
      s += reference[n] * reference[n];
      e += d * d;
    }
    if (s <= 0.0 || std::sqrt(s / static_cast<double>(end - start)) < silence_rms) continue;
    const double snr = e > 0.0 ? 10.0 * std::log10(s / e) : kSegSnrMaxDb;
    total += std::clamp(snr, kSegSnrMinDb, kSegSnrMaxDb);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::kAllSegmentsSilent, "every reference segment is silent");
  return total / static_cast<double>(used);
}

std::string contour_csv(const Contour& c) {
  std::string out = c.kind == ContourKind::kPitch ? "time_s,pitch_hz,voiced\n" : "time_s,intensity_db\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.kind == ContourKind::kPitch) {
      const bool v = i < c.voiced.size() && c.voiced[i];
      out += fmt::format("{},{},{}\n", fixed(c.times[i]), v ? fixed(c.values[i]) : "", v ? 1 : 0);
    } else {
      out += fmt::format("{},{}\n", fixed(c.times[i]), fixed(c.values[i]));
    }
  }
  return out;
}

std::string spectrogram_csv(const SpectrogramData& d) {
  std::string out = "time_s,peak_hz";
  for (double f : d.frequencies) out += "," + fixed(f);
  out += '\n';
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    out += fixed(d.times[i]) + "," + fixed(d.peak_frequency(i));
    for (double v : d.magnitudes_db[i]) out += "," + fixed(v);
    out += '\n';
  }
  return out;
}

namespace {
void write_text(const std::filesystem::path& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error(ErrorCode::kIoFailure, "cannot create " + path.string());
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}
}  // namespace

void export_contours_csv(const Contour& contour, const std::filesystem::path& path) {
  write_text(path, contour_csv(contour));
}

void export_spectrogram_csv(const SpectrogramData& data, const std::filesystem::path& path) {
  write_text(path, spectrogram_csv(data));
}

}  // namespace lpvoc::analysis
