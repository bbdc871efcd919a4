#include "lpvoc/codec/melp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/dsp/lsf.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc::melp {

namespace {

constexpr double kFs = 8000.0;
constexpr double kLsfGap = 2.0 * std::numbers::pi * 50.0 / kFs;
constexpr std::array<double, 3> kRefineSigma{0.04, 0.02, 0.01};
constexpr double kPeakTolerance = 0.85;
constexpr std::size_t kAnalysisLength = 240;
constexpr std::size_t kImpulseLength = 256;
constexpr double kMaxPitch = 160.0;

double gain_step() { return (kMaxGainDb - kMinGainDb) / (kGainLevels - 1); }

void check_frame(std::span<const double> frame, const char* what) {
  if (frame.size() != kFrameLength) {
    throw Error(ErrorCode::kBadFrameLength, std::string(what) + " must be 180 samples");
  }
}

std::vector<double> filtered(const std::vector<dsp::Biquad>& sos, std::span<const double> x) {
  dsp::SosFilter f(sos);
  return f.process(x);
}

double corr_at(const std::vector<double>& y, int lag) {
  double c = 0.0, e0 = 0.0, e1 = 0.0;
  for (std::size_t n = static_cast<std::size_t>(lag); n < y.size(); ++n) {
    const double a = y[n - static_cast<std::size_t>(lag)];
    c += a * y[n];
    e0 += a * a;
    e1 += y[n] * y[n];
  }
  if (!(e0 > 0.0 && e1 > 0.0)) return 0.0;
  return c / std::sqrt(e0 * e1);
}

dsp::Lsf flat_lsf() {
  dsp::Lsf lsf;
  for (std::size_t i = 1; i <= kLpcOrder; ++i) {
    lsf.omega.push_back(std::numbers::pi * static_cast<double>(i) / (kLpcOrder + 1));
  }
  return lsf;
}

// Five resonances with random centre frequencies and bandwidths.
std::optional<dsp::Lsf> formant_model(Rng& rng) {
  std::array<double, 5> f{};
  f[0] = rng.uniform(250.0, 900.0);
  f[1] = rng.uniform(std::max(f[0] + 200.0, 800.0), 2300.0);
  f[2] = rng.uniform(f[1] + 200.0, 3000.0);
  f[3] = rng.uniform(f[2] + 150.0, 3600.0);
  f[4] = rng.uniform(f[3] + 100.0, 3950.0);
  std::vector<double> poly{1.0};
  for (double fc : f) {
    const double r = std::exp(-std::numbers::pi * rng.uniform(60.0, 400.0) / kFs);
    const double th = 2.0 * std::numbers::pi * fc / kFs;
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= 2.0 * r * std::cos(th) * poly[i];
      next[i + 2] += r * r * poly[i];
    }
    poly = std::move(next);
  }
  auto lpc = dsp::LpcCoeffs::zeros(kLpcOrder);
  for (std::size_t i = 0; i < kLpcOrder; ++i) lpc.q[i] = -poly[i + 1];
  try {
    auto lsf = dsp::lpc_to_lsf(lpc);
    if (dsp::is_valid_lsf(lsf)) return lsf;
  } catch (const Error&) {
  }
  return std::nullopt;
}

template <std::size_t N>
std::size_t nearest(const std::vector<std::array<double, N>>& book, std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < book.size(); ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < N; ++k) d += (x[k] - book[i][k]) * (x[k] - book[i][k]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// Single-error-correcting, double-error-detecting Hamming code. Data bit i
// sits at the i-th non-power-of-two codeword position (1-based).
struct Secded {
  int data_bits;
  int hamming_bits;

  std::uint32_t position(int i) const {
    std::uint32_t pos = 0;
    for (int seen = -1; seen < i;) {
      ++pos;
      if (!std::has_single_bit(pos)) ++seen;
    }
    return pos;
  }
  std::uint32_t syndrome(std::uint32_t data) const {
    std::uint32_t s = 0;
    for (int i = 0; i < data_bits; ++i) {
      if ((data >> i) & 1u) s ^= position(i);
    }
    return s;
  }
  // Hamming bits followed by the overall parity bit.
  std::uint32_t encode(std::uint32_t data) const {
    const std::uint32_t h = syndrome(data);
    const std::uint32_t overall = (std::popcount(data) + std::popcount(h)) & 1u;
    return (h << 1) | overall;
  }
  ProtectionStatus check(std::uint32_t& data, std::uint32_t code) const {
    const std::uint32_t h = code >> 1;
    const std::uint32_t s = syndrome(data) ^ h;
    const bool odd = ((std::popcount(data) + std::popcount(code)) & 1u) != 0;
    if (!odd) return s == 0 ? ProtectionStatus::kClean : ProtectionStatus::kDetected;
    if (s == 0 || std::has_single_bit(s)) return ProtectionStatus::kCorrected;
    for (int i = 0; i < data_bits; ++i) {
      if (position(i) == s) {
        data ^= 1u << i;
        return ProtectionStatus::kCorrected;
      }
    }
    return ProtectionStatus::kDetected;
  }
};

constexpr Secded kLsfCode{13, 5};
constexpr Secded kGainCode{8, 4};

std::uint32_t lsf_word(const MelpFrameParams& p) {
  return (static_cast<std::uint32_t>(p.lsf_stages[0]) << 6) | p.lsf_stages[1];
}
std::uint32_t gain_word(const MelpFrameParams& p) {
  return (static_cast<std::uint32_t>(p.gains[0]) << 4) | p.gains[1];
}
std::uint32_t parity(std::uint32_t v) { return std::popcount(v) & 1u; }

ProtectionStatus worse(ProtectionStatus a, ProtectionStatus b) {
  return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

double rms_db(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  e /= static_cast<double>(x.size());
  return e > 0.0 ? 10.0 * std::log10(e) : -std::numeric_limits<double>::infinity();
}

// One period of the pulse with the given harmonic magnitudes (1 above the
// tenth), zero phase, scaled to unit power.
std::vector<double> pulse_shape(std::size_t period, const std::array<double, kHarmonics>& mags) {
  std::vector<double> p(period, 0.0);
  const std::size_t harmonics = (period - 1) / 2;
  for (std::size_t n = 0; n < period; ++n) {
    for (std::size_t k = 1; k <= harmonics; ++k) {
      const double a = k <= kHarmonics ? mags[k - 1] : 1.0;
      p[n] += a * std::cos(2.0 * std::numbers::pi * static_cast<double>(k * n) /
                           static_cast<double>(period));
    }
  }
  double e = 0.0;
  for (double v : p) e += v * v;
  if (e > 0.0) {
    const double s = std::sqrt(static_cast<double>(period) / e);
    for (double& v : p) v *= s;
  }
  return p;
}

}  // namespace

std::string_view to_string(VoicingClass v) noexcept {
  switch (v) {
    case VoicingClass::kVoiced: return "voiced";
    case VoicingClass::kUnvoiced: return "unvoiced";
    case VoicingClass::kJitteryVoiced: return "jittery-voiced";
  }
  return "unknown";
}

const std::array<std::vector<dsp::Biquad>, kBands>& band_filters() {
  static const std::array<std::vector<dsp::Biquad>, kBands> bank{
      dsp::butterworth_lowpass(6, 500.0, kFs),
      dsp::butterworth_bandpass(3, 500.0, 1000.0, kFs),
      dsp::butterworth_bandpass(3, 1000.0, 2000.0, kFs),
      dsp::butterworth_bandpass(3, 2000.0, 3000.0, kFs),
      dsp::butterworth_highpass(6, 3000.0, kFs),
  };
  return bank;
}

const std::vector<dsp::Biquad>& pitch_lowpass() {
  static const auto lp = dsp::butterworth_lowpass(6, 1000.0, kFs);
  return lp;
}

Classification melp_classify(std::span<const double> frame, std::span<const double> previous,
                             const ClassifierConfig& config) {
  check_frame(frame, "MELP frame");
  if (!previous.empty()) check_frame(previous, "previous MELP frame");
  std::vector<double> window(kFrameLength, 0.0);
  std::copy(previous.begin(), previous.end(), window.begin());
  window.insert(window.end(), frame.begin(), frame.end());

  const auto low = filtered(pitch_lowpass(), window);
  const int lo = config.range.min_lag, hi = config.range.max_lag;
  std::vector<double> c(static_cast<std::size_t>(hi - lo + 1));
  for (int lag = lo; lag <= hi; ++lag) c[static_cast<std::size_t>(lag - lo)] = corr_at(low, lag);
  const double peak = *std::max_element(c.begin(), c.end());

  Classification out;
  out.pitch_lag = lo + static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool local = (i == 0 || c[i] >= c[i - 1]) && (i + 1 == c.size() || c[i] >= c[i + 1]);
    if (local && c[i] >= kPeakTolerance * peak && peak > 0.0) {
      out.pitch_lag = lo + static_cast<int>(i);
      break;
    }
  }
  out.periodicity = std::max(0.0, c[static_cast<std::size_t>(out.pitch_lag - lo)]);
  if (out.periodicity >= config.voiced_threshold) {
    out.voicing = VoicingClass::kVoiced;
  } else if (out.periodicity < config.unvoiced_threshold) {
    out.voicing = VoicingClass::kUnvoiced;
  } else {
    out.voicing = VoicingClass::kJitteryVoiced;
  }

  for (std::size_t b = 0; b < kBands; ++b) {
    const auto y = filtered(band_filters()[b], window);
    double best = 0.0;
    for (int lag = std::max(lo, out.pitch_lag - 1); lag <= std::min(hi, out.pitch_lag + 1); ++lag) {
      best = std::max(best, corr_at(y, lag));
    }
    out.band_strength[b] = best;
  }
  return out;
}

double pitch_for_index(int index) {
  if (index < 0 || index >= kPitchLevels) {
    throw Error(ErrorCode::kIndexOutOfRange, "pitch index must be 0..63");
  }
  return 20.0 * std::pow(147.0 / 20.0, index / 63.0);
}

int pitch_index_for(double lag) {
  const double k = 63.0 * std::log(std::max(lag, 1.0) / 20.0) / std::log(147.0 / 20.0);
  return std::clamp(static_cast<int>(std::lround(k)), 0, kPitchLevels - 1);
}

double gain_db_for_index(int index) {
  if (index < 0 || index >= kGainLevels) {
    throw Error(ErrorCode::kIndexOutOfRange, "gain index must be 0..15");
  }
  return kMinGainDb + index * gain_step();
}

int gain_index_for(double db) {
  if (!(db > kMinGainDb)) return 0;
  return std::clamp(static_cast<int>(std::lround((db - kMinGainDb) / gain_step())), 0,
                    kGainLevels - 1);
}

LsfCodebook::LsfCodebook(std::uint64_t seed) {
  Rng rng(seed);
  const auto flat = flat_lsf();
  auto& first = stages_[0];
  first.emplace_back();
  std::copy(flat.omega.begin(), flat.omega.end(), first.back().begin());
  while (first.size() < (1u << melp_layout::kLsfStageBits[0])) {
    if (auto lsf = formant_model(rng)) {
      first.emplace_back();
      std::copy(lsf->omega.begin(), lsf->omega.end(), first.back().begin());
    }
  }
  for (std::size_t s = 1; s < 4; ++s) {
    auto& st = stages_[s];
    st.emplace_back();  // zero refinement
    while (st.size() < (1u << melp_layout::kLsfStageBits[s])) {
      std::array<double, kLpcOrder> v{};
      for (double& x : v) x = kRefineSigma[s - 1] * rng.gaussian();
      st.push_back(v);
    }
  }
}

std::array<std::uint8_t, 4> LsfCodebook::quantize(const dsp::Lsf& lsf) const {
  if (lsf.order() != kLpcOrder) {
    throw Error(ErrorCode::kUnsupportedOrder, "MELP LSF vectors have order 10");
  }
  std::vector<double> residual = lsf.omega;
  std::array<std::uint8_t, 4> idx{};
  for (std::size_t s = 0; s < 4; ++s) {
    const auto i = nearest(stages_[s], residual);
    idx[s] = static_cast<std::uint8_t>(i);
    for (std::size_t k = 0; k < kLpcOrder; ++k) residual[k] -= stages_[s][i][k];
  }
  return idx;
}

dsp::Lsf LsfCodebook::dequantize(const std::array<std::uint8_t, 4>& indices) const {
  dsp::Lsf lsf;
  lsf.omega.assign(kLpcOrder, 0.0);
  for (std::size_t s = 0; s < 4; ++s) {
    if (indices[s] >= stages_[s].size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "LSF stage index out of range");
    }
    for (std::size_t k = 0; k < kLpcOrder; ++k) lsf.omega[k] += stages_[s][indices[s]][k];
  }
  return dsp::stabilize_lsf(std::move(lsf), kLsfGap);
}

FourierCodebook::FourierCodebook(std::uint64_t seed) {
  Rng rng(seed ^ 0xF0F0F0F0ull);
  entries_.resize(kFourierEntries);
  entries_[0].fill(1.0);
  for (std::size_t i = 1; i < kFourierEntries; ++i) {
    double e = 0.0;
    for (double& v : entries_[i]) {
      v = std::exp(0.35 * rng.gaussian());
      e += v * v;
    }
    const double s = std::sqrt(kHarmonics / e);
    for (double& v : entries_[i]) v *= s;
  }
}

int FourierCodebook::quantize(std::span<const double> magnitudes) const {
  if (magnitudes.size() != kHarmonics) {
    throw Error(ErrorCode::kLengthMismatch, "expected 10 harmonic magnitudes");
  }
  double e = 0.0;
  for (double v : magnitudes) e += v * v;
  if (!(e > 0.0)) return 0;
  std::array<double, kHarmonics> norm{};
  const double s = std::sqrt(kHarmonics / e);
  for (std::size_t k = 0; k < kHarmonics; ++k) norm[k] = magnitudes[k] * s;
  return static_cast<int>(nearest(entries_, norm));
}

std::uint16_t protection_bits(const MelpFrameParams& p) {
  std::uint32_t out = kLsfCode.encode(lsf_word(p));
  out = (out << 5) | kGainCode.encode(gain_word(p));
  out = (out << 1) | parity(p.lsf_stages[2]);
  out = (out << 1) | parity(p.lsf_stages[3]);
  return static_cast<std::uint16_t>(out);
}

ProtectionStatus verify_protection(MelpFrameParams& p) {
  const std::uint32_t bits = p.error_protection;
  std::uint32_t lsf = lsf_word(p);
  std::uint32_t gain = gain_word(p);
  auto status = kLsfCode.check(lsf, (bits >> 7) & 0x3Fu);
  status = worse(status, kGainCode.check(gain, (bits >> 2) & 0x1Fu));
  if (parity(p.lsf_stages[2]) != ((bits >> 1) & 1u) || parity(p.lsf_stages[3]) != (bits & 1u)) {
    status = worse(status, ProtectionStatus::kDetected);
  }
  if (status == ProtectionStatus::kCorrected) {
    p.lsf_stages[0] = static_cast<std::uint8_t>(lsf >> 6);
    p.lsf_stages[1] = static_cast<std::uint8_t>(lsf & 0x3Fu);
    p.gains[0] = static_cast<std::uint8_t>(gain >> 4);
    p.gains[1] = static_cast<std::uint8_t>(gain & 0xFu);
    p.error_protection = protection_bits(p);
  }
  return status;
}

void MixedExcitationSpec::validate() const {
  for (std::size_t b = 0; b < kBands; ++b) {
    const double pw = pulse_weight[b], nw = noise_weight[b];
    if (!(pw >= 0.0 && pw <= 1.0 && nw >= 0.0 && nw <= 1.0) ||
        std::abs(pw + nw - 1.0) > 1e-9) {
      throw Error(ErrorCode::kWeightSumViolation,
                  "band " + std::to_string(b + 1) + ": pulse and noise weights must sum to 1");
    }
  }
  if (!(pitch >= 20.0 && pitch <= kMaxPitch)) {
    throw Error(ErrorCode::kIndexOutOfRange, "pitch must be in [20, 160] samples");
  }
  if (!(jitter >= 0.0 && jitter <= 0.5)) {
    throw Error(ErrorCode::kIndexOutOfRange, "jitter must be in [0, 0.5]");
  }
}

std::vector<double> pulse_train(double pitch, double jitter, std::size_t length, Rng& rng,
                                double phase) {
  if (!(pitch >= 2.0) || !(jitter >= 0.0 && jitter < 1.0)) {
    throw Error(ErrorCode::kIndexOutOfRange, "bad pulse train parameters");
  }
  std::vector<double> out(length, 0.0);
  const double height = std::sqrt(pitch);
  for (double pos = phase; pos < static_cast<double>(length);) {
    const auto i = static_cast<std::size_t>(std::lround(pos));
    if (i < length) out[i] += height;
    pos += pitch * (1.0 + jitter * rng.uniform(-1.0, 1.0));
  }
  return out;
}

std::vector<double> mixed_excitation(const MixedExcitationSpec& spec,
                                     std::span<const double> pulses,
                                     std::span<const double> noise) {
  spec.validate();
  if (pulses.size() != noise.size()) {
    throw Error(ErrorCode::kLengthMismatch, "pulse and noise sequences differ in length");
  }
  std::vector<double> out(pulses.size(), 0.0), mix(pulses.size());
  for (std::size_t b = 0; b < kBands; ++b) {
    for (std::size_t n = 0; n < mix.size(); ++n) {
      mix[n] = spec.pulse_weight[b] * pulses[n] + spec.noise_weight[b] * noise[n];
    }
    const auto y = filtered(band_filters()[b], mix);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += y[n];
  }
  return out;
}

std::vector<double> mixed_excitation(const MixedExcitationSpec& spec, std::size_t length,
                                     Rng& rng) {
  spec.validate();
  const auto pulses = pulse_train(spec.pitch, spec.jitter, length, rng);
  std::vector<double> noise(length);
  for (double& v : noise) v = rng.gaussian();
  return mixed_excitation(spec, pulses, noise);
}

MelpEncoder::MelpEncoder(MelpConfig config)
    : config_(config),
      lsf_book_(config.seed),
      fourier_book_(config.seed),
      previous_(kFrameLength, 0.0) {}

MelpFrameParams MelpEncoder::encode_frame(std::span<const double> frame) {
  check_frame(frame, "MELP frame");
  last_ = melp_classify(frame, previous_, config_.classifier);

  std::vector<double> window(previous_);
  window.insert(window.end(), frame.begin(), frame.end());
  const std::span<const double> recent(window.data() + window.size() - kAnalysisLength,
                                       kAnalysisLength);

  MelpFrameParams p;
  dsp::Lsf lsf = previous_lsf_.value_or(flat_lsf());
  try {
    const auto lpc = dsp::bandwidth_expand(dsp::analyze_frame(recent, kLpcOrder),
                                           dsp::bandwidth_gamma_for_hz(15.0));
    auto fit = dsp::lpc_to_lsf(lpc);
    if (dsp::is_valid_lsf(fit)) lsf = std::move(fit);
  } catch (const Error&) {
  }
  previous_lsf_ = lsf;
  p.lsf_stages = lsf_book_.quantize(lsf);

  for (std::size_t h = 0; h < 2; ++h) {
    p.gains[h] = static_cast<std::uint8_t>(
        gain_index_for(rms_db(frame.subspan(h * kHalfFrame, kHalfFrame))));
  }

  if (last_.voicing == VoicingClass::kUnvoiced) {
    p.error_protection = protection_bits(p);
  } else {
    p.overall_voiced = 1;
    p.pitch_index = static_cast<std::uint8_t>(pitch_index_for(last_.pitch_lag));
    p.aperiodic_flag = last_.voicing == VoicingClass::kJitteryVoiced ? 1 : 0;
    for (std::size_t b = 1; b < kBands; ++b) {
      if (last_.band_strength[b] >= config_.classifier.band_threshold) {
        p.bandpass_voicing |= static_cast<std::uint8_t>(1u << (kBands - 1 - b));
      }
    }
    // Harmonic magnitudes of the windowed prediction residual.
    const auto qlpc = dsp::lsf_to_lpc(lsf_book_.dequantize(p.lsf_stages));
    auto residual = dsp::inverse_filter(window, qlpc);
    const auto w = dsp::hamming_window(residual.size());
    for (std::size_t n = 0; n < residual.size(); ++n) residual[n] *= w[n];
    const double pitch = pitch_for_index(p.pitch_index);
    std::array<double, kHarmonics> mags{};
    for (std::size_t k = 0; k < kHarmonics; ++k) {
      const double omega = 2.0 * std::numbers::pi * static_cast<double>(k + 1) / pitch;
      std::complex<double> acc = 0.0;
      for (std::size_t n = 0; n < residual.size(); ++n) {
        acc += residual[n] * std::polar(1.0, -omega * static_cast<double>(n));
      }
      mags[k] = std::abs(acc);
    }
    p.fourier_index = static_cast<std::uint8_t>(fourier_book_.quantize(mags));
  }
  p.sync_bit = static_cast<std::uint8_t>(frames_ & 1u);
  ++frames_;
  previous_.assign(frame.begin(), frame.end());
  return p;
}

MelpDecoder::MelpDecoder(MelpConfig config)
    : config_(config),
      lsf_book_(config.seed),
      fourier_book_(config.seed),
      rng_(config.seed ^ 0x5EED5EEDull),
      synthesis_(kLpcOrder) {
  for (std::size_t b = 0; b < kBands; ++b) bands_[b] = dsp::SosFilter(band_filters()[b]);
}

std::vector<double> MelpDecoder::pulse_track(double pitch, double jitter,
                                             const std::array<double, kHarmonics>& magnitudes) {
  const auto period = static_cast<std::size_t>(std::lround(pitch));
  const auto shape = pulse_shape(period, magnitudes);
  std::vector<double> buffer(kFrameLength + 2 * static_cast<std::size_t>(kMaxPitch) + 2, 0.0);
  std::copy(pulse_tail_.begin(), pulse_tail_.end(), buffer.begin());
  double pos = next_pulse_;
  while (pos < static_cast<double>(kFrameLength)) {
    const auto start = static_cast<std::size_t>(std::max(0L, std::lround(pos)));
    for (std::size_t n = 0; n < period; ++n) buffer[start + n] += shape[n];
    pos += pitch * (1.0 + jitter * rng_.uniform(-1.0, 1.0));
  }
  next_pulse_ = pos - static_cast<double>(kFrameLength);
  pulse_tail_.assign(buffer.begin() + kFrameLength, buffer.end());
  buffer.resize(kFrameLength);
  return buffer;
}

std::vector<double> MelpDecoder::decode_frame(const MelpFrameParams& params) {
  if (auto problem = check_params(params)) throw Error(ErrorCode::kIndexOutOfRange, *problem);
  MelpFrameParams p = params;
  const bool voiced = p.overall_voiced != 0;
  if (!voiced) {
    const auto status = verify_protection(p);
    if (status == ProtectionStatus::kCorrected) ++corrected_;
    if (status == ProtectionStatus::kDetected) ++detected_;
  }

  const auto lsf = lsf_book_.dequantize(p.lsf_stages);
  dsp::Lsf first_half = lsf;
  if (previous_lsf_) {
    for (std::size_t k = 0; k < kLpcOrder; ++k) {
      first_half.omega[k] = 0.5 * (previous_lsf_->omega[k] + lsf.omega[k]);
    }
  }
  previous_lsf_ = lsf;
  const std::array<dsp::LpcCoeffs, 2> lpc{dsp::lsf_to_lpc(first_half), dsp::lsf_to_lpc(lsf)};

  MixedExcitationSpec spec;
  spec.pitch = voiced ? pitch_for_index(p.pitch_index) : kUnvoicedPitch;
  spec.jitter = voiced && p.aperiodic_flag ? config_.jitter : 0.0;
  for (std::size_t b = 0; b < kBands; ++b) {
    const bool pulse = voiced && (b == 0 || ((p.bandpass_voicing >> (kBands - 1 - b)) & 1u));
    spec.pulse_weight[b] = pulse ? 1.0 : 0.0;
    spec.noise_weight[b] = pulse ? 0.0 : 1.0;
  }
  spec.validate();

  std::vector<double> pulses(kFrameLength, 0.0);
  if (voiced) {
    pulses = pulse_track(spec.pitch, spec.jitter, fourier_book_.entry(p.fourier_index));
  } else {
    pulse_tail_.clear();
    next_pulse_ = 0.0;
  }
  std::vector<double> noise(kFrameLength);
  for (double& v : noise) v = rng_.gaussian();

  std::vector<double> excitation(kFrameLength, 0.0), mix(kFrameLength), band(kFrameLength);
  for (std::size_t b = 0; b < kBands; ++b) {
    for (std::size_t n = 0; n < kFrameLength; ++n) {
      mix[n] = spec.pulse_weight[b] * pulses[n] + spec.noise_weight[b] * noise[n];
    }
    bands_[b].process(mix, band);
    for (std::size_t n = 0; n < kFrameLength; ++n) excitation[n] += band[n];
  }

  // Amplitude ramps linearly across each half towards that half's gain.
  std::vector<double> out(kFrameLength);
  for (std::size_t h = 0; h < 2; ++h) {
    const auto ir = dsp::impulse_response(lpc[h], kImpulseLength);
    double e = 0.0;
    for (double v : ir) e += v * v;
    const double target = std::pow(10.0, gain_db_for_index(p.gains[h]) / 20.0);
    const double from = previous_amplitude_ < 0.0 ? target : previous_amplitude_;
    std::span<double> seg(excitation.data() + h * kHalfFrame, kHalfFrame);
    for (std::size_t n = 0; n < kHalfFrame; ++n) {
      const double t = static_cast<double>(n + 1) / kHalfFrame;
      seg[n] *= (from + (target - from) * t) / std::sqrt(e);
    }
    previous_amplitude_ = target;
    synthesis_.process_unchecked(seg, lpc[h], std::span<double>(out.data() + h * kHalfFrame, kHalfFrame));
  }
  return out;
}

}  // namespace lpvoc::melp
