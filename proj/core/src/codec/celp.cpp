#include "lpvoc/codec/celp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/dsp/lsf.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/rng.hpp"

namespace lpvoc::celp {

namespace {

constexpr double kClipThreshold = 1.2;
constexpr double kAnalysisBandwidthHz = 15.0;
constexpr double kLsfMinGapHz = 25.0;

// Scalar LSF quantizer levels in Hz, one table per LSF.
const std::array<std::vector<double>, 10> kLsfLevelsHz = {{
    {100, 170, 225, 250, 280, 340, 420, 500},
    {210, 235, 265, 295, 325, 360, 400, 440, 480, 520, 560, 610, 670, 740, 810, 880},
    {420, 460, 500, 540, 585, 640, 705, 775, 850, 950, 1050, 1150, 1250, 1350, 1450, 1550},
    {620, 660, 720, 795, 880, 970, 1080, 1170, 1270, 1370, 1470, 1570, 1670, 1770, 1870, 1970},
    {1000, 1050, 1130, 1210, 1285, 1350, 1430, 1510, 1590, 1670, 1750, 1850, 1950, 2050, 2150, 2250},
    {1470, 1570, 1690, 1830, 2000, 2200, 2400, 2600},
    {1800, 1880, 1960, 2100, 2300, 2480, 2700, 2900},
    {2225, 2400, 2525, 2650, 2800, 2950, 3150, 3350},
    {2760, 2880, 3000, 3100, 3200, 3310, 3430, 3550},
    {3190, 3270, 3350, 3420, 3490, 3590, 3710, 3830},
}};

double hz_to_rad(double hz) { return 2.0 * std::numbers::pi * hz / kSampleRate; }

// y = h * x truncated to x.size(), h the zero-state impulse response.
std::vector<double> convolve_truncated(std::span<const double> x,
                                       std::span<const double> h) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    for (std::size_t j = 0; k + j < n; ++j) y[k + j] += xk * h[j];
  }
  return y;
}

// All-pole filtering 1 / (1 - Q(z)) with explicit memory (newest first),
// updated in place.
void all_pole(std::span<const double> in, const dsp::LpcCoeffs& lpc,
              std::vector<double>& memory, std::span<double> out) {
  dsp::SynthesisFilter f(lpc.order());
  f.set_memory(memory);
  f.process_unchecked(in, lpc, out);
  memory = f.memory();
}

class Scorer {
 public:
  Scorer(std::span<const double> target, const GainQuantizer* quantizer)
      : target_(target), quantizer_(quantizer) {
    for (double t : target) energy_ += t * t;
  }

  void consider(int index, std::span<const double> filtered) {
    double c = 0.0;
    double e = 0.0;
    for (std::size_t n = 0; n < target_.size(); ++n) {
      c += target_[n] * filtered[n];
      e += filtered[n] * filtered[n];
    }
    const double optimal = e > 0.0 ? c / e : 0.0;
    if (quantizer_ != nullptr) {
      for (int code = 0; code < GainQuantizer::kCodes; ++code) {
        const double g = quantizer_->value(code);
        const double err = energy_ - 2.0 * g * c + g * g * e;
        offer(index, optimal, code, g, err);
      }
    } else {
      const double err = e > 0.0 ? energy_ - c * optimal : energy_;
      offer(index, optimal, 0, optimal, err);
    }
  }

  const CodebookMatch& best() const { return best_; }

 private:
  void offer(int index, double optimal, int code, double applied, double err) {
    if (have_ && !(err < best_.error)) return;
    have_ = true;
    best_ = CodebookMatch{index, optimal, code, applied, err};
  }

  std::span<const double> target_;
  const GainQuantizer* quantizer_;
  double energy_ = 0.0;
  CodebookMatch best_;
  bool have_ = false;
};

}  // namespace

StochasticCodebook::StochasticCodebook(std::uint64_t seed, std::size_t size,
                                       std::size_t length)
    : length_(length) {
  Rng rng(seed);
  vectors_.reserve(size);
  support_.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<double> v(length, 0.0);
    std::vector<std::uint16_t> nz;
    for (std::size_t n = 0; n < length; ++n) {
      const double x = rng.gaussian();
      if (x > kClipThreshold) {
        v[n] = 1.0;
      } else if (x < -kClipThreshold) {
        v[n] = -1.0;
      }
      if (v[n] != 0.0) nz.push_back(static_cast<std::uint16_t>(n));
    }
    vectors_.push_back(std::move(v));
    support_.push_back(std::move(nz));
  }
}

GainQuantizer GainQuantizer::adaptive() {
  std::array<double, 16> m{};
  for (int k = 1; k < 16; ++k) m[k] = std::exp2((k - 11) / 4.0);
  return GainQuantizer(m);
}

GainQuantizer GainQuantizer::stochastic() {
  std::array<double, 16> m{};
  for (int k = 1; k < 16; ++k) m[k] = 2.0 * std::exp2(0.85 * (k - 1));
  return GainQuantizer(m);
}

double GainQuantizer::value(int code) const {
  const double mag = magnitudes_[static_cast<std::size_t>(code & 15)];
  return (code & 16) ? -mag : mag;
}

int GainQuantizer::nearest(double gain) const {
  int best = 0;
  for (int code = 1; code < kCodes; ++code) {
    if (std::abs(value(code) - gain) < std::abs(value(best) - gain)) best = code;
  }
  return best;
}

double GainQuantizer::coarsest_step() const {
  double step = 1.0;
  for (std::size_t k = 2; k < magnitudes_.size(); ++k) {
    step = std::max(step, magnitudes_[k] / magnitudes_[k - 1]);
  }
  return step;
}

std::vector<double> adaptive_vector(std::span<const double> history, int lag,
                                    std::size_t length) {
  std::vector<double> v(length);
  const std::size_t l = static_cast<std::size_t>(lag);
  const std::size_t start = history.size() - l;
  for (std::size_t n = 0; n < length; ++n) {
    v[n] = n < l ? history[start + n] : v[n - l];
  }
  return v;
}

CodebookMatch adaptive_codebook_search(std::span<const double> target,
                                       std::span<const double> history,
                                       dsp::PitchRange lags,
                                       const dsp::LpcCoeffs& weighted_synthesis,
                                       const GainQuantizer* quantizer) {
  if (lags.min_lag < 1 || lags.max_lag < lags.min_lag) {
    throw Error(ErrorCode::kIndexOutOfRange, "empty lag range");
  }
  if (history.size() < static_cast<std::size_t>(lags.max_lag)) {
    throw Error(ErrorCode::kEmptyHistory,
                "excitation history shorter than the largest lag");
  }
  const auto h = dsp::impulse_response(weighted_synthesis, target.size());
  Scorer scorer(target, quantizer);
  for (int lag = lags.min_lag; lag <= lags.max_lag; ++lag) {
    const auto v = adaptive_vector(history, lag, target.size());
    scorer.consider(lag, convolve_truncated(v, h));
  }
  return scorer.best();
}

CodebookMatch stochastic_codebook_search(std::span<const double> target,
                                         const StochasticCodebook& codebook,
                                         const dsp::LpcCoeffs& weighted_synthesis,
                                         const GainQuantizer* quantizer) {
  if (codebook.size() == 0) {
    throw Error(ErrorCode::kEmptyCodebook, "stochastic codebook is empty");
  }
  const std::size_t n = std::min(target.size(), codebook.length());
  const auto h = dsp::impulse_response(weighted_synthesis, n);
  Scorer scorer(target, quantizer);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    std::fill(y.begin(), y.end(), 0.0);
    const auto& v = codebook.vector(i);
    for (std::uint16_t pos : codebook.support(i)) {
      if (pos >= n) continue;
      const double sign = v[pos];
      for (std::size_t j = 0; pos + j < n; ++j) y[pos + j] += sign * h[j];
    }
    scorer.consider(static_cast<int>(i), y);
  }
  return scorer.best();
}

std::array<std::uint8_t, 10> quantize_lsf(const dsp::Lsf& lsf) {
  std::array<std::uint8_t, 10> idx{};
  double previous = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    const double target = lsf.omega.at(i);
    const auto& levels = kLsfLevelsHz[i];
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    // Prefer levels above the previous choice so the ordering survives.
    for (int pass = 0; pass < 2 && best < 0; ++pass) {
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const double w = hz_to_rad(levels[k]);
        if (pass == 0 && w <= previous) continue;
        const double d = std::abs(w - target);
        if (d < best_dist) {
          best_dist = d;
          best = static_cast<int>(k);
        }
      }
    }
    idx[i] = static_cast<std::uint8_t>(best);
    previous = hz_to_rad(levels[static_cast<std::size_t>(best)]);
  }
  return idx;
}

dsp::Lsf dequantize_lsf(const std::array<std::uint8_t, 10>& indices) {
  dsp::Lsf lsf;
  lsf.omega.reserve(10);
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& levels = kLsfLevelsHz[i];
    if (indices[i] >= levels.size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "LSF index outside its table");
    }
    lsf.omega.push_back(hz_to_rad(levels[indices[i]]));
  }
  return dsp::stabilize_lsf(std::move(lsf), hz_to_rad(kLsfMinGapHz));
}

SynthesisCore::SynthesisCore(const CelpConfig& config)
    : codebook_(config.codebook_seed),
      adaptive_q_(GainQuantizer::adaptive()),
      stochastic_q_(GainQuantizer::stochastic()),
      history_(static_cast<std::size_t>(celp_layout::kMaxLag), 0.0),
      synthesis_(kLpcOrder) {}

std::array<dsp::LpcCoeffs, 4> SynthesisCore::subframe_predictors(
    const dsp::Lsf& current) const {
  const dsp::Lsf& previous = previous_lsf_ ? *previous_lsf_ : current;
  std::array<dsp::LpcCoeffs, 4> out;
  for (std::size_t s = 0; s < kSubframes; ++s) {
    const double w = kInterpolation[s];
    dsp::Lsf mixed;
    mixed.omega.resize(current.order());
    for (std::size_t i = 0; i < current.order(); ++i) {
      mixed.omega[i] = (1.0 - w) * previous.omega[i] + w * current.omega[i];
    }
    out[s] = dsp::lsf_to_lpc(mixed);
  }
  return out;
}

std::vector<double> SynthesisCore::excitation(int lag, double adaptive_gain,
                                              int index,
                                              double stochastic_gain) const {
  auto u = adaptive_vector(history_, lag, kSubframeLength);
  const auto& c = codebook_.vector(static_cast<std::size_t>(index));
  for (std::size_t n = 0; n < kSubframeLength; ++n) {
    u[n] = adaptive_gain * u[n] + stochastic_gain * c[n];
  }
  return u;
}

void SynthesisCore::commit(std::span<const double> excitation,
                           const dsp::LpcCoeffs& lpc, std::span<double> out) {
  history_.insert(history_.end(), excitation.begin(), excitation.end());
  const std::size_t keep = static_cast<std::size_t>(celp_layout::kMaxLag);
  if (history_.size() > keep) {
    history_.erase(history_.begin(),
                   history_.begin() + static_cast<std::ptrdiff_t>(history_.size() - keep));
  }
  synthesis_.process_unchecked(excitation, lpc, out);
}

void SynthesisCore::end_frame(const dsp::Lsf& current) {
  previous_lsf_ = current;
  ++frames_;
}

CelpEncoder::CelpEncoder(CelpConfig config)
    : config_(config),
      core_(config),
      input_memory_(kLpcOrder, 0.0),
      weighted_error_memory_(kLpcOrder, 0.0),
      recon_(kFrameLength, 0.0) {
  (void)dsp::WeightingSpec::celp(config.gamma);  // validates gamma
}

CelpFrameParams CelpEncoder::encode_frame(std::span<const double> frame) {
  using namespace celp_layout;
  if (frame.size() != kFrameLength) {
    throw Error(ErrorCode::kBadFrameLength, "CELP frames are 240 samples");
  }
  CelpFrameParams params;

  auto lpc = dsp::analyze_frame(frame, kLpcOrder);
  lpc = dsp::bandwidth_expand(lpc, dsp::bandwidth_gamma_for_hz(kAnalysisBandwidthHz));
  dsp::Lsf lsf;
  try {
    lsf = dsp::lpc_to_lsf(lpc);
  } catch (const Error&) {
    lsf = dsp::lpc_to_lsf(dsp::LpcCoeffs::zeros(kLpcOrder));
  }
  params.lsf_indices = quantize_lsf(lsf);
  const dsp::Lsf decoded_lsf = dequantize_lsf(params.lsf_indices);
  const auto predictors = core_.subframe_predictors(decoded_lsf);

  int previous_lag = kMinLag;
  std::vector<double> residual(kSubframeLength);
  std::vector<double> target(kSubframeLength);
  std::vector<double> scratch(kSubframeLength);
  for (std::size_t s = 0; s < kSubframes; ++s) {
    const auto sub = frame.subspan(s * kSubframeLength, kSubframeLength);
    const auto& lpc_s = predictors[s];
    const auto weighted = dsp::bandwidth_expand(lpc_s, config_.gamma);

    // Residual through 1 - Q(z), continuing from the previous input.
    for (std::size_t n = 0; n < kSubframeLength; ++n) {
      double v = sub[n];
      for (std::size_t i = 0; i < kLpcOrder; ++i) {
        const std::ptrdiff_t at = static_cast<std::ptrdiff_t>(n) - 1 - static_cast<std::ptrdiff_t>(i);
        const double past = at >= 0 ? sub[static_cast<std::size_t>(at)]
                                    : input_memory_[static_cast<std::size_t>(-at - 1)];
        v -= lpc_s.q[i] * past;
      }
      residual[n] = v;
    }
    // Weighted target: residual through 1 / (1 - Q(z/gamma)) from the
    // running weighted-error memory (includes the zero-input response).
    {
      auto mem = weighted_error_memory_;
      all_pole(residual, weighted, mem, target);
    }

    dsp::PitchRange range{kMinLag, kMaxLag};
    if (s % 2 == 1) {
      range.min_lag = std::max(kMinLag, previous_lag - kDeltaOffset);
      range.max_lag = std::min(kMaxLag, previous_lag + kDeltaOffset - 1);
    }
    const auto adaptive = adaptive_codebook_search(
        target, core_.history(), range, weighted, &core_.adaptive_gains());
    const int lag = adaptive.index;
    params.pitch[s] = static_cast<std::uint8_t>(
        s % 2 == 0 ? lag - kMinLag : lag - previous_lag + kDeltaOffset);
    params.adaptive_gain[s] = static_cast<std::uint8_t>(adaptive.gain_code);
    previous_lag = lag;

    // Remove the chosen adaptive contribution from the target.
    const auto h = dsp::impulse_response(weighted, kSubframeLength);
    const auto hv = convolve_truncated(adaptive_vector(core_.history(), lag, kSubframeLength), h);
    for (std::size_t n = 0; n < kSubframeLength; ++n) {
      scratch[n] = target[n] - adaptive.applied_gain * hv[n];
    }
    const auto stochastic = stochastic_codebook_search(
        scratch, core_.codebook(), weighted, &core_.stochastic_gains());
    params.stochastic_index[s] = static_cast<std::uint16_t>(stochastic.index);
    params.stochastic_gain[s] = static_cast<std::uint8_t>(stochastic.gain_code);

    const auto u = core_.excitation(lag, adaptive.applied_gain, stochastic.index,
                                    stochastic.applied_gain);
    core_.commit(u, lpc_s,
                 std::span<double>(recon_).subspan(s * kSubframeLength, kSubframeLength));

    for (std::size_t n = 0; n < kSubframeLength; ++n) scratch[n] = residual[n] - u[n];
    all_pole(scratch, weighted, weighted_error_memory_, target);
    for (std::size_t n = 0; n < kSubframeLength; ++n) {
      input_memory_.insert(input_memory_.begin(), sub[n]);
      input_memory_.pop_back();
    }
  }

  params.sync_bit = static_cast<std::uint8_t>(core_.frames() & 1u);
  params.error_correction = celp_pitch_parity(params.pitch);
  params.expansion_bit = 0;
  core_.end_frame(decoded_lsf);
  return params;
}

CelpDecoder::CelpDecoder(CelpConfig config) : core_(config) {}

std::vector<double> CelpDecoder::decode_frame(const CelpFrameParams& params) {
  if (auto problem = check_params(params)) {
    throw Error(ErrorCode::kIndexOutOfRange, *problem);
  }
  if (celp_pitch_parity(params.pitch) != params.error_correction) ++parity_failures_;
  const auto lags = *celp_pitch_lags(params);
  const dsp::Lsf lsf = dequantize_lsf(params.lsf_indices);
  const auto predictors = core_.subframe_predictors(lsf);
  std::vector<double> out(kFrameLength);
  for (std::size_t s = 0; s < kSubframes; ++s) {
    const auto u = core_.excitation(lags[s], core_.adaptive_gains().value(params.adaptive_gain[s]),
                                    params.stochastic_index[s],
                                    core_.stochastic_gains().value(params.stochastic_gain[s]));
    core_.commit(u, predictors[s],
                 std::span<double>(out).subspan(s * kSubframeLength, kSubframeLength));
  }
  core_.end_frame(lsf);
  return out;
}

}  // namespace lpvoc::celp
