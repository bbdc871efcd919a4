#include "lpvoc/codec/ldcelp.hpp"

#include <algorithm>
#include <cmath>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/rng.hpp"

namespace lpvoc::ldcelp {

namespace {

constexpr double kWhiteNoiseCorrection = 1.0001;

template <typename T>
void push_history(std::vector<T>& history, std::span<const double> values) {
  history.erase(history.begin(), history.begin() + static_cast<std::ptrdiff_t>(values.size()));
  history.insert(history.end(), values.begin(), values.end());
}

dsp::LpcCoeffs scaled(const dsp::LpcCoeffs& lpc, double gamma) {
  return dsp::bandwidth_expand(lpc, gamma);
}

}  // namespace

void LdcelpConfig::validate() const {
  if (order == 0 || order > kMaxOrder || weighting_order == 0 ||
      weighting_order > kMaxOrder) {
    throw Error(ErrorCode::kUnsupportedOrder, "predictor order must be 1..50");
  }
  if (window <= std::max(order, weighting_order) || adapt_every == 0 || gain_memory == 0) {
    throw Error(ErrorCode::kUnsupportedOrder, "window, cadence and gain memory must be positive; window above the order");
  }
  (void)dsp::WeightingSpec::ldcelp(gamma1, gamma2);
  if (!(bandwidth > 0.0 && bandwidth <= 1.0)) {
    throw Error(ErrorCode::kGammaOutOfRange, "bandwidth factor must be in (0, 1]");
  }
}

ShapeCodebook::ShapeCodebook(std::uint64_t seed) {
  Rng rng(seed);
  shapes_.resize(kShapes);
  for (auto& s : shapes_) {
    double energy = 0.0;
    for (double& v : s) {
      v = rng.gaussian();
      energy += v * v;
    }
    const double scale = std::sqrt(static_cast<double>(kVectorLength) / energy);
    for (double& v : s) v *= scale;
  }
}

double gain_multiplier(const LdcelpConfig& config, int magnitude, int sign) {
  const double g = config.gain_base * std::exp2(magnitude);
  return sign ? -g : g;
}

std::optional<dsp::LpcCoeffs> fit_predictor(std::span<const double> history,
                                            std::size_t order, double bandwidth) {
  auto r = dsp::autocorrelate(history, order);
  if (!(r[0] > 0.0)) return std::nullopt;
  r[0] *= kWhiteNoiseCorrection;
  try {
    auto fit = dsp::levinson_durbin(r, order);
    return dsp::bandwidth_expand(fit.lpc, bandwidth);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularAutocorrelation) throw;
    return std::nullopt;
  }
}

BackwardState::BackwardState(const LdcelpConfig& config)
    : config_((config.validate(), config)),
      codebook_(config.codebook_seed),
      lpc_(dsp::LpcCoeffs::zeros(config.order)),
      synthesis_(config.order),
      history_(config.window, 0.0),
      recent_energy_(config.gain_memory, config.initial_gain * config.initial_gain),
      gain_(config.initial_gain) {}

void BackwardState::begin_vector() {
  if (vectors_ == 0 || vectors_ % config_.adapt_every != 0) return;
  if (auto fit = fit_predictor(history_, config_.order, config_.bandwidth)) {
    lpc_ = std::move(*fit);
  }
  ++adaptations_;
}

std::array<double, kVectorLength> BackwardState::commit(std::span<const double> excitation) {
  std::array<double, kVectorLength> out{};
  synthesis_.process_unchecked(excitation, lpc_, out);
  push_history(history_, out);
  double energy = 0.0;
  for (double v : excitation) energy += v * v;
  recent_energy_.erase(recent_energy_.begin());
  recent_energy_.push_back(energy / static_cast<double>(excitation.size()));
  double mean = 0.0;
  for (double e : recent_energy_) mean += e;
  mean /= static_cast<double>(recent_energy_.size());
  gain_ = std::clamp(std::sqrt(mean), config_.min_gain, config_.max_gain);
  ++vectors_;
  return out;
}

LdcelpEncoder::LdcelpEncoder(LdcelpConfig config)
    : state_(config),
      weighting_lpc_(dsp::LpcCoeffs::zeros(config.weighting_order)),
      numerator_(dsp::LpcCoeffs::zeros(config.weighting_order)),
      denominator_(dsp::LpcCoeffs::zeros(config.weighting_order)),
      input_weighting_(config.weighting_order),
      output_weighting_(config.weighting_order),
      input_history_(config.window, 0.0) {}

void LdcelpEncoder::adapt_weighting() {
  const auto& cfg = state_.config();
  if (state_.vectors() == 0 || state_.vectors() % cfg.adapt_every != 0) return;
  if (auto fit = fit_predictor(input_history_, cfg.weighting_order, 1.0)) {
    weighting_lpc_ = std::move(*fit);
    numerator_ = scaled(weighting_lpc_, cfg.gamma1);
    denominator_ = scaled(weighting_lpc_, cfg.gamma2);
  }
}

LdcelpVectorParams LdcelpEncoder::encode_vector(std::span<const double> input) {
  if (input.size() != kVectorLength) {
    throw Error(ErrorCode::kBadFrameLength, "LD-CELP vectors are 5 samples");
  }
  const auto& cfg = state_.config();
  state_.begin_vector();
  adapt_weighting();
  const double sigma = state_.predicted_gain();
  const auto& lpc = state_.predictor();

  // Target: weighted input minus the zero-input response of W(z)/A(z).
  std::array<double, kVectorLength> weighted{};
  input_weighting_.process(input, numerator_, denominator_, weighted);
  std::array<double, kVectorLength> zeros{};
  std::array<double, kVectorLength> zir{};
  {
    auto syn = state_.synthesis();
    auto wt = output_weighting_;
    syn.process_unchecked(zeros, lpc, zir);
    wt.process(zir, numerator_, denominator_, zir);
  }
  std::array<double, kVectorLength> target{};
  for (std::size_t n = 0; n < kVectorLength; ++n) target[n] = weighted[n] - zir[n];

  // Zero-state impulse response of the cascade.
  std::array<double, kVectorLength> h{};
  {
    dsp::SynthesisFilter syn(lpc.order());
    dsp::PoleZeroFilter wt(numerator_.order());
    std::array<double, kVectorLength> impulse{1.0};
    syn.process_unchecked(impulse, lpc, h);
    wt.process(h, numerator_, denominator_, h);
  }

  double tt = 0.0;
  for (double t : target) tt += t * t;
  LdcelpVectorParams best;
  double best_error = 0.0;
  bool have = false;
  const auto& book = state_.codebook();
  for (std::size_t i = 0; i < book.size(); ++i) {
    const auto& c = book.shape(i);
    double cross = 0.0;
    double energy = 0.0;
    for (std::size_t n = 0; n < kVectorLength; ++n) {
      double y = 0.0;
      for (std::size_t k = 0; k <= n; ++k) y += c[k] * h[n - k];
      y *= sigma;
      cross += target[n] * y;
      energy += y * y;
    }
    for (int mag = 0; mag < static_cast<int>(kGainLevels); ++mag) {
      for (int sign = 0; sign < 2; ++sign) {
        const double g = gain_multiplier(cfg, mag, sign);
        const double err = tt - 2.0 * g * cross + g * g * energy;
        if (!have || err < best_error) {
          have = true;
          best_error = err;
          best = LdcelpVectorParams{static_cast<std::uint8_t>(i),
                                    static_cast<std::uint8_t>(mag),
                                    static_cast<std::uint8_t>(sign)};
        }
      }
    }
  }

  context_ = SearchContext{target, lpc, numerator_, denominator_, sigma, best_error};

  const double g = sigma * gain_multiplier(cfg, best.gain_magnitude, best.gain_sign);
  std::array<double, kVectorLength> excitation{};
  const auto& shape = book.shape(best.shape_index);
  for (std::size_t n = 0; n < kVectorLength; ++n) excitation[n] = g * shape[n];
  recon_ = state_.commit(excitation);

  std::array<double, kVectorLength> discard{};
  output_weighting_.process(recon_, numerator_, denominator_, discard);
  push_history(input_history_, input);
  return best;
}

LdcelpDecoder::LdcelpDecoder(LdcelpConfig config) : state_(config) {}

std::array<double, kVectorLength> LdcelpDecoder::decode_vector(const LdcelpVectorParams& params) {
  if (auto problem = check_params(params)) {
    throw Error(ErrorCode::kIndexOutOfRange, *problem);
  }
  state_.begin_vector();
  const double g = state_.predicted_gain() *
                   gain_multiplier(state_.config(), params.gain_magnitude, params.gain_sign);
  std::array<double, kVectorLength> excitation{};
  const auto& shape = state_.codebook().shape(params.shape_index);
  for (std::size_t n = 0; n < kVectorLength; ++n) excitation[n] = g * shape[n];
  return state_.commit(excitation);
}

}  // namespace lpvoc::ldcelp
