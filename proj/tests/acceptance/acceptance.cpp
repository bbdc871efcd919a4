// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any
// criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lpvoc/analysis/analysis.hpp"
#include "lpvoc/bitstream/bits.hpp"
#include "lpvoc/bitstream/pack.hpp"
#include "lpvoc/codec/celp.hpp"
#include "lpvoc/codec/ldcelp.hpp"
#include "lpvoc/codec/melp.hpp"
#include "lpvoc/codec/vocoder.hpp"
#include "lpvoc/dsp/filters.hpp"
#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/mos/study.hpp"
#include "oracles.hpp"
#include "param_gen.hpp"

using namespace lpvoc;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* name;
  double time_limit_s;  // 0 = none
  std::function<Verdict()> check;
};

// ---- rates -----------------------------------------------------------------

Verdict rate_table() {
  const CodecId codecs[] = {CodecId::kCelp, CodecId::kLdcelp, CodecId::kMelp};
  const int rates[] = {4800, 16000, 2400};
  const std::size_t bits[] = {4320, 14400, 2160};
  const auto x = from_double(oracle::synthetic_vowel(7200, 64));
  bool ok = true;
  std::string d;
  for (int i = 0; i < 3; ++i) {
    const auto c = encode_signal(x, codecs[i]).container;
    const std::size_t payload = c.units.size() * static_cast<std::size_t>(bitstream::unit_format(codecs[i]).bits_per_unit);
    const int rate = bitstream::bitrate_of(codecs[i]);
    ok = ok && rate == rates[i] && payload == bits[i];
    d += fmt::format("{}{} b/s {} bits", i ? ", " : "", rate, payload);
  }
  return {ok, d};
}

// ---- MOS -------------------------------------------------------------------

Verdict mos_averages() {
  const double rows[5][3] = {{3.10, 4.06, 2.82}, {3.24, 4.02, 2.76}, {3.10, 3.76, 3.12},
                             {3.00, 4.58, 3.24}, {2.52, 4.26, 1.72}};
  const double averages[3] = {2.992, 4.136, 2.732};
  const CodecId codecs[] = {CodecId::kCelp, CodecId::kLdcelp, CodecId::kMelp};
  std::vector<mos::MosRecord> records;
  for (int f = 0; f < 5; ++f) {
    for (int c = 0; c < 3; ++c) {
      // 50 integer scores with the row's exact mean.
      const int total = static_cast<int>(std::lround(rows[f][c] * 50));
      for (int l = 0; l < 50; ++l) {
        const int v = total / 50 + (l < total % 50 ? 1 : 0);
        records.push_back({fmt::format("L{}", l), fmt::format("f{}c{}", f, c), codecs[c],
                           fmt::format("file{}.wav", f), mos::MosScore(v), "2026-01-01T00:00:00Z"});
      }
    }
  }
  const auto report = mos::aggregate_mos(records);
  bool ok = true;
  std::string d;
  for (int c = 0; c < 3; ++c) {
    const double got = mos::round3(report.codec_average.at(codecs[c]));
    ok = ok && got == averages[c];
    d += fmt::format("{}{:.3f}", c ? " / " : "", got);
  }
  return {ok, d};
}

// ---- dsp -------------------------------------------------------------------

Verdict levinson_oracle() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto r = oracle::autocorrelation(oracle::random_signal(seed, 160), 10);
    const auto lpc = dsp::levinson_durbin(r, 10).lpc;
    const auto dense = oracle::toeplitz_solve(r, 10);
    for (std::size_t i = 0; i < 10; ++i) worst = std::max(worst, std::abs(lpc.q[i] - dense[i]));
  }
  return {worst < 1e-8, fmt::format("max deviation {:.3g} over 1000 cases", worst)};
}

Verdict weighting_identities() {
  double worst_celp = 0.0, worst_ld = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = oracle::random_signal(seed, 10000);
    const dsp::LpcCoeffs q(oracle::random_stable_predictor(seed, 10));
    const auto a = dsp::apply_weighting_celp(x, q, 1.0);
    const auto b = dsp::apply_weighting_ldcelp(x, q, 0.9, 0.9, true);
    for (std::size_t n = 0; n < x.size(); ++n) {
      worst_celp = std::max(worst_celp, std::abs(a[n] - x[n]));
      worst_ld = std::max(worst_ld, std::abs(b[n] - x[n]));
    }
  }
  return {worst_celp <= 1e-10 && worst_ld <= 1e-10,
          fmt::format("max |y-x| {:.3g} (gamma=1), {:.3g} (gamma1=gamma2)", worst_celp, worst_ld)};
}

// ---- codebook search -------------------------------------------------------

double direct_error(const std::vector<double>& t, const std::vector<double>& y, double g) {
  double e = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) e += (t[n] - g * y[n]) * (t[n] - g * y[n]);
  return e;
}

struct Best {
  int index = -1, code = 0;
  double error = 0.0;
};

template <typename VectorFn>
Best brute_celp(const std::vector<double>& target, int lo, int hi, const std::vector<double>& wq,
                const celp::GainQuantizer& q, VectorFn vec) {
  Best best;
  for (int i = lo; i <= hi; ++i) {
    const auto y = oracle::all_pole(vec(i), wq);
    for (int code = 0; code < celp::GainQuantizer::kCodes; ++code) {
      const double e = direct_error(target, y, q.value(code));
      if (best.index < 0 || e < best.error) best = {i, code, e};
    }
  }
  return best;
}

std::vector<double> periodic(const std::vector<double>& history, int lag, std::size_t len) {
  std::vector<double> v(len);
  for (std::size_t n = 0; n < len; ++n) v[n] = history[history.size() - lag + n % lag];
  return v;
}

Verdict search_optimality() {
  const auto qa = celp::GainQuantizer::adaptive();
  const auto qs = celp::GainQuantizer::stochastic();
  const celp::StochasticCodebook book;
  std::mt19937_64 gen(11);
  int celp_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const auto wq = oracle::scaled_powers(oracle::random_stable_predictor(100 + t, 10), 0.8);
    const dsp::LpcCoeffs w(wq);
    const auto history = oracle::random_signal(200 + t, 147);
    const auto target = oracle::random_signal(300 + t, 60);
    const int lo = 20 + static_cast<int>(gen() % 40), hi = std::min(147, lo + 63);
    const auto a = celp::adaptive_codebook_search(target, history, {lo, hi}, w, &qa);
    const auto wa = brute_celp(target, lo, hi, wq, qa, [&](int lag) { return periodic(history, lag, 60); });
    const auto starget = oracle::random_signal(500 + t, 60, 50.0);
    const auto s = celp::stochastic_codebook_search(starget, book, w, &qs);
    const auto ws = brute_celp(starget, 0, 511, wq, qs, [&](int i) { return book.vector(static_cast<std::size_t>(i)); });
    celp_ok += a.index == wa.index && a.gain_code == wa.code && s.index == ws.index && s.gain_code == ws.code;
  }

  const auto x = oracle::speech_like(8000, 21);
  ldcelp::LdcelpConfig cfg;
  ldcelp::LdcelpEncoder enc(cfg);
  int ld_ok = 0;
  for (std::size_t v = 0; v < 1600; ++v) {
    const auto p = enc.encode_vector(std::span<const double>(x).subspan(v * 5, 5));
    const auto& ctx = enc.last_search();
    const auto& shapes = enc.state().codebook();
    Best best;
    int best_sign = 0;
    for (int i = 0; i < 128; ++i) {
      for (int mag = 0; mag < 4; ++mag) {
        for (int sign = 0; sign < 2; ++sign) {
          const double g = (sign ? -1.0 : 1.0) * cfg.gain_base * std::pow(2.0, mag) * ctx.predicted_gain;
          std::vector<double> exc;
          for (double c : shapes.shape(static_cast<std::size_t>(i))) exc.push_back(g * c);
          const auto y = oracle::pole_zero(oracle::all_pole(exc, ctx.synthesis.q), ctx.weighting_numerator.q,
                                           ctx.weighting_denominator.q);
          double e = 0.0;
          for (std::size_t n = 0; n < 5; ++n) e += (ctx.target[n] - y[n]) * (ctx.target[n] - y[n]);
          if (best.index < 0 || e < best.error) best = {i, mag, e}, best_sign = sign;
        }
      }
    }
    ld_ok += p.shape_index == best.index && p.gain_magnitude == best.code && p.gain_sign == best_sign;
  }
  return {celp_ok == 100 && ld_ok == 1600,
          fmt::format("CELP {}/100 subframes, LD-CELP {}/1600 vectors", celp_ok, ld_ok)};
}

// ---- bitstream -------------------------------------------------------------

Verdict bitstream_round_trip() {
  std::mt19937_64 rng(2024);
  int ok[3] = {0, 0, 0};
  bool sizes = true;
  for (int i = 0; i < 10000; ++i) {
    const auto c = gen::celp(rng);
    const auto l = gen::ldcelp(rng);
    const auto m = gen::melp(rng);
    const auto bc = bitstream::pack(c), bl = bitstream::pack(l), bm = bitstream::pack(m);
    sizes = sizes && bc.bit_count == 144 && bl.bit_count == 10 && bm.bit_count == 54;
    ok[0] += std::get<CelpFrameParams>(bitstream::unpack(bc, CodecId::kCelp)) == c;
    ok[1] += std::get<LdcelpVectorParams>(bitstream::unpack(bl, CodecId::kLdcelp)) == l;
    ok[2] += std::get<MelpFrameParams>(bitstream::unpack(bm, CodecId::kMelp)) == m;
  }
  return {sizes && ok[0] == 10000 && ok[1] == 10000 && ok[2] == 10000,
          fmt::format("identity {}/{}/{} of 10000, sizes {}", ok[0], ok[1], ok[2], sizes ? "144/10/54" : "WRONG")};
}

// ---- codecs ----------------------------------------------------------------

Verdict ldcelp_symmetry() {
  const auto x = oracle::speech_like(80000, 3);
  ldcelp::LdcelpEncoder enc;
  ldcelp::LdcelpDecoder dec;
  std::size_t mismatches = 0;
  for (std::size_t v = 0; v < x.size() / 5; ++v) {
    const auto p = enc.encode_vector(std::span<const double>(x).subspan(v * 5, 5));
    const auto bits = bitstream::pack(p);
    bitstream::BitReader reader(bits);
    mismatches += dec.decode_vector(bitstream::unpack_ldcelp(reader)) != enc.reconstruction();
  }
  return {mismatches == 0, fmt::format("{} of 16000 vectors differ over 10 s", mismatches)};
}

Verdict melp_behaviour() {
  using namespace melp;
  std::vector<double> train(360, 0.0), jitter(360, 0.0);
  for (std::size_t i = 0; i < 360; i += 80) train[i] = 1000.0;
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (double pos = 0.0; pos < 360.0; pos += 80.0 * (1.0 + u(g))) jitter[static_cast<std::size_t>(pos)] = 1000.0;
  std::normal_distribution<double> nd(0.0, 1000.0);
  std::mt19937_64 ng(7);
  std::vector<double> noise(360);
  for (double& v : noise) v = nd(ng);

  const auto classify = [](const std::vector<double>& x) {
    return melp_classify(std::span(x).subspan(180, 180), std::span(x).subspan(0, 180)).voicing;
  };
  const auto cv = classify(train), cn = classify(noise), cj = classify(jitter);

  MelpEncoder enc;
  enc.encode_frame(std::span(jitter).subspan(0, 180));
  const auto bits = bitstream::pack(enc.encode_frame(std::span(jitter).subspan(180, 180)));
  bitstream::BitReader reader(bits);
  const auto packed = bitstream::unpack_melp(reader);

  MelpDecoder dec;
  MelpFrameParams p;
  p.gains = {12, 12};
  p.pitch_index = static_cast<std::uint8_t>(pitch_index_for(80.0));
  p.overall_voiced = 1;
  p.bandpass_voicing = 0xF;
  std::vector<double> y;
  for (int f = 0; f < 8; ++f) {
    const auto out = dec.decode_frame(p);
    if (f >= 2) y.insert(y.end(), out.begin(), out.end());
  }
  const int lag = oracle::autocorr_peak_lag(y, 20, 147);

  const bool ok = cv == VoicingClass::kVoiced && cn == VoicingClass::kUnvoiced &&
                  cj == VoicingClass::kJitteryVoiced && packed.aperiodic_flag == 1 && std::abs(lag - 80) <= 2;
  return {ok, fmt::format("train {}, noise {}, jittered {} (aperiodic bit {}), synthesis peak lag {}", to_string(cv),
                          to_string(cn), to_string(cj), packed.aperiodic_flag, lag)};
}

// ---- analysis --------------------------------------------------------------

Verdict analysis_checks() {
  std::vector<double> tone(8000);
  for (std::size_t i = 0; i < tone.size(); ++i) tone[i] = 10000.0 * std::sin(2.0 * std::numbers::pi * 1000.0 * i / 8000.0);
  const auto s = analysis::spectrogram(tone);
  const double bin = 8000.0 / 512.0;
  double worst_peak = 0.0;
  for (std::size_t f = 0; f < s.times.size(); ++f) worst_peak = std::max(worst_peak, std::abs(s.peak_frequency(f) - 1000.0));

  std::vector<double> train(16000, 0.0);
  for (std::size_t i = 0; i < train.size(); i += 80) train[i] = 5000.0;
  const auto pc = analysis::pitch_contour(train);
  double worst_pitch = 0.0;
  bool all_voiced = true;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    all_voiced = all_voiced && pc.voiced[i];
    worst_pitch = std::max(worst_pitch, std::abs(pc.values[i] - 100.0));
  }

  const auto x = oracle::speech_like(8000, 6);
  std::vector<double> x2(x);
  for (double& v : x2) v *= 2.0;
  const auto a = analysis::intensity_contour(x), b = analysis::intensity_contour(x2);
  double worst_step = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst_step = std::max(worst_step, std::abs(b.values[i] - a.values[i] - 6.02));

  const double snr = analysis::segmental_snr(x, x);
  const bool ok = worst_peak <= bin && all_voiced && worst_pitch <= 1.0 && worst_step <= 0.01 && snr == 35.0;
  return {ok, fmt::format("peak err {:.2f} Hz (bin {:.2f}), pitch err {:.3f} Hz{}, +6 dB step err {:.4f}, segSNR(x,x) {:.2f} dB",
                          worst_peak, bin, worst_pitch, all_voiced ? "" : " (unvoiced frames!)", worst_step, snr)};
}

Verdict end_to_end() {
  const auto sig = from_double(oracle::synthetic_vowel(16000, 67));
  const auto ref = to_double(sig);
  const double floor = 1e-5 * kFullScale;
  const auto celp_out = to_double(decode_container(encode_signal(sig, CodecId::kCelp).container));
  const auto ld_out = to_double(decode_container(encode_signal(sig, CodecId::kLdcelp).container));
  const double snr_celp = analysis::segmental_snr(ref, celp_out, 160, floor);
  // LD-CELP's backward adaptation starts cold; the first 10 ms are skipped.
  const std::vector<double> r(ref.begin() + 80, ref.end()), d(ld_out.begin() + 80, ld_out.end());
  const double snr_ld = analysis::segmental_snr(r, d, 160, floor);
  return {snr_celp > 5.0 && snr_ld > 10.0, fmt::format("CELP {:.2f} dB (> 5), LD-CELP {:.2f} dB (> 10)", snr_celp, snr_ld)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"bit rates and payload sizes", 1.0, rate_table},
      {"per-codec MOS average aggregation", 0, mos_averages},
      {"Levinson-Durbin vs dense Toeplitz solve", 5.0, levinson_oracle},
      {"weighting filter degenerate identities", 0, weighting_identities},
      {"codebook search optimality", 30.0, search_optimality},
      {"bitstream round trip", 0, bitstream_round_trip},
      {"LD-CELP encoder/decoder state symmetry", 0, ldcelp_symmetry},
      {"MELP behavioural checks", 0, melp_behaviour},
      {"analysis oracle checks", 0, analysis_checks},
      {"end-to-end quality smoke", 0, end_to_end},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += fmt::format(" [over {:.0f} s budget]", c.time_limit_s);
    }
    failures += !v.pass;
    fmt::print("{} {}: {} ({:.2f} s)\n", v.pass ? "PASS" : "FAIL", c.name, v.detail, secs);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
