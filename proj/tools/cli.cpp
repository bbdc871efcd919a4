#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#include "lpvoc/analysis/analysis.hpp"
#include "lpvoc/audio/wav.hpp"
#include "lpvoc/bitstream/container.hpp"
#include "lpvoc/codec/vocoder.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/mos/server.hpp"
#include "lpvoc/mos/study.hpp"

namespace lpvoc::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kFailure = 2;

// Decimal, or hexadecimal with a 0x prefix.
std::uint64_t parse_seed(const std::string& text, const char* what) {
  const bool hex = text.rfind("0x", 0) == 0;
  const char* first = text.data() + (hex ? 2 : 0);
  const char* last = text.data() + text.size();
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(first, last, v, hex ? 16 : 10);
  if (first == last || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kBadRequest, fmt::format("{} is not an unsigned integer: '{}'", what, text));
  }
  return v;
}

// --seed wins over LPVOC_SEED; neither means built-in codebooks.
CodecOptions codec_options(const std::optional<std::string>& seed_flag) {
  CodecOptions o;
  if (seed_flag) {
    o.seed = parse_seed(*seed_flag, "--seed");
  } else if (const char* env = std::getenv("LPVOC_SEED"); env && *env) {
    o.seed = parse_seed(env, "LPVOC_SEED");
  }
  return o;
}

CodecId codec_arg(const std::string& name) {
  const auto id = bitstream::codec_from_name(name);
  if (!id) throw Error(ErrorCode::kUnknownCodec, "unknown codec '" + name + "'");
  return *id;
}

std::vector<double> read_pcm(const fs::path& p) { return to_double(audio::read_wav(p)); }

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  audio::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear-prediction vocoders (CELP 4.8 kb/s, LD-CELP 16 kb/s, MELP 2.4 kb/s)", "lpvoc"};
  app.require_subcommand(1);
  std::optional<std::string> seed;

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a WAV file into a .lpvc container");
  std::string codec, input, output, dump;
  bool raw = false;
  enc->add_option("-c,--codec", codec, "celp | ldcelp | melp")->required();
  enc->add_option("-i,--input", input, "8 kHz mono 16-bit WAV")->required();
  enc->add_option("-o,--output", output, "container path")->required();
  enc->add_flag("--raw", raw, "read headerless 16-bit little-endian PCM");
  enc->add_option("--dump-reconstruction", dump, "also write the encoder-side synthesis as WAV");
  enc->add_option("--seed", seed, "codebook seed (overrides LPVOC_SEED)");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a .lpvc container into WAV");
  dec->add_option("-i,--input", input, "container path")->required();
  dec->add_option("-o,--output", output, "WAV path")->required();
  dec->add_option("--seed", seed, "codebook seed (overrides LPVOC_SEED)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Spectrogram, pitch or intensity CSV");
  bool spec = false, pitch = false, intensity = false;
  analysis::SpectrogramConfig scfg;
  analysis::ContourConfig ccfg;
  ana->add_option("-i,--input", input, "WAV path")->required();
  ana->add_option("-o,--output", output, "CSV path (default stdout)");
  auto* kinds = ana->add_option_group("kind");
  kinds->add_flag("--spectrogram", spec);
  kinds->add_flag("--pitch", pitch);
  kinds->add_flag("--intensity", intensity);
  kinds->require_option(1);
  ana->add_option("--window", scfg.window, "spectrogram window, samples")->capture_default_str();
  ana->add_option("--hop", scfg.hop, "hop, samples")->capture_default_str();
  ana->add_option("--fft", scfg.fft_size, "FFT size")->capture_default_str();
  ana->add_option("--frame", ccfg.frame, "contour frame, samples")->capture_default_str();

  // compare
  auto* cmp = app.add_subcommand("compare", "Segmental SNR of a degraded file against a reference");
  std::string reference, degraded;
  cmp->add_option("-r,--reference", reference)->required();
  cmp->add_option("-d,--degraded", degraded)->required();

  // serve
  auto* srv = app.add_subcommand("serve", "Run the listening-test HTTP service");
  std::vector<std::string> originals;
  std::string workdir = "mos-work", log_path, host = "127.0.0.1";
  int port = 8080;
  srv->add_option("-i,--input", originals, "original recordings")->required();
  srv->add_option("--workdir", workdir, "where coded samples are written")->capture_default_str();
  srv->add_option("--log", log_path, "score log (default <workdir>/scores.jsonl)");
  srv->add_option("--host", host)->capture_default_str();
  srv->add_option("--port", port)->capture_default_str();
  srv->add_option("--seed", seed, "presentation seed");

  std::vector<std::string> argv_store{"lpvoc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lpvoc: " << e.what() << "\n";
    return kFailure;
  }

  try {
    if (*enc) {
      const CodecId id = codec_arg(codec);
      const auto signal = raw ? audio::raw_import(input) : audio::read_wav(input);
      const auto result = encode_signal(signal, id, codec_options(seed));
      audio::write_file(output, bitstream::container_write(result.container));
      if (!dump.empty()) audio::write_wav(result.reconstruction, dump);
      const auto fmt_unit = bitstream::unit_format(id);
      const auto units = result.container.units.size();
      fmt::print(out, "codec: {}\n{}: {}\nbits: {}\nbit rate: {} b/s\nsamples: {}\n",
                 bitstream::codec_name(id), id == CodecId::kLdcelp ? "vectors" : "frames", units,
                 units * static_cast<std::size_t>(fmt_unit.bits_per_unit), bitstream::bitrate_of(id),
                 signal.size());
    } else if (*dec) {
      const auto container = bitstream::container_read(audio::read_file(input));
      const auto signal = decode_container(container, codec_options(seed));
      audio::write_wav(signal, output);
      fmt::print(out, "codec: {}\nsamples: {}\n", bitstream::codec_name(container.codec), signal.size());
    } else if (*ana) {
      const auto x = read_pcm(input);
      ccfg.hop = scfg.hop;
      std::string csv;
      if (spec) {
        csv = analysis::spectrogram_csv(analysis::spectrogram(x, scfg));
      } else if (pitch) {
        csv = analysis::contour_csv(analysis::pitch_contour(x, ccfg));
      } else {
        csv = analysis::contour_csv(analysis::intensity_contour(x, ccfg));
      }
      write_text(csv, output, out);
    } else if (*cmp) {
      const double snr = analysis::segmental_snr(read_pcm(reference), read_pcm(degraded));
      fmt::print(out, "{:.2f} dB\n", snr);
    } else if (*srv) {
      const std::uint64_t s = seed ? parse_seed(*seed, "--seed") : 1;
      std::vector<fs::path> paths(originals.begin(), originals.end());
      auto samples = mos::prepare_samples(paths, workdir, s);
      mos::Study study(std::move(samples), log_path.empty() ? fs::path(workdir) / "scores.jsonl" : fs::path(log_path),
                       mos::StudyConfig{.seed = s});
      mos::Server server(study);
      const int bound = server.bind(host, port);
      fmt::print(err, "lpvoc: serving {} samples on http://{}:{} (seed {})\n", study.samples().size(), host,
                 bound, s);
      server.listen();
    }
  } catch (const std::exception& e) {
    err << "lpvoc: " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}

}  // namespace lpvoc::cli
