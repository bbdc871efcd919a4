#include "lpvoc/codec/vocoder.hpp"

#include <span>
#include <variant>
#include <vector>

#include "lpvoc/bitstream/pack.hpp"
#include "lpvoc/codec/celp.hpp"
#include "lpvoc/codec/ldcelp.hpp"
#include "lpvoc/codec/melp.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc {

namespace {

celp::CelpConfig celp_config(const CodecOptions& o) {
  celp::CelpConfig c;
  if (o.seed) c.codebook_seed = *o.seed;
  return c;
}

ldcelp::LdcelpConfig ldcelp_config(const CodecOptions& o) {
  ldcelp::LdcelpConfig c;
  if (o.seed) c.codebook_seed = *o.seed;
  return c;
}

melp::MelpConfig melp_config(const CodecOptions& o) {
  melp::MelpConfig c;
  if (o.seed) c.seed = *o.seed;
  return c;
}

// Runs `encode(unit) -> (params, local synthesis)` over zero-padded units.
template <typename Encode>
EncodeResult run_encoder(const AudioSignal& signal, CodecId codec, Encode encode) {
  const auto fmt = bitstream::unit_format(codec);
  const auto unit = static_cast<std::size_t>(fmt.samples_per_unit);
  const auto units = bitstream::units_for_samples(codec, signal.size());
  std::vector<double> x = to_double(signal);
  x.resize(units * unit, 0.0);

  EncodeResult out;
  out.container.codec = codec;
  out.container.sample_count = signal.size();
  std::vector<double> recon;
  recon.reserve(x.size());
  for (std::size_t u = 0; u < units; ++u) {
    const auto [bits, local] = encode(std::span<const double>(x).subspan(u * unit, unit));
    out.container.units.push_back(bits);
    recon.insert(recon.end(), local.begin(), local.end());
  }
  recon.resize(signal.size());
  out.reconstruction = from_double(recon);
  return out;
}

}  // namespace

EncodeResult encode_signal(const AudioSignal& signal, CodecId codec,
                           const CodecOptions& options) {
  switch (codec) {
    case CodecId::kCelp: {
      celp::CelpEncoder enc(celp_config(options));
      return run_encoder(signal, codec, [&](std::span<const double> f) {
        const auto p = enc.encode_frame(f);
        return std::pair{bitstream::pack(p), enc.reconstruction()};
      });
    }
    case CodecId::kLdcelp: {
      ldcelp::LdcelpEncoder enc(ldcelp_config(options));
      return run_encoder(signal, codec, [&](std::span<const double> v) {
        const auto p = enc.encode_vector(v);
        const auto& r = enc.reconstruction();
        return std::pair{bitstream::pack(p), std::vector<double>(r.begin(), r.end())};
      });
    }
    case CodecId::kMelp: {
      // MELP has no analysis-by-synthesis loop; the local synthesis is a
      // parallel decoder.
      melp::MelpEncoder enc(melp_config(options));
      melp::MelpDecoder dec(melp_config(options));
      return run_encoder(signal, codec, [&](std::span<const double> f) {
        const auto p = enc.encode_frame(f);
        return std::pair{bitstream::pack(p), dec.decode_frame(p)};
      });
    }
  }
  throw Error(ErrorCode::kUnknownCodec, "unknown codec");
}

AudioSignal decode_container(const bitstream::Container& container,
                             const CodecOptions& options) {
  const auto fmt = bitstream::unit_format(container.codec);
  if (container.units.size() != bitstream::units_for_samples(container.codec, container.sample_count)) {
    throw Error(ErrorCode::kInconsistentContainer, "unit count does not match sample count");
  }
  std::vector<double> y;
  y.reserve(container.units.size() * static_cast<std::size_t>(fmt.samples_per_unit));
  auto append = [&](const auto& out) { y.insert(y.end(), out.begin(), out.end()); };

  switch (container.codec) {
    case CodecId::kCelp: {
      celp::CelpDecoder dec(celp_config(options));
      for (const auto& u : container.units) {
        append(dec.decode_frame(std::get<CelpFrameParams>(bitstream::unpack(u, container.codec))));
      }
      break;
    }
    case CodecId::kLdcelp: {
      ldcelp::LdcelpDecoder dec(ldcelp_config(options));
      for (const auto& u : container.units) {
        append(dec.decode_vector(std::get<LdcelpVectorParams>(bitstream::unpack(u, container.codec))));
      }
      break;
    }
    case CodecId::kMelp: {
      melp::MelpDecoder dec(melp_config(options));
      for (const auto& u : container.units) {
        append(dec.decode_frame(std::get<MelpFrameParams>(bitstream::unpack(u, container.codec))));
      }
      break;
    }
  }
  y.resize(static_cast<std::size_t>(container.sample_count));
  return from_double(y);
}

}  // namespace lpvoc
