#include "lpvoc/mos/study.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <utility>

#include <json.hpp>

#include "lpvoc/audio/wav.hpp"
#include "lpvoc/codec/vocoder.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/rng.hpp"

namespace lpvoc::mos {

using nlohmann::json;

MosScore::MosScore(int value) : value_(value) {
  if (value < 1 || value > 5) {
    throw Error(ErrorCode::kScoreOutOfRange, fmt::format("score {} is outside 1..5", value));
  }
}

std::string_view MosScore::label() const noexcept {
  static constexpr std::string_view kLabels[] = {"Bad", "Poor", "Fair", "Good", "Excellent"};
  return kLabels[value_ - 1];
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

MosReport aggregate_mos(std::span<const MosRecord> records) {
  std::map<std::pair<std::string, std::string>, const MosRecord*> latest;
  for (const auto& r : records) latest[{r.listener, r.sample_id}] = &r;

  std::map<std::pair<CodecId, std::string>, std::pair<double, std::size_t>> sums;
  std::set<std::string> listeners;
  for (const auto& [key, r] : latest) {
    auto& s = sums[{r->codec, r->source_file}];
    s.first += r->score.value();
    ++s.second;
    listeners.insert(r->listener);
  }

  MosReport report;
  report.listeners = listeners.size();
  std::map<CodecId, std::pair<double, std::size_t>> per_codec;
  for (const auto& [key, s] : sums) {
    const double mean = s.first / static_cast<double>(s.second);
    report.files.push_back({key.second, key.first, mean, s.second});
    auto& c = per_codec[key.first];
    c.first += mean;
    ++c.second;
  }
  for (const auto& [codec, c] : per_codec) {
    report.codec_average[codec] = c.first / static_cast<double>(c.second);
  }
  return report;
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1,
                     tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

std::string record_to_json(const MosRecord& r) {
  const json j{{"listener", r.listener},
               {"sample_id", r.sample_id},
               {"codec", std::string(bitstream::codec_name(r.codec))},
               {"source_file", r.source_file},
               {"score", r.score.value()},
               {"label", std::string(r.score.label())},
               {"timestamp", r.timestamp}};
  return j.dump();
}

MosRecord record_from_json(std::string_view line) {
  try {
    const auto j = json::parse(line);
    const auto codec = bitstream::codec_from_name(j.at("codec").get<std::string>());
    if (!codec) throw Error(ErrorCode::kUnknownCodec, "unknown codec in score record");
    return MosRecord{j.at("listener").get<std::string>(),
                     j.at("sample_id").get<std::string>(),
                     *codec,
                     j.at("source_file").get<std::string>(),
                     MosScore(j.at("score").get<int>()),
                     j.at("timestamp").get<std::string>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadRequest, std::string("malformed score record: ") + e.what());
  }
}

ScoreLog::ScoreLog(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) {
    std::ofstream create(path_, std::ios::app);
    if (!create) throw Error(ErrorCode::kIoFailure, "cannot create score log " + path_.string());
    return;
  }
  std::ifstream in(path_);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read score log " + path_.string());
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    try {
      records_.push_back(record_from_json(line));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{} line {}: {}", path_.string(), n, e.what()));
    }
  }
}

void ScoreLog::append(const MosRecord& record) {
  const std::string line = record_to_json(record) + "\n";
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out << line;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot append to " + path_.string());
  records_.push_back(record);
}

std::vector<MosRecord> ScoreLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::vector<std::size_t> presentation_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

Study::Study(std::vector<Sample> samples, std::filesystem::path log_path, StudyConfig config)
    : samples_(std::move(samples)), config_(std::move(config)), log_(std::move(log_path)) {
  if (samples_.empty()) throw Error(ErrorCode::kNoSamples, "a study needs at least one sample");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!by_id_.emplace(samples_[i].id, i).second) {
      throw Error(ErrorCode::kBadRequest, "duplicate sample id " + samples_[i].id);
    }
  }
}

Session Study::create_session(std::string listener) {
  std::lock_guard lock(mutex_);
  const std::uint64_t number = ++session_count_;
  Session s;
  s.seed = config_.seed + number;
  s.id = fmt::format("session-{:016x}", Rng(s.seed ^ 0x5E55105Eull).below(UINT64_MAX));
  s.listener = listener.empty() ? fmt::format("listener-{}", number) : std::move(listener);
  for (std::size_t i : presentation_order(samples_.size(), s.seed)) s.order.push_back(samples_[i].id);
  s.expires = config_.clock() + config_.session_ttl;
  sessions_[s.id] = s;
  return s;
}

MosRecord Study::submit_score(const std::string& session_id, const std::string& sample_id, int value) {
  const MosScore score(value);
  const auto& smp = sample(sample_id);
  std::string listener;
  const auto now = config_.clock();
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session_id);
    if (it == sessions_.end() || now >= it->second.expires) {
      throw Error(ErrorCode::kSessionExpired, "session " + session_id + " is unknown or expired");
    }
    listener = it->second.listener;
  }
  MosRecord r{listener, smp.id, smp.codec, smp.source_file, score, iso8601(now)};
  log_.append(r);
  return r;
}

MosReport Study::report() const {
  const auto records = log_.records();
  return aggregate_mos(records);
}

const Sample& Study::sample(const std::string& id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error(ErrorCode::kUnknownSample, "no sample " + id);
  return samples_[it->second];
}

std::vector<Sample> prepare_samples(const std::vector<std::filesystem::path>& originals,
                                    const std::filesystem::path& workdir, std::uint64_t seed) {
  if (originals.empty()) throw Error(ErrorCode::kNoSamples, "no input recordings");
  std::filesystem::create_directories(workdir);
  std::vector<Sample> out;
  std::vector<AudioSignal> coded;
  for (const auto& path : originals) {
    const auto signal = audio::read_wav(path);
    for (CodecId codec : {CodecId::kCelp, CodecId::kLdcelp, CodecId::kMelp}) {
      coded.push_back(decode_container(encode_signal(signal, codec).container));
      out.push_back({"", codec, path.filename().string(), {}});
    }
  }
  // Ids (and file names) follow a seeded shuffle so they reveal nothing.
  const auto order = presentation_order(out.size(), seed);
  for (std::size_t k = 0; k < order.size(); ++k) {
    Sample& s = out[order[k]];
    s.id = fmt::format("s{:02}", k + 1);
    s.wav_path = workdir / (s.id + ".wav");
    audio::write_wav(coded[order[k]], s.wav_path);
  }
  return out;
}

}  // namespace lpvoc::mos
