#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpvoc/bitstream/format.hpp"
#include "lpvoc/dsp/types.hpp"

// Blinded listening test: sessions, 1-5 scores, an append-only score log
// and the per-file / per-codec MOS report.

namespace lpvoc::mos {

// 5 Excellent, 4 Good, 3 Fair, 2 Poor, 1 Bad.
class MosScore {
 public:
  // Throws kScoreOutOfRange outside 1..5.
  explicit MosScore(int value);
  int value() const noexcept { return value_; }
  std::string_view label() const noexcept;
  bool operator==(const MosScore&) const = default;

 private:
  int value_;
};

struct Sample {
  std::string id;           // listener-facing, carries no codec information
  CodecId codec = CodecId::kCelp;
  std::string source_file;  // original recording name
  std::filesystem::path wav_path;
};

struct MosRecord {
  std::string listener;
  std::string sample_id;
  CodecId codec = CodecId::kCelp;
  std::string source_file;
  MosScore score{3};
  std::string timestamp;  // ISO-8601 UTC

  bool operator==(const MosRecord&) const = default;
};

struct FileMean {
  std::string source_file;
  CodecId codec = CodecId::kCelp;
  double mean = 0.0;
  std::size_t scores = 0;
};

struct MosReport {
  std::vector<FileMean> files;             // sorted by (codec, file)
  std::map<CodecId, double> codec_average; // unweighted mean of file means
  std::size_t listeners = 0;
};

// Keeps the latest record per (listener, sample), in input order.
MosReport aggregate_mos(std::span<const MosRecord> records);
// Display rounding used by the report endpoint.
double round3(double v);

std::string iso8601(std::chrono::system_clock::time_point t);

// JSON-lines log, one MosRecord per line. Existing lines are replayed on
// construction; appends are serialized and flushed before returning.
class ScoreLog {
 public:
  // Throws kIoFailure; a malformed line throws kBadRequest naming it.
  explicit ScoreLog(std::filesystem::path path);

  void append(const MosRecord& record);
  std::vector<MosRecord> records() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::vector<MosRecord> records_;
};

std::string record_to_json(const MosRecord& record);
MosRecord record_from_json(std::string_view line);

// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> presentation_order(std::size_t n, std::uint64_t seed);

struct Session {
  std::string id;
  std::string listener;
  std::uint64_t seed = 0;
  std::vector<std::string> order;  // sample ids
  std::chrono::system_clock::time_point expires;
};

struct StudyConfig {
  std::uint64_t seed = 1;
  std::chrono::seconds session_ttl{7200};
  std::function<std::chrono::system_clock::time_point()> clock = [] {
    return std::chrono::system_clock::now();
  };
};

// Thread-safe study state shared by the HTTP handlers.
class Study {
 public:
  // Throws kNoSamples for an empty set.
  Study(std::vector<Sample> samples, std::filesystem::path log_path, StudyConfig config = {});

  // Session seed = study seed + session number; an empty listener gets a
  // generated id.
  Session create_session(std::string listener = {});
  // Throws kScoreOutOfRange, kUnknownSample, kSessionExpired (unknown or
  // expired session).
  MosRecord submit_score(const std::string& session_id, const std::string& sample_id, int value);
  MosReport report() const;

  // Throws kUnknownSample.
  const Sample& sample(const std::string& id) const;
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::vector<MosRecord> records() const { return log_.records(); }

 private:
  std::vector<Sample> samples_;
  std::map<std::string, std::size_t> by_id_;
  StudyConfig config_;
  ScoreLog log_;
  mutable std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::uint64_t session_count_ = 0;
};

// Codes every original with all three codecs into `workdir` and returns
// the samples under seeded, codec-free ids ("s01", "s02", ...).
std::vector<Sample> prepare_samples(const std::vector<std::filesystem::path>& originals,
                                    const std::filesystem::path& workdir, std::uint64_t seed);

}  // namespace lpvoc::mos
