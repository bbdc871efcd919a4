#include "lpvoc/mos/server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "lpvoc/audio/wav.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc::mos {

using nlohmann::json;

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kScoreOutOfRange:
    case ErrorCode::kBadRequest: return 400;
    case ErrorCode::kUnknownSample: return 404;
    case ErrorCode::kSessionExpired: return 409;
    default: return 500;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send_json(res, status, json{{"error", code}, {"message", message}});
}

// Runs a handler, mapping library errors onto HTTP status codes.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "BadRequest", e.what());
  }
}

json session_json(const Session& s) {
  json samples = json::array();
  for (const auto& id : s.order) samples.push_back({{"id", id}, {"audio_url", "/api/audio/" + id}});
  json scale = json::array();
  for (int v = 5; v >= 1; --v) scale.push_back({{"value", v}, {"label", MosScore(v).label()}});
  return {{"session_id", s.id}, {"listener", s.listener}, {"seed", s.seed},
          {"samples", samples}, {"scale", scale}};
}

json report_json(const MosReport& r) {
  json files = json::array();
  for (const auto& f : r.files) {
    files.push_back({{"source_file", f.source_file},
                     {"codec", bitstream::codec_name(f.codec)},
                     {"mean", round3(f.mean)},
                     {"scores", f.scores}});
  }
  json codecs = json::object();
  for (const auto& [codec, avg] : r.codec_average) codecs[std::string(bitstream::codec_name(codec))] = round3(avg);
  return {{"listeners", r.listeners}, {"files", files}, {"codecs", codecs}};
}

}  // namespace

struct Server::Impl {
  explicit Impl(Study& s) : study(s) {}
  Study& study;
  httplib::Server http;
};

Server::Server(Study& study) : impl_(std::make_unique<Impl>(study)) {
  auto& http = impl_->http;
  Study& st = study;

  http.Get("/api/session", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto listener = req.has_param("listener") ? req.get_param_value("listener") : std::string();
      send_json(res, 200, session_json(st.create_session(listener)));
    });
  });

  http.Get(R"(/api/audio/([A-Za-z0-9_.\-]+))", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto& s = st.sample(req.matches[1].str());
      const auto bytes = audio::read_file(s.wav_path);
      res.status = 200;
      res.set_content(std::string(bytes.begin(), bytes.end()), "audio/wav");
    });
  });

  http.Post("/api/scores", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = json::parse(req.body);
      const auto& score = body.at("score");
      if (!score.is_number_integer()) throw Error(ErrorCode::kScoreOutOfRange, "score must be an integer 1..5");
      const auto r = st.submit_score(body.at("session_id").get<std::string>(),
                                     body.at("sample_id").get<std::string>(), score.get<int>());
      send_json(res, 201,
                json{{"listener", r.listener}, {"sample_id", r.sample_id}, {"score", r.score.value()},
                     {"label", r.score.label()}, {"timestamp", r.timestamp}});
    });
  });

  http.Get("/api/results", [&st](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, report_json(st.report())); });
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  auto& http = impl_->http;
  if (port == 0) {
    const int bound = http.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIoFailure, "cannot bind " + host);
    return bound;
  }
  if (!http.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoFailure, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace lpvoc::mos
