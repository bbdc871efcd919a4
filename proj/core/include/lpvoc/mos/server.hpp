#pragma once

#include <memory>
#include <string>

#include "lpvoc/mos/study.hpp"

// HTTP front end for a Study:
//   GET  /api/session[?listener=ID]  new blinded session
//   GET  /api/audio/{sample id}      prepared WAV bytes
//   POST /api/scores                 {"session_id","sample_id","score"} -> 201
//   GET  /api/results                MOS report
// Errors: 400 bad body or score, 404 unknown sample, 409 expired session.

namespace lpvoc::mos {

class Server {
 public:
  explicit Server(Study& study);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Returns the bound port (port 0 picks a free one). Throws kIoFailure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lpvoc::mos
