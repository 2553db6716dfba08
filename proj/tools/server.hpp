#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "bwslex/campaign.hpp"

namespace httplib {
class Server;
}

namespace bwslex::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Directory with the annotation UI build; a placeholder page is served when empty.
  std::optional<std::filesystem::path> ui_dir;
};

// JSON endpoints over a Campaign:
//   GET  /api/task?annotator=<id>  -> 200 {"tuple_id", "items"} | 204
//   POST /api/response             -> 200 {"status": "ok"|"duplicate"} | 400 {"error"}
//   GET  /api/progress             -> 200 {"tuples_total", "tuples_complete", "responses_total", "fraction_complete"}
//   GET  /                         -> annotation UI
class AnnotationServer {
 public:
  AnnotationServer(Campaign& campaign, ServerOptions options);
  ~AnnotationServer();

  // Binds the socket; returns the bound port. Throws IoError on failure.
  int bind();
  // Serves until stop(). bind() must have been called.
  void run();
  void stop();

 private:
  void install_routes();

  Campaign& campaign_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace bwslex::service
