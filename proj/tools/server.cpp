#include "server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "bwslex/error.hpp"

namespace bwslex::service {

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html lang="en"><head><meta charset="utf-8"><title>Annotation</title></head>
<body>
<h1>Annotation service</h1>
<p>The annotation UI assets are not installed. Start the service with <code>--ui-dir</code>
pointing at the UI build, or use the JSON API directly:</p>
<ul>
<li><code>GET /api/task?annotator=ID</code></li>
<li><code>POST /api/response</code> with <code>{"annotator_id","tuple_id","best","worst"}</code></li>
<li><code>GET /api/progress</code></li>
</ul>
</body></html>
)";

void json_error(httplib::Response& res, int status, const std::string& reason) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", reason}}.dump(), kJson);
}

}  // namespace

AnnotationServer::AnnotationServer(Campaign& campaign, ServerOptions options)
    : campaign_(campaign), options_(std::move(options)), http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

AnnotationServer::~AnnotationServer() { stop(); }

void AnnotationServer::install_routes() {
  http_->Get("/api/task", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = req.get_param_value("annotator");
    if (annotator.empty()) return json_error(res, 400, "missing annotator parameter");
    const auto task = campaign_.next_task(annotator);
    if (!task) {
      res.status = 204;
      return;
    }
    res.set_content(task_to_client_json(*task), kJson);
  });

  http_->Post("/api/response", [this](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error&) {
      return json_error(res, 400, "request body is not valid JSON");
    }
    for (const char* field : {"annotator_id", "tuple_id", "best", "worst"}) {
      if (!body.is_object() || !body.contains(field) || !body[field].is_string()) {
        return json_error(res, 400, std::string("missing string field \"") + field + "\"");
      }
    }
    SubmitResult result;
    try {
      result = campaign_.submit(body["annotator_id"].get<std::string>(), body["tuple_id"].get<std::string>(),
                                body["best"].get<std::string>(), body["worst"].get<std::string>());
    } catch (const IoError& e) {
      return json_error(res, 500, e.what());
    }
    switch (result.status) {
      case SubmitStatus::ok: res.set_content(R"({"status":"ok"})", kJson); break;
      case SubmitStatus::duplicate: res.set_content(R"({"status":"duplicate"})", kJson); break;
      case SubmitStatus::rejected: json_error(res, 400, result.reason); break;
    }
  });

  http_->Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(progress_to_json(campaign_.progress()), kJson);
  });

  if (options_.ui_dir) {
    if (!http_->set_mount_point("/", options_.ui_dir->string())) {
      throw IoError("UI directory not found: " + options_.ui_dir->string());
    }
  } else {
    http_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }
}

int AnnotationServer::bind() {
  int port = options_.port;
  if (port == 0) {
    port = http_->bind_to_any_port(options_.host);
  } else if (!http_->bind_to_port(options_.host, port)) {
    port = -1;
  }
  if (port < 0) throw IoError("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  options_.port = port;
  return port;
}

void AnnotationServer::run() { http_->listen_after_bind(); }

void AnnotationServer::stop() {
  if (http_) http_->stop();
}

}  // namespace bwslex::service
