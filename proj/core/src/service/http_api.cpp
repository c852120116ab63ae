#include <httplib.h>

#include <chrono>

#include "csa/dsl/json.hpp"
#include "csa/service/errors.hpp"
#include "csa/service/service.hpp"

namespace csa::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

SessionOptions session_options(const ServiceConfig& c) {
  SessionOptions o;
  o.cap = c.session_cap;
  o.idle_expiry = std::chrono::duration_cast<std::chrono::milliseconds>(c.idle_expiry);
  return o;
}

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body + "\n", "application/json");
}

void send_error(httplib::Response& res, const ServiceError& e) {
  send_json(res, http_status(e.code()), e.to_json().dump());
}

json body_json(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(ErrorCode::BadRequest, std::string("request body is not JSON: ") + e.what());
  }
}

std::optional<dsl::MediaKind> kind_from_content_type(const std::string& type) {
  const auto major = type.substr(0, type.find('/'));
  return dsl::media_kind_from_string(major);
}

// Wraps a handler so ServiceError and stray exceptions become JSON error
// bodies instead of httplib's default 500 page.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, ServiceError(ErrorCode::BadRequest, e.what()));
    }
  };
}

}  // namespace

struct HttpService::Impl {
  httplib::Server server;
  int port = -1;
};

HttpService::HttpService(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_.data_dir),
      media_(config_.data_dir),
      sessions_(store_, session_options(config_)),
      impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;

  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, Last-Event-ID");
    res.status = 204;
  });

  srv.Put(R"(/products/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto revision = store_.put(req.matches[1].str(), req.body);
    ordered_json j;
    j["barcode"] = req.matches[1].str();
    j["revision"] = revision;
    send_json(res, 200, j.dump());
  }));

  srv.Get(R"(/products/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto entry = store_.find(req.matches[1].str());
    if (!entry) throw ServiceError(ErrorCode::NotFound, "product " + req.matches[1].str() + " is not known");
    res.set_header("X-Revision", std::to_string(entry->revision));
    res.set_header("Last-Modified", entry->updated_at);
    res.set_content(entry->canonical, "application/json");
  }));

  srv.Get("/products", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> category;
    if (req.has_param("category")) category = req.get_param_value("category");
    ordered_json rows = ordered_json::array();
    for (const auto& row : store_.list(category)) {
      ordered_json r;
      r["barcode"] = row.barcode;
      r["name"] = row.name;
      r["category"] = row.category;
      r["image"] = dsl::to_json(row.image);
      rows.push_back(std::move(r));
    }
    send_json(res, 200, rows.dump());
  }));

  srv.Put(R"(/media/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::optional<dsl::MediaKind> kind;
    if (req.has_param("kind")) {
      kind = dsl::media_kind_from_string(req.get_param_value("kind"));
    } else if (req.has_header("Content-Type")) {
      kind = kind_from_content_type(req.get_header_value("Content-Type"));
    }
    if (!kind) throw ServiceError(ErrorCode::BadRequest, "media kind must be image, audio, video or text (?kind=)");
    media_.put(req.matches[1].str(), *kind, req.body);
    ordered_json j;
    j["name"] = req.matches[1].str();
    j["kind"] = dsl::to_string(*kind);
    j["bytes"] = req.body.size();
    send_json(res, 200, j.dump());
  }));

  srv.Get(R"(/media/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto blob = media_.get(req.matches[1].str());
    res.set_header("X-Media-Kind", std::string(dsl::to_string(blob.kind)));
    res.set_content(std::move(blob.bytes), "application/octet-stream");
  }));

  srv.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_json(req);
    if (!body.is_object() || !body.contains("barcode") || !body["barcode"].is_string()) {
      throw ServiceError(ErrorCode::BadRequest, "body needs a \"barcode\" string");
    }
    std::int64_t level = 1;
    if (body.contains("abilityLevel")) {
      if (!body["abilityLevel"].is_number_integer()) {
        throw ServiceError(ErrorCode::BadRequest, "abilityLevel must be an integer");
      }
      level = body["abilityLevel"].get<std::int64_t>();
    }
    send_json(res, 201, sessions_.create(body["barcode"].get<std::string>(), level));
  }));

  srv.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, sessions_.get(req.matches[1].str()));
  }));

  srv.Post(R"(/sessions/([^/]+)/actions)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_json(req);
    host::Input in;
    try {
      in = host::input_from_json(body);
    } catch (const std::invalid_argument& e) {
      throw ServiceError(ErrorCode::BadRequest, e.what());
    }
    if (std::holds_alternative<host::input::Advance>(in)) {
      throw ServiceError(ErrorCode::BadRequest, "advance the clock through /sessions/{id}/clock");
    }
    send_json(res, 200, sessions_.apply(req.matches[1].str(), in));
  }));

  srv.Post(R"(/sessions/([^/]+)/clock)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_json(req);
    if (!body.is_object() || !body.contains("dtMillis") || !body["dtMillis"].is_number_integer()) {
      throw ServiceError(ErrorCode::BadRequest, "body needs an integer \"dtMillis\"");
    }
    const auto dt = body["dtMillis"].get<std::int64_t>();
    if (dt <= 0) throw ServiceError(ErrorCode::BadRequest, "dtMillis must be positive");
    send_json(res, 200, sessions_.apply(req.matches[1].str(), host::input::Advance{dt}));
  }));

  // Server-sent events, one snapshot per message, starting at revision
  // `from` (default 1, i.e. the whole session so far). `limit` closes the
  // stream after that many messages.
  srv.Get(R"(/sessions/([^/]+)/stream)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1].str();
    if (!sessions_.exists(id)) throw ServiceError(ErrorCode::UnknownSession, "no session \"" + id + "\"");
    std::int64_t next = 1;
    if (req.has_param("from")) {
      next = std::stoll(req.get_param_value("from"));
    } else if (req.has_header("Last-Event-ID")) {
      next = std::stoll(req.get_header_value("Last-Event-ID")) + 1;
    }
    std::int64_t limit = req.has_param("limit") ? std::stoll(req.get_param_value("limit")) : 0;
    if (next < 1) throw ServiceError(ErrorCode::BadRequest, "from must be >= 1");

    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, id, next, limit, sent = std::int64_t{0}](std::size_t, httplib::DataSink& sink) mutable {
          if (stopping_) {
            sink.done();
            return true;
          }
          auto item = sessions_.wait(id, next, std::chrono::milliseconds(250));
          switch (item.kind) {
            case StreamItem::Kind::Snapshot: {
              const std::string msg = "id: " + std::to_string(next) + "\ndata: " + item.snapshot + "\n\n";
              if (!sink.write(msg.data(), msg.size())) return false;
              ++next;
              if (limit > 0 && ++sent >= limit) sink.done();
              return true;
            }
            case StreamItem::Kind::Timeout: return true;
            case StreamItem::Kind::TooFarBehind: {
              const std::string msg = "event: error\ndata: {\"code\":\"TooFarBehind\"}\n\n";
              sink.write(msg.data(), msg.size());
              sink.done();
              return true;
            }
            case StreamItem::Kind::Gone: sink.done(); return true;
          }
          return false;
        });
  }));

  if (config_.time_scale > 0.0) {
    pump_ = std::jthread([this](std::stop_token stop) {
      constexpr auto period = std::chrono::milliseconds(100);
      double carry = 0.0;
      while (!stop.stop_requested()) {
        std::this_thread::sleep_for(period);
        carry += config_.time_scale * static_cast<double>(period.count());
        const auto dt = static_cast<std::int64_t>(carry);
        carry -= static_cast<double>(dt);
        sessions_.advance_all(dt);
      }
    });
  }
}

HttpService::~HttpService() { stop(); }

bool HttpService::bind() {
  if (config_.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(config_.host);
  } else if (config_.port > 0 && config_.port <= 65535 && impl_->server.bind_to_port(config_.host, config_.port)) {
    impl_->port = config_.port;
  } else {
    impl_->port = -1;
  }
  return impl_->port > 0;
}

int HttpService::port() const noexcept { return impl_->port; }

bool HttpService::run() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  stopping_ = true;
  if (pump_.joinable()) {
    pump_.request_stop();
    pump_.join();
  }
  impl_->server.stop();
}

}  // namespace csa::service
