#include "coach/service/http_server.hpp"

#include <sstream>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "coach/llm/errors.hpp"

namespace coach::service {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}, {"status", status}});
}

void send_stream(httplib::Response& res, int status, const std::vector<ApiEvent>& events) {
    std::string body;
    for (const auto& e : events) body += to_sse(e);
    res.status = status;
    res.set_header("Cache-Control", "no-cache");
    res.set_content(body, "text/event-stream");
}

/// Maps service exceptions onto status codes.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const orchestrator::SessionNotFoundError& e) {
        send_error(res, 404, e.what());
    } catch (const std::out_of_range& e) {
        send_error(res, 404, e.what());
    } catch (const orchestrator::TurnInFlightError& e) {
        send_error(res, 409, e.what());
    } catch (const TurnFailedError& e) {
        send_stream(res, 502, e.events());
    } catch (const healthdata::UnknownSourceError& e) {
        send_error(res, 400, e.what());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, std::string("invalid request body: ") + e.what());
    } catch (const std::invalid_argument& e) {
        send_error(res, 400, e.what());
    } catch (const ConfigurationError& e) {
        send_error(res, 503, e.what());
    } catch (const orchestrator::SessionCorruptError& e) {
        send_error(res, 500, e.what());
    } catch (const std::exception& e) {
        spdlog::error("request failed: {}", e.what());
        send_error(res, 500, e.what());
    }
}

nlohmann::json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return nlohmann::json::object();
    return nlohmann::json::parse(req.body);
}

}  // namespace

HttpServer::HttpServer(CoachService& service, HttpOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpServer::~HttpServer() = default;

void HttpServer::install_routes() {
    auto& s = *server_;

    if (options_.bearer_token) {
        s.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
            const bool api = req.path.rfind("/sessions", 0) == 0 || req.path.rfind("/data", 0) == 0 ||
                             req.path == "/sources";
            if (!api) return httplib::Server::HandlerResponse::Unhandled;
            if (req.get_header_value("Authorization") == "Bearer " + *options_.bearer_token) {
                return httplib::Server::HandlerResponse::Unhandled;
            }
            send_error(res, 401, "missing or invalid bearer token");
            return httplib::Server::HandlerResponse::Handled;
        });
    }

    s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto body = parse_body(req);
            std::optional<std::set<std::string>> shared;
            if (body.contains("shared_sources") && !body.at("shared_sources").is_null()) {
                shared = body.at("shared_sources").get<std::set<std::string>>();
            }
            send_json(res, 201, service_.create_session(std::move(shared), body.value("user_profile", "")));
        });
    });

    s.Get(R"(/sessions/([A-Za-z0-9_-]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, service_.get_session(req.matches[1])); });
    });

    s.Post(R"(/sessions/([A-Za-z0-9_-]+)/messages)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto body = parse_body(req);
            if (!body.contains("text") || !body.at("text").is_string() || body.at("text").get<std::string>().empty()) {
                send_error(res, 400, "body must carry a non-empty \"text\"");
                return;
            }
            send_stream(res, 200, service_.post_message(req.matches[1], body.at("text").get<std::string>()));
        });
    });

    s.Get(R"(/sessions/([A-Za-z0-9_-]+)/stream)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            std::uint64_t after = 0;
            if (req.has_param("after")) after = std::stoull(req.get_param_value("after"));
            const auto last = req.get_header_value("Last-Event-ID");
            if (!last.empty()) after = std::stoull(last);
            send_stream(res, 200, service_.events_after(req.matches[1], after));
        });
    });

    s.Get(R"(/sessions/([A-Za-z0-9_-]+)/events/([A-Za-z0-9_-]+)/data)",
          [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] { send_json(res, 200, service_.visualization_data(req.matches[1], req.matches[2])); });
          });

    s.Get(R"(/sessions/([A-Za-z0-9_-]+)/transcript)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            res.status = 200;
            res.set_content(service_.transcript(req.matches[1]), "text/plain; charset=utf-8");
        });
    });

    s.Post("/data/import", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            std::istringstream input(req.body);
            send_json(res, 200, service_.import_records(input));
        });
    });

    s.Get("/sources", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, service_.sources()); });
    });

    if (options_.ui_dir) {
        if (!s.set_mount_point("/", options_.ui_dir->string())) {
            spdlog::warn("UI directory {} not found; serving the API only", options_.ui_dir->string());
        }
    }
}

bool HttpServer::listen() { return server_->listen(options_.host, options_.port); }

int HttpServer::bind_any_port() { return server_->bind_to_any_port(options_.host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace coach::service
