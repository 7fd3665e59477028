#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "coach/service/service.hpp"

namespace httplib {
class Server;
}

namespace coach::service {

struct HttpOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Required as "Authorization: Bearer <token>" when set.
    std::optional<std::string> bearer_token;
    /// Static chat client mounted at "/" when set.
    std::optional<std::filesystem::path> ui_dir;
};

/// HTTP+JSON front end:
///   POST /sessions                         create (body: shared_sources, user_profile)
///   GET  /sessions/{id}                    session summary
///   POST /sessions/{id}/messages           run a turn, answered as text/event-stream
///   GET  /sessions/{id}/stream?after=N     events after sequence N
///   GET  /sessions/{id}/events/{eid}/data  chart payload
///   GET  /sessions/{id}/transcript         plain-text transcript
///   POST /data/import                      NDJSON records
///   GET  /sources                          data-source catalog
class HttpServer {
public:
    HttpServer(CoachService& service, HttpOptions options);
    ~HttpServer();

    /// Binds and serves until stop(). Returns false when binding fails.
    bool listen();
    /// Binds to an ephemeral port on `host`; returns the port or -1.
    int bind_any_port();
    /// Serves on a socket bound by bind_any_port.
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    void install_routes();

    CoachService& service_;
    HttpOptions options_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace coach::service
