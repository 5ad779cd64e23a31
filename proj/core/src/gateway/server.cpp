#include <httplib.h>

#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "mazemate/gateway/api.hpp"

namespace mazemate::gateway {

namespace {

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

void install_routes(httplib::Server& server, Service& service) {
    auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
        Request r;
        r.method = req.method;
        r.path = req.path;
        r.body = req.body;
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        Response out = service.handle(r);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    server.Get(".*", handler);
    server.Put(".*", handler);
    server.Post(".*", handler);
    server.Delete(".*", handler);
    server.Patch(".*", handler);
}

}  // namespace

std::pair<ServerConfig, ServiceConfig> config_from_environment() {
    ServerConfig server;
    ServiceConfig service;

    const std::string bind = env_or("MAZEMATE_BIND", "127.0.0.1:8080");
    auto colon = bind.rfind(':');
    if (colon == std::string::npos) throw std::runtime_error("MAZEMATE_BIND: expected host:port, found '" + bind + "'");
    server.host = bind.substr(0, colon);
    try {
        server.port = std::stoi(bind.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::runtime_error("MAZEMATE_BIND: invalid port in '" + bind + "'");
    }

    if (auto snap = env_or("MAZEMATE_SNAPSHOT", ""); !snap.empty()) service.snapshot = snap;
    if (auto url = env_or("MAZEMATE_CHAT_URL", ""); !url.empty()) {
        service.chat_model = std::make_shared<OpenAiChatModel>(url, env_or("MAZEMATE_CHAT_MODEL", "gpt-4o-mini"),
                                                               env_or("MAZEMATE_CHAT_API_KEY", ""));
    }
    return {server, service};
}

void serve(Service& service, const ServerConfig& config) {
    httplib::Server server;
    install_routes(server, service);
    if (!server.bind_to_port(config.host, config.port)) {
        throw std::runtime_error("cannot bind " + config.host + ":" + std::to_string(config.port));
    }
    server.listen_after_bind();
}

struct HttpServer::Impl {
    explicit Impl(Service& s) : service(s) {}

    Service& service;
    httplib::Server server;
    std::thread thread;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
    install_routes(impl_->server, service);
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace mazemate::gateway
