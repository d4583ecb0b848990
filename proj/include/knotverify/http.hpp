#pragma once

#include <optional>
#include <string>

#include "httplib.h"

#include "service.hpp"

namespace knotverify {

/// Registers the /api/curves routes of `store` on `server`, with CORS for `origin`.
inline void mount_routes(httplib::Server& server, SessionStore& store, std::string origin = "*") {
    server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});

    auto reply = [](httplib::Response& res, const ServiceResponse& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };

    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/api/curves", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.create(req.body));
    });
    server.Get(R"(/api/curves/([^/]+))", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.get(req.matches[1]));
    });
    server.Post(R"(/api/curves/([^/]+)/vertex)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.move_vertex(req.matches[1], req.body));
    });
    server.Get(R"(/api/curves/([^/]+)/analysis)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, store.analysis(req.matches[1]));
    });
    server.Get(R"(/api/curves/([^/]+)/render)", [&store, reply](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> samples;
        if (req.has_param("samples")) samples = req.get_param_value("samples");
        reply(res, store.render(req.matches[1], samples));
    });
}

}  // namespace knotverify
