#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"

#include "knotverify/analysis.hpp"
#include "knotverify/http.hpp"
#include "knotverify/reproduce.hpp"

namespace kv = knotverify;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

int fail(int code, const std::string& kind, const std::string& message) {
    std::cout << kv::json{{"error", kind}, {"message", message}}.dump(2) << "\n";
    return code;
}

void emit(const kv::json& body, const std::string& json_out) {
    const std::string text = body.dump(2) + "\n";
    if (!json_out.empty()) kv::write_text_file(json_out, text);
    std::cout << text;
}

kv::Point3 parse_point(const std::string& text) {
    std::stringstream in(text);
    kv::Point3 p;
    char c1 = 0, c2 = 0;
    if (!(in >> p.x >> c1 >> p.y >> c2 >> p.z) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
        throw kv::InvalidInput("--to expects x,y,z");
    return p;
}

/// Maps library exceptions onto exit codes.
template <class Body>
int guarded(Body&& body) {
    try {
        return body();
    } catch (const kv::IoError& e) {
        return fail(kExitIo, "io_error", e.what());
    } catch (const kv::SingularFrame& e) {
        return fail(kExitDegenerate, "singular_frame", e.what());
    } catch (const kv::TangentialCrossing& e) {
        return fail(kExitDegenerate, "tangential_crossing", e.what());
    } catch (const kv::Error& e) {
        return fail(kExitDegenerate, "invalid_input", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bezier knot verification"};
    app.require_subcommand(1);

    kv::AnalysisConfig config;
    std::string polygon_path, json_out;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--insert-rounds", config.insert_rounds, "collinear insertion rounds")->check(CLI::Range(0, 10));
        cmd->add_option("--grid", config.intersections.grid, "multi-start grid size")->check(CLI::Range(8, 512));
        cmd->add_option("--tol", config.intersections.root_tolerance, "root residual tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--json-out", json_out, "also write the report here");
    };

    auto* analyze = app.add_subcommand("analyze", "analyse a control polygon");
    analyze->add_option("polygon", polygon_path, "polygon JSON file")->required();
    add_common(analyze);

    std::size_t vertex = 0;
    std::string target_text;
    bool sweep = false;
    auto* perturb = app.add_subcommand("perturb", "move one vertex along its rotation arc and analyse");
    perturb->add_option("polygon", polygon_path, "polygon JSON file")->required();
    perturb->add_option("--vertex", vertex, "vertex index")->required();
    perturb->add_option("--to", target_text, "target position x,y,z")->required();
    perturb->add_flag("--sweep", sweep, "certify polygon simplicity along the arc");
    perturb->add_option("--sweep-steps", config.sweep_steps, "sweep samples")->check(CLI::Range(1, 1 << 20));
    add_common(perturb);

    auto* reproduce = app.add_subcommand("reproduce-paper", "check the embedded seven-vertex example");
    add_common(reproduce);
    reproduce->get_option("--insert-rounds")->default_val(kv::reference::kInsertionRounds);

    int port = 8080;
    std::string host = "127.0.0.1";
    auto* serve = app.add_subcommand("serve", "HTTP JSON API");
    serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "listen address");
    std::string origin = "*";
    serve->add_option("--cors-origin", origin, "Access-Control-Allow-Origin value");

    CLI11_PARSE(app, argc, argv);

    if (*analyze) {
        return guarded([&] {
            const auto report = kv::run_analysis(kv::read_polygon_file(polygon_path), config, polygon_path);
            emit(kv::to_json(report), json_out);
            return report.oracle_agrees ? 0 : kExitMismatch;
        });
    }
    if (*perturb) {
        return guarded([&] {
            const auto base = kv::read_polygon_file(polygon_path);
            const auto report = kv::run_perturbation(base, vertex, parse_point(target_text), config, sweep, polygon_path);
            emit(kv::to_json(report), json_out);
            const bool sweep_ok = !report.sweep || report.sweep->certified;
            return report.oracle_agrees && sweep_ok ? 0 : kExitMismatch;
        });
    }
    if (*reproduce) {
        return guarded([&] {
            const auto outcome = kv::reproduce_reference(config);
            emit(outcome.bundle, json_out);
            for (const auto& c : outcome.checks)
                std::cerr << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
            if (!outcome.claims_asserted)
                std::cerr << "insertion rounds differ from the published example; no published value asserted\n";
            return outcome.passed() ? 0 : kExitMismatch;
        });
    }

    kv::ServiceOptions options;
    kv::SessionStore store(options);
    httplib::Server server;
    const unsigned threads = kv::thread_budget();
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    kv::mount_routes(server, store, origin);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) return fail(kExitIo, "io_error", "cannot listen on " + host + ":" + std::to_string(port));
    return 0;
}
