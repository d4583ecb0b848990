#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "json_io.hpp"
#include "parallel.hpp"

namespace knotverify {

struct ServiceResponse {
    int status = 200;
    json body;
};

struct ServiceOptions {
    int max_rounds = 10;
    int sweep_steps = 4096;
    AnalysisConfig analysis{};  // insert_rounds is taken from each session
    unsigned analysis_workers = thread_budget();
};

/// In-memory curve sessions behind the HTTP endpoints. Handlers are transport-free so
/// they can be exercised directly; http.hpp binds them to routes.
///
/// Each session carries a version bumped by every mutation. Analyses are computed
/// outside the session lock from a snapshot and cached only if the version is unchanged.
class SessionStore {
public:
    explicit SessionStore(ServiceOptions options = {})
        : options_(std::move(options)), workers_(static_cast<std::ptrdiff_t>(std::max(1u, options_.analysis_workers))) {}

    ServiceResponse create(const std::string& body_text) {
        json body;
        try {
            body = parse_json_text(body_text);
        } catch (const InvalidInput& e) {
            return error(400, "invalid_json", e.what());
        }
        if (!body.is_object()) return error(400, "invalid_polygon", "body must be a JSON object");
        int rounds = 0;
        if (body.contains("rounds")) {
            if (!body["rounds"].is_number_integer()) return error(400, "invalid_rounds", "rounds must be an integer");
            rounds = body["rounds"].get<int>();
        }
        if (rounds < 0 || rounds > options_.max_rounds)
            return error(400, "invalid_rounds",
                         "rounds must be between 0 and " + std::to_string(options_.max_rounds));
        std::shared_ptr<Session> session;
        try {
            session = std::make_shared<Session>(polygon_from_json(body), rounds);
        } catch (const Error& e) {
            return error(400, "invalid_polygon", e.what());
        }
        {
            std::unique_lock lock(map_mutex_);
            session->id = "c" + std::to_string(++next_id_);
            sessions_[session->id] = session;
        }
        std::lock_guard lock(session->mutex);
        return {201, summary(*session)};
    }

    ServiceResponse get(const std::string& id) {
        auto s = find(id);
        if (!s) return not_found(id);
        std::lock_guard lock(s->mutex);
        return {200, summary(*s)};
    }

    ServiceResponse move_vertex(const std::string& id, const std::string& body_text) {
        auto s = find(id);
        if (!s) return not_found(id);
        json body;
        try {
            body = parse_json_text(body_text);
        } catch (const InvalidInput& e) {
            return error(400, "invalid_json", e.what());
        }
        if (!body.is_object() || !body.contains("original_vertex_index") || !body.contains("position") ||
            !body["original_vertex_index"].is_number_integer())
            return error(400, "invalid_request", "need original_vertex_index (integer) and position [x,y,z]");
        Point3 target;
        try {
            target = point3_from_json(body["position"]);
        } catch (const InvalidInput& e) {
            return error(400, "invalid_request", e.what());
        }
        const bool sweep = body.value("sweep", false);

        std::lock_guard lock(s->mutex);
        const auto index = body["original_vertex_index"].get<long long>();
        if (index < 0 || static_cast<std::size_t>(index) >= s->original.size())
            return error(400, "invalid_vertex", "original_vertex_index out of range");
        const auto vertex = static_cast<std::size_t>(index);

        std::optional<ControlPolygon> moved;
        try {
            moved = s->original.with_vertex(vertex, target);
        } catch (const InvalidInput& e) {
            return error(400, "invalid_polygon", e.what());
        }

        const bool has_axis = s->original.closed() || (vertex > 0 && vertex + 1 < s->original.size());
        std::optional<PerturbationArc> arc;
        if (has_axis) {
            try {
                arc = make_perturbation_arc(s->original, vertex, target);
            } catch (const InvalidInput& e) {
                return error(409, "on_rotation_axis", e.what());
            }
        } else if (sweep) {
            return error(409, "no_rotation_axis", "an endpoint of an open polygon has no rotation axis");
        }

        json sweep_json = nullptr;
        if (sweep && arc) {
            try {
                sweep_json = to_json(sweep_simplicity(s->original, *arc, options_.sweep_steps, s->rounds));
            } catch (const Error& e) {
                sweep_json = {{"error", e.what()}};
            }
        }

        const bool changed = !(target == s->original[vertex]);
        s->original = std::move(*moved);
        if (changed) {
            ++s->version;
            s->cached.reset();
            s->cached_report.reset();
        }
        json out = summary(*s);
        out["arc"] = arc ? to_json(*arc) : json(nullptr);
        out["sweep"] = sweep_json;
        return {200, out};
    }

    ServiceResponse analysis(const std::string& id) {
        auto s = find(id);
        if (!s) return not_found(id);
        return cached_analysis(*s).response;
    }

    ServiceResponse render(const std::string& id, const std::optional<std::string>& samples_text) {
        auto s = find(id);
        if (!s) return not_found(id);
        long samples = 256;
        if (samples_text) {
            char* end = nullptr;
            samples = std::strtol(samples_text->c_str(), &end, 10);
            if (end == samples_text->c_str() || *end != '\0') samples = -1;
        }
        if (samples < 16 || samples > 65536) return error(400, "invalid_samples", "samples must be in [16, 65536]");

        const auto snap = snapshot(*s);
        const ControlPolygon polygon = collinear_insert(snap.original, snap.rounds);
        const BezierCurve curve = BezierCurve::from_polygon(polygon);
        std::vector<Point3> pts(static_cast<std::size_t>(samples));
        parallel_for(pts.size(), [&](std::size_t i) {
            pts[i] = bezier_eval(curve, static_cast<double>(i) / static_cast<double>(samples - 1));
        });
        json c2 = json::array(), c3 = json::array(), poly = json::array();
        for (const auto& p : pts) {
            c2.push_back(to_json(p.xy()));
            c3.push_back(to_json(p));
        }
        for (const auto& v : polygon.vertices()) poly.push_back(to_json(v));

        const auto result = cached_analysis(*s, snap);
        json crossings = json::array();
        if (result.report) {
            for (std::size_t k = 0; k < result.report->diagram.crossings.size(); ++k) {
                const auto& c = result.report->diagram.crossings[k];
                crossings.push_back({{"id", k + 1},
                                     {"point2d", to_json(c.point2d)},
                                     {"t_first", c.t_first},
                                     {"t_second", c.t_second},
                                     {"over_is_first", c.over_is_first},
                                     {"sign", c.sign}});
            }
        }
        json out = {{"id", id},          {"version", result.version}, {"samples", samples},
                    {"curve2d", c2},     {"curve3d", c3},             {"polygon", poly},
                    {"closed", polygon.closed()}, {"crossings", crossings}};
        if (!result.report) out["analysis_error"] = result.response.body;
        return {200, out};
    }

private:
    struct Session {
        Session(ControlPolygon polygon, int insertion_rounds) : original(std::move(polygon)), rounds(insertion_rounds) {}

        std::string id;
        ControlPolygon original;
        int rounds;
        std::uint64_t version = 1;
        std::optional<ServiceResponse> cached;
        std::optional<AnalysisReport> cached_report;
        std::mutex mutex;
    };

    struct Snapshot {
        ControlPolygon original;
        int rounds;
        std::uint64_t version;
    };

    struct AnalysisResult {
        ServiceResponse response;
        std::optional<AnalysisReport> report;
        std::uint64_t version = 0;
    };

    static ServiceResponse error(int status, const std::string& kind, const std::string& message) {
        return {status, {{"error", kind}, {"message", message}}};
    }
    static ServiceResponse not_found(const std::string& id) { return error(404, "not_found", "no curve " + id); }

    std::shared_ptr<Session> find(const std::string& id) {
        std::shared_lock lock(map_mutex_);
        auto it = sessions_.find(id);
        return it == sessions_.end() ? nullptr : it->second;
    }

    static Snapshot snapshot(Session& s) {
        std::lock_guard lock(s.mutex);
        return {s.original, s.rounds, s.version};
    }

    json summary(const Session& s) const {
        const ControlPolygon inserted = collinear_insert(s.original, s.rounds);
        json original = json::array(), points = json::array();
        for (const auto& v : s.original.vertices()) original.push_back(to_json(v));
        for (const auto& v : inserted.vertices()) points.push_back(to_json(v));
        return {{"id", s.id},
                {"version", s.version},
                {"rounds", s.rounds},
                {"closed", s.original.closed()},
                {"original_vertices", original},
                {"control_points", points},
                {"control_point_count", inserted.size()},
                {"polygon_simple", polygon_is_simple(s.original, options_.analysis.clearance)}};
    }

    class WorkerSlot {
    public:
        explicit WorkerSlot(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
        ~WorkerSlot() { sem_.release(); }
        WorkerSlot(const WorkerSlot&) = delete;
        WorkerSlot& operator=(const WorkerSlot&) = delete;

    private:
        std::counting_semaphore<1024>& sem_;
    };

    AnalysisResult cached_analysis(Session& s) { return cached_analysis(s, snapshot(s)); }

    /// Analysis of exactly the snapshot's polygon; served from cache when the session is
    /// still at the snapshot's version.
    AnalysisResult cached_analysis(Session& s, const Snapshot& snap) {
        {
            std::lock_guard lock(s.mutex);
            if (s.cached && s.version == snap.version) return {*s.cached, s.cached_report, s.version};
        }
        AnalysisConfig cfg = options_.analysis;
        cfg.insert_rounds = snap.rounds;

        AnalysisResult result;
        result.version = snap.version;
        try {
            WorkerSlot slot(workers_);
            AnalysisReport report = run_analysis(snap.original, cfg, s.id);
            json body = to_json(report);
            body["version"] = snap.version;
            result.response = {200, body};
            result.report = std::move(report);
        } catch (const SingularFrame& e) {
            result.response = error(422, "singular_frame", e.what());
        } catch (const TangentialCrossing& e) {
            result.response = error(422, "tangential_crossing", e.what());
        } catch (const Error& e) {
            result.response = error(422, "analysis_failed", e.what());
        }

        std::lock_guard lock(s.mutex);
        if (s.version == snap.version) {
            s.cached = result.response;
            s.cached_report = result.report;
        }
        return result;
    }

    ServiceOptions options_;
    std::counting_semaphore<1024> workers_;
    std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 0;
};

}  // namespace knotverify
