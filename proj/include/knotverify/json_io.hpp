#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "curve.hpp"
#include "error.hpp"
#include "intersections.hpp"
#include "laurent.hpp"
#include "simplicity.hpp"

namespace knotverify {

using json = nlohmann::json;

/// Failure to read or write a file (distinct from malformed content).
class IoError : public Error {
public:
    using Error::Error;
};

inline json to_json(Point3 p) { return json::array({p.x, p.y, p.z}); }
inline json to_json(Point2 p) { return json::array({p.x, p.y}); }

/// Non-finite reals become null; JSON has no infinity.
inline json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline Point3 point3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw InvalidInput("control point must be an array [x, y, z]");
    for (const auto& c : j)
        if (!c.is_number()) throw InvalidInput("control point coordinates must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

/// {"closed": bool, "control_points": [[x,y,z], ...]}. A closed polygon may list v0
/// again at the end; the duplicate is dropped.
inline ControlPolygon polygon_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("polygon JSON must be an object");
    if (!j.contains("control_points") || !j["control_points"].is_array())
        throw InvalidInput("polygon JSON needs a control_points array");
    const bool closed = j.value("closed", true);
    std::vector<Point3> pts;
    for (const auto& p : j["control_points"]) pts.push_back(point3_from_json(p));
    if (closed && pts.size() > 2 && pts.front() == pts.back()) pts.pop_back();
    return ControlPolygon(std::move(pts), closed);
}

inline json polygon_to_json(const ControlPolygon& polygon) {
    json pts = json::array();
    for (const auto& v : polygon.vertices()) pts.push_back(to_json(v));
    return {{"closed", polygon.closed()}, {"control_points", pts}};
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

inline ControlPolygon read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return polygon_from_json(parse_json_text(buf.str()));
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

/// Ascending coefficient list with base exponent: {"base_exp":0,"coeffs":[1,-3,1]}.
inline json polynomial_to_json(const LaurentPolynomial& p) {
    return {{"base_exp", p.min_exponent()}, {"coeffs", p.ascending()}, {"text", p.to_string()}};
}

inline json to_json(const IntersectionPair& p) {
    return {{"t1", p.t1},           {"t2", p.t2},           {"point2d", to_json(p.point2d)},
            {"p3d_1", to_json(p.p3d_1)}, {"p3d_2", to_json(p.p3d_2)}, {"residual", p.residual}};
}

inline json to_json(const SimplexConfig& c) {
    return {{"initial_step", c.initial_step}, {"f_tolerance", c.f_tolerance}, {"x_tolerance", c.x_tolerance},
            {"max_iterations", c.max_iterations}, {"reflection", c.reflection}, {"expansion", c.expansion},
            {"contraction", c.contraction}, {"shrink", c.shrink}};
}

inline json to_json(const SweepReport& s) {
    return {{"steps", s.steps},
            {"min_distance", real_or_null(s.min_distance)},
            {"theta_at_min", s.theta_at_min},
            {"theta_step", s.theta_step},
            {"lipschitz_bound", s.lipschitz_bound},
            {"certified", s.certified}};
}

inline json to_json(const PerturbationArc& a) {
    return {{"vertex_index", a.vertex_index}, {"axis_a", to_json(a.axis_a)},   {"axis_b", to_json(a.axis_b)},
            {"total_angle", a.total_angle},   {"radius_start", a.radius_start}, {"radius_end", a.radius_end},
            {"start", to_json(a.start)},      {"target", to_json(a.target)}};
}

}  // namespace knotverify
