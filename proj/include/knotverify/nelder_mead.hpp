#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "error.hpp"

namespace knotverify {

struct SimplexConfig {
    double initial_step = 0.02;
    double f_tolerance = 1e-14;
    double x_tolerance = 1e-10;
    int max_iterations = 2000;
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;

    void validate() const {
        if (!(initial_step > 0.0 && f_tolerance >= 0.0 && x_tolerance >= 0.0 && max_iterations > 0))
            throw InvalidInput("simplex config: step, tolerances and iteration cap must be positive");
        if (!(reflection > 0.0 && expansion > reflection && contraction > 0.0 && contraction < 1.0 &&
              shrink > 0.0 && shrink < 1.0))
            throw InvalidInput("simplex config: coefficients violate 0 < contraction, shrink < 1 < expansion/reflection");
    }
};

using Vec2 = std::array<double, 2>;

struct MinimizationResult {
    Vec2 x{};
    double f_value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NoObserver {
    void operator()(int /*iteration*/, const Vec2& /*best*/, double /*best_f*/) const {}
};

/// Nelder-Mead simplex search on the unit square. Every trial point is projected
/// onto [0,1]^2 before it is evaluated. Converges when the simplex diameter
/// (max-norm offset from the best vertex) drops below x_tolerance or the spread
/// of objective values drops below f_tolerance.
template <class Objective, class Observer = NoObserver>
MinimizationResult nelder_mead(Objective&& objective, Vec2 start, const SimplexConfig& config = {},
                               Observer&& observer = {}) {
    config.validate();
    if (!(start[0] >= 0.0 && start[0] <= 1.0 && start[1] >= 0.0 && start[1] <= 1.0))
        throw DomainError("nelder_mead start must lie in [0,1]^2");

    auto project = [](Vec2 p) -> Vec2 { return {std::clamp(p[0], 0.0, 1.0), std::clamp(p[1], 0.0, 1.0)}; };
    auto eval = [&](const Vec2& p) {
        const double f = objective(p[0], p[1]);
        if (!std::isfinite(f))
            throw NonFiniteObjective("objective is not finite at (" + std::to_string(p[0]) + ", " +
                                     std::to_string(p[1]) + ")");
        return f;
    };
    auto combine = [&](const Vec2& base, const Vec2& towards, double coef) -> Vec2 {
        return project({base[0] + coef * (towards[0] - base[0]), base[1] + coef * (towards[1] - base[1])});
    };

    std::array<Vec2, 3> x{};
    std::array<double, 3> f{};
    x[0] = start;
    for (int i = 0; i < 2; ++i) {
        Vec2 v = start;
        v[i] = start[i] + config.initial_step <= 1.0 ? start[i] + config.initial_step : start[i] - config.initial_step;
        x[i + 1] = project(v);
    }
    for (int i = 0; i < 3; ++i) f[i] = eval(x[i]);

    auto order = [&] {
        std::array<int, 3> idx{0, 1, 2};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        const auto xs = x;
        const auto fs = f;
        for (int i = 0; i < 3; ++i) {
            x[i] = xs[idx[i]];
            f[i] = fs[idx[i]];
        }
    };

    MinimizationResult result;
    int iter = 0;
    order();
    for (; iter < config.max_iterations; ++iter) {
        observer(iter, x[0], f[0]);
        double diameter = 0.0;
        for (int i = 1; i < 3; ++i)
            diameter = std::max({diameter, std::abs(x[i][0] - x[0][0]), std::abs(x[i][1] - x[0][1])});
        const double spread = std::max(std::abs(f[1] - f[0]), std::abs(f[2] - f[0]));
        if (diameter < config.x_tolerance || spread < config.f_tolerance) {
            result.converged = true;
            break;
        }

        const Vec2 centroid{0.5 * (x[0][0] + x[1][0]), 0.5 * (x[0][1] + x[1][1])};
        const Vec2 xr = combine(centroid, x[2], -config.reflection);
        const double fr = eval(xr);

        if (fr < f[0]) {
            const Vec2 xe = combine(centroid, x[2], -config.reflection * config.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                x[2] = xe;
                f[2] = fe;
            } else {
                x[2] = xr;
                f[2] = fr;
            }
        } else if (fr < f[1]) {
            x[2] = xr;
            f[2] = fr;
        } else {
            bool shrink = false;
            if (fr < f[2]) {
                const Vec2 xc = combine(centroid, xr, config.contraction);
                const double fc = eval(xc);
                if (fc <= fr) {
                    x[2] = xc;
                    f[2] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const Vec2 xcc = combine(centroid, x[2], config.contraction);
                const double fcc = eval(xcc);
                if (fcc < f[2]) {
                    x[2] = xcc;
                    f[2] = fcc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (int i = 1; i < 3; ++i) {
                    x[i] = combine(x[0], x[i], config.shrink);
                    f[i] = eval(x[i]);
                }
            }
        }
        order();
    }

    result.x = x[0];
    result.f_value = f[0];
    result.iterations = iter;
    return result;
}

}  // namespace knotverify
