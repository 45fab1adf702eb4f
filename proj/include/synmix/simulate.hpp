#ifndef SYNMIX_SIMULATE_HPP
#define SYNMIX_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "synmix/error.hpp"
#include "synmix/mixing.hpp"
#include "synmix/random.hpp"
#include "synmix/scaling.hpp"

namespace synmix {

struct CurveSpec {
    double ratio = 1.0;
    double beta = 0.0;
    double gamma = -0.5;
};

struct SimulationSpec {
    std::vector<CurveSpec> curves;
    std::vector<std::int64_t> sizes;
    int repeats = 5;
    double sigma = 0.0;  // log10 units
    std::uint64_t seed = 0;
    std::string metric = "map50";
};

inline void validate(const SimulationSpec& s) {
    if (s.curves.empty()) throw ValidationError("simulation: no curves");
    if (s.sizes.empty()) throw ValidationError("simulation: no sizes");
    if (s.repeats < 1) throw ValidationError("simulation: repeats must be >= 1");
    if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma)) {
        throw ValidationError("simulation: sigma must be >= 0");
    }
    if (s.metric.empty()) throw ValidationError("simulation: metric name is empty");
    for (const auto& c : s.curves) {
        if (!(c.ratio >= 0.0 && c.ratio <= 1.0)) {
            throw ValidationError("simulation: ratio outside [0,1]");
        }
        if (!(c.gamma < 0.0)) {
            throw ValidationError(fmt::format("simulation: gamma must be < 0 (ratio {:g})", c.ratio));
        }
        if (!std::isfinite(c.beta)) throw ValidationError("simulation: beta must be finite");
    }
    for (const auto n : s.sizes) {
        if (n < 1) throw ValidationError("simulation: sizes must be >= 1");
    }
}

/// Log-space noise stream for one record: SplitMix64 seeded with
/// derive_seed(seed, {ratio index, size index, repeat}), all indices 0-based
/// except the 1-based repeat.
inline double simulated_noise(const SimulationSpec& s, std::size_t ratio_index,
                              std::size_t size_index, int repeat) {
    if (s.sigma == 0.0) return 0.0;
    SplitMix64 rng(derive_seed(s.seed, {static_cast<std::uint64_t>(ratio_index),
                                        static_cast<std::uint64_t>(size_index),
                                        static_cast<std::uint64_t>(repeat)}));
    return s.sigma * rng.normal();
}

/// Records in (curve, size, repeat) order, with
/// error = 10^(beta + gamma log10 N + eps) and value = 1 - error.
inline std::vector<RunRecord> generate_runs(const SimulationSpec& s) {
    validate(s);
    std::vector<RunRecord> out;
    out.reserve(s.curves.size() * s.sizes.size() * static_cast<std::size_t>(s.repeats));
    for (std::size_t a = 0; a < s.curves.size(); ++a) {
        const CurveSpec& c = s.curves[a];
        for (std::size_t b = 0; b < s.sizes.size(); ++b) {
            const std::int64_t n = s.sizes[b];
            const std::int64_t n_real = split_counts(n, c.ratio).n_real;
            for (int rep = 1; rep <= s.repeats; ++rep) {
                const double log_err = c.beta + c.gamma * std::log10(static_cast<double>(n)) +
                                       simulated_noise(s, a, b, rep);
                const double err = std::pow(10.0, log_err);
                const double value = 1.0 - err;
                if (!(err > 0.0 && err < 1.0) || !(value > 0.0 && value < 1.0)) {
                    throw ValidationError(fmt::format(
                        "simulation: ratio {:g}, size {}: error {:g} outside (0, 1)", c.ratio, n,
                        err));
                }
                out.push_back({c.ratio, n, n_real, rep, s.metric, value});
            }
        }
    }
    return out;
}

/// Reads a simulation config: {metric, curves:[{ratio, beta, gamma}],
/// sizes:[...] | {n_max, points, decades}, repeats, sigma}. The seed is not
/// part of the config.
inline SimulationSpec parse_simulation_config(std::string_view text) {
    using detail::json;
    const json doc = detail::parse_json(text, "simulation config");
    if (!doc.is_object()) throw ParseError("simulation config: expected an object");
    if (doc.contains("seed")) {
        throw ValidationError("simulation config: pass the seed with --seed, not in the config");
    }
    SimulationSpec s;
    if (doc.contains("metric")) s.metric = detail::string_field(doc, "metric", "config");
    const json& curves = detail::array_field(doc, "curves", "config");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string p = "config.curves[" + std::to_string(i) + "]";
        CurveSpec c;
        c.ratio = detail::number(detail::field(curves[i], "ratio", p), p + ".ratio");
        c.beta = detail::number(detail::field(curves[i], "beta", p), p + ".beta");
        c.gamma = detail::number(detail::field(curves[i], "gamma", p), p + ".gamma");
        s.curves.push_back(c);
    }
    if (doc.contains("sizes")) {
        const json& sizes = detail::array_field(doc, "sizes", "config");
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (!sizes[i].is_number_integer()) {
                throw ParseError("config.sizes[" + std::to_string(i) + "]: expected an integer");
            }
            s.sizes.push_back(sizes[i].get<std::int64_t>());
        }
    } else {
        const std::int64_t n_max = detail::integer_field(doc, "n_max", "config");
        const int points = doc.contains("points")
                               ? static_cast<int>(detail::integer_field(doc, "points", "config"))
                               : 10;
        const double decades =
            doc.contains("decades") ? detail::number(doc["decades"], "config.decades") : 1.0;
        s.sizes = plan_sizes(n_max, points, decades);
    }
    if (doc.contains("repeats")) {
        s.repeats = static_cast<int>(detail::integer_field(doc, "repeats", "config"));
    }
    if (doc.contains("sigma")) s.sigma = detail::number(doc["sigma"], "config.sigma");
    return s;
}

}  // namespace synmix

#endif  // SYNMIX_SIMULATE_HPP
