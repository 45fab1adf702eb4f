#ifndef SYNMIX_SCALING_HPP
#define SYNMIX_SCALING_HPP

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "synmix/error.hpp"
#include "synmix/mixing.hpp"
#include "synmix/stats.hpp"

namespace synmix {

inline constexpr std::string_view kRunsCsvHeader = "ratio,n_total,n_real,repeat,metric,value";

struct RunRecord {
    double ratio = 0.0;
    std::int64_t n_total = 0;
    std::int64_t n_real = 0;
    int repeat = 1;
    std::string metric;  // map50, ap50:car, ...
    double value = 0.0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline void validate(const RunRecord& r) {
    if (!(r.ratio >= 0.0 && r.ratio <= 1.0)) throw ValidationError("run record: ratio outside [0,1]");
    if (r.n_total < 1) throw ValidationError("run record: n_total must be >= 1");
    if (r.n_real < 0 || r.n_real > r.n_total) {
        throw ValidationError("run record: n_real must lie in [0, n_total]");
    }
    if (r.repeat < 1) throw ValidationError("run record: repeat index must be >= 1");
    if (r.metric.empty()) throw ValidationError("run record: metric name is empty");
    if (!(r.value > 0.0 && r.value <= 1.0)) {
        throw ValidationError("run record: metric value must lie in (0, 1]");
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, std::size_t column, const char* what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line,
                         column);
    }
    return v;
}

/// Calls fn(fields, line_number) for every non-blank data line after
/// checking the header.
template <typename Fn>
void for_each_csv_row(std::string_view text, std::string_view header, Fn&& fn) {
    std::size_t line_no = 0;
    bool seen_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (!seen_header) {
            std::string h;
            for (const auto f : split_csv(line)) h += (h.empty() ? "" : ",") + std::string(f);
            if (h != header) {
                throw ParseError("expected CSV header '" + std::string(header) + "'", line_no, 1);
            }
            seen_header = true;
            continue;
        }
        fn(split_csv(line), line_no);
    }
    if (!seen_header) throw ParseError("missing CSV header '" + std::string(header) + "'");
}

}  // namespace detail

inline std::vector<RunRecord> parse_runs_csv(std::string_view text) {
    std::vector<RunRecord> out;
    detail::for_each_csv_row(text, kRunsCsvHeader, [&](const auto& f, std::size_t line) {
        if (f.size() != 6) {
            throw ParseError("expected 6 fields, got " + std::to_string(f.size()), line, 1);
        }
        RunRecord r;
        r.ratio = detail::parse_number<double>(f[0], line, 1, "ratio");
        r.n_total = detail::parse_number<std::int64_t>(f[1], line, 2, "n_total");
        r.n_real = detail::parse_number<std::int64_t>(f[2], line, 3, "n_real");
        r.repeat = detail::parse_number<int>(f[3], line, 4, "repeat");
        r.metric = std::string(f[4]);
        r.value = detail::parse_number<double>(f[5], line, 6, "value");
        try {
            validate(r);
        } catch (const ValidationError& e) {
            throw ValidationError(fmt::format("line {}: {}", line, e.what()));
        }
        out.push_back(std::move(r));
    });
    return out;
}

inline std::string runs_csv(std::span<const RunRecord> records) {
    std::string out = std::string(kRunsCsvHeader) + "\n";
    for (const auto& r : records) {
        out += fmt::format("{},{},{},{},{},{}\n", r.ratio, r.n_total, r.n_real, r.repeat, r.metric,
                           r.value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Aggregation

struct AggregatedPoint {
    std::string metric;
    double ratio = 0.0;
    std::int64_t n_total = 0;
    double mean = 0.0;
    double std = 0.0;  // sample std, 0 for a single repeat
    std::size_t repeats = 0;
};

/// Mean and sample std per (metric, ratio, n_total), sorted by that key.
inline std::vector<AggregatedPoint> aggregate_runs(std::span<const RunRecord> records) {
    if (records.empty()) throw ValidationError("aggregate_runs: no run records");
    std::map<std::tuple<std::string, double, std::int64_t>, std::vector<double>> groups;
    for (const auto& r : records) groups[{r.metric, r.ratio, r.n_total}].push_back(r.value);
    std::vector<AggregatedPoint> out;
    out.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        const auto& [metric, ratio, n] = key;
        out.push_back({metric, ratio, n, stats::mean(values), stats::stddev(values),
                       values.size()});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Power law  error = 10^beta * N^gamma

struct FitPoint {
    double n_total;
    double error;
};

struct PowerLawFit {
    double beta = 0.0;   // intercept, log10 units
    double gamma = 0.0;  // slope
    std::size_t n_points = 0;
    double rss = 0.0;    // residual sum of squares of log10(error)
    double n_min = 0.0;  // fitted size range
    double n_max = 0.0;
    double ratio = 0.0;
    std::string metric;

    double log10_error(double n) const { return beta + gamma * std::log10(n); }
    double predicted_error(double n) const { return std::pow(10.0, log10_error(n)); }
};

/// Ordinary least squares of log10(error) on log10(n_total). Errors must be
/// positive and finite; values above 1 are accepted since the model is a
/// plain log-log line.
inline PowerLawFit fit_power_law(std::span<const FitPoint> points) {
    if (points.size() < 2) throw ValidationError("power-law fit needs at least 2 points");
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    PowerLawFit fit;
    fit.n_min = std::numeric_limits<double>::infinity();
    fit.n_max = 0.0;
    for (const auto& p : points) {
        if (!(p.n_total > 0.0) || !std::isfinite(p.n_total)) {
            throw ValidationError("power-law fit: n_total must be positive");
        }
        if (!(p.error > 0.0) || !std::isfinite(p.error)) {
            throw ValidationError(fmt::format(
                "power-law fit: error {} at N={} is not positive (metric reached 1); configure "
                "an error floor",
                p.error, p.n_total));
        }
        xs.push_back(std::log10(p.n_total));
        ys.push_back(std::log10(p.error));
        fit.n_min = std::min(fit.n_min, p.n_total);
        fit.n_max = std::max(fit.n_max, p.n_total);
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double xm = sx / n;
    const double ym = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    if (!(sxx > 0.0)) {
        throw ValidationError("power-law fit needs at least 2 distinct n_total values");
    }
    fit.gamma = sxy / sxx;
    fit.beta = ym - fit.gamma * xm;
    fit.n_points = points.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.beta + fit.gamma * xs[i]);
        fit.rss += r * r;
    }
    return fit;
}

struct RequiredExamples {
    double n = 0.0;
    bool extrapolated = false;  // more than one decade outside the fitted range
};

/// Size at which the fitted curve reaches `target_error`.
inline RequiredExamples required_examples(const PowerLawFit& fit, double target_error) {
    if (!(target_error > 0.0) || !std::isfinite(target_error)) {
        throw ContractError("target error must be positive");
    }
    if (!(fit.gamma < 0.0)) {
        throw NumericError(fmt::format(
            "power law with gamma = {} never improves with more data; target not reached",
            fit.gamma));
    }
    RequiredExamples out;
    out.n = std::pow(10.0, (std::log10(target_error) - fit.beta) / fit.gamma);
    if (fit.n_max > 0.0) {
        out.extrapolated = out.n > 10.0 * fit.n_max || out.n < fit.n_min / 10.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Baseline and savings

struct Baseline {
    std::string metric;
    double ratio = 1.0;
    std::int64_t n_total = 0;
    std::size_t repeats = 0;
    double error = 0.0;
};

inline bool same_ratio(double a, double b) { return std::abs(a - b) <= 1e-12; }

/// 1 - mean metric over repeats at the largest size trained at
/// `baseline_ratio`.
inline Baseline baseline_error(std::span<const RunRecord> records, const std::string& metric,
                               double baseline_ratio = 1.0) {
    std::int64_t n_max = 0;
    for (const auto& r : records) {
        if (r.metric == metric && same_ratio(r.ratio, baseline_ratio)) {
            n_max = std::max(n_max, r.n_total);
        }
    }
    if (n_max == 0) {
        throw ValidationError(fmt::format("no run records for metric '{}' at ratio {}", metric,
                                          baseline_ratio));
    }
    std::vector<double> values;
    for (const auto& r : records) {
        if (r.metric == metric && same_ratio(r.ratio, baseline_ratio) && r.n_total == n_max) {
            values.push_back(r.value);
        }
    }
    return {metric, baseline_ratio, n_max, values.size(), 1.0 - stats::mean(values)};
}

enum class SavingsStatus { baseline, reached, not_reached };

inline std::string_view to_string(SavingsStatus s) noexcept {
    switch (s) {
        case SavingsStatus::baseline: return "baseline";
        case SavingsStatus::reached: return "reached";
        case SavingsStatus::not_reached: return "not reached";
    }
    return "";
}

struct SavingsRow {
    double ratio = 0.0;
    SavingsStatus status = SavingsStatus::not_reached;
    double required_total = 0.0;  // continuous N*
    std::int64_t total_images = 0;
    std::int64_t real_images = 0;
    bool extrapolated = false;
    std::string note;

    /// Row for a known total; real = round-half-up(ratio * total).
    static SavingsRow from_total(double ratio, std::int64_t total,
                                 SavingsStatus status = SavingsStatus::reached) {
        SavingsRow row;
        row.ratio = ratio;
        row.status = status;
        row.required_total = static_cast<double>(total);
        row.total_images = total;
        row.real_images = split_counts(total, ratio).n_real;
        return row;
    }
};

/// One row per fit, plus the baseline row, sorted by ratio. Fits that never
/// reach the baseline error become "not reached" rows.
inline std::vector<SavingsRow> savings_table(std::span<const PowerLawFit> fits,
                                             const Baseline& baseline) {
    std::vector<SavingsRow> rows;
    for (const auto& fit : fits) {
        if (same_ratio(fit.ratio, baseline.ratio)) continue;
        try {
            const RequiredExamples req = required_examples(fit, baseline.error);
            const std::int64_t total = std::max<std::int64_t>(1, round_half_up(req.n));
            SavingsRow row = SavingsRow::from_total(fit.ratio, total);
            row.required_total = req.n;
            row.extrapolated = req.extrapolated;
            rows.push_back(std::move(row));
        } catch (const NumericError& e) {
            SavingsRow row;
            row.ratio = fit.ratio;
            row.status = SavingsStatus::not_reached;
            row.note = e.what();
            rows.push_back(std::move(row));
        }
    }
    rows.push_back(SavingsRow::from_total(baseline.ratio, baseline.n_total, SavingsStatus::baseline));
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SavingsRow& a, const SavingsRow& b) { return a.ratio < b.ratio; });
    return rows;
}

inline std::string percent(double ratio) { return fmt::format("{:g}%", ratio * 100.0); }

inline constexpr std::string_view kSavingsCsvHeader =
    "metric,ratio,total_images,real_images,required_total,status,extrapolated";

inline std::string savings_csv_rows(const std::string& metric, std::span<const SavingsRow> rows) {
    std::string out;
    for (const auto& r : rows) {
        if (r.status == SavingsStatus::not_reached) {
            out += fmt::format("{},{:g},,,,{},0\n", metric, r.ratio, to_string(r.status));
        } else {
            out += fmt::format("{},{:g},{},{},{:.3f},{},{}\n", metric, r.ratio, r.total_images,
                               r.real_images, r.required_total, to_string(r.status),
                               r.extrapolated ? 1 : 0);
        }
    }
    return out;
}

inline std::string savings_csv(const std::string& metric, std::span<const SavingsRow> rows) {
    return std::string(kSavingsCsvHeader) + "\n" + savings_csv_rows(metric, rows);
}

/// Three-column table: ratio of real data, total images, real images.
inline std::string savings_markdown(std::span<const SavingsRow> rows) {
    std::string out = "| Ratio of real data | Total images | Real images |\n";
    out += "|---:|---:|---:|\n";
    bool any_extrapolated = false;
    for (const auto& r : rows) {
        if (r.status == SavingsStatus::not_reached) {
            out += fmt::format("| {} | not reached | not reached |\n", percent(r.ratio));
            continue;
        }
        any_extrapolated = any_extrapolated || r.extrapolated;
        out += fmt::format("| {} | {}{} | {} |\n", percent(r.ratio), r.total_images,
                           r.extrapolated ? "*" : "", r.real_images);
    }
    if (any_extrapolated) {
        out += "\n\\* extrapolated more than one decade beyond the fitted sizes\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run-record analysis pipeline

enum class FitInput { means, all_repeats };

struct AnalysisOptions {
    double baseline_ratio = 1.0;
    FitInput fit_input = FitInput::means;
    double error_floor = 1e-6;  // 0 disables the floor
};

struct MetricAnalysis {
    std::string metric;
    std::vector<AggregatedPoint> points;  // this metric only
    std::vector<PowerLawFit> fits;        // one per ratio with >= 2 sizes
    Baseline baseline;
    std::vector<SavingsRow> rows;
    std::vector<std::string> warnings;
};

/// Fit points for one (metric, ratio). Errors below the floor are lifted to
/// it and reported in `warnings`.
inline std::vector<FitPoint> fit_points(std::span<const RunRecord> records,
                                        std::span<const AggregatedPoint> aggregated,
                                        const std::string& metric, double ratio,
                                        const AnalysisOptions& opts,
                                        std::vector<std::string>& warnings) {
    std::vector<FitPoint> pts;
    const auto push = [&](double n, double value) {
        double err = 1.0 - value;
        if (opts.error_floor > 0.0 && err < opts.error_floor) {
            warnings.push_back(fmt::format(
                "WARNING: {} at ratio {:g}, N={}: error {:g} lifted to floor {:g}", metric, ratio,
                n, err, opts.error_floor));
            err = opts.error_floor;
        }
        pts.push_back({n, err});
    };
    if (opts.fit_input == FitInput::means) {
        for (const auto& a : aggregated) {
            if (a.metric == metric && same_ratio(a.ratio, ratio)) {
                push(static_cast<double>(a.n_total), a.mean);
            }
        }
    } else {
        std::vector<const RunRecord*> sel;
        for (const auto& r : records) {
            if (r.metric == metric && same_ratio(r.ratio, ratio)) sel.push_back(&r);
        }
        std::stable_sort(sel.begin(), sel.end(), [](const RunRecord* a, const RunRecord* b) {
            return std::tie(a->n_total, a->repeat, a->value) <
                   std::tie(b->n_total, b->repeat, b->value);
        });
        for (const RunRecord* r : sel) push(static_cast<double>(r->n_total), r->value);
    }
    return pts;
}

inline std::vector<std::string> metrics_in(std::span<const RunRecord> records) {
    std::set<std::string> names;
    for (const auto& r : records) names.insert(r.metric);
    return {names.begin(), names.end()};
}

inline MetricAnalysis analyze_metric(std::span<const RunRecord> records, const std::string& metric,
                                     const AnalysisOptions& opts = {}) {
    MetricAnalysis out;
    out.metric = metric;
    for (const auto& a : aggregate_runs(records)) {
        if (a.metric == metric) out.points.push_back(a);
    }
    if (out.points.empty()) throw ValidationError("no run records for metric '" + metric + "'");
    std::vector<double> ratios;
    for (const auto& a : out.points) {
        if (ratios.empty() || !same_ratio(ratios.back(), a.ratio)) ratios.push_back(a.ratio);
    }
    out.baseline = baseline_error(records, metric, opts.baseline_ratio);
    for (const double ratio : ratios) {
        const auto pts = fit_points(records, out.points, metric, ratio, opts, out.warnings);
        std::set<double> distinct;
        for (const auto& p : pts) distinct.insert(p.n_total);
        if (distinct.size() < 2) {
            out.warnings.push_back(fmt::format(
                "WARNING: {} at ratio {:g}: fewer than 2 distinct sizes, no fit", metric, ratio));
            if (!same_ratio(ratio, opts.baseline_ratio)) {
                SavingsRow row;
                row.ratio = ratio;
                row.note = "insufficient data";
                out.rows.push_back(row);
            }
            continue;
        }
        PowerLawFit fit = fit_power_law(pts);
        fit.ratio = ratio;
        fit.metric = metric;
        out.fits.push_back(std::move(fit));
    }
    auto rows = savings_table(out.fits, out.baseline);
    rows.insert(rows.end(), out.rows.begin(), out.rows.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SavingsRow& a, const SavingsRow& b) { return a.ratio < b.ratio; });
    out.rows = std::move(rows);
    for (const auto& r : out.rows) {
        if (r.extrapolated) {
            out.warnings.push_back(fmt::format(
                "WARNING: {} at ratio {:g}: required size {:.0f} extrapolates more than one decade",
                metric, r.ratio, r.required_total));
        }
    }
    return out;
}

inline constexpr std::string_view kFitCsvHeader = "ratio,metric,beta,gamma,rss,n_points";

inline std::string fits_csv_rows(std::span<const PowerLawFit> fits) {
    std::string out;
    for (const auto& f : fits) {
        out += fmt::format("{:g},{},{:.10g},{:.10g},{:.6g},{}\n", f.ratio, f.metric, f.beta,
                           f.gamma, f.rss, f.n_points);
    }
    return out;
}

inline constexpr std::string_view kPlotCsvHeader = "series,metric,ratio,n_total,error,std,repeats";

/// Observed means (as error = 1 - mean) with std, fitted-line samples over
/// each fitted range, and the baseline level.
inline std::string plot_data_csv_rows(const MetricAnalysis& a, int samples = 25) {
    std::string out;
    for (const auto& p : a.points) {
        out += fmt::format("observed,{},{:g},{},{:.10g},{:.10g},{}\n", a.metric, p.ratio,
                           p.n_total, 1.0 - p.mean, p.std, p.repeats);
    }
    for (const auto& f : a.fits) {
        const double lo = std::log10(f.n_min);
        const double hi = std::log10(f.n_max);
        for (int s = 0; s < samples; ++s) {
            const double x = lo + (hi - lo) * s / (samples - 1);
            out += fmt::format("fitted,{},{:g},{:.6g},{:.10g},,\n", a.metric, f.ratio,
                               std::pow(10.0, x), f.predicted_error(std::pow(10.0, x)));
        }
    }
    out += fmt::format("baseline,{},{:g},{},{:.10g},,{}\n", a.metric, a.baseline.ratio,
                       a.baseline.n_total, a.baseline.error, a.baseline.repeats);
    return out;
}

// ---------------------------------------------------------------------------
// Training strategy comparison

struct StrategyComparison {
    std::string metric;
    std::string strategy_a;
    std::string strategy_b;
    stats::WelchResult test;
    bool significant() const { return test.significant; }
};

inline StrategyComparison compare_strategies(std::span<const double> a, std::span<const double> b,
                                             double alpha = 0.05) {
    StrategyComparison c;
    c.test = stats::welch_t_test(a, b, alpha);
    return c;
}

inline constexpr std::string_view kStrategyCsvHeader = "strategy,metric,value";

/// Reads `strategy,metric,value` rows and compares the two strategies per
/// metric (metrics in first-seen order).
inline std::vector<StrategyComparison> compare_strategies_csv(std::string_view text,
                                                              double alpha = 0.05) {
    std::vector<std::string> strategies;
    std::vector<std::string> metrics;
    std::map<std::pair<std::string, std::string>, std::vector<double>> values;
    detail::for_each_csv_row(text, kStrategyCsvHeader, [&](const auto& f, std::size_t line) {
        if (f.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(f.size()), line, 1);
        }
        const std::string s(f[0]);
        const std::string m(f[1]);
        if (std::find(strategies.begin(), strategies.end(), s) == strategies.end()) {
            strategies.push_back(s);
        }
        if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
        values[{s, m}].push_back(detail::parse_number<double>(f[2], line, 3, "value"));
    });
    if (strategies.size() != 2) {
        throw ValidationError(fmt::format("expected exactly 2 strategies, found {}",
                                          strategies.size()));
    }
    std::vector<StrategyComparison> out;
    for (const auto& m : metrics) {
        const auto& a = values[{strategies[0], m}];
        const auto& b = values[{strategies[1], m}];
        StrategyComparison c;
        try {
            c = compare_strategies(a, b, alpha);
        } catch (const ValidationError& e) {
            throw ValidationError("metric '" + m + "': " + e.what());
        }
        c.metric = m;
        c.strategy_a = strategies[0];
        c.strategy_b = strategies[1];
        out.push_back(std::move(c));
    }
    return out;
}

inline std::string comparison_csv(std::span<const StrategyComparison> cs) {
    std::string out =
        "metric,strategy_a,mean_a,std_a,n_a,strategy_b,mean_b,std_b,n_b,t,df,p_value,critical,"
        "alpha,verdict\n";
    for (const auto& c : cs) {
        const auto& t = c.test;
        out += fmt::format("{},{},{:.6f},{:.6f},{},{},{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6g},{:.6f},"
                           "{:g},{}\n",
                           c.metric, c.strategy_a, t.mean_a, t.std_a, t.n_a, c.strategy_b, t.mean_b,
                           t.std_b, t.n_b, t.t, t.df, t.p_value, t.critical, t.alpha,
                           t.significant ? "significant" : "not significant");
    }
    return out;
}

inline std::string comparison_markdown(std::span<const StrategyComparison> cs) {
    if (cs.empty()) return "";
    std::string out = fmt::format("| Metric | {} | {} | t | df | p | Verdict |\n",
                                  cs.front().strategy_a, cs.front().strategy_b);
    out += "|:---|---:|---:|---:|---:|---:|:---|\n";
    for (const auto& c : cs) {
        const auto& t = c.test;
        out += fmt::format("| {} | {:.4f} ± {:.4f} | {:.4f} ± {:.4f} | {:.3f} | {:.2f} | {:.4f} | {} |\n",
                           c.metric, t.mean_a, t.std_a, t.mean_b, t.std_b, t.t, t.df, t.p_value,
                           t.significant ? "significant" : "not significant");
    }
    out += fmt::format("\nWelch two-sample t-test, alpha = {:g}\n", cs.front().test.alpha);
    return out;
}

}  // namespace synmix

#endif  // SYNMIX_SCALING_HPP
