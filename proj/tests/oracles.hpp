#ifndef SYNMIX_TESTS_ORACLES_HPP
#define SYNMIX_TESTS_ORACLES_HPP

// Reference implementations used only by the tests. None of these call into
// the library algorithms they check; they share plain data types only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synmix/annotations.hpp"
#include "synmix/metrics.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Detection metrics

struct Box {
    double x0, y0, x1, y1;
};

inline Box to_box(const synmix::BoundingBox& b) {
    return {b.x_min(), b.y_min(), b.x_max(), b.y_max()};
}

inline double overlap_ratio(const Box& a, const Box& b) {
    const double ix = std::max(0.0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
    const double iy = std::max(0.0, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
    const double inter = ix * iy;
    if (inter == 0.0) return 0.0;
    const double area_a = (a.x1 - a.x0) * (a.y1 - a.y0);
    const double area_b = (b.x1 - b.x0) * (b.y1 - b.y0);
    return inter / (area_a + area_b - inter);
}

struct Flag {
    double score;
    std::size_t input_index;
    bool tp;
};

/// Picks detections one at a time by linear scan for the maximum score
/// (lowest input index on ties) and matches each against every still-free
/// ground truth.
inline std::vector<Flag> greedy_flags(const std::vector<synmix::Detection>& preds,
                                      const synmix::DatasetManifest& m,
                                      const std::string& category, double threshold) {
    std::vector<Flag> flags;
    for (const auto& img : m.images) {
        std::vector<Box> gts;
        for (const auto& t : img.instances) {
            if (t.category == category) gts.push_back(to_box(t.box));
        }
        std::vector<std::size_t> pending;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            if (preds[i].image_id == img.id && preds[i].category == category) pending.push_back(i);
        }
        std::vector<bool> used(gts.size(), false);
        while (!pending.empty()) {
            std::size_t pick = 0;
            for (std::size_t k = 1; k < pending.size(); ++k) {
                if (preds[pending[k]].score > preds[pending[pick]].score) pick = k;
            }
            const std::size_t i = pending[pick];
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
            const Box d = to_box(preds[i].box);
            int best = -1;
            double best_v = -1.0;
            for (std::size_t j = 0; j < gts.size(); ++j) {
                if (used[j]) continue;
                const double v = overlap_ratio(d, gts[j]);
                if (v > best_v) {
                    best_v = v;
                    best = static_cast<int>(j);
                }
            }
            const bool tp = best >= 0 && best_v >= threshold;
            if (tp) used[static_cast<std::size_t>(best)] = true;
            flags.push_back({preds[i].score, i, tp});
        }
    }
    // Global order by repeated max selection.
    std::vector<Flag> ordered;
    while (!flags.empty()) {
        std::size_t pick = 0;
        for (std::size_t k = 1; k < flags.size(); ++k) {
            const auto& a = flags[k];
            const auto& b = flags[pick];
            if (a.score > b.score || (a.score == b.score && a.input_index < b.input_index)) pick = k;
        }
        ordered.push_back(flags[pick]);
        flags.erase(flags.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return ordered;
}

/// Area under the precision envelope, summed per recall step: each true
/// positive at rank k adds (1/n_gt) * max_{j >= k} precision_j.
inline double envelope_ap(const std::vector<bool>& tp_flags, std::size_t n_gt) {
    if (n_gt == 0 || tp_flags.empty()) return 0.0;
    std::vector<double> prec(tp_flags.size());
    std::size_t tp = 0;
    for (std::size_t k = 0; k < tp_flags.size(); ++k) {
        tp += tp_flags[k] ? 1 : 0;
        prec[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    }
    double ap = 0.0;
    for (std::size_t k = 0; k < tp_flags.size(); ++k) {
        if (!tp_flags[k]) continue;
        double best = 0.0;
        for (std::size_t j = k; j < prec.size(); ++j) best = std::max(best, prec[j]);
        ap += best / static_cast<double>(n_gt);
    }
    return ap;
}

struct OracleResult {
    std::map<std::string, double> ap;  // categories with ground truth only
    double map = 0.0;
};

inline OracleResult brute_force_evaluate(const std::vector<synmix::Detection>& preds,
                                         const synmix::DatasetManifest& m, double threshold) {
    OracleResult r;
    double sum = 0.0;
    for (const auto& c : m.categories) {
        std::size_t n_gt = 0;
        for (const auto& img : m.images) {
            for (const auto& t : img.instances) n_gt += t.category == c ? 1 : 0;
        }
        if (n_gt == 0) continue;
        std::vector<bool> tps;
        for (const auto& f : greedy_flags(preds, m, c, threshold)) tps.push_back(f.tp);
        r.ap[c] = envelope_ap(tps, n_gt);
        sum += r.ap[c];
    }
    r.map = r.ap.empty() ? 0.0 : sum / static_cast<double>(r.ap.size());
    return r;
}

/// Midpoint-rule integral of the envelope over recall in [0, 1] at the
/// given step.
inline double grid_integrated_ap(const synmix::PRCurve& curve, double step = 1e-6) {
    const auto& pts = curve.points;
    if (curve.n_ground_truth == 0 || pts.empty()) return 0.0;
    std::vector<double> suffix_max(pts.size());
    double run = 0.0;
    for (std::size_t i = pts.size(); i-- > 0;) {
        run = std::max(run, pts[i].precision);
        suffix_max[i] = run;
    }
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / step));
    double area = 0.0;
    std::size_t first = 0;  // first point with recall >= r, r increasing
    for (std::size_t s = 0; s < steps; ++s) {
        const double r = (static_cast<double>(s) + 0.5) * step;
        while (first < pts.size() && pts[first].recall < r) ++first;
        if (first < pts.size()) area += suffix_max[first] * step;
    }
    return area;
}

// ---------------------------------------------------------------------------
// Random streams (transcribed from the public-domain splitmix64.c)

struct RefSplitMix {
    std::uint64_t x;
    std::uint64_t next() {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// Reference draw: walk k = 0.., choose j uniformly in [k, n) by the
/// multiply-high rule and swap, keeping ids directly rather than indices.
inline std::vector<std::string> reference_draw(std::vector<std::string> ids, std::size_t count,
                                               std::uint64_t stream_seed) {
    RefSplitMix g{stream_seed};
    const std::size_t n = ids.size();
    for (std::size_t k = 0; k < count && k + 1 < n; ++k) {
        const std::uint64_t range = n - k;
        const std::uint64_t x = g.next();
        // 64x64 -> high 64 bits via 32-bit limbs.
        const std::uint64_t x_lo = x & 0xffffffffULL, x_hi = x >> 32;
        const std::uint64_t r_lo = range & 0xffffffffULL, r_hi = range >> 32;
        const std::uint64_t lo_lo = x_lo * r_lo;
        const std::uint64_t hi_lo = x_hi * r_lo;
        const std::uint64_t lo_hi = x_lo * r_hi;
        const std::uint64_t hi_hi = x_hi * r_hi;
        const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xffffffffULL) + lo_hi;
        const std::uint64_t high = hi_hi + (hi_lo >> 32) + (cross >> 32);
        std::swap(ids[k], ids[k + high]);
    }
    ids.resize(count);
    return ids;
}

// ---------------------------------------------------------------------------
// Least squares via uncentered normal equations in long double.

struct Line {
    double intercept;
    double slope;
};

inline Line normal_equations_fit(const std::vector<double>& n, const std::vector<double>& err) {
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const long double k = static_cast<long double>(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const long double x = std::log10(static_cast<long double>(n[i]));
        const long double y = std::log10(static_cast<long double>(err[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const long double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const long double intercept = (sy - slope * sx) / k;
    return {static_cast<double>(intercept), static_cast<double>(slope)};
}

}  // namespace oracle

#endif  // SYNMIX_TESTS_ORACLES_HPP
