#ifndef SYNMIX_METRICS_HPP
#define SYNMIX_METRICS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "synmix/annotations.hpp"
#include "synmix/error.hpp"
#include "synmix/geometry.hpp"

namespace synmix {

struct Detection {
    std::string image_id;
    std::string category;
    BoundingBox box;
    double score;
};

enum class MatchFlag { tp, fp };

/// One detection after matching. `index` refers to the input list.
struct MatchedDetection {
    std::size_t index;
    double score;
    MatchFlag flag;
};

/// Greedy matching for a single (image, category) group. Detections are
/// visited by descending score (stable on ties); each one takes the
/// still-unmatched ground truth of highest IoU when that IoU reaches the
/// threshold. Result is in visiting order.
inline std::vector<MatchedDetection> match_detections(std::span<const Detection> detections,
                                                      std::span<const GroundTruthInstance> truths,
                                                      double iou_threshold) {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
        throw ContractError("iou threshold must lie in (0, 1]");
    }
    const std::string* image = nullptr;
    const std::string* category = nullptr;
    const auto check = [&](const std::string& img, const std::string& cat) {
        if (image == nullptr) {
            image = &img;
            category = &cat;
        } else if (*image != img || *category != cat) {
            throw ContractError("match_detections needs a single image and category, got '" +
                                *image + "'/'" + *category + "' and '" + img + "'/'" + cat +
                                "'");
        }
    };
    for (const auto& t : truths) check(t.image_id, t.category);
    for (const auto& d : detections) check(d.image_id, d.category);

    std::vector<std::size_t> order(detections.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detections[a].score > detections[b].score;
    });

    std::vector<bool> taken(truths.size(), false);
    std::vector<MatchedDetection> out;
    out.reserve(detections.size());
    for (const std::size_t i : order) {
        double best = -1.0;
        std::size_t best_j = truths.size();
        for (std::size_t j = 0; j < truths.size(); ++j) {
            if (taken[j]) continue;
            const double v = iou(detections[i].box, truths[j].box);
            if (v > best) {
                best = v;
                best_j = j;
            }
        }
        if (best_j < truths.size() && best >= iou_threshold) {
            taken[best_j] = true;
            out.push_back({i, detections[i].score, MatchFlag::tp});
        } else {
            out.push_back({i, detections[i].score, MatchFlag::fp});
        }
    }
    return out;
}

struct PRPoint {
    double recall;
    double precision;
};

struct PRCurve {
    std::vector<PRPoint> points;
    std::size_t n_ground_truth = 0;
};

/// Cumulative precision/recall after each flag. No ground truth gives an
/// empty curve.
inline PRCurve pr_curve(std::span<const MatchFlag> flags, std::size_t n_ground_truth) {
    PRCurve curve;
    curve.n_ground_truth = n_ground_truth;
    if (n_ground_truth == 0) return curve;
    curve.points.reserve(flags.size());
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (const MatchFlag f : flags) {
        (f == MatchFlag::tp ? tp : fp) += 1;
        curve.points.push_back({static_cast<double>(tp) / static_cast<double>(n_ground_truth),
                                static_cast<double>(tp) / static_cast<double>(tp + fp)});
    }
    return curve;
}

enum class Interpolation { all_point, eleven_point };

inline std::string_view to_string(Interpolation i) noexcept {
    return i == Interpolation::all_point ? "all-point" : "11-point";
}

inline Interpolation parse_interpolation(std::string_view s) {
    if (s == "all-point") return Interpolation::all_point;
    if (s == "11-point") return Interpolation::eleven_point;
    throw ValidationError("unknown interpolation '" + std::string(s) +
                          "' (expected all-point|11-point)");
}

/// Area under the precision envelope p(r) = max{precision_j : recall_j >= r}.
/// all-point integrates the step function exactly; 11-point averages the
/// envelope at r = 0, 0.1, ..., 1.
inline double average_precision(const PRCurve& curve,
                                Interpolation mode = Interpolation::all_point) {
    const auto& pts = curve.points;
    if (curve.n_ground_truth == 0 || pts.empty()) return 0.0;

    if (mode == Interpolation::eleven_point) {
        double sum = 0.0;
        for (int t = 0; t <= 10; ++t) {
            const double r = t / 10.0;
            double best = 0.0;
            for (const auto& p : pts) {
                if (p.recall >= r) best = std::max(best, p.precision);
            }
            sum += best;
        }
        return sum / 11.0;
    }

    std::vector<double> envelope(pts.size());
    double running = 0.0;
    for (std::size_t i = pts.size(); i-- > 0;) {
        running = std::max(running, pts[i].precision);
        envelope[i] = running;
    }
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ap += (pts[i].recall - prev_recall) * envelope[i];
        prev_recall = pts[i].recall;
    }
    return std::clamp(ap, 0.0, 1.0);
}

struct EvaluateOptions {
    double iou_threshold = 0.5;
    Interpolation interpolation = Interpolation::all_point;
};

struct CategoryEvaluation {
    std::string category;
    std::size_t n_ground_truth = 0;
    std::size_t n_detections = 0;
    double ap = 0.0;
    bool in_mean = false;  // has ground truth, counts towards mAP
    PRCurve curve;
};

struct EvaluationResult {
    double iou_threshold = 0.5;
    Interpolation interpolation = Interpolation::all_point;
    double map = 0.0;
    std::vector<CategoryEvaluation> categories;  // manifest category order
    std::vector<std::string> predicted_without_truth;

    const CategoryEvaluation* find(std::string_view category) const {
        for (const auto& c : categories) {
            if (c.category == category) return &c;
        }
        return nullptr;
    }
};

/// Full AP pipeline over a manifest. mAP is the unweighted mean over
/// categories that have at least one ground-truth instance.
inline EvaluationResult evaluate(std::span<const Detection> predictions,
                                 const DatasetManifest& manifest,
                                 const EvaluateOptions& opts = {}) {
    std::unordered_map<std::string, std::size_t> image_index;
    for (std::size_t i = 0; i < manifest.images.size(); ++i) {
        image_index.emplace(manifest.images[i].id, i);
    }
    std::unordered_map<std::string, std::size_t> cat_index;
    for (std::size_t c = 0; c < manifest.categories.size(); ++c) {
        cat_index.emplace(manifest.categories[c], c);
    }

    std::vector<std::string> offenders;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto& p = predictions[i];
        if (!image_index.contains(p.image_id)) {
            offenders.push_back("prediction " + std::to_string(i) + ": unknown image_id '" +
                                p.image_id + "'");
        }
        if (!cat_index.contains(p.category)) {
            offenders.push_back("prediction " + std::to_string(i) + ": unknown category '" +
                                p.category + "'");
        }
        if (!(p.score >= 0.0 && p.score <= 1.0)) {
            offenders.push_back("prediction " + std::to_string(i) + ": score outside [0,1]");
        }
    }
    if (!offenders.empty()) {
        std::string msg = "invalid predictions:";
        const std::size_t shown = std::min<std::size_t>(offenders.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) msg += "\n  " + offenders[i];
        if (shown < offenders.size()) {
            msg += "\n  ... and " + std::to_string(offenders.size() - shown) + " more";
        }
        throw ValidationError(msg);
    }

    const std::size_t n_cat = manifest.categories.size();
    // Group predictions per (image, category), keeping input order.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        groups[{image_index.at(predictions[i].image_id), cat_index.at(predictions[i].category)}]
            .push_back(i);
    }

    EvaluationResult result;
    result.iou_threshold = opts.iou_threshold;
    result.interpolation = opts.interpolation;
    result.categories.resize(n_cat);
    for (std::size_t c = 0; c < n_cat; ++c) result.categories[c].category = manifest.categories[c];

    std::vector<std::vector<GroundTruthInstance>> truths_by_cat(n_cat);
    for (const auto& img : manifest.images) {
        for (const auto& t : img.instances) {
            ++result.categories[cat_index.at(t.category)].n_ground_truth;
        }
    }

    // matched[c] collects (input index, score, flag) across images.
    std::vector<std::vector<MatchedDetection>> matched(n_cat);
    std::vector<Detection> dets;
    std::vector<GroundTruthInstance> gts;
    for (std::size_t ii = 0; ii < manifest.images.size(); ++ii) {
        const auto& img = manifest.images[ii];
        for (std::size_t c = 0; c < n_cat; ++c) {
            const auto it = groups.find({ii, c});
            if (it == groups.end()) continue;
            gts.clear();
            for (const auto& t : img.instances) {
                if (t.category == manifest.categories[c]) gts.push_back(t);
            }
            dets.clear();
            for (const std::size_t i : it->second) dets.push_back(predictions[i]);
            for (const auto& m : match_detections(dets, gts, opts.iou_threshold)) {
                matched[c].push_back({it->second[m.index], m.score, m.flag});
            }
        }
    }

    double sum = 0.0;
    std::size_t counted = 0;
    std::vector<MatchFlag> flags;
    for (std::size_t c = 0; c < n_cat; ++c) {
        auto& m = matched[c];
        // Global order: descending score, input position on ties.
        std::sort(m.begin(), m.end(), [](const MatchedDetection& a, const MatchedDetection& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.index < b.index;
        });
        flags.clear();
        for (const auto& d : m) flags.push_back(d.flag);
        auto& ce = result.categories[c];
        ce.n_detections = m.size();
        ce.curve = pr_curve(flags, ce.n_ground_truth);
        ce.ap = average_precision(ce.curve, opts.interpolation);
        ce.in_mean = ce.n_ground_truth > 0;
        if (ce.in_mean) {
            sum += ce.ap;
            ++counted;
        } else if (ce.n_detections > 0) {
            result.predicted_without_truth.push_back(ce.category);
        }
    }
    result.map = counted > 0 ? sum / static_cast<double>(counted) : 0.0;
    return result;
}

// ---------------------------------------------------------------------------
// Prediction files and reports

/// Reads a JSON array of {image_id, category, bbox, score}.
inline std::vector<Detection> parse_predictions_text(std::string_view text) {
    using detail::json;
    const json doc = detail::parse_json(text, "predictions");
    if (!doc.is_array()) throw ParseError("predictions: expected a top-level array");
    std::vector<Detection> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string p = "predictions[" + std::to_string(i) + "]";
        const json& jd = doc[i];
        std::string image_id = detail::string_field(jd, "image_id", p);
        std::string category = detail::string_field(jd, "category", p);
        const BoundingBox box = detail::read_bbox(detail::field(jd, "bbox", p), p + ".bbox",
                                                  "prediction " + std::to_string(i));
        const double score = detail::number(detail::field(jd, "score", p), p + ".score");
        out.push_back({std::move(image_id), std::move(category), box, score});
    }
    return out;
}

inline std::string serialize_predictions(std::span<const Detection> dets) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& d : dets) {
        nlohmann::ordered_json o;
        o["image_id"] = d.image_id;
        o["category"] = d.category;
        o["bbox"] = {d.box.x_min(), d.box.y_min(), d.box.x_max(), d.box.y_max()};
        o["score"] = d.score;
        doc.push_back(std::move(o));
    }
    return doc.dump(2) + "\n";
}

inline std::string evaluation_report_json(const EvaluationResult& r) {
    nlohmann::ordered_json doc;
    doc["iou_threshold"] = r.iou_threshold;
    doc["interpolation"] = std::string(to_string(r.interpolation));
    doc["map"] = r.map;
    nlohmann::ordered_json cats = nlohmann::ordered_json::array();
    for (const auto& c : r.categories) {
        nlohmann::ordered_json o;
        o["category"] = c.category;
        o["ap"] = c.ap;
        o["n_ground_truth"] = c.n_ground_truth;
        o["n_detections"] = c.n_detections;
        o["in_mean"] = c.in_mean;
        cats.push_back(std::move(o));
    }
    doc["categories"] = std::move(cats);
    doc["predicted_without_truth"] = r.predicted_without_truth;
    return doc.dump(2) + "\n";
}

inline std::string metric_label(double iou_threshold) {
    return fmt::format("{:g}", iou_threshold * 100.0);
}

inline std::string evaluation_table_csv(const EvaluationResult& r) {
    const std::string t = metric_label(r.iou_threshold);
    std::string out = fmt::format("category,ap{},n_ground_truth,n_detections,in_mean\n", t);
    for (const auto& c : r.categories) {
        out += fmt::format("{},{:.6f},{},{},{}\n", c.category, c.ap, c.n_ground_truth,
                           c.n_detections, c.in_mean ? 1 : 0);
    }
    out += fmt::format("mAP{},{:.6f},,,\n", t, r.map);
    return out;
}

inline std::string evaluation_table_markdown(const EvaluationResult& r) {
    const std::string t = metric_label(r.iou_threshold);
    std::string out = fmt::format("| Category | AP{} | GT instances | Detections |\n", t);
    out += "|:---|---:|---:|---:|\n";
    for (const auto& c : r.categories) {
        out += fmt::format("| {} | {} | {} | {} |\n", c.category,
                           c.in_mean ? fmt::format("{:.4f}", c.ap) : std::string("n/a"),
                           c.n_ground_truth, c.n_detections);
    }
    out += fmt::format("| **mAP{}** | **{:.4f}** | | |\n", t, r.map);
    if (!r.predicted_without_truth.empty()) {
        out += "\nPredicted categories without ground truth (excluded): ";
        for (std::size_t i = 0; i < r.predicted_without_truth.size(); ++i) {
            out += (i ? ", " : "") + r.predicted_without_truth[i];
        }
        out += "\n";
    }
    return out;
}

/// PR points as CSV (category,recall,precision), categories in manifest order.
inline std::string pr_curves_csv(const EvaluationResult& r) {
    std::string out = "category,recall,precision\n";
    for (const auto& c : r.categories) {
        for (const auto& p : c.curve.points) {
            out += fmt::format("{},{:.10g},{:.10g}\n", c.category, p.recall, p.precision);
        }
    }
    return out;
}

}  // namespace synmix

#endif  // SYNMIX_METRICS_HPP
