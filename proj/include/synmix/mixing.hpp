#ifndef SYNMIX_MIXING_HPP
#define SYNMIX_MIXING_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "synmix/annotations.hpp"
#include "synmix/error.hpp"
#include "synmix/random.hpp"

namespace synmix {

inline constexpr int kPlanSchemaVersion = 1;

// Stream tags XORed into the seed before sampling each pool ("REAL", "SYNT"
// in the high word, so they never collide with the small per-size offsets).
inline constexpr std::uint64_t kRealStreamTag = 0x5245414C00000000ULL;
inline constexpr std::uint64_t kSyntheticStreamTag = 0x53594E5400000000ULL;

// Absorbs binary representation error when a product like 0.1 * 7775 should
// land exactly on a rounding boundary.
inline constexpr double kRoundingSlack = 1e-9;

/// Nearest integer, halves rounded up.
inline std::int64_t round_half_up(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5 + kRoundingSlack));
}

/// floor(n_max * 10^(-decades * (count - i) / (count - 1))), i = 1..count.
inline std::vector<std::int64_t> plan_sizes(std::int64_t n_max, int count = 10,
                                            double decades = 1.0) {
    if (count < 2) throw ContractError("plan_sizes: need at least 2 points");
    if (n_max < count) throw ContractError("plan_sizes: n_max must be >= number of points");
    if (!(decades > 0.0) || !std::isfinite(decades)) {
        throw ContractError("plan_sizes: decades must be positive");
    }
    std::vector<std::int64_t> sizes;
    sizes.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        const double exponent = -decades * static_cast<double>(count - i) /
                                static_cast<double>(count - 1);
        const auto n = static_cast<std::int64_t>(
            std::floor(static_cast<double>(n_max) * std::pow(10.0, exponent) + kRoundingSlack));
        if (n < 1) {
            throw ValidationError(fmt::format(
                "plan_sizes: point {} rounds to zero; use fewer decades or a larger n_max", i));
        }
        if (!sizes.empty() && n <= sizes.back()) {
            throw ValidationError(fmt::format(
                "plan_sizes: points {} and {} both round to {}; use fewer points or more decades",
                i - 1, i, n));
        }
        sizes.push_back(n);
    }
    return sizes;
}

struct SplitCounts {
    std::int64_t n_real;
    std::int64_t n_synthetic;
    friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

inline SplitCounts split_counts(std::int64_t n_total, double ratio) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw ContractError("ratio must lie in [0, 1]");
    if (n_total < 1) throw ContractError("n_total must be >= 1");
    const std::int64_t n_real =
        std::min(n_total, round_half_up(ratio * static_cast<double>(n_total)));
    return {n_real, n_total - n_real};
}

struct SelectionProvenance {
    std::uint64_t seed = 0;
    double ratio = 0.0;
    std::int64_t n_total = 0;
    std::string real_manifest;
    std::string synthetic_manifest;
};

struct SubsetSelection {
    std::vector<std::string> real_ids;
    std::vector<std::string> synthetic_ids;
    SelectionProvenance provenance;

    friend bool operator==(const SubsetSelection& a, const SubsetSelection& b) {
        return a.real_ids == b.real_ids && a.synthetic_ids == b.synthetic_ids &&
               a.provenance.seed == b.provenance.seed;
    }
};

/// First `count` image ids after a partial Fisher-Yates over the manifest
/// image order, driven by SplitMix64(seed ^ stream_tag).
inline std::vector<std::string> draw_ids(const DatasetManifest& pool, std::size_t count,
                                         std::uint64_t seed, std::uint64_t stream_tag) {
    if (count > pool.images.size()) {
        throw ValidationError(fmt::format("manifest '{}': requested {} images, only {} available",
                                          pool.name, count, pool.images.size()));
    }
    std::vector<std::size_t> idx(pool.images.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    SplitMix64 rng(seed ^ stream_tag);
    partial_shuffle(std::span<std::size_t>(idx), count, rng);
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::size_t k = 0; k < count; ++k) ids.push_back(pool.images[idx[k]].id);
    return ids;
}

inline SubsetSelection sample_mix(const DatasetManifest& real, const DatasetManifest& synthetic,
                                  std::int64_t n_real, std::int64_t n_synthetic,
                                  std::uint64_t seed) {
    if (n_real < 0 || n_synthetic < 0) throw ContractError("sample sizes must be >= 0");
    SubsetSelection sel;
    sel.real_ids = draw_ids(real, static_cast<std::size_t>(n_real), seed, kRealStreamTag);
    sel.synthetic_ids =
        draw_ids(synthetic, static_cast<std::size_t>(n_synthetic), seed, kSyntheticStreamTag);
    sel.provenance.seed = seed;
    sel.provenance.n_total = n_real + n_synthetic;
    sel.provenance.ratio = sel.provenance.n_total > 0
                               ? static_cast<double>(n_real) /
                                     static_cast<double>(sel.provenance.n_total)
                               : 0.0;
    sel.provenance.real_manifest = real.name;
    sel.provenance.synthetic_manifest = synthetic.name;
    return sel;
}

struct PlanEntry {
    int index = 0;  // 1-based
    std::int64_t n_total = 0;
    std::int64_t n_real = 0;
    std::int64_t n_synthetic = 0;
    std::uint64_t seed = 0;  // top-level seed XOR index
};

struct MixPlan {
    double ratio = 0.0;
    std::uint64_t seed = 0;
    int points = 10;
    double decades = 1.0;
    std::int64_t n_max = 0;
    std::string real_manifest;
    std::string synthetic_manifest;
    std::vector<PlanEntry> entries;
};

struct PlanOutput {
    MixPlan plan;
    std::vector<SubsetSelection> selections;  // one per entry
};

struct PlanOptions {
    double ratio = 1.0;
    std::uint64_t seed = 0;
    int points = 10;
    double decades = 1.0;
    std::optional<std::int64_t> n_max;  // defaults to the real pool size
};

inline PlanOutput build_plan(const DatasetManifest& real, const DatasetManifest& synthetic,
                             const PlanOptions& opts) {
    PlanOutput out;
    MixPlan& plan = out.plan;
    plan.ratio = opts.ratio;
    plan.seed = opts.seed;
    plan.points = opts.points;
    plan.decades = opts.decades;
    plan.n_max = opts.n_max.value_or(static_cast<std::int64_t>(real.images.size()));
    plan.real_manifest = real.name;
    plan.synthetic_manifest = synthetic.name;

    const auto sizes = plan_sizes(plan.n_max, opts.points, opts.decades);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const SplitCounts sc = split_counts(sizes[i], opts.ratio);
        const int index = static_cast<int>(i) + 1;
        plan.entries.push_back({index, sizes[i], sc.n_real, sc.n_synthetic,
                                opts.seed ^ static_cast<std::uint64_t>(index)});
    }
    for (const auto& e : plan.entries) {
        if (e.n_real > static_cast<std::int64_t>(real.images.size())) {
            throw ValidationError(fmt::format(
                "size {} needs {} real images, manifest '{}' has {}", e.n_total, e.n_real,
                real.name, real.images.size()));
        }
        if (e.n_synthetic > static_cast<std::int64_t>(synthetic.images.size())) {
            throw ValidationError(fmt::format(
                "size {} needs {} synthetic images, manifest '{}' has {}", e.n_total,
                e.n_synthetic, synthetic.name, synthetic.images.size()));
        }
    }
    out.selections.reserve(plan.entries.size());
    for (const auto& e : plan.entries) {
        SubsetSelection sel = sample_mix(real, synthetic, e.n_real, e.n_synthetic, e.seed);
        sel.provenance.ratio = opts.ratio;
        out.selections.push_back(std::move(sel));
    }
    return out;
}

inline std::string plan_json(const PlanOutput& out) {
    using nlohmann::ordered_json;
    const MixPlan& p = out.plan;
    ordered_json doc;
    doc["schema_version"] = kPlanSchemaVersion;
    doc["ratio"] = p.ratio;
    doc["seed"] = p.seed;
    doc["points"] = p.points;
    doc["decades"] = p.decades;
    doc["n_max"] = p.n_max;
    doc["real_manifest"] = p.real_manifest;
    doc["synthetic_manifest"] = p.synthetic_manifest;
    doc["seed_derivation"] = "subset seed = seed XOR index; pool stream = subset seed XOR tag";
    ordered_json subsets = ordered_json::array();
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        const auto& e = p.entries[i];
        ordered_json s;
        s["index"] = e.index;
        s["n_total"] = e.n_total;
        s["n_real"] = e.n_real;
        s["n_synthetic"] = e.n_synthetic;
        s["seed"] = e.seed;
        s["real_ids"] = out.selections[i].real_ids;
        s["synthetic_ids"] = out.selections[i].synthetic_ids;
        subsets.push_back(std::move(s));
    }
    doc["subsets"] = std::move(subsets);
    return doc.dump(2) + "\n";
}

inline std::string plan_summary_csv(const MixPlan& p) {
    std::string out = "index,n_total,n_real,n_synthetic,seed\n";
    for (const auto& e : p.entries) {
        out += fmt::format("{},{},{},{},{}\n", e.index, e.n_total, e.n_real, e.n_synthetic,
                           e.seed);
    }
    return out;
}

inline std::string plan_summary_markdown(const MixPlan& p) {
    std::string out = fmt::format("Ratio of real data: {:g}%, seed {}\n\n", p.ratio * 100.0,
                                  p.seed);
    out += "| i | Total images | Real images | Synthetic images | Subset seed |\n";
    out += "|---:|---:|---:|---:|---:|\n";
    for (const auto& e : p.entries) {
        out += fmt::format("| {} | {} | {} | {} | {} |\n", e.index, e.n_total, e.n_real,
                           e.n_synthetic, e.seed);
    }
    return out;
}

}  // namespace synmix

#endif  // SYNMIX_MIXING_HPP
