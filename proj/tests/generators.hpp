#ifndef SYNMIX_TESTS_GENERATORS_HPP
#define SYNMIX_TESTS_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "synmix/annotations.hpp"
#include "synmix/metrics.hpp"

namespace test {

struct MicroInstance {
    synmix::DatasetManifest manifest;
    std::vector<synmix::Detection> predictions;
};

/// <= 5 images, <= 8 ground-truth boxes, <= 8 detections, <= 3 categories.
/// Detections are mostly jittered copies of ground truth on a coarse grid so
/// that exact-threshold IoUs and duplicate matches occur. Scores are
/// continuous unless `quantized_scores` (then ties are common).
inline MicroInstance micro_instance(std::mt19937_64& rng, bool quantized_scores = false) {
    std::uniform_int_distribution<int> n_img(1, 5), n_cat(1, 3), n_gt(0, 8), n_det(0, 8);
    std::uniform_int_distribution<int> coord(0, 16), extent(1, 8), jitter(-2, 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<std::string> names{"car", "person", "bicycle"};

    MicroInstance mi;
    auto& m = mi.manifest;
    m.name = "micro";
    const int cats = n_cat(rng);
    m.categories.assign(names.begin(), names.begin() + cats);
    const int images = n_img(rng);
    for (int i = 0; i < images; ++i) {
        m.images.push_back({"img" + std::to_string(i), 32, 32, synmix::Domain::real, {}});
    }
    std::uniform_int_distribution<int> pick_img(0, images - 1), pick_cat(0, cats - 1);
    const int gts = n_gt(rng);
    for (int k = 0; k < gts; ++k) {
        auto& img = m.images[static_cast<std::size_t>(pick_img(rng))];
        const double x = coord(rng), y = coord(rng);
        img.instances.push_back({img.id, m.categories[static_cast<std::size_t>(pick_cat(rng))],
                                 {x, y, x + extent(rng), y + extent(rng)}});
    }
    const int dets = n_det(rng);
    for (int k = 0; k < dets; ++k) {
        std::string image_id, category;
        double x0, y0, x1, y1;
        // Collect all GT for jittering.
        std::vector<const synmix::GroundTruthInstance*> all;
        for (const auto& img : m.images) {
            for (const auto& t : img.instances) all.push_back(&t);
        }
        if (!all.empty() && u(rng) < 0.75) {
            const auto* t = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
            image_id = t->image_id;
            category = u(rng) < 0.9 ? t->category
                                    : m.categories[static_cast<std::size_t>(pick_cat(rng))];
            x0 = t->box.x_min() + jitter(rng) * 0.5;
            y0 = t->box.y_min() + jitter(rng) * 0.5;
            x1 = std::max(x0 + 0.5, t->box.x_max() + jitter(rng) * 0.5);
            y1 = std::max(y0 + 0.5, t->box.y_max() + jitter(rng) * 0.5);
        } else {
            image_id = m.images[static_cast<std::size_t>(pick_img(rng))].id;
            category = m.categories[static_cast<std::size_t>(pick_cat(rng))];
            x0 = coord(rng);
            y0 = coord(rng);
            x1 = x0 + extent(rng);
            y1 = y0 + extent(rng);
        }
        const double score = quantized_scores ? std::round(u(rng) * 4.0) / 4.0 : u(rng);
        mi.predictions.push_back({image_id, category, {x0, y0, x1, y1}, score});
    }
    return mi;
}

}  // namespace test

#endif  // SYNMIX_TESTS_GENERATORS_HPP
