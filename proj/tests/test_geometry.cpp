#include <random>

#include <gtest/gtest.h>

#include "synmix/geometry.hpp"

namespace synmix {
namespace {

TEST(BoundingBox, RejectsInvertedAndDegenerate) {
    EXPECT_THROW(BoundingBox(10, 0, 5, 1), ValidationError);
    EXPECT_THROW(BoundingBox(0, 3, 1, 3), ValidationError);
    EXPECT_THROW(BoundingBox(0, 0, std::nan(""), 1), ValidationError);
    EXPECT_THROW(BoundingBox(0, 0, INFINITY, 1), ValidationError);
    EXPECT_NO_THROW(BoundingBox(0, 0, 1e-9, 1e-9));
}

TEST(Iou, Examples) {
    const BoundingBox b(3, 4, 10, 12);
    EXPECT_DOUBLE_EQ(iou(b, b), 1.0);
    EXPECT_EQ(iou({0, 0, 1, 1}, {5, 5, 6, 6}), 0.0);
    // intersection 2, union 6
    EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {1, 0, 3, 2}), 1.0 / 3.0);
    // touching edges do not overlap
    EXPECT_EQ(iou({0, 0, 1, 1}, {1, 0, 2, 1}), 0.0);
}

BoundingBox random_box(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(-50.0, 50.0);
    std::uniform_real_distribution<double> size(0.1, 40.0);
    const double x = pos(rng);
    const double y = pos(rng);
    return {x, y, x + size(rng), y + size(rng)};
}

TEST(Iou, SymmetricBoundedTranslationInvariant) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shift(-1000.0, 1000.0);
    for (int i = 0; i < 2000; ++i) {
        const BoundingBox a = random_box(rng);
        const BoundingBox b = random_box(rng);
        const double v = iou(a, b);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        EXPECT_EQ(v, iou(b, a));
        // Shift by an exactly representable offset so coordinates stay exact.
        const double dx = std::round(shift(rng));
        const double dy = std::round(shift(rng));
        const BoundingBox as(a.x_min() + dx, a.y_min() + dy, a.x_max() + dx, a.y_max() + dy);
        const BoundingBox bs(b.x_min() + dx, b.y_min() + dy, b.x_max() + dx, b.y_max() + dy);
        EXPECT_NEAR(iou(as, bs), v, 1e-9);
    }
}

TEST(BoxUnion, ContainsBoth) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const BoundingBox a = random_box(rng);
        const BoundingBox b = random_box(rng);
        const BoundingBox u = box_union(a, b);
        EXPECT_TRUE(u.contains(a));
        EXPECT_TRUE(u.contains(b));
    }
}

}  // namespace
}  // namespace synmix
