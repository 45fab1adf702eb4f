#ifndef SYNMIX_GEOMETRY_HPP
#define SYNMIX_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include "synmix/error.hpp"

namespace synmix {

/// Axis-aligned box in image pixel coordinates. Always has strictly
/// positive area and finite coordinates.
class BoundingBox {
public:
    BoundingBox(double x_min, double y_min, double x_max, double y_max)
        : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
        if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(x_max) ||
            !std::isfinite(y_max)) {
            throw ValidationError("bounding box coordinates must be finite");
        }
        if (!(x_min < x_max)) {
            throw ValidationError("bounding box x_min must be < x_max");
        }
        if (!(y_min < y_max)) {
            throw ValidationError("bounding box y_min must be < y_max");
        }
    }

    double x_min() const noexcept { return x_min_; }
    double y_min() const noexcept { return y_min_; }
    double x_max() const noexcept { return x_max_; }
    double y_max() const noexcept { return y_max_; }

    double width() const noexcept { return x_max_ - x_min_; }
    double height() const noexcept { return y_max_ - y_min_; }
    double area() const noexcept { return width() * height(); }
    double center_x() const noexcept { return 0.5 * (x_min_ + x_max_); }
    double center_y() const noexcept { return 0.5 * (y_min_ + y_max_); }

    bool contains(const BoundingBox& other) const noexcept {
        return x_min_ <= other.x_min_ && y_min_ <= other.y_min_ && x_max_ >= other.x_max_ &&
               y_max_ >= other.y_max_;
    }

    bool within(double width, double height) const noexcept {
        return x_min_ >= 0.0 && y_min_ >= 0.0 && x_max_ <= width && y_max_ <= height;
    }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

private:
    double x_min_;
    double y_min_;
    double x_max_;
    double y_max_;
};

/// Smallest box containing both inputs.
inline BoundingBox box_union(const BoundingBox& a, const BoundingBox& b) {
    return {std::min(a.x_min(), b.x_min()), std::min(a.y_min(), b.y_min()),
            std::max(a.x_max(), b.x_max()), std::max(a.y_max(), b.y_max())};
}

inline double center_distance(const BoundingBox& a, const BoundingBox& b) {
    return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

/// Intersection over union; 0 for disjoint or edge-touching boxes.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
    const double iw = std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
    const double ih = std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
    if (iw <= 0.0 || ih <= 0.0) {
        return 0.0;
    }
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace synmix

#endif  // SYNMIX_GEOMETRY_HPP
