#ifndef SYNMIX_ANNOTATIONS_HPP
#define SYNMIX_ANNOTATIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "synmix/error.hpp"
#include "synmix/geometry.hpp"

namespace synmix {

inline constexpr int kManifestSchemaVersion = 1;

enum class Domain { real, synthetic };

inline std::string_view to_string(Domain d) noexcept {
    return d == Domain::real ? "real" : "synthetic";
}

inline Domain parse_domain(std::string_view s) {
    if (s == "real") return Domain::real;
    if (s == "synthetic") return Domain::synthetic;
    throw ValidationError("unknown domain '" + std::string(s) + "' (expected real|synthetic)");
}

struct Point {
    double x;
    double y;
};

struct GroundTruthInstance {
    std::string image_id;
    std::string category;
    BoundingBox box;
};

struct ImageRecord {
    std::string id;
    std::int64_t width = 0;
    std::int64_t height = 0;
    Domain domain = Domain::real;
    std::vector<GroundTruthInstance> instances;
};

struct DatasetManifest {
    std::string name;
    Domain domain = Domain::real;
    std::vector<std::string> categories;
    std::vector<ImageRecord> images;

    bool has_category(std::string_view c) const {
        return std::find(categories.begin(), categories.end(), c) != categories.end();
    }

    std::size_t instance_count() const {
        std::size_t n = 0;
        for (const auto& img : images) n += img.instances.size();
        return n;
    }
};

/// Checks every manifest invariant; throws ValidationError naming the
/// offending image and field.
inline void validate(const DatasetManifest& m) {
    if (m.categories.empty()) {
        throw ValidationError("manifest '" + m.name + "': categories must be non-empty");
    }
    std::unordered_set<std::string> cats;
    for (const auto& c : m.categories) {
        if (!cats.insert(c).second) {
            throw ValidationError("manifest '" + m.name + "': duplicate category '" + c + "'");
        }
    }
    std::unordered_set<std::string> ids;
    for (const auto& img : m.images) {
        if (!ids.insert(img.id).second) {
            throw ValidationError("image '" + img.id + "': duplicate image id");
        }
        if (img.width <= 0 || img.height <= 0) {
            throw ValidationError("image '" + img.id + "': width and height must be positive");
        }
        for (std::size_t k = 0; k < img.instances.size(); ++k) {
            const auto& inst = img.instances[k];
            const std::string where =
                "image '" + img.id + "' instance " + std::to_string(k) + ": ";
            if (!cats.contains(inst.category)) {
                throw ValidationError(where + "category '" + inst.category +
                                      "' is not declared in categories");
            }
            if (inst.image_id != img.id) {
                throw ValidationError(where + "image_id mismatch");
            }
            if (!inst.box.within(static_cast<double>(img.width),
                                 static_cast<double>(img.height))) {
                throw ValidationError(where + "bbox lies outside [0,width]x[0,height]");
            }
        }
    }
}

/// Tight axis-aligned box around a polygon.
inline BoundingBox bbox_from_polygon(std::span<const Point> vertices) {
    if (vertices.size() < 3) {
        throw ValidationError("polygon needs at least 3 vertices, got " +
                              std::to_string(vertices.size()));
    }
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = x0;
    double x1 = -x0;
    double y1 = -x0;
    for (const auto& v : vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw ValidationError("polygon vertex is not finite");
        }
        x0 = std::min(x0, v.x);
        y0 = std::min(y0, v.y);
        x1 = std::max(x1, v.x);
        y1 = std::max(y1, v.y);
    }
    if (!(x0 < x1) || !(y0 < y1)) {
        throw ValidationError("degenerate polygon: bounding box has zero width or height");
    }
    return {x0, y0, x1, y1};
}

namespace detail {

using nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t byte_offset) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(byte_offset, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// Parses a JSON document, mapping syntax errors to ParseError with position.
inline json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte index one past the offending character.
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = line_column(text, offset);
        throw ParseError(std::string(what) + ": malformed JSON", line, col);
    }
}

inline const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path + ": missing field '" + key + "'");
    }
    return *it;
}

inline std::string string_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) {
        throw ParseError(path + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

inline double number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ParseError(path + ": expected a number");
    }
    return v.get<double>();
}

inline std::int64_t integer_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 9.0e15) {
            return static_cast<std::int64_t>(d);
        }
    }
    throw ParseError(path + "." + key + ": expected an integer");
}

inline const json& array_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_array()) {
        throw ParseError(path + "." + key + ": expected an array");
    }
    return v;
}

/// Reads [x_min, y_min, x_max, y_max]; the box invariant is reported as a
/// ValidationError naming `owner`.
inline BoundingBox read_bbox(const json& v, const std::string& path, const std::string& owner) {
    if (!v.is_array() || v.size() != 4) {
        throw ParseError(path + ": bbox must be an array of 4 numbers");
    }
    const double x0 = number(v[0], path + "[0]");
    const double y0 = number(v[1], path + "[1]");
    const double x1 = number(v[2], path + "[2]");
    const double y1 = number(v[3], path + "[3]");
    try {
        return BoundingBox(x0, y0, x1, y1);
    } catch (const ValidationError& e) {
        throw ValidationError(owner + " bbox: " + e.what());
    }
}

inline std::vector<Point> read_polygon(const json& v, const std::string& path) {
    if (!v.is_array()) {
        throw ParseError(path + ": polygon must be an array of [x, y] pairs");
    }
    std::vector<Point> pts;
    pts.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) {
            throw ParseError(p + ": expected [x, y]");
        }
        pts.push_back({number(v[i][0], p + "[0]"), number(v[i][1], p + "[1]")});
    }
    return pts;
}

}  // namespace detail

/// Parses a manifest document; polygon instances are converted to tight boxes.
inline DatasetManifest parse_manifest_text(std::string_view text) {
    using detail::json;
    const json doc = detail::parse_json(text, "manifest");
    const std::string root = "manifest";

    DatasetManifest m;
    m.name = detail::string_field(doc, "name", root);
    m.domain = parse_domain(detail::string_field(doc, "domain", root));
    const json& cats = detail::array_field(doc, "categories", root);
    for (std::size_t i = 0; i < cats.size(); ++i) {
        if (!cats[i].is_string()) {
            throw ParseError(root + ".categories[" + std::to_string(i) + "]: expected a string");
        }
        m.categories.push_back(cats[i].get<std::string>());
    }

    const json& images = detail::array_field(doc, "images", root);
    m.images.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string ip = "images[" + std::to_string(i) + "]";
        const json& jimg = images[i];
        ImageRecord img;
        img.id = detail::string_field(jimg, "id", ip);
        img.width = detail::integer_field(jimg, "width", ip);
        img.height = detail::integer_field(jimg, "height", ip);
        img.domain = m.domain;
        if (const auto it = jimg.find("domain"); it != jimg.end()) {
            if (!it->is_string()) throw ParseError(ip + ".domain: expected a string");
            img.domain = parse_domain(it->get<std::string>());
        }
        const json& insts = detail::array_field(jimg, "instances", ip);
        img.instances.reserve(insts.size());
        for (std::size_t k = 0; k < insts.size(); ++k) {
            const std::string kp = ip + ".instances[" + std::to_string(k) + "]";
            const std::string owner = "image '" + img.id + "' instance " + std::to_string(k);
            const json& ji = insts[k];
            std::string category = detail::string_field(ji, "category", kp);
            const bool has_box = ji.contains("bbox");
            const bool has_poly = ji.contains("polygon");
            if (has_box == has_poly) {
                throw ParseError(kp + ": exactly one of 'bbox' or 'polygon' is required");
            }
            std::optional<BoundingBox> box;
            if (has_box) {
                box = detail::read_bbox(ji["bbox"], kp + ".bbox", owner);
            } else {
                const auto pts = detail::read_polygon(ji["polygon"], kp + ".polygon");
                try {
                    box = bbox_from_polygon(pts);
                } catch (const ValidationError& e) {
                    throw ValidationError(owner + " polygon: " + e.what());
                }
            }
            img.instances.push_back({img.id, std::move(category), *box});
        }
        m.images.push_back(std::move(img));
    }
    validate(m);
    return m;
}

inline DatasetManifest parse_manifest(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_manifest_text(text);
}

/// Canonical JSON form (2-space indent, boxes only). Per-image `domain` is
/// written only where it differs from the manifest default.
inline std::string serialize_manifest(const DatasetManifest& m) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = kManifestSchemaVersion;
    doc["name"] = m.name;
    doc["domain"] = std::string(to_string(m.domain));
    doc["categories"] = m.categories;
    ordered_json images = ordered_json::array();
    for (const auto& img : m.images) {
        ordered_json ji;
        ji["id"] = img.id;
        ji["width"] = img.width;
        ji["height"] = img.height;
        if (img.domain != m.domain) ji["domain"] = std::string(to_string(img.domain));
        ordered_json insts = ordered_json::array();
        for (const auto& inst : img.instances) {
            ordered_json o;
            o["category"] = inst.category;
            o["bbox"] = {inst.box.x_min(), inst.box.y_min(), inst.box.x_max(), inst.box.y_max()};
            insts.push_back(std::move(o));
        }
        ji["instances"] = std::move(insts);
        images.push_back(std::move(ji));
    }
    doc["images"] = std::move(images);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Rider merge

enum class RiderFallback { drop, keep_as_person };

struct RiderMergeOptions {
    std::string rider_category = "rider";
    std::vector<std::string> rideable_categories = {"bicycle", "motorcycle"};
    RiderFallback fallback = RiderFallback::drop;
    std::string person_category = "person";
};

struct RiderMergeResult {
    DatasetManifest manifest;
    std::size_t merged = 0;
    std::size_t dropped = 0;
    std::size_t relabeled = 0;
};

/// Fuses each rider with the rideable instance of the same image whose box
/// center is nearest (first in instance order on ties). The rideable keeps
/// its category and grows to the union of both boxes; several riders may
/// fuse into one rideable, distances always use the rideable's original box.
/// The rider category is removed from the output category set.
inline RiderMergeResult merge_riders(const DatasetManifest& input,
                                     const RiderMergeOptions& opts = {}) {
    if (!input.has_category(opts.rider_category)) {
        throw ValidationError("rider category '" + opts.rider_category +
                              "' is not in the manifest category set");
    }
    for (const auto& c : opts.rideable_categories) {
        if (!input.has_category(c)) {
            throw ValidationError("rideable category '" + c +
                                  "' is not in the manifest category set");
        }
        if (c == opts.rider_category) {
            throw ValidationError("rider category cannot also be rideable");
        }
    }
    if (opts.fallback == RiderFallback::keep_as_person &&
        (!input.has_category(opts.person_category) ||
         opts.person_category == opts.rider_category)) {
        throw ValidationError("fallback keep-as-person needs category '" +
                              opts.person_category + "' in the category set");
    }
    const auto is_rideable = [&](const std::string& c) {
        return std::find(opts.rideable_categories.begin(), opts.rideable_categories.end(), c) !=
               opts.rideable_categories.end();
    };

    RiderMergeResult out;
    out.manifest.name = input.name;
    out.manifest.domain = input.domain;
    for (const auto& c : input.categories) {
        if (c != opts.rider_category) out.manifest.categories.push_back(c);
    }
    out.manifest.images.reserve(input.images.size());

    for (const auto& img : input.images) {
        const auto& src = img.instances;
        std::vector<std::size_t> rideables;
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (is_rideable(src[k].category)) rideables.push_back(k);
        }
        std::vector<BoundingBox> grown;
        grown.reserve(src.size());
        for (const auto& inst : src) grown.push_back(inst.box);

        // kept[k]: instance survives; category may be rewritten for fallbacks.
        std::vector<bool> kept(src.size(), true);
        std::vector<std::string> category(src.size());
        for (std::size_t k = 0; k < src.size(); ++k) category[k] = src[k].category;

        for (std::size_t k = 0; k < src.size(); ++k) {
            if (src[k].category != opts.rider_category) continue;
            std::optional<std::size_t> best;
            double best_d = std::numeric_limits<double>::infinity();
            for (const std::size_t r : rideables) {
                const double d = center_distance(src[k].box, src[r].box);
                if (d < best_d) {
                    best_d = d;
                    best = r;
                }
            }
            if (best) {
                grown[*best] = box_union(grown[*best], src[k].box);
                kept[k] = false;
                ++out.merged;
            } else if (opts.fallback == RiderFallback::drop) {
                kept[k] = false;
                ++out.dropped;
            } else {
                category[k] = opts.person_category;
                ++out.relabeled;
            }
        }

        ImageRecord rec{img.id, img.width, img.height, img.domain, {}};
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (kept[k]) rec.instances.push_back({img.id, category[k], grown[k]});
        }
        out.manifest.images.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Class statistics

struct CategoryCount {
    std::string category;
    std::size_t total = 0;
    double average = 0.0;  // instances per image, zero-instance images included
};

struct ClassDistribution {
    std::size_t n_images = 0;
    std::vector<CategoryCount> categories;  // manifest category order

    std::size_t total_instances() const {
        std::size_t n = 0;
        for (const auto& c : categories) n += c.total;
        return n;
    }
};

inline ClassDistribution class_distribution(const DatasetManifest& m) {
    if (m.images.empty()) {
        throw ValidationError("class distribution of an empty manifest is undefined");
    }
    std::unordered_map<std::string, std::size_t> index;
    ClassDistribution out;
    out.n_images = m.images.size();
    for (const auto& c : m.categories) {
        index.emplace(c, out.categories.size());
        out.categories.push_back({c, 0, 0.0});
    }
    for (const auto& img : m.images) {
        for (const auto& inst : img.instances) {
            const auto it = index.find(inst.category);
            if (it == index.end()) {
                throw ValidationError("image '" + img.id + "': undeclared category '" +
                                      inst.category + "'");
            }
            ++out.categories[it->second].total;
        }
    }
    for (auto& c : out.categories) {
        c.average = static_cast<double>(c.total) / static_cast<double>(out.n_images);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cityscapes polygon files

struct CityscapesIngestStats {
    std::size_t kept = 0;
    std::size_t skipped_label = 0;     // label not in the category set
    std::size_t skipped_degenerate = 0;
};

/// Converts one Cityscapes `*_polygons.json` document (imgWidth, imgHeight,
/// objects[{label, polygon}]) into an image record. Objects whose label is
/// not in `categories` are skipped; so are degenerate polygons.
inline ImageRecord image_from_cityscapes(std::string_view text, const std::string& image_id,
                                         const std::vector<std::string>& categories,
                                         Domain domain, CityscapesIngestStats& stats) {
    using detail::json;
    const json doc = detail::parse_json(text, "cityscapes annotation '" + image_id + "'");
    const std::string root = image_id;
    ImageRecord img;
    img.id = image_id;
    img.width = detail::integer_field(doc, "imgWidth", root);
    img.height = detail::integer_field(doc, "imgHeight", root);
    img.domain = domain;
    const json& objects = detail::array_field(doc, "objects", root);
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const std::string op = root + ".objects[" + std::to_string(i) + "]";
        const std::string label = detail::string_field(objects[i], "label", op);
        if (std::find(categories.begin(), categories.end(), label) == categories.end()) {
            ++stats.skipped_label;
            continue;
        }
        const auto pts = detail::read_polygon(detail::field(objects[i], "polygon", op),
                                              op + ".polygon");
        try {
            img.instances.push_back({image_id, label, bbox_from_polygon(pts)});
            ++stats.kept;
        } catch (const ValidationError&) {
            ++stats.skipped_degenerate;
        }
    }
    return img;
}

/// "aachen_000000_000019_gtFine_polygons.json" -> "aachen_000000_000019".
inline std::string cityscapes_image_id(std::string_view filename) {
    std::string_view stem = filename;
    if (const auto slash = stem.find_last_of("/\\"); slash != std::string_view::npos) {
        stem.remove_prefix(slash + 1);
    }
    for (const std::string_view suffix :
         {std::string_view("_gtFine_polygons.json"), std::string_view("_gtCoarse_polygons.json"),
          std::string_view("_polygons.json"), std::string_view(".json")}) {
        if (stem.size() > suffix.size() && stem.ends_with(suffix)) {
            stem.remove_suffix(suffix.size());
            break;
        }
    }
    return std::string(stem);
}

}  // namespace synmix

#endif  // SYNMIX_ANNOTATIONS_HPP
