#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "synmix/metrics.hpp"

namespace synmix {
namespace {

GroundTruthInstance gt(double x0, double y0, double x1, double y1) {
    return {"img", "car", {x0, y0, x1, y1}};
}
Detection det(double x0, double y0, double x1, double y1, double score) {
    return {"img", "car", {x0, y0, x1, y1}, score};
}

TEST(MatchDetections, SingleMatch) {
    // IoU of (0,0,10,10) with (0,0,10,7) is 0.7.
    const std::vector<GroundTruthInstance> truths{gt(0, 0, 10, 10)};
    const std::vector<Detection> dets{det(0, 0, 10, 7, 0.5)};
    const auto m = match_detections(dets, truths, 0.5);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].flag, MatchFlag::tp);
}

TEST(MatchDetections, HigherScoreConsumesTruth) {
    const std::vector<GroundTruthInstance> truths{gt(0, 0, 10, 10)};
    const std::vector<Detection> dets{det(0, 0, 10, 9, 0.8),   // IoU 0.9
                                      det(0, 0, 10, 6, 0.9)};  // IoU 0.6
    const auto m = match_detections(dets, truths, 0.5);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].index, 1u);
    EXPECT_EQ(m[0].flag, MatchFlag::tp);
    EXPECT_EQ(m[1].index, 0u);
    EXPECT_EQ(m[1].flag, MatchFlag::fp);
}

TEST(MatchDetections, NoTruthAllFalsePositive) {
    const std::vector<Detection> dets{det(0, 0, 1, 1, 0.3), det(2, 2, 3, 3, 0.9)};
    for (const auto& m : match_detections(dets, {}, 0.5)) EXPECT_EQ(m.flag, MatchFlag::fp);
}

TEST(MatchDetections, ThresholdIsInclusive) {
    const std::vector<GroundTruthInstance> truths{gt(0, 0, 2, 2)};
    const std::vector<Detection> dets{det(0, 0, 2, 1, 0.9)};  // IoU exactly 0.5
    EXPECT_EQ(match_detections(dets, truths, 0.5)[0].flag, MatchFlag::tp);
}

TEST(MatchDetections, TiesKeepInputOrder) {
    const std::vector<GroundTruthInstance> truths{gt(0, 0, 10, 10)};
    const std::vector<Detection> dets{det(0, 0, 10, 6, 0.5), det(0, 0, 10, 10, 0.5)};
    const auto m = match_detections(dets, truths, 0.5);
    EXPECT_EQ(m[0].index, 0u);
    EXPECT_EQ(m[0].flag, MatchFlag::tp);
}

TEST(MatchDetections, MixedGroupsAreContractErrors) {
    const std::vector<GroundTruthInstance> truths{gt(0, 0, 10, 10)};
    std::vector<Detection> dets{det(0, 0, 10, 6, 0.5)};
    dets[0].image_id = "other";
    EXPECT_THROW(match_detections(dets, truths, 0.5), ContractError);
    dets[0].image_id = "img";
    dets[0].category = "person";
    EXPECT_THROW(match_detections(dets, truths, 0.5), ContractError);
    EXPECT_THROW(match_detections({}, truths, 0.0), ContractError);
}

TEST(PrCurve, Examples) {
    const std::vector<MatchFlag> tp{MatchFlag::tp};
    const auto c1 = pr_curve(tp, 1);
    ASSERT_EQ(c1.points.size(), 1u);
    EXPECT_EQ(c1.points[0].recall, 1.0);
    EXPECT_EQ(c1.points[0].precision, 1.0);

    const std::vector<MatchFlag> fptp{MatchFlag::fp, MatchFlag::tp};
    const auto c2 = pr_curve(fptp, 1);
    ASSERT_EQ(c2.points.size(), 2u);
    EXPECT_EQ(c2.points[0].recall, 0.0);
    EXPECT_EQ(c2.points[0].precision, 0.0);
    EXPECT_EQ(c2.points[1].recall, 1.0);
    EXPECT_EQ(c2.points[1].precision, 0.5);

    EXPECT_TRUE(pr_curve({}, 5).points.empty());
    EXPECT_TRUE(pr_curve(tp, 0).points.empty());
}

TEST(AveragePrecision, Examples) {
    const std::vector<MatchFlag> tp{MatchFlag::tp};
    EXPECT_EQ(average_precision(pr_curve(tp, 1)), 1.0);
    const std::vector<MatchFlag> fptp{MatchFlag::fp, MatchFlag::tp};
    EXPECT_DOUBLE_EQ(average_precision(pr_curve(fptp, 1)), 0.5);
    EXPECT_EQ(average_precision(pr_curve({}, 3)), 0.0);
    EXPECT_EQ(average_precision(PRCurve{}), 0.0);
}

TEST(AveragePrecision, ElevenPoint) {
    // TP FP TP with 2 GT: recall 0.5 @ p=1, 1.0 @ p=2/3.
    const std::vector<MatchFlag> f{MatchFlag::tp, MatchFlag::fp, MatchFlag::tp};
    const auto c = pr_curve(f, 2);
    EXPECT_NEAR(average_precision(c, Interpolation::all_point), 0.5 * 1.0 + 0.5 * (2.0 / 3.0),
                1e-15);
    // r = 0..0.5 -> 1 (6 points), r = 0.6..1.0 -> 2/3 (5 points)
    EXPECT_NEAR(average_precision(c, Interpolation::eleven_point), (6.0 + 5.0 * 2.0 / 3.0) / 11.0,
                1e-15);
}

std::vector<MatchFlag> random_flags(std::mt19937_64& rng, std::size_t& n_gt) {
    std::uniform_int_distribution<int> len(0, 30);
    std::bernoulli_distribution coin(0.5);
    std::vector<MatchFlag> flags(static_cast<std::size_t>(len(rng)));
    std::size_t tps = 0;
    for (auto& f : flags) {
        f = coin(rng) ? MatchFlag::tp : MatchFlag::fp;
        tps += f == MatchFlag::tp;
    }
    n_gt = tps + std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    return flags;
}

TEST(AveragePrecision, MatchesGridIntegrationOfEnvelope) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        std::size_t n_gt = 0;
        const auto flags = random_flags(rng, n_gt);
        const auto curve = pr_curve(flags, n_gt);
        EXPECT_NEAR(average_precision(curve), oracle::grid_integrated_ap(curve, 1e-6), 1e-6);
    }
}

TEST(AveragePrecision, Properties) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        std::size_t n_gt = 0;
        auto flags = random_flags(rng, n_gt);
        const double ap = average_precision(pr_curve(flags, n_gt));
        EXPECT_GE(ap, 0.0);
        EXPECT_LE(ap, 1.0);
        // An extra false positive at the end never helps.
        auto with_fp = flags;
        with_fp.push_back(MatchFlag::fp);
        EXPECT_LE(average_precision(pr_curve(with_fp, n_gt)), ap + 1e-15);
        // A new top-scoring true positive (one more GT) never hurts.
        auto with_tp = flags;
        with_tp.insert(with_tp.begin(), MatchFlag::tp);
        EXPECT_GE(average_precision(pr_curve(with_tp, n_gt + 1)), ap - 1e-15);
    }
}

TEST(Evaluate, PerfectPredictions) {
    test::MicroInstance mi;
    mi.manifest.name = "m";
    mi.manifest.categories = {"car", "person"};
    mi.manifest.images.push_back({"a", 100, 100, Domain::real,
                                  {{"a", "car", {0, 0, 10, 10}}, {"a", "person", {20, 20, 30, 40}}}});
    mi.manifest.images.push_back({"b", 100, 100, Domain::real, {{"b", "car", {5, 5, 50, 50}}}});
    std::vector<Detection> preds;
    for (const auto& img : mi.manifest.images) {
        for (const auto& t : img.instances) preds.push_back({t.image_id, t.category, t.box, 1.0});
    }
    const auto r = evaluate(preds, mi.manifest);
    EXPECT_EQ(r.map, 1.0);
    for (const auto& c : r.categories) EXPECT_EQ(c.ap, 1.0);

    const auto empty = evaluate({}, mi.manifest);
    EXPECT_EQ(empty.map, 0.0);
}

TEST(Evaluate, ExcludesCategoriesWithoutTruth) {
    DatasetManifest m;
    m.categories = {"car", "person", "bicycle"};
    m.images.push_back({"a", 100, 100, Domain::real, {{"a", "car", {0, 0, 10, 10}}}});
    const std::vector<Detection> preds{{"a", "car", {0, 0, 10, 10}, 0.9},
                                       {"a", "person", {0, 0, 10, 10}, 0.8}};
    const auto r = evaluate(preds, m);
    EXPECT_EQ(r.map, 1.0);
    ASSERT_EQ(r.predicted_without_truth.size(), 1u);
    EXPECT_EQ(r.predicted_without_truth[0], "person");
    EXPECT_FALSE(r.find("bicycle")->in_mean);
}

TEST(Evaluate, UnknownIdsAreListed) {
    DatasetManifest m;
    m.categories = {"car"};
    m.images.push_back({"a", 100, 100, Domain::real, {}});
    const std::vector<Detection> preds{{"zz", "car", {0, 0, 1, 1}, 0.5},
                                       {"a", "truck", {0, 0, 1, 1}, 0.5},
                                       {"a", "car", {0, 0, 1, 1}, 1.5}};
    try {
        evaluate(preds, m);
        FAIL();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("'zz'"), std::string::npos);
        EXPECT_NE(msg.find("'truck'"), std::string::npos);
        EXPECT_NE(msg.find("score"), std::string::npos);
    }
}

TEST(Evaluate, MatchesBruteForceOracle) {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 300; ++i) {
        const auto mi = test::micro_instance(rng, i % 3 == 0);
        const auto r = evaluate(mi.predictions, mi.manifest);
        const auto o = oracle::brute_force_evaluate(mi.predictions, mi.manifest, 0.5);
        EXPECT_NEAR(r.map, o.map, 1e-9);
        for (const auto& [cat, ap] : o.ap) EXPECT_NEAR(r.find(cat)->ap, ap, 1e-9) << cat;
    }
}

TEST(Evaluate, PermutationInvariantForDistinctScores) {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 200; ++i) {
        auto mi = test::micro_instance(rng, false);
        const double base = evaluate(mi.predictions, mi.manifest).map;
        std::shuffle(mi.predictions.begin(), mi.predictions.end(), rng);
        EXPECT_EQ(evaluate(mi.predictions, mi.manifest).map, base);
    }
}

TEST(Predictions, ParseAndReport) {
    const auto preds = parse_predictions_text(
        R"([{"image_id": "a", "category": "car", "bbox": [0, 0, 10, 10], "score": 0.75}])");
    ASSERT_EQ(preds.size(), 1u);
    EXPECT_EQ(preds[0].score, 0.75);
    EXPECT_EQ(parse_predictions_text(serialize_predictions(preds))[0].box, preds[0].box);
    EXPECT_THROW(parse_predictions_text(R"([{"image_id": "a"}])"), ParseError);
    EXPECT_THROW(parse_predictions_text(
                     R"([{"image_id":"a","category":"car","bbox":[5,0,1,1],"score":1}])"),
                 ValidationError);

    DatasetManifest m;
    m.categories = {"car"};
    m.images.push_back({"a", 100, 100, Domain::real, {{"a", "car", {0, 0, 10, 10}}}});
    const auto r = evaluate(preds, m);
    EXPECT_EQ(evaluation_table_csv(r),
              "category,ap50,n_ground_truth,n_detections,in_mean\n"
              "car,1.000000,1,1,1\n"
              "mAP50,1.000000,,,\n");
    EXPECT_EQ(pr_curves_csv(r), "category,recall,precision\ncar,1,1\n");
}

}  // namespace
}  // namespace synmix
