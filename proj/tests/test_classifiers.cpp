#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "reform/classifiers.hpp"

using namespace reform;

namespace {

PairSample sample(double d, double ea, int label)
{
    PairSample s;
    s.distance = d;
    s.effort_angle = ea;
    s.label = label;
    return s;
}

std::vector<PairSample> blobs(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> near(1.0, 0.3), near_ea(0.6, 0.4), far(4.0, 1.2);
    std::uniform_real_distribution<double> any_ea(0.0, kTwoPi);
    std::vector<PairSample> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 4 == 0) {
            out.push_back(sample(std::abs(near(rng)), std::clamp(near_ea(rng), 0.0, kTwoPi), 1));
        } else {
            out.push_back(sample(std::abs(far(rng)), any_ea(rng), 0));
        }
    }
    return out;
}

TrainedModel fixed_logistic(const LogisticCoefficients& c)
{
    return TrainedModel(ClassifierKind::LogisticRegression, Hyperparams{}, FeatureScaling{}, 0,
                        LogisticModel(c));
}

}  // namespace

TEST_CASE("classifier kind names round trip")
{
    for (auto k : {ClassifierKind::WeightedKnn, ClassifierKind::BaggedTrees,
                   ClassifierKind::LogisticRegression}) {
        CHECK(parse_classifier_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_classifier_kind("svm"), Error);
}

TEST_CASE("two-sample weighted KNN reproduces the nearest-neighbour oracle")
{
    const std::vector<PairSample> train_set{sample(0.5, 0.2, 1), sample(3.0, 3.0, 0)};
    const auto model = train(train_set, ClassifierKind::WeightedKnn);
    const std::vector<std::array<double, 2>> pts{{0.5, 0.2}, {3.0, 3.0}};
    const std::vector<int> labels{1, 0};

    CHECK(model.predict(0.5, 0.2).label == oracle::nearest_neighbour_label(pts, labels, {0.5, 0.2}));
    CHECK(model.predict(0.5, 0.2).label == 1);
    CHECK(model.predict(3.0, 3.0).label == oracle::nearest_neighbour_label(pts, labels, {3.0, 3.0}));
    CHECK(model.predict(3.0, 3.0).label == 0);
    CHECK(model.predict(0.5, 0.2).score == 1.0);
    CHECK(model.predict(3.0, 3.0).score == 0.0);
}

TEST_CASE("training rejects degenerate inputs")
{
    CHECK_THROWS_WITH_AS(train({sample(1, 1, 1), sample(2, 2, 1)}, ClassifierKind::BaggedTrees),
                         doctest::Contains("degenerate labels"), TrainingError);
    CHECK_THROWS_WITH_AS(train({sample(1, 1, 1)}, ClassifierKind::WeightedKnn),
                         doctest::Contains("degenerate labels"), TrainingError);
    CHECK_THROWS_WITH_AS(train({sample(1, 1, 1), sample(1, 2, 0)}, ClassifierKind::LogisticRegression),
                         doctest::Contains("degenerate feature"), TrainingError);
    CHECK_THROWS_AS(train({sample(1, NAN, 1), sample(1, 2, 0)}, ClassifierKind::WeightedKnn),
                    TrainingError);
}

TEST_CASE("logistic regression with zero weights scores exactly one half")
{
    const auto model = fixed_logistic({0.0, 0.0, 0.0});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 10);
    for (int i = 0; i < 100; ++i) {
        const auto p = model.predict(u(rng), u(rng));
        REQUIRE(p.score == 0.5);
        REQUIRE(p.label == 1);
    }
}

TEST_CASE("predict rejects non-finite features")
{
    const auto model = fixed_logistic({0.0, 0.0, 0.0});
    CHECK_THROWS_AS(model.predict(NAN, 1.0), ValidationError);
    CHECK_THROWS_AS(model.predict(1.0, INFINITY), ValidationError);
}

TEST_CASE("pairwise accuracy")
{
    const auto data = blobs(400, 5);
    Hyperparams h;
    h.knn.k = 1;
    const auto memorizer = train(data, ClassifierKind::WeightedKnn, h);
    CHECK(pairwise_accuracy(memorizer, data) == 1.0);

    // Constant-1 predictor on a balanced set.
    const auto always_one = fixed_logistic({50.0, 0.0, 0.0});
    std::vector<PairSample> balanced;
    for (int i = 0; i < 50; ++i) {
        balanced.push_back(sample(i, i * 0.1, i % 2));
    }
    std::size_t positives = 0;
    for (const auto& s : balanced) {
        positives += static_cast<std::size_t>(s.label);
    }
    CHECK(pairwise_accuracy(always_one, balanced) ==
          static_cast<double>(positives) / static_cast<double>(balanced.size()));
    CHECK(pairwise_accuracy(always_one, balanced) == 0.5);
    CHECK_THROWS_AS(pairwise_accuracy(always_one, std::vector<PairSample>{}), Error);
}

TEST_CASE("k=1 KNN memorizes distinct training points")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0, 6);
    std::bernoulli_distribution coin(0.4);
    std::vector<PairSample> data;
    for (int i = 0; i < 1500; ++i) {
        data.push_back(sample(u(rng), u(rng), coin(rng) ? 1 : 0));
    }
    data.push_back(sample(0.1, 0.1, 1));
    data.push_back(sample(5.9, 5.9, 0));
    Hyperparams h;
    h.knn.k = 1;
    CHECK(pairwise_accuracy(train(data, ClassifierKind::WeightedKnn, h), data) == 1.0);
}

TEST_CASE("single unpruned tree without bootstrap fits consistent labels exactly")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 6);
    std::bernoulli_distribution coin(0.3);
    std::vector<PairSample> data;
    for (int i = 0; i < 1000; ++i) {
        data.push_back(sample(u(rng), u(rng), coin(rng) ? 1 : 0));
    }
    data.push_back(sample(1.0, 1.0, 1));
    data.push_back(sample(1.0, 1.0, 1));  // duplicate features, same label
    data.push_back(sample(2.0, 1.0, 0));
    Hyperparams h;
    h.trees = TreeParams{1, 0, 1, false};
    CHECK(pairwise_accuracy(train(data, ClassifierKind::BaggedTrees, h), data) == 1.0);
}

TEST_CASE("gini impurity")
{
    CHECK(gini_impurity(0, 10) == 0.0);
    CHECK(gini_impurity(10, 10) == 0.0);
    CHECK(gini_impurity(5, 10) == doctest::Approx(0.5));
    CHECK(gini_impurity(0, 0) == 0.0);
}

TEST_CASE("predicted labels survive consistent affine rescaling of features")
{
    const auto data = blobs(1200, 8);
    auto rescale = [](double d, double ea) { return std::pair{3.7 * d + 1.25, 0.45 * ea - 2.0}; };
    std::vector<PairSample> moved;
    for (const auto& s : data) {
        const auto [d, ea] = rescale(s.distance, s.effort_angle);
        moved.push_back(sample(d, ea, s.label));
    }
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ud(0, 7), uea(0, kTwoPi);
    std::vector<std::pair<double, double>> queries;
    for (int i = 0; i < 2000; ++i) {
        queries.emplace_back(ud(rng), uea(rng));
    }
    for (auto kind : {ClassifierKind::WeightedKnn, ClassifierKind::BaggedTrees,
                      ClassifierKind::LogisticRegression}) {
        CAPTURE(to_string(kind));
        const auto base = train(data, kind, {}, 3);
        const auto scaled = train(moved, kind, {}, 3);
        std::size_t disagreements = 0;
        for (const auto& [d, ea] : queries) {
            const auto [d2, ea2] = rescale(d, ea);
            disagreements += base.predict(d, ea).label != scaled.predict(d2, ea2).label ? 1 : 0;
        }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("training ignores sample order")
{
    auto data = blobs(600, 9);
    auto shuffled = data;
    std::mt19937_64 rng(10);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto kind : {ClassifierKind::WeightedKnn, ClassifierKind::BaggedTrees,
                      ClassifierKind::LogisticRegression}) {
        CHECK(serialize_model(train(data, kind, {}, 5)) == serialize_model(train(shuffled, kind, {}, 5)));
    }
}

TEST_CASE("bagged trees depend on the seed only through bootstrap draws")
{
    const auto data = blobs(500, 12);
    const auto a = serialize_model(train(data, ClassifierKind::BaggedTrees, {}, 1));
    const auto b = serialize_model(train(data, ClassifierKind::BaggedTrees, {}, 2));
    CHECK(a != b);
    Hyperparams h;
    h.trees.bootstrap = false;
    h.trees.n_trees = 2;
    const auto c = train(data, ClassifierKind::BaggedTrees, h, 1);
    const auto& trees = std::get<BaggedTrees>(c.impl()).trees();
    CHECK(trees[0].feature == trees[1].feature);
    CHECK(trees[0].threshold == trees[1].threshold);
}

TEST_CASE("logistic gradient matches central differences")
{
    const auto data = blobs(300, 13);
    const auto scaling = FeatureScaling::fit(data);
    std::vector<FeatureVec> x;
    std::vector<int> y;
    for (const auto& s : data) {
        x.push_back(scaling.apply(s.distance, s.effort_angle));
        y.push_back(s.label);
    }
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> w(-3, 3);
    for (int i = 0; i < 10; ++i) {
        const LogisticCoefficients c{w(rng), w(rng), w(rng)};
        const auto g = logistic_gradient(c, x, y, 0.3);
        const auto fd = oracle::central_difference(
            [&](const std::array<double, 3>& p) { return logistic_loss(p, x, y, 0.3); }, c, 1e-6);
        for (int k = 0; k < 3; ++k) {
            REQUIRE(g[k] == doctest::Approx(fd[k]).epsilon(1e-6));
        }
    }
}

TEST_CASE("logistic fit lowers the loss and separates easy data")
{
    const auto data = blobs(800, 15);
    const auto model = train(data, ClassifierKind::LogisticRegression);
    CHECK(pairwise_accuracy(model, data) > 0.9);
    const auto& coef = std::get<LogisticModel>(model.impl()).coefficients();
    CHECK(coef[1] < 0.0);  // farther apart -> less likely grouped
}

TEST_CASE("relation matrix construction")
{
    Frame one;
    one.agents = {make_pose(4, 0, 0, 0)};
    const auto all_pos = fixed_logistic({50.0, 0.0, 0.0});
    const auto m1 = build_relation_matrix(all_pos, one);
    REQUIRE(m1.size() == 1);
    CHECK(m1.at(0, 0));

    Frame three;
    three.agents = {make_pose(3, 5, 0, 0), make_pose(1, 0, 0, 0), make_pose(2, 0.2, 0, 0)};
    const auto m3 = build_relation_matrix(all_pos, three);
    CHECK(m3.ids() == std::vector<AgentId>{1, 2, 3});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(m3.at(i, j));
        }
    }

    // Identity scaling, positive only below 0.5 m.
    const auto close_only = fixed_logistic({5.0, -10.0, 0.0});
    const auto m = build_relation_matrix(close_only, three);
    CHECK(m.at(0, 1));
    CHECK(m.at(1, 0));
    CHECK_FALSE(m.at(0, 2));
    CHECK_FALSE(m.at(2, 0));
    CHECK_FALSE(m.at(1, 2));
    CHECK_FALSE(m.at(2, 1));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(m.at(i, i));
    }
}

TEST_CASE("model documents round trip with identical predictions")
{
    const auto data = blobs(400, 16);
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> ud(0, 8), uea(0, kTwoPi);
    for (auto kind : {ClassifierKind::WeightedKnn, ClassifierKind::BaggedTrees,
                      ClassifierKind::LogisticRegression}) {
        const auto model = train(data, kind, {}, 21);
        const auto loaded = deserialize_model(serialize_model(model));
        CHECK(loaded.kind() == kind);
        CHECK(loaded.seed() == 21);
        CHECK(serialize_model(loaded) == serialize_model(model));
        for (int i = 0; i < 500; ++i) {
            const double d = ud(rng), ea = uea(rng);
            const auto p = model.predict(d, ea);
            const auto q = loaded.predict(d, ea);
            REQUIRE(p.label == q.label);
            REQUIRE(std::bit_cast<std::uint64_t>(p.score) == std::bit_cast<std::uint64_t>(q.score));
        }
    }
}

TEST_CASE("malformed model documents are rejected")
{
    CHECK_THROWS_AS(deserialize_model("{not json"), ParseError);
    CHECK_THROWS_AS(deserialize_model(R"({"format":"reform-model","version":99})"), ParseError);
    const auto doc = serialize_model(train(blobs(100, 3), ClassifierKind::LogisticRegression));
    std::string wrong_kind = doc;
    wrong_kind.replace(wrong_kind.find("\"logreg\""), 8, "\"svm\"");
    CHECK_THROWS(deserialize_model(wrong_kind));

    Hyperparams h;
    h.trees.n_trees = 1;
    std::string tree_doc = serialize_model(train(blobs(100, 3), ClassifierKind::BaggedTrees, h));
    const auto pos = tree_doc.find("\"left\": [");
    REQUIRE(pos != std::string::npos);
    tree_doc.insert(pos + 9, "0,");
    CHECK_THROWS_AS(deserialize_model(tree_doc), ParseError);
}
