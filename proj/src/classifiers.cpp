#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "reform/classifiers.hpp"
#include "reform/features.hpp"

namespace reform {

using nlohmann::json;

namespace {

constexpr int kModelVersion = 1;
constexpr const char* kModelFormat = "reform-model";

std::vector<FeatureVec> scaled_features(std::span<const PairSample> samples,
                                        const FeatureScaling& scaling)
{
    std::vector<FeatureVec> x;
    x.reserve(samples.size());
    for (const auto& s : samples) {
        x.push_back(scaling.apply(s.distance, s.effort_angle));
    }
    return x;
}

std::vector<int> labels_of(std::span<const PairSample> samples)
{
    std::vector<int> y;
    y.reserve(samples.size());
    for (const auto& s : samples) {
        y.push_back(s.label);
    }
    return y;
}

}  // namespace

std::string_view to_string(ClassifierKind kind)
{
    switch (kind) {
    case ClassifierKind::WeightedKnn:
        return "knn";
    case ClassifierKind::BaggedTrees:
        return "trees";
    case ClassifierKind::LogisticRegression:
        return "logreg";
    }
    return "unknown";
}

ClassifierKind parse_classifier_kind(std::string_view name)
{
    if (name == "knn") {
        return ClassifierKind::WeightedKnn;
    }
    if (name == "trees") {
        return ClassifierKind::BaggedTrees;
    }
    if (name == "logreg") {
        return ClassifierKind::LogisticRegression;
    }
    throw Error("unknown classifier kind '" + std::string(name) + "'");
}

FeatureScaling FeatureScaling::fit(std::span<const PairSample> samples)
{
    FeatureScaling s;
    const double n = static_cast<double>(samples.size());
    FeatureVec sum{0.0, 0.0};
    for (const auto& p : samples) {
        sum[0] += p.distance;
        sum[1] += p.effort_angle;
    }
    s.mean = {sum[0] / n, sum[1] / n};
    FeatureVec sq{0.0, 0.0};
    for (const auto& p : samples) {
        const double d0 = p.distance - s.mean[0];
        const double d1 = p.effort_angle - s.mean[1];
        sq[0] += d0 * d0;
        sq[1] += d1 * d1;
    }
    s.stddev = {std::sqrt(sq[0] / n), std::sqrt(sq[1] / n)};
    return s;
}

TrainedModel::TrainedModel(ClassifierKind kind, Hyperparams hyper, FeatureScaling scaling,
                           std::uint64_t seed, Impl impl, std::vector<PairSample> knn_training)
    : kind_(kind), hyper_(hyper), scaling_(scaling), seed_(seed), impl_(std::move(impl)),
      knn_training_(std::move(knn_training))
{
    if (!(scaling_.stddev[0] > 0.0) || !(scaling_.stddev[1] > 0.0)) {
        throw TrainingError("model scaling has a non-positive standard deviation");
    }
}

Prediction TrainedModel::predict(double distance, double effort_angle) const
{
    if (!std::isfinite(distance) || !std::isfinite(effort_angle)) {
        throw ValidationError("predict: non-finite feature");
    }
    const FeatureVec x = scaling_.apply(distance, effort_angle);
    const double score = std::visit([&](const auto& m) { return m.score(x); }, impl_);
    return Prediction{score >= 0.5 ? 1 : 0, score};
}

TrainedModel train(std::vector<PairSample> samples, ClassifierKind kind, const Hyperparams& hyper,
                   std::uint64_t seed)
{
    if (samples.size() < 2) {
        throw TrainingError("degenerate labels: need at least 2 samples");
    }
    std::size_t positives = 0;
    for (const auto& s : samples) {
        if (!std::isfinite(s.distance) || !std::isfinite(s.effort_angle)) {
            throw TrainingError("non-finite feature in training set");
        }
        if (s.label != 0 && s.label != 1) {
            throw TrainingError("labels must be 0 or 1");
        }
        positives += static_cast<std::size_t>(s.label);
    }
    if (positives == 0 || positives == samples.size()) {
        throw TrainingError("degenerate labels: training set has a single class");
    }
    std::sort(samples.begin(), samples.end(), [](const PairSample& a, const PairSample& b) {
        return std::tie(a.distance, a.effort_angle, a.label) <
               std::tie(b.distance, b.effort_angle, b.label);
    });

    const FeatureScaling scaling = FeatureScaling::fit(samples);
    if (!(scaling.stddev[0] > 0.0) || !(scaling.stddev[1] > 0.0)) {
        throw TrainingError("degenerate feature: zero variance");
    }
    const auto x = scaled_features(samples, scaling);
    const auto y = labels_of(samples);

    switch (kind) {
    case ClassifierKind::WeightedKnn: {
        std::vector<PairSample> kept;
        kept.reserve(samples.size());
        for (const auto& s : samples) {
            PairSample k;
            k.distance = s.distance;
            k.effort_angle = s.effort_angle;
            k.label = s.label;
            kept.push_back(k);
        }
        return TrainedModel(kind, hyper, scaling, seed, WeightedKnn(x, y, hyper.knn.k),
                            std::move(kept));
    }
    case ClassifierKind::BaggedTrees:
        return TrainedModel(kind, hyper, scaling, seed,
                            BaggedTrees::fit(x, y, hyper.trees, seed));
    case ClassifierKind::LogisticRegression:
        return TrainedModel(kind, hyper, scaling, seed, LogisticModel::fit(x, y, hyper.logistic));
    }
    throw TrainingError("unknown classifier kind");
}

double pairwise_accuracy(const TrainedModel& model, std::span<const PairSample> samples)
{
    if (samples.empty()) {
        throw Error("pairwise_accuracy: empty sample list");
    }
    std::size_t correct = 0;
    for (const auto& s : samples) {
        if (model.predict(s.distance, s.effort_angle).label == s.label) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(samples.size());
}

RelationMatrix build_relation_matrix(const TrainedModel& model, const Frame& frame)
{
    validate_frame(frame);
    std::vector<AgentId> ids;
    ids.reserve(frame.agents.size());
    for (const auto& a : frame.agents) {
        ids.push_back(a.agent_id);
    }
    RelationMatrix m(std::move(ids));
    for (const auto& s : pairwise_deconstruct(frame)) {
        const auto i = *m.index_of(s.id_a);
        const auto j = *m.index_of(s.id_b);
        m.set_pair(i, j, model.predict(s.distance, s.effort_angle).label == 1);
    }
    return m;
}

// Persistence

std::string serialize_model(const TrainedModel& model)
{
    const auto& h = model.hyperparams();
    json doc;
    doc["format"] = kModelFormat;
    doc["version"] = kModelVersion;
    doc["kind"] = std::string(to_string(model.kind()));
    doc["seed"] = model.seed();
    doc["hyperparams"] = {
        {"knn", {{"k", h.knn.k}}},
        {"trees",
         {{"n_trees", h.trees.n_trees},
          {"max_depth", h.trees.max_depth},
          {"min_leaf", h.trees.min_leaf},
          {"bootstrap", h.trees.bootstrap}}},
        {"logistic",
         {{"l2", h.logistic.l2},
          {"learning_rate", h.logistic.learning_rate},
          {"max_epochs", h.logistic.max_epochs},
          {"gradient_tolerance", h.logistic.gradient_tolerance}}},
    };
    doc["scaling"] = {{"mean", model.scaling().mean}, {"stddev", model.scaling().stddev}};

    json params;
    switch (model.kind()) {
    case ClassifierKind::WeightedKnn: {
        std::vector<double> d, ea;
        std::vector<int> y;
        for (const auto& s : model.knn_training()) {
            d.push_back(s.distance);
            ea.push_back(s.effort_angle);
            y.push_back(s.label);
        }
        params = {{"distance", d}, {"effort_angle", ea}, {"label", y}};
        break;
    }
    case ClassifierKind::BaggedTrees: {
        json trees = json::array();
        for (const auto& t : std::get<BaggedTrees>(model.impl()).trees()) {
            trees.push_back({{"feature", t.feature},
                             {"threshold", t.threshold},
                             {"left", t.left},
                             {"right", t.right},
                             {"value", t.value}});
        }
        params = {{"trees", trees}};
        break;
    }
    case ClassifierKind::LogisticRegression:
        params = {{"coefficients", std::get<LogisticModel>(model.impl()).coefficients()}};
        break;
    }
    doc["parameters"] = std::move(params);
    return doc.dump(1);
}

TrainedModel deserialize_model(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model document: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kModelFormat) {
            throw ParseError("model document: unexpected format tag");
        }
        const int version = doc.at("version").get<int>();
        if (version != kModelVersion) {
            throw ParseError("model document: unsupported version " + std::to_string(version));
        }
        const auto kind = parse_classifier_kind(doc.at("kind").get<std::string>());
        const auto seed = doc.at("seed").get<std::uint64_t>();

        Hyperparams h;
        const auto& hp = doc.at("hyperparams");
        h.knn.k = hp.at("knn").at("k").get<int>();
        const auto& tp = hp.at("trees");
        h.trees.n_trees = tp.at("n_trees").get<int>();
        h.trees.max_depth = tp.at("max_depth").get<int>();
        h.trees.min_leaf = tp.at("min_leaf").get<int>();
        h.trees.bootstrap = tp.at("bootstrap").get<bool>();
        const auto& lp = hp.at("logistic");
        h.logistic.l2 = lp.at("l2").get<double>();
        h.logistic.learning_rate = lp.at("learning_rate").get<double>();
        h.logistic.max_epochs = lp.at("max_epochs").get<int>();
        h.logistic.gradient_tolerance = lp.at("gradient_tolerance").get<double>();

        FeatureScaling scaling;
        scaling.mean = doc.at("scaling").at("mean").get<FeatureVec>();
        scaling.stddev = doc.at("scaling").at("stddev").get<FeatureVec>();

        const auto& p = doc.at("parameters");
        switch (kind) {
        case ClassifierKind::WeightedKnn: {
            const auto d = p.at("distance").get<std::vector<double>>();
            const auto ea = p.at("effort_angle").get<std::vector<double>>();
            const auto y = p.at("label").get<std::vector<int>>();
            if (d.size() != ea.size() || d.size() != y.size() || d.empty()) {
                throw ParseError("model document: inconsistent knn training arrays");
            }
            std::vector<PairSample> kept(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) {
                kept[i].distance = d[i];
                kept[i].effort_angle = ea[i];
                kept[i].label = y[i];
            }
            WeightedKnn knn(scaled_features(kept, scaling), y, h.knn.k);
            return TrainedModel(kind, h, scaling, seed, std::move(knn), std::move(kept));
        }
        case ClassifierKind::BaggedTrees: {
            std::vector<DecisionTree> trees;
            for (const auto& t : p.at("trees")) {
                DecisionTree tree;
                tree.feature = t.at("feature").get<std::vector<std::int32_t>>();
                tree.threshold = t.at("threshold").get<std::vector<double>>();
                tree.left = t.at("left").get<std::vector<std::int32_t>>();
                tree.right = t.at("right").get<std::vector<std::int32_t>>();
                tree.value = t.at("value").get<std::vector<double>>();
                const auto n = tree.feature.size();
                if (n == 0 || tree.threshold.size() != n || tree.left.size() != n ||
                    tree.right.size() != n || tree.value.size() != n) {
                    throw ParseError("model document: inconsistent tree arrays");
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (tree.feature[i] < 0) {
                        continue;
                    }
                    const auto in_range = [&](std::int32_t c) {
                        return c > static_cast<std::int32_t>(i) && c < static_cast<std::int32_t>(n);
                    };
                    if (tree.feature[i] > 1 || !in_range(tree.left[i]) || !in_range(tree.right[i])) {
                        throw ParseError("model document: malformed tree node " + std::to_string(i));
                    }
                }
                trees.push_back(std::move(tree));
            }
            if (trees.empty()) {
                throw ParseError("model document: no trees");
            }
            return TrainedModel(kind, h, scaling, seed, BaggedTrees(std::move(trees)));
        }
        case ClassifierKind::LogisticRegression:
            return TrainedModel(kind, h, scaling, seed,
                                LogisticModel(p.at("coefficients").get<LogisticCoefficients>()));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document: ") + e.what());
    }
    throw ParseError("model document: unknown kind");
}

void save_model(const TrainedModel& model, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write model file " + path.string());
    }
    out << serialize_model(model) << '\n';
}

TrainedModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read model file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize_model(ss.str());
}

}  // namespace reform
