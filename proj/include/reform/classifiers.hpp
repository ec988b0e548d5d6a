#ifndef REFORM_CLASSIFIERS_HPP
#define REFORM_CLASSIFIERS_HPP

/**
 * @file classifiers.hpp
 * @brief Exchangeable pairwise classifiers over (distance, effort angle).
 *
 * Every kind standardizes its two features with training-set mean and
 * standard deviation, outputs a score in [0, 1], and predicts label 1 iff the
 * score is at least 0.5.
 */

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reform/bagged_trees.hpp"
#include "reform/knn.hpp"
#include "reform/logistic.hpp"
#include "reform/types.hpp"

namespace reform {

/// Training rejected the input (single class, zero-variance feature, ...).
class TrainingError : public Error {
public:
    using Error::Error;
};

enum class ClassifierKind { WeightedKnn, BaggedTrees, LogisticRegression };

/// "knn", "trees" or "logreg".
std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(std::string_view name);

struct KnnParams {
    int k = 10;
};

struct Hyperparams {
    KnnParams knn;
    TreeParams trees;
    LogisticParams logistic;
};

struct FeatureScaling {
    FeatureVec mean{0.0, 0.0};
    FeatureVec stddev{1.0, 1.0};

    FeatureVec apply(double distance, double effort_angle) const
    {
        return {(distance - mean[0]) / stddev[0], (effort_angle - mean[1]) / stddev[1]};
    }

    /// Population mean and standard deviation of each feature.
    static FeatureScaling fit(std::span<const PairSample> samples);
};

struct Prediction {
    int label = 0;
    double score = 0.0;
};

/// A trained, immutable classifier. Prediction has no hidden state and is
/// safe to call concurrently.
class TrainedModel {
public:
    using Impl = std::variant<WeightedKnn, BaggedTrees, LogisticModel>;

    /// KNN keeps its raw training features so that persistence can rebuild
    /// the search tree; they are ignored by the other kinds.
    TrainedModel(ClassifierKind kind, Hyperparams hyper, FeatureScaling scaling,
                 std::uint64_t seed, Impl impl, std::vector<PairSample> knn_training = {});

    ClassifierKind kind() const { return kind_; }
    const Hyperparams& hyperparams() const { return hyper_; }
    const FeatureScaling& scaling() const { return scaling_; }
    std::uint64_t seed() const { return seed_; }
    const Impl& impl() const { return impl_; }
    const std::vector<PairSample>& knn_training() const { return knn_training_; }

    /// Rejects non-finite input with ValidationError.
    Prediction predict(double distance, double effort_angle) const;

private:
    ClassifierKind kind_;
    Hyperparams hyper_;
    FeatureScaling scaling_;
    std::uint64_t seed_;
    Impl impl_;
    std::vector<PairSample> knn_training_;
};

/**
 * Trains a classifier on labeled samples. The samples are sorted by
 * (distance, effort angle, label) first, so the result depends only on their
 * multiset, the hyperparameters and the seed.
 */
TrainedModel train(std::vector<PairSample> samples, ClassifierKind kind,
                   const Hyperparams& hyper = {}, std::uint64_t seed = 0);

/// Fraction of samples whose predicted label equals the stored label.
double pairwise_accuracy(const TrainedModel& model, std::span<const PairSample> samples);

/// Relation matrix of a frame: ids ascending, unit diagonal, and the
/// predicted label for every pair.
RelationMatrix build_relation_matrix(const TrainedModel& model, const Frame& frame);

/// Versioned JSON document holding everything needed to reproduce predictions.
std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(std::string_view text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace reform

#endif  // REFORM_CLASSIFIERS_HPP
