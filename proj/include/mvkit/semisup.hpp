#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

/// Minimum contract for a co-trainable classifier: binary training plus
/// calibrated per-class probabilities (rows sum to 1).
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual void train(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) = 0;
    virtual Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const = 0;
    virtual std::unique_ptr<Classifier> clone() const = 0;
};

/// Bundled default: L2-regularized logistic regression trained by Newton
/// iterations. Deterministic.
class LogisticClassifier final : public Classifier {
public:
    explicit LogisticClassifier(double l2 = 1e-3, int max_iter = 100, double tol = 1e-8)
        : l2_(l2), max_iter_(max_iter), tol_(tol) {}
    void train(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) override;
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    std::unique_ptr<Classifier> clone() const override {
        return std::make_unique<LogisticClassifier>(*this);
    }

private:
    double l2_;
    int max_iter_;
    double tol_;
    Eigen::VectorXd weights_;  // last entry is the intercept
    bool fitted_ = false;
};

struct CoTrainParams {
    Eigen::Index p = 1;          // confident positives added per learner per round
    Eigen::Index n = 3;          // confident negatives added per learner per round
    Eigen::Index pool_size = 75;
    int max_rounds = 30;
    std::uint64_t seed = 0;
};

struct CoTrainRound {
    Eigen::Index added_positive = 0;
    Eigen::Index added_negative = 0;
    Eigen::Index pool_refills = 0;
};

/// Fitted co-training model: one learner per view, the grown labeled set,
/// and the per-round trace.
struct CoTrainModel {
    std::vector<std::unique_ptr<Classifier>> learners;
    std::vector<Eigen::Index> labeled_indices;  // grown set, ascending
    std::vector<CoTrainRound> trace;
    Eigen::VectorXd class_values;  // the two observed label values, ascending
    FitState state;
};

/// Blum-Mitchell co-training over two views. y uses unlabeled() for the
/// unlabeled samples; exactly two observed classes are required and each
/// needs at least one labeled example. With no unlabeled samples this
/// reduces to training each learner once on all data.
CoTrainModel cotrain_classifier_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                    const Classifier& learner1, const Classifier& learner2,
                                    const CoTrainParams& params = {});

/// Convenience overload using two bundled logistic learners.
CoTrainModel cotrain_classifier_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                    const CoTrainParams& params = {});

/// Mean of the two learners' probabilities; columns follow class_values.
Eigen::MatrixXd cotrain_classifier_predict_proba(const CoTrainModel& model,
                                                 const MultiviewDataset& ds);

/// Argmax of the combined probabilities, ties toward the lower class index.
Eigen::VectorXd cotrain_classifier_predict(const CoTrainModel& model, const MultiviewDataset& ds);

// ---------------------------------------------------------------------------
// COREG: co-training regression with two kNN regressors
// ---------------------------------------------------------------------------

struct CoregParams {
    Eigen::Index k1 = 3;      // neighbors of regressor 1
    Eigen::Index k2 = 3;      // neighbors of regressor 2
    double order1 = 2.0;      // Minkowski order of regressor 1
    double order2 = 5.0;      // Minkowski order of regressor 2
    int max_rounds = 100;
    Eigen::Index pool_size = 100;
    std::uint64_t seed = 0;
};

struct CoregRound {
    bool added1 = false;  // regressor 1 labeled a candidate for regressor 2
    bool added2 = false;
};

struct CoregModel {
    // per-regressor training sets (indices into the fitted views + targets)
    std::vector<Eigen::MatrixXd> train_x;  // 2 entries
    std::vector<Eigen::VectorXd> train_y;
    CoregParams params;
    std::vector<CoregRound> trace;
    FitState state;
};

/// COREG: each round both kNN regressors score every pool candidate by the
/// labeled-neighborhood MSE reduction of adding it with its own prediction;
/// the best positive candidate joins the other regressor's training set.
CoregModel cotrain_regressor_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                 const CoregParams& params = {});

/// Mean of the two regressors' kNN predictions.
Eigen::VectorXd cotrain_regressor_predict(const CoregModel& model, const MultiviewDataset& ds);

}  // namespace mvkit
