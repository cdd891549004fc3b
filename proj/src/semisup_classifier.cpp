#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mvkit/random.hpp"
#include "mvkit/semisup.hpp"

namespace mvkit {

// ---------------------------------------------------------------------------
// bundled logistic learner
// ---------------------------------------------------------------------------

void LogisticClassifier::train(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    if (y.size() != n) throw LengthMismatch("LogisticClassifier::train: length mismatch");

    Eigen::MatrixXd xa(n, d + 1);  // intercept as a trailing column
    xa.leftCols(d) = x;
    xa.col(d).setOnes();
    Eigen::VectorXd yd = y.cast<double>();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
    for (int it = 0; it < max_iter_; ++it) {
        const Eigen::VectorXd z = xa * w;
        const Eigen::VectorXd p = 1.0 / (1.0 + (-z.array()).exp());
        Eigen::VectorXd grad = xa.transpose() * (p - yd);
        grad.head(d) += l2_ * w.head(d);  // intercept not penalized
        const Eigen::VectorXd r = p.array() * (1.0 - p.array()) + 1e-10;
        Eigen::MatrixXd hess = xa.transpose() * r.asDiagonal() * xa;
        hess.topLeftCorner(d, d).diagonal().array() += l2_;
        const Eigen::VectorXd step = hess.ldlt().solve(grad);
        w -= step;
        if (step.cwiseAbs().maxCoeff() < tol_) break;
    }
    weights_ = w;
    fitted_ = true;
}

Eigen::MatrixXd LogisticClassifier::predict_proba(const Eigen::MatrixXd& x) const {
    if (!fitted_) throw NotFitted("LogisticClassifier::predict_proba: not trained");
    if (x.cols() + 1 != weights_.size())
        throw ShapeMismatch("LogisticClassifier::predict_proba: feature width mismatch");
    const Eigen::VectorXd z = x * weights_.head(x.cols()) +
                              Eigen::VectorXd::Constant(x.rows(), weights_(x.cols()));
    Eigen::MatrixXd proba(x.rows(), 2);
    proba.col(1) = (1.0 / (1.0 + (-z.array()).exp())).matrix();
    proba.col(0) = 1.0 - proba.col(1).array();
    return proba;
}

// ---------------------------------------------------------------------------
// Blum-Mitchell loop
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
    return out;
}

}  // namespace

CoTrainModel cotrain_classifier_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                    const Classifier& learner1, const Classifier& learner2,
                                    const CoTrainParams& params) {
    if (ds.n_views() != 2)
        throw ViewCountError("cotrain_classifier_fit: expected 2 views, got " +
                             std::to_string(ds.n_views()));
    const Eigen::Index n = ds.n_samples();
    if (y.size() != n)
        throw LengthMismatch("cotrain_classifier_fit: y has " + std::to_string(y.size()) +
                             " entries for " + std::to_string(n) + " samples");
    if (params.p < 1 || params.n < 1)
        throw BadParams("cotrain_classifier_fit: p and n must be >= 1");
    if (params.pool_size < params.p + params.n)
        throw BadParams("cotrain_classifier_fit: pool_size must be >= p + n");
    if (params.max_rounds < 0) throw BadParams("cotrain_classifier_fit: max_rounds must be >= 0");

    // observed classes (exactly two) and the unlabeled pool
    std::vector<double> classes;
    std::vector<Eigen::Index> labeled, unlabeled;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (is_unlabeled(y(i))) {
            unlabeled.push_back(i);
            continue;
        }
        labeled.push_back(i);
        if (std::find(classes.begin(), classes.end(), y(i)) == classes.end())
            classes.push_back(y(i));
    }
    if (classes.size() > 2)
        throw NotBinary("cotrain_classifier_fit: expected exactly 2 observed classes, got " +
                        std::to_string(classes.size()));
    if (classes.size() < 2)
        throw NoLabeled("cotrain_classifier_fit: a class has no labeled examples (" +
                        std::to_string(classes.size()) + " of 2 classes labeled)");
    std::sort(classes.begin(), classes.end());
    auto to_binary = [&](double value) { return value == classes[1] ? 1 : 0; };

    CoTrainModel model;
    model.class_values = Eigen::Vector2d(classes[0], classes[1]);
    model.learners.push_back(learner1.clone());
    model.learners.push_back(learner2.clone());

    std::vector<Eigen::Index> grown = labeled;
    std::vector<int> grown_y;
    grown_y.reserve(grown.size());
    for (Eigen::Index i : grown) grown_y.push_back(to_binary(y(i)));

    Rng rng(params.seed);
    rng.shuffle(unlabeled);
    std::vector<Eigen::Index> pool, queue = unlabeled;
    const auto refill = [&]() {
        Eigen::Index refilled = 0;
        while (static_cast<Eigen::Index>(pool.size()) < params.pool_size && !queue.empty()) {
            pool.push_back(queue.front());
            queue.erase(queue.begin());
            ++refilled;
        }
        return refilled;
    };
    refill();

    auto train_both = [&]() {
        const Eigen::VectorXi yb =
            Eigen::Map<const Eigen::VectorXi>(grown_y.data(), static_cast<Eigen::Index>(grown_y.size()));
        model.learners[0]->train(take_rows(ds.view(0), grown), yb);
        model.learners[1]->train(take_rows(ds.view(1), grown), yb);
    };

    for (int round = 0; round < params.max_rounds && !pool.empty(); ++round) {
        train_both();

        // each learner ranks the current pool by its own probabilities
        std::vector<std::pair<Eigen::Index, int>> picks;  // (sample, assigned label)
        std::vector<char> taken(pool.size(), 0);
        for (std::size_t learner = 0; learner < 2; ++learner) {
            const Eigen::MatrixXd proba =
                model.learners[learner]->predict_proba(take_rows(ds.view(learner), pool));
            std::vector<std::size_t> by_pos(pool.size()), by_neg(pool.size());
            std::iota(by_pos.begin(), by_pos.end(), 0);
            by_neg = by_pos;
            std::stable_sort(by_pos.begin(), by_pos.end(), [&](std::size_t a, std::size_t b) {
                return proba(static_cast<Eigen::Index>(a), 1) > proba(static_cast<Eigen::Index>(b), 1);
            });
            std::stable_sort(by_neg.begin(), by_neg.end(), [&](std::size_t a, std::size_t b) {
                return proba(static_cast<Eigen::Index>(a), 0) > proba(static_cast<Eigen::Index>(b), 0);
            });
            Eigen::Index added = 0;
            for (std::size_t idx : by_pos) {
                if (added == params.p) break;
                if (!taken[idx]) {
                    taken[idx] = 1;
                    picks.emplace_back(pool[idx], 1);
                    ++added;
                }
            }
            added = 0;
            for (std::size_t idx : by_neg) {
                if (added == params.n) break;
                if (!taken[idx]) {
                    taken[idx] = 1;
                    picks.emplace_back(pool[idx], 0);
                    ++added;
                }
            }
        }

        CoTrainRound record;
        for (const auto& [sample, label] : picks) {
            grown.push_back(sample);
            grown_y.push_back(label);
            (label ? record.added_positive : record.added_negative) += 1;
        }
        std::vector<Eigen::Index> remaining;
        remaining.reserve(pool.size());
        for (std::size_t idx = 0; idx < pool.size(); ++idx)
            if (!taken[idx]) remaining.push_back(pool[idx]);
        pool = std::move(remaining);
        record.pool_refills = refill();
        model.trace.push_back(record);
    }

    train_both();  // final learners reflect the fully grown labeled set
    std::sort(grown.begin(), grown.end());
    model.labeled_indices = std::move(grown);
    model.state.fitted = true;
    model.state.seed = params.seed;
    return model;
}

CoTrainModel cotrain_classifier_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                    const CoTrainParams& params) {
    LogisticClassifier base;
    return cotrain_classifier_fit(ds, y, base, base, params);
}

Eigen::MatrixXd cotrain_classifier_predict_proba(const CoTrainModel& model,
                                                 const MultiviewDataset& ds) {
    model.state.require_fitted("cotrain_classifier_predict_proba");
    if (ds.n_views() != 2)
        throw ViewCountError("cotrain_classifier_predict_proba: expected 2 views");
    const Eigen::MatrixXd p1 = model.learners[0]->predict_proba(ds.view(0));
    const Eigen::MatrixXd p2 = model.learners[1]->predict_proba(ds.view(1));
    if (p1.rows() != p2.rows() || p1.cols() != 2 || p2.cols() != 2)
        throw ShapeMismatch("cotrain_classifier_predict_proba: learner output shape mismatch");
    return (p1 + p2) / 2.0;
}

Eigen::VectorXd cotrain_classifier_predict(const CoTrainModel& model, const MultiviewDataset& ds) {
    const Eigen::MatrixXd proba = cotrain_classifier_predict_proba(model, ds);
    Eigen::VectorXd out(proba.rows());
    for (Eigen::Index i = 0; i < proba.rows(); ++i)
        out(i) = proba(i, 0) >= proba(i, 1) ? model.class_values(0) : model.class_values(1);
    return out;
}

}  // namespace mvkit
