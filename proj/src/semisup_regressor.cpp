#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "mvkit/random.hpp"
#include "mvkit/semisup.hpp"

namespace mvkit {

namespace {

double minkowski(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b, double order) {
    if (order == 2.0) return (a - b).norm();
    return std::pow((a - b).array().abs().pow(order).sum(), 1.0 / order);
}

// mean target of the k nearest reference rows (ties by index)
double knn_predict(const Eigen::MatrixXd& ref_x, const Eigen::VectorXd& ref_y,
                   const Eigen::RowVectorXd& query, Eigen::Index k, double order) {
    const Eigen::Index m = ref_x.rows();
    const Eigen::Index kk = std::min(k, m);
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) dist[static_cast<std::size_t>(i)] = {minkowski(ref_x.row(i), query, order), i};
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < kk; ++i) sum += ref_y(dist[static_cast<std::size_t>(i)].second);
    return sum / static_cast<double>(kk);
}

struct RegressorState {
    Eigen::MatrixXd x;  // training rows (its own view)
    Eigen::VectorXd y;
    Eigen::Index k;
    double order;

    double predict(const Eigen::RowVectorXd& query) const {
        return knn_predict(x, y, query, k, order);
    }

    void add(const Eigen::RowVectorXd& row, double target) {
        x.conservativeResize(x.rows() + 1, Eigen::NoChange);
        x.row(x.rows() - 1) = row;
        y.conservativeResize(y.size() + 1);
        y(y.size() - 1) = target;
    }
};

// neighborhood MSE reduction of adding (candidate, its own prediction):
// Delta = sum over the candidate's k labeled neighbors of
//         (y - h(x))^2 - (y - h'(x))^2, h' retrained with the candidate.
double coreg_delta(const RegressorState& reg, const Eigen::RowVectorXd& candidate,
                   double& prediction_out) {
    const Eigen::Index m = reg.x.rows();
    const Eigen::Index kk = std::min(reg.k, m);
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        dist[static_cast<std::size_t>(i)] = {minkowski(reg.x.row(i), candidate, reg.order), i};
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());

    prediction_out = 0.0;
    for (Eigen::Index i = 0; i < kk; ++i) prediction_out += reg.y(dist[static_cast<std::size_t>(i)].second);
    prediction_out /= static_cast<double>(kk);

    RegressorState with_candidate = reg;
    with_candidate.add(candidate, prediction_out);

    double delta = 0.0;
    for (Eigen::Index i = 0; i < kk; ++i) {
        const Eigen::Index idx = dist[static_cast<std::size_t>(i)].second;
        const double before = reg.predict(reg.x.row(idx));
        const double after = with_candidate.predict(reg.x.row(idx));
        const double truth = reg.y(idx);
        delta += (truth - before) * (truth - before) - (truth - after) * (truth - after);
    }
    return delta;
}

}  // namespace

CoregModel cotrain_regressor_fit(const MultiviewDataset& ds, const Eigen::VectorXd& y,
                                 const CoregParams& params) {
    if (ds.n_views() != 2)
        throw ViewCountError("cotrain_regressor_fit: expected 2 views, got " +
                             std::to_string(ds.n_views()));
    const Eigen::Index n = ds.n_samples();
    if (y.size() != n) throw LengthMismatch("cotrain_regressor_fit: y length mismatch");
    if (params.k1 < 1 || params.k2 < 1)
        throw BadParams("cotrain_regressor_fit: neighbor counts must be >= 1");
    if (params.pool_size < 1) throw BadParams("cotrain_regressor_fit: pool_size must be >= 1");

    std::vector<Eigen::Index> labeled, unlabeled;
    for (Eigen::Index i = 0; i < n; ++i)
        (is_unlabeled(y(i)) ? unlabeled : labeled).push_back(i);
    if (labeled.size() < 2)
        throw NoLabeled("cotrain_regressor_fit: need at least 2 labeled samples");

    auto gather = [&](std::size_t view) {
        Eigen::MatrixXd x(static_cast<Eigen::Index>(labeled.size()), ds.view(view).cols());
        Eigen::VectorXd t(static_cast<Eigen::Index>(labeled.size()));
        for (std::size_t i = 0; i < labeled.size(); ++i) {
            x.row(static_cast<Eigen::Index>(i)) = ds.view(view).row(labeled[i]);
            t(static_cast<Eigen::Index>(i)) = y(labeled[i]);
        }
        return std::pair{x, t};
    };
    auto [x1, t1] = gather(0);
    auto [x2, t2] = gather(1);
    RegressorState reg1{std::move(x1), std::move(t1), params.k1, params.order1};
    RegressorState reg2{std::move(x2), std::move(t2), params.k2, params.order2};

    Rng rng(params.seed);
    rng.shuffle(unlabeled);

    CoregModel model;
    model.params = params;
    for (int round = 0; round < params.max_rounds && !unlabeled.empty(); ++round) {
        const std::size_t pool_n =
            std::min<std::size_t>(unlabeled.size(), static_cast<std::size_t>(params.pool_size));
        CoregRound record;
        std::vector<Eigen::Index> chosen;  // positions within unlabeled

        // regressor 1 scores the pool on view 0; its pick trains regressor 2
        {
            double best_delta = 0.0, best_pred = 0.0;
            Eigen::Index best_pos = -1;
            for (std::size_t pos = 0; pos < pool_n; ++pos) {
                double pred;
                const double delta = coreg_delta(reg1, ds.view(0).row(unlabeled[pos]), pred);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_pred = pred;
                    best_pos = static_cast<Eigen::Index>(pos);
                }
            }
            if (best_pos >= 0) {
                const Eigen::Index sample = unlabeled[static_cast<std::size_t>(best_pos)];
                reg2.add(ds.view(1).row(sample), best_pred);
                chosen.push_back(best_pos);
                record.added1 = true;
            }
        }
        // regressor 2 scores the pool on view 1; its pick trains regressor 1
        {
            double best_delta = 0.0, best_pred = 0.0;
            Eigen::Index best_pos = -1;
            for (std::size_t pos = 0; pos < pool_n; ++pos) {
                if (!chosen.empty() && static_cast<Eigen::Index>(pos) == chosen[0]) continue;
                double pred;
                const double delta = coreg_delta(reg2, ds.view(1).row(unlabeled[pos]), pred);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_pred = pred;
                    best_pos = static_cast<Eigen::Index>(pos);
                }
            }
            if (best_pos >= 0) {
                const Eigen::Index sample = unlabeled[static_cast<std::size_t>(best_pos)];
                reg1.add(ds.view(0).row(sample), best_pred);
                chosen.push_back(best_pos);
                record.added2 = true;
            }
        }

        if (chosen.empty()) break;  // no candidate improves either regressor
        std::sort(chosen.rbegin(), chosen.rend());
        for (Eigen::Index pos : chosen)
            unlabeled.erase(unlabeled.begin() + static_cast<std::ptrdiff_t>(pos));
        model.trace.push_back(record);
    }

    model.train_x = {std::move(reg1.x), std::move(reg2.x)};
    model.train_y = {std::move(reg1.y), std::move(reg2.y)};
    model.state.fitted = true;
    model.state.seed = params.seed;
    return model;
}

Eigen::VectorXd cotrain_regressor_predict(const CoregModel& model, const MultiviewDataset& ds) {
    model.state.require_fitted("cotrain_regressor_predict");
    if (ds.n_views() != 2) throw ViewCountError("cotrain_regressor_predict: expected 2 views");
    if (ds.view(0).cols() != model.train_x[0].cols() ||
        ds.view(1).cols() != model.train_x[1].cols())
        throw ShapeMismatch("cotrain_regressor_predict: feature width mismatch");
    Eigen::VectorXd out(ds.n_samples());
    for (Eigen::Index i = 0; i < ds.n_samples(); ++i) {
        const double p1 = knn_predict(model.train_x[0], model.train_y[0], ds.view(0).row(i),
                                      model.params.k1, model.params.order1);
        const double p2 = knn_predict(model.train_x[1], model.train_y[1], ds.view(1).row(i),
                                      model.params.k2, model.params.order2);
        out(i) = (p1 + p2) / 2.0;
    }
    return out;
}

}  // namespace mvkit
