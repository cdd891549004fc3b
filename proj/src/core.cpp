#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

#include "mvkit/metrics.hpp"
#include "mvkit/types.hpp"
#include "mvkit/validation.hpp"

namespace mvkit {

MultiviewDataset::MultiviewDataset(std::vector<ViewMatrix> views,
                                   std::optional<Eigen::VectorXd> labels)
    : views_(std::move(views)), labels_(std::move(labels)) {
    if (views_.empty()) throw EmptyInput("MultiviewDataset: no views given");
    for (std::size_t v = 0; v < views_.size(); ++v) {
        const Eigen::MatrixXd& m = views_[v].data;
        if (m.rows() < 1 || m.cols() < 1)
            throw EmptyInput("view " + std::to_string(v) + " is empty (" +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
        if (!m.allFinite())
            throw NonFinite("view " + std::to_string(v) + " contains NaN or inf");
        if (!views_[v].feature_names.empty() &&
            static_cast<Eigen::Index>(views_[v].feature_names.size()) != m.cols())
            throw ShapeMismatch("view " + std::to_string(v) + ": " +
                                std::to_string(views_[v].feature_names.size()) +
                                " feature names for " + std::to_string(m.cols()) + " columns");
    }
    n_samples_ = views_[0].data.rows();
    for (std::size_t v = 1; v < views_.size(); ++v) {
        if (views_[v].data.rows() != n_samples_)
            throw ShapeMismatch("view " + std::to_string(v) + " has " +
                                std::to_string(views_[v].data.rows()) + " rows but view 0 has " +
                                std::to_string(n_samples_));
    }
    if (labels_ && labels_->size() != n_samples_)
        throw ShapeMismatch("labels have " + std::to_string(labels_->size()) +
                            " entries for " + std::to_string(n_samples_) + " samples");
}

MultiviewDataset MultiviewDataset::with_labels(Eigen::VectorXd labels) const {
    return MultiviewDataset(views_, std::move(labels));
}

MultiviewDataset validate_views(std::vector<ViewMatrix> views,
                                std::optional<std::size_t> require_k,
                                Eigen::Index min_samples) {
    if (views.empty()) throw EmptyInput("validate_views: no views given");
    if (require_k && views.size() != *require_k)
        throw ViewCountError("expected exactly " + std::to_string(*require_k) +
                             " views, got " + std::to_string(views.size()));
    MultiviewDataset ds(std::move(views));
    if (ds.n_samples() < min_samples)
        throw ShapeMismatch("need at least " + std::to_string(min_samples) +
                            " samples, got " + std::to_string(ds.n_samples()));
    return ds;
}

ScaledDataset center_scale(const MultiviewDataset& ds, bool center, bool unit_variance) {
    const Eigen::Index n = ds.n_samples();
    std::vector<ViewMatrix> out;
    std::vector<Eigen::RowVectorXd> means, scales;
    std::vector<std::vector<Eigen::Index>> constant(ds.n_views());
    out.reserve(ds.n_views());

    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        Eigen::MatrixXd x = ds.view(v);
        Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
        Eigen::RowVectorXd scale = Eigen::RowVectorXd::Ones(x.cols());
        if (center) {
            mean = x.colwise().mean();
            x.rowwise() -= mean;
        }
        if (unit_variance) {
            // sample std (n-1); needs centered values regardless of `center`
            Eigen::RowVectorXd mu = center ? Eigen::RowVectorXd::Zero(x.cols())
                                           : Eigen::RowVectorXd(x.colwise().mean());
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                const double ss = (x.col(j).array() - mu(j)).square().sum();
                const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
                if (sd > 0.0) {
                    scale(j) = sd;
                    x.col(j) /= sd;
                } else {
                    constant[v].push_back(j);
                }
            }
        }
        out.emplace_back(std::move(x), ds.view_matrix(v).feature_names);
        means.push_back(std::move(mean));
        scales.push_back(std::move(scale));
    }
    return ScaledDataset{MultiviewDataset(std::move(out), ds.labels()), std::move(means),
                         std::move(scales), std::move(constant)};
}

MultiviewDataset ScaledDataset::inverse() const {
    std::vector<ViewMatrix> out;
    out.reserve(data.n_views());
    for (std::size_t v = 0; v < data.n_views(); ++v) {
        Eigen::MatrixXd x = data.view(v);
        x = x.array().rowwise() * scales[v].array();
        x.rowwise() += means[v];
        out.emplace_back(std::move(x), data.view_matrix(v).feature_names);
    }
    return MultiviewDataset(std::move(out), data.labels());
}

namespace {

double comb2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
    if (a.size() != b.size())
        throw LengthMismatch("adjusted_rand_index: label vectors of length " +
                             std::to_string(a.size()) + " and " + std::to_string(b.size()));
    const Eigen::Index n = a.size();
    if (n < 2) throw LengthMismatch("adjusted_rand_index: need at least 2 samples");

    std::unordered_map<int, int> ida, idb;
    for (Eigen::Index i = 0; i < n; ++i) {
        ida.emplace(a(i), static_cast<int>(ida.size()));
        idb.emplace(b(i), static_cast<int>(idb.size()));
    }
    Eigen::MatrixXd contingency =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ida.size()),
                              static_cast<Eigen::Index>(idb.size()));
    for (Eigen::Index i = 0; i < n; ++i) contingency(ida[a(i)], idb[b(i)]) += 1.0;

    double sum_cells = 0.0;
    for (Eigen::Index i = 0; i < contingency.rows(); ++i)
        for (Eigen::Index j = 0; j < contingency.cols(); ++j)
            sum_cells += comb2(contingency(i, j));
    double sum_rows = 0.0, sum_cols = 0.0;
    for (Eigen::Index i = 0; i < contingency.rows(); ++i) sum_rows += comb2(contingency.row(i).sum());
    for (Eigen::Index j = 0; j < contingency.cols(); ++j) sum_cols += comb2(contingency.col(j).sum());

    const double expected = sum_rows * sum_cols / comb2(static_cast<double>(n));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (sum_cells - expected) / (max_index - expected);
}

double accuracy_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
    if (y_true.size() != y_pred.size())
        throw LengthMismatch("accuracy_score: length mismatch");
    if (y_true.size() == 0) throw LengthMismatch("accuracy_score: empty input");
    double hits = 0.0;
    for (Eigen::Index i = 0; i < y_true.size(); ++i)
        if (y_true(i) == y_pred(i)) hits += 1.0;
    return hits / static_cast<double>(y_true.size());
}

double rmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
    if (y_true.size() != y_pred.size()) throw LengthMismatch("rmse: length mismatch");
    if (y_true.size() == 0) throw LengthMismatch("rmse: empty input");
    return std::sqrt((y_true - y_pred).squaredNorm() / static_cast<double>(y_true.size()));
}

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size()) throw LengthMismatch("pearson: length mismatch");
    const Eigen::Index n = x.size();
    const Eigen::VectorXd xc = x.array() - x.mean();
    const Eigen::VectorXd yc = y.array() - y.mean();
    const double denom = std::sqrt(xc.squaredNorm() * yc.squaredNorm());
    if (denom == 0.0) return 0.0;
    (void)n;
    return xc.dot(yc) / denom;
}

}  // namespace mvkit
