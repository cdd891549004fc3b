#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvkit/errors.hpp"

namespace mvkit {

/// One view: an n_samples x n_features matrix with optional column names.
struct ViewMatrix {
    Eigen::MatrixXd data;
    std::vector<std::string> feature_names;  // empty means unnamed

    ViewMatrix() = default;
    ViewMatrix(Eigen::MatrixXd m) : data(std::move(m)) {}  // NOLINT: intentional implicit
    ViewMatrix(Eigen::MatrixXd m, std::vector<std::string> names)
        : data(std::move(m)), feature_names(std::move(names)) {}
};

/// Sentinel marking an unlabeled sample in a label vector.
inline double unlabeled() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_unlabeled(double y) { return std::isnan(y); }

/// Ordered sequence of views with matched samples, optionally labeled.
/// Construction validates the invariants: at least one view, every view
/// finite and non-empty, all views share the same row count, labels (when
/// present) have one entry per sample. Instances are immutable.
class MultiviewDataset {
public:
    MultiviewDataset(std::vector<ViewMatrix> views,
                     std::optional<Eigen::VectorXd> labels = std::nullopt);

    std::size_t n_views() const { return views_.size(); }
    Eigen::Index n_samples() const { return n_samples_; }

    const Eigen::MatrixXd& view(std::size_t v) const { return views_[v].data; }
    const ViewMatrix& view_matrix(std::size_t v) const { return views_[v]; }
    const std::vector<ViewMatrix>& views() const { return views_; }

    const std::optional<Eigen::VectorXd>& labels() const { return labels_; }
    bool has_labels() const { return labels_.has_value(); }

    /// Copy of this dataset with labels attached (validates length).
    MultiviewDataset with_labels(Eigen::VectorXd labels) const;

    std::vector<Eigen::Index> view_widths() const {
        std::vector<Eigen::Index> w;
        w.reserve(views_.size());
        for (const auto& v : views_) w.push_back(v.data.cols());
        return w;
    }

private:
    std::vector<ViewMatrix> views_;
    std::optional<Eigen::VectorXd> labels_;
    Eigen::Index n_samples_ = 0;
};

/// Lifecycle marker shared by fitted models.
struct FitState {
    bool fitted = false;
    std::optional<std::uint64_t> seed;

    void require_fitted(const char* what) const {
        if (!fitted) throw NotFitted(std::string(what) + ": model is not fitted");
    }
};

}  // namespace mvkit
