#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

struct AjiveParams {
    std::vector<Eigen::Index> initial_ranks;  // per-view signal ranks, required
    int n_resamples = 500;
    double quantile = 0.95;
    std::uint64_t seed = 0;
};

struct AjiveResult {
    Eigen::Index joint_rank = 0;
    Eigen::MatrixXd common_scores;           // n x joint_rank, orthonormal
    std::vector<Eigen::MatrixXd> joint;      // J_v of the centered views
    std::vector<Eigen::MatrixXd> individual; // I_v
    std::vector<Eigen::MatrixXd> noise;      // E_v = centered - J - I
    std::vector<Eigen::Index> individual_ranks;
    std::vector<Eigen::RowVectorXd> means;
    // decision trace
    Eigen::VectorXd stacked_sv_sq;           // squared singular values of [U_1 U_2]
    double wedin_threshold = 0.0;
    double random_threshold = 0.0;
    std::string binding_bound;               // "wedin" or "random"
};

/// Two-view AJIVE: per-view rank-truncated score bases, joint rank from the
/// squared singular values of the stacked bases that clear BOTH the
/// resampled Wedin bound and the random-direction bound at the configured
/// quantile, then the joint/individual/noise split of each centered view.
AjiveResult ajive_fit(const MultiviewDataset& ds, const AjiveParams& params);

struct GroupPcaResult {
    Eigen::MatrixXd scores;                     // n x r, orthogonal columns
    std::vector<Eigen::MatrixXd> loadings;      // d_v x r, least squares
    std::vector<Eigen::MatrixXd> view_components;  // per-view PCA axes used
    std::vector<Eigen::RowVectorXd> means;
    Eigen::VectorXd explained_variance;
};

/// Per-view PCA reduction to individual_ranks, then PCA of the column-wise
/// concatenation down to n_components.
GroupPcaResult group_pca_fit_transform(const MultiviewDataset& ds,
                                       const std::vector<Eigen::Index>& individual_ranks,
                                       Eigen::Index n_components);

struct IcaParams {
    std::vector<Eigen::Index> individual_ranks;
    Eigen::Index n_components = 1;
    double tol = 1e-4;
    int max_iter = 200;
    std::uint64_t seed = 0;
};

struct IcaResult {
    Eigen::MatrixXd unmixing;              // r x r, acts on whitened group scores
    Eigen::MatrixXd sources;               // n x r, unit-variance columns
    std::vector<Eigen::MatrixXd> mixing;   // d_v x r per view, least squares
    Eigen::VectorXd whitening_scales;      // 1/std of the group score columns
    bool converged = false;
    int n_iter = 0;
    GroupPcaResult pca;
};

/// Group ICA: group PCA, whitening, then symmetric FastICA with the tanh
/// contrast. Non-convergence is flagged on the result, not thrown.
IcaResult group_ica_fit(const MultiviewDataset& ds, const IcaParams& params);

}  // namespace mvkit
