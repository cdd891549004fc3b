#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

struct ClusterParams {
    Eigen::Index n_clusters = 2;
    int max_iter = 100;
    double tol = 1e-6;
    int n_init = 5;
    std::uint64_t seed = 0;
};

struct ClusterResult {
    Eigen::VectorXi labels;                     // values in [0, n_clusters)
    std::vector<Eigen::MatrixXd> centroids;     // per view (k-means family)
    std::vector<Eigen::MatrixXd> spectral_bases;  // per view (spectral family)
    int n_iter = 0;
    double objective = 0.0;
    bool converged = false;
    std::vector<double> objective_trace;        // co-regularized objective per update
};

struct AffinityParams {
    enum class Kind { rbf, knn };
    Kind kind = Kind::rbf;
    std::optional<double> gamma;   // empty = median heuristic
    Eigen::Index n_neighbors = 10;
    double coupling = 1.0;         // lambda, co-regularization strength
    int info_iter = 10;            // co-training rounds
};

/// Two-view co-EM k-means: alternate assignment in one view with centroid
/// updates in the other; final consensus assignment minimizes the sum of
/// per-view squared distances, each normalized by the view's mean pairwise
/// squared distance. Best of n_init seeded restarts.
ClusterResult mv_kmeans_fit_predict(const MultiviewDataset& ds, const ClusterParams& params);

/// Spherical variant: rows and centroids live on the unit sphere and the
/// distance is 1 - cosine. Throws ZeroRow when a sample has zero norm.
ClusterResult mv_spherical_kmeans_fit_predict(const MultiviewDataset& ds,
                                              const ClusterParams& params);

/// Co-trained multiview spectral clustering: per-view normalized Laplacian
/// embeddings refine each other's affinities for info_iter rounds, then
/// k-means runs on the row-normalized concatenated embedding.
ClusterResult mv_spectral_fit_predict(const MultiviewDataset& ds, const ClusterParams& params,
                                      const AffinityParams& affinity);

/// Co-regularized spectral clustering: alternating exact eigen-updates of
/// the coupled objective sum_v tr(U_v' L_v U_v) + lambda * pairwise
/// agreement; labels come from k-means on view 0's embedding.
ClusterResult coreg_spectral_fit_predict(const MultiviewDataset& ds, const ClusterParams& params,
                                         const AffinityParams& affinity);

/// Plain single-matrix k-means (k-means++ seeding, Lloyd updates, best of
/// n_init restarts). Used by the spectral methods and exposed for reuse.
ClusterResult kmeans_fit_predict(const Eigen::MatrixXd& x, const ClusterParams& params);

/// RBF affinity with median-heuristic gamma when none is given, or a
/// symmetric k-nearest-neighbor graph.
Eigen::MatrixXd build_affinity(const Eigen::MatrixXd& x, const AffinityParams& params);

/// Top-n_components eigenvectors of D^{-1/2} W D^{-1/2}, leading first,
/// column signs fixed.
Eigen::MatrixXd laplacian_embedding(const Eigen::MatrixXd& affinity, Eigen::Index n_components);

}  // namespace mvkit
