#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

// ---------------------------------------------------------------------------
// CCA family
// ---------------------------------------------------------------------------

/// Fitted linear CCA-style model: one weight matrix per view plus the
/// canonical correlations, non-increasing and clipped to [0, 1] on report.
/// Sign convention: per component, the largest-magnitude entry of the first
/// view's weight column is positive and the paired columns of the other
/// views flip with it, so reported correlations stay positive.
struct CcaModel {
    std::vector<Eigen::MatrixXd> weights;   // d_v x r per view
    Eigen::VectorXd correlations;           // length r
    std::vector<Eigen::RowVectorXd> means;  // training column means per view
    Eigen::Index n_components = 0;
    bool converged = true;                  // Horst iteration flag (mcca)
    FitState state;
};

/// Two-view CCA solved by SVD of S11^{-1/2} S12 S22^{-1/2} on centered data.
/// regularization (lambda >= 0) is added to both within-view covariances;
/// with lambda = 0 rank-deficient data raises NumericalFailure.
CcaModel cca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                 double regularization = 0.0);

/// Canonical scores (view - training mean) * W_v for both views.
std::vector<Eigen::MatrixXd> cca_transform(const CcaModel& model, const MultiviewDataset& ds);

/// Multiview CCA maximizing the sum of pairwise score correlations (SUMCOR)
/// by Horst alternating updates; later components come from deflating each
/// view against its own previous scores. regularization may be empty (all
/// zero), a single value, or one value per view. A model that hits max_iter
/// with changes above tol is returned with converged = false.
CcaModel mcca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                  std::vector<double> regularization = {}, double tol = 1e-6,
                  int max_iter = 500);

// ---------------------------------------------------------------------------
// Kernel MCCA
// ---------------------------------------------------------------------------

struct KernelSpec {
    enum class Kind { linear, polynomial, rbf };
    Kind kind = Kind::linear;
    int degree = 3;         // polynomial: (x.y + coef0)^degree
    double coef0 = 1.0;
    double gamma = 1.0;     // rbf: exp(-gamma ||x-y||^2), must be > 0
    double regularization = 0.1;  // epsilon in the (K + eps I)^2 constraint
};

/// Dual (kernel) MCCA model; keeps the training views for out-of-sample
/// kernel evaluation.
struct KmccaModel {
    std::vector<Eigen::MatrixXd> dual_coefs;   // n x r per view
    std::vector<Eigen::MatrixXd> train_views;
    std::vector<Eigen::RowVectorXd> gram_col_means;  // centering stats per view
    std::vector<double> gram_means;
    Eigen::VectorXd score_scales;              // flattened per view x component
    Eigen::VectorXd correlations;
    Eigen::VectorXd eigenvalues;
    KernelSpec kernel;
    Eigen::Index n_components = 0;
    FitState state;

    Eigen::Index n_views() const { return static_cast<Eigen::Index>(dual_coefs.size()); }
};

/// Kernel MCCA via the generalized eigenproblem A a = lambda B a with
/// off-diagonal blocks K_v K_u and block-diagonal constraint (K_v + eps I)^2
/// on centered Gram matrices.
KmccaModel kmcca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                     const KernelSpec& kernel);

std::vector<Eigen::MatrixXd> kmcca_transform(const KmccaModel& model, const MultiviewDataset& ds);

/// Centered Gram matrix K - 1K - K1 + 1K1 (1 = all-ones/n). Exposed for
/// tests; rows and columns of the result sum to zero.
Eigen::MatrixXd center_gram(const Eigen::MatrixXd& gram);

/// Kernel evaluation between the rows of a and b.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const KernelSpec& kernel);

// ---------------------------------------------------------------------------
// Generalized CCA
// ---------------------------------------------------------------------------

struct GccaModel {
    std::vector<Eigen::MatrixXd> view_bases;   // U_v, n x r_v orthonormal
    Eigen::MatrixXd joint;                     // G, n x r orthonormal
    std::vector<Eigen::MatrixXd> projections;  // d_v x r least-squares maps onto G
    std::vector<Eigen::RowVectorXd> means;
    std::vector<Eigen::Index> view_ranks;
    Eigen::Index n_components = 0;
    FitState state;
};

/// Per-view rank-truncated SVD bases stacked column-wise; the top left
/// singular vectors of the stack give the joint projection G. Ranks come
/// from rank_tolerance (cumulative squared singular value fraction, default
/// 0.999) unless explicit per-view ranks are given.
GccaModel gcca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                   double rank_tolerance = 0.999,
                   const std::vector<Eigen::Index>& explicit_ranks = {});

/// Per-view estimates of the joint coordinates for new data.
std::vector<Eigen::MatrixXd> gcca_transform(const GccaModel& model, const MultiviewDataset& ds);

/// One view's truncated SVD stage (orthonormal score basis + chosen rank).
/// Pure per-view function; callable in any order across views.
std::pair<Eigen::MatrixXd, Eigen::Index> gcca_view_basis(const Eigen::MatrixXd& centered,
                                                         double rank_tolerance,
                                                         Eigen::Index explicit_rank = -1);

// ---------------------------------------------------------------------------
// Distance-based embeddings
// ---------------------------------------------------------------------------

/// Multiview MDS: common components of the per-view double-centered squared
/// distance matrices, extracted stepwise with deflation. Returns n x r with
/// orthonormal columns.
Eigen::MatrixXd mvmds_fit_transform(const MultiviewDataset& ds, Eigen::Index n_components);

struct OmnibusResult {
    std::vector<Eigen::MatrixXd> embeddings;  // per view, n x d_embed
    Eigen::VectorXd eigenvalues;              // the d_embed eigenvalues used
};

/// Omnibus embedding: joint eigendecomposition of the kn x kn block matrix
/// of per-view distance matrices (off-diagonal blocks are pairwise block
/// averages); rows scaled by sqrt|eigenvalue| and sliced back per view.
OmnibusResult omnibus_fit_transform(const MultiviewDataset& ds, Eigen::Index d_embed);

/// Pairwise Euclidean distance matrix of the rows of x (exactly symmetric).
Eigen::MatrixXd euclidean_distances(const Eigen::MatrixXd& x);

}  // namespace mvkit
