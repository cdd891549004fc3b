#include <Eigen/Dense>
#include <Eigen/SVD>
#include <string>

#include "mvkit/embed.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/validation.hpp"

namespace mvkit {

std::pair<Eigen::MatrixXd, Eigen::Index> gcca_view_basis(const Eigen::MatrixXd& centered,
                                                         double rank_tolerance,
                                                         Eigen::Index explicit_rank) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::Index max_rank = sv.size();
    Eigen::Index rank;
    if (explicit_rank >= 0) {
        if (explicit_rank < 1 || explicit_rank > max_rank)
            throw RankError("gcca: explicit rank " + std::to_string(explicit_rank) +
                            " out of range [1, " + std::to_string(max_rank) + "]");
        rank = explicit_rank;
    } else {
        const double total = sv.squaredNorm();
        if (total <= 0) throw NumericalFailure("gcca: a view has zero variance");
        double acc = 0.0;
        rank = max_rank;
        for (Eigen::Index i = 0; i < max_rank; ++i) {
            acc += sv(i) * sv(i);
            if (acc >= rank_tolerance * total) {
                rank = i + 1;
                break;
            }
        }
    }
    return {svd.matrixU().leftCols(rank), rank};
}

GccaModel gcca_fit(const MultiviewDataset& ds, Eigen::Index n_components, double rank_tolerance,
                   const std::vector<Eigen::Index>& explicit_ranks) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("gcca_fit: expected at least 2 views, got " + std::to_string(k));
    if (!explicit_ranks.empty() && explicit_ranks.size() != k)
        throw BadParams("gcca_fit: explicit ranks need one entry per view");
    if (rank_tolerance <= 0 || rank_tolerance > 1)
        throw BadParams("gcca_fit: rank_tolerance must lie in (0, 1]");
    if (n_components < 1) throw RankError("gcca_fit: n_components must be >= 1");

    ScaledDataset centered = center_scale(ds, true, false);

    GccaModel model;
    model.means = centered.means;
    model.n_components = n_components;
    model.view_bases.resize(k);
    model.view_ranks.resize(k);
    Eigen::Index total_rank = 0;
    for (std::size_t v = 0; v < k; ++v) {
        auto [basis, rank] = gcca_view_basis(centered.data.view(v), rank_tolerance,
                                             explicit_ranks.empty() ? -1 : explicit_ranks[v]);
        model.view_bases[v] = std::move(basis);
        model.view_ranks[v] = rank;
        total_rank += rank;
    }
    if (n_components > total_rank)
        throw RankError("gcca_fit: n_components " + std::to_string(n_components) +
                        " exceeds the stacked rank " + std::to_string(total_rank));

    Eigen::MatrixXd stacked(ds.n_samples(), total_rank);
    Eigen::Index at = 0;
    for (std::size_t v = 0; v < k; ++v) {
        stacked.middleCols(at, model.view_ranks[v]) = model.view_bases[v];
        at += model.view_ranks[v];
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU);
    model.joint = svd.matrixU().leftCols(n_components);
    fix_column_signs(model.joint);

    model.projections.resize(k);
    for (std::size_t v = 0; v < k; ++v)
        model.projections[v] =
            centered.data.view(v).completeOrthogonalDecomposition().solve(model.joint);
    model.state.fitted = true;
    return model;
}

std::vector<Eigen::MatrixXd> gcca_transform(const GccaModel& model, const MultiviewDataset& ds) {
    model.state.require_fitted("gcca_transform");
    if (ds.n_views() != model.projections.size())
        throw ViewCountError("gcca_transform: view count mismatch");
    std::vector<Eigen::MatrixXd> out;
    out.reserve(ds.n_views());
    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        if (ds.view(v).cols() != model.projections[v].rows())
            throw ShapeMismatch("gcca_transform: view " + std::to_string(v) +
                                " feature width mismatch");
        out.push_back((ds.view(v).rowwise() - model.means[v]) * model.projections[v]);
    }
    return out;
}

}  // namespace mvkit
