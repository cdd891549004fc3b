#include <Eigen/Dense>
#include <Eigen/SVD>
#include <string>

#include "mvkit/decompose.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/random.hpp"
#include "mvkit/validation.hpp"

namespace mvkit {

GroupPcaResult group_pca_fit_transform(const MultiviewDataset& ds,
                                       const std::vector<Eigen::Index>& individual_ranks,
                                       Eigen::Index n_components) {
    const std::size_t k = ds.n_views();
    if (individual_ranks.size() != k)
        throw BadParams("group_pca: individual_ranks needs one entry per view");
    const Eigen::Index n = ds.n_samples();

    ScaledDataset centered = center_scale(ds, true, false);

    GroupPcaResult result;
    result.means = centered.means;
    result.view_components.resize(k);
    Eigen::Index total = 0;
    for (std::size_t v = 0; v < k; ++v) {
        const Eigen::Index max_rank = std::min(n, ds.view(v).cols());
        if (individual_ranks[v] < 1 || individual_ranks[v] > max_rank)
            throw RankError("group_pca: rank " + std::to_string(individual_ranks[v]) +
                            " of view " + std::to_string(v) + " out of range [1, " +
                            std::to_string(max_rank) + "]");
        total += individual_ranks[v];
    }
    if (n_components < 1 || n_components > total)
        throw RankError("group_pca: n_components " + std::to_string(n_components) +
                        " out of range [1, " + std::to_string(total) + "]");

    Eigen::MatrixXd reduced(n, total);
    Eigen::Index at = 0;
    for (std::size_t v = 0; v < k; ++v) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(centered.data.view(v), Eigen::ComputeThinV);
        result.view_components[v] = svd.matrixV().leftCols(individual_ranks[v]);
        reduced.middleCols(at, individual_ranks[v]) =
            centered.data.view(v) * result.view_components[v];
        at += individual_ranks[v];
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(reduced, Eigen::ComputeThinU);
    result.scores = svd.matrixU().leftCols(n_components) *
                    svd.singularValues().head(n_components).asDiagonal();
    fix_column_signs(result.scores);
    result.explained_variance = svd.singularValues()
                                    .head(n_components)
                                    .array()
                                    .square()
                                    .matrix() /
                                static_cast<double>(n - 1);

    // least-squares loadings of each centered view on the (orthogonal) scores
    result.loadings.resize(k);
    for (std::size_t v = 0; v < k; ++v) {
        result.loadings[v].resize(ds.view(v).cols(), n_components);
        for (Eigen::Index j = 0; j < n_components; ++j) {
            const double ss = result.scores.col(j).squaredNorm();
            result.loadings[v].col(j) =
                centered.data.view(v).transpose() * result.scores.col(j) / (ss > 0 ? ss : 1.0);
        }
    }
    return result;
}

IcaResult group_ica_fit(const MultiviewDataset& ds, const IcaParams& params) {
    const Eigen::Index r = params.n_components;
    GroupPcaResult pca = group_pca_fit_transform(ds, params.individual_ranks, r);
    const Eigen::Index n = ds.n_samples();

    // whiten: group score columns are orthogonal, so scaling to unit sample
    // variance gives identity covariance
    Eigen::VectorXd scales(r);
    Eigen::MatrixXd z(n, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        const double sd =
            std::sqrt(pca.scores.col(j).squaredNorm() / static_cast<double>(n - 1));
        if (sd <= 0)
            throw RankError("group_ica: component " + std::to_string(j) +
                            " of the group scores has zero variance");
        scales(j) = 1.0 / sd;
        z.col(j) = pca.scores.col(j) * scales(j);
    }

    // symmetric FastICA with tanh contrast
    auto orthonormalize = [](const Eigen::MatrixXd& w) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w * w.transpose());
        if (es.info() != Eigen::Success)
            throw NumericalFailure("group_ica: symmetric decorrelation failed");
        Eigen::MatrixXd isqrt = es.eigenvectors() *
                                es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
                                es.eigenvectors().transpose();
        return Eigen::MatrixXd(isqrt * w);
    };

    Rng rng = Rng::keyed(params.seed, 0);
    Eigen::MatrixXd w = orthonormalize(rng.gaussian(r, r));

    bool converged = false;
    int it = 0;
    for (it = 1; it <= params.max_iter; ++it) {
        const Eigen::MatrixXd wx = z * w.transpose();          // n x r source estimates
        const Eigen::ArrayXXd th = wx.array().tanh();          // contrast g
        const Eigen::VectorXd g_prime_mean = (1.0 - th.square()).colwise().mean().transpose();
        Eigen::MatrixXd w_new =
            (th.matrix().transpose() * z) / static_cast<double>(n) - g_prime_mean.asDiagonal() * w;
        w_new = orthonormalize(w_new);
        // row-wise change, invariant to sign flips
        double change = 0.0;
        for (Eigen::Index i = 0; i < r; ++i)
            change = std::max(change, std::abs(1.0 - std::abs(w_new.row(i).dot(w.row(i)))));
        w = std::move(w_new);
        if (change < params.tol) {
            converged = true;
            break;
        }
    }

    IcaResult result;
    result.pca = std::move(pca);
    result.whitening_scales = scales;
    result.converged = converged;
    result.n_iter = std::min(it, params.max_iter);
    result.sources = z * w.transpose();
    // deterministic orientation: largest-magnitude entry of each source positive
    for (Eigen::Index j = 0; j < r; ++j) {
        Eigen::Index at;
        result.sources.col(j).cwiseAbs().maxCoeff(&at);
        if (result.sources(at, j) < 0) {
            result.sources.col(j) *= -1;
            w.row(j) *= -1;
        }
    }
    result.unmixing = w;

    ScaledDataset centered = center_scale(ds, true, false);
    result.mixing.resize(ds.n_views());
    for (std::size_t v = 0; v < ds.n_views(); ++v)
        result.mixing[v] = centered.data.view(v).transpose() * result.sources /
                           static_cast<double>(n - 1);
    return result;
}

}  // namespace mvkit
