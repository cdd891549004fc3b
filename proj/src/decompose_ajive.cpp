#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <string>

#include "mvkit/decompose.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/random.hpp"
#include "mvkit/validation.hpp"

namespace mvkit {

namespace {

double quantile_of(std::vector<double> samples, double q) {
    std::sort(samples.begin(), samples.end());
    const double pos = q * static_cast<double>(samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] * (1.0 - frac) + samples[hi] * frac;
}

// unit vector orthogonal to the columns of basis, from a Gaussian draw
Eigen::VectorXd random_orthogonal_direction(const Eigen::MatrixXd& basis, Rng& rng) {
    Eigen::VectorXd g(basis.rows());
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.normal();
    g -= basis * (basis.transpose() * g);
    const double norm = g.norm();
    return norm > 0 ? Eigen::VectorXd(g / norm) : Eigen::VectorXd::Unit(basis.rows(), 0);
}

// smallest rank whose leading squared singular values reach `target` energy
Eigen::Index rank_for_energy(const Eigen::VectorXd& singular_values, double target) {
    if (target <= 0) return 0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        acc += singular_values(i) * singular_values(i);
        if (acc >= target) return i + 1;
    }
    return singular_values.size();
}

}  // namespace

AjiveResult ajive_fit(const MultiviewDataset& ds, const AjiveParams& params) {
    if (ds.n_views() != 2)
        throw ViewCountError("ajive_fit: expected 2 views, got " + std::to_string(ds.n_views()));
    if (params.initial_ranks.size() != 2)
        throw BadParams("ajive_fit: initial_ranks needs one entry per view");
    if (params.n_resamples < 1) throw BadParams("ajive_fit: n_resamples must be >= 1");
    if (params.quantile <= 0 || params.quantile >= 1)
        throw BadParams("ajive_fit: quantile must lie in (0, 1)");
    const Eigen::Index n = ds.n_samples();

    ScaledDataset centered = center_scale(ds, true, false);
    const std::size_t k = 2;
    std::vector<Eigen::MatrixXd> x(k), score_basis(k), loading_basis(k);
    std::vector<Eigen::VectorXd> all_sv(k);
    std::vector<double> sigma_min(k);
    for (std::size_t v = 0; v < k; ++v) {
        x[v] = centered.data.view(v);
        if (x[v].norm() == 0.0)
            throw DegenerateInput("ajive_fit: view " + std::to_string(v) + " has zero variance");
        const Eigen::Index rank = params.initial_ranks[v];
        const Eigen::Index max_rank = std::min(n, x[v].cols());
        if (rank < 1 || rank > max_rank)
            throw RankError("ajive_fit: initial rank " + std::to_string(rank) + " of view " +
                            std::to_string(v) + " out of range [1, " + std::to_string(max_rank) +
                            "]");
        Eigen::BDCSVD<Eigen::MatrixXd> svd(x[v], Eigen::ComputeThinU | Eigen::ComputeThinV);
        score_basis[v] = svd.matrixU().leftCols(rank);
        loading_basis[v] = svd.matrixV().leftCols(rank);
        all_sv[v] = svd.singularValues();
        sigma_min[v] = all_sv[v](rank - 1);
    }

    // stacked score bases and their squared singular values
    const Eigen::Index r1 = params.initial_ranks[0], r2 = params.initial_ranks[1];
    Eigen::MatrixXd stacked(n, r1 + r2);
    stacked.leftCols(r1) = score_basis[0];
    stacked.rightCols(r2) = score_basis[1];
    Eigen::BDCSVD<Eigen::MatrixXd> stack_svd(stacked, Eigen::ComputeThinU);
    const Eigen::VectorXd sv_sq = stack_svd.singularValues().array().square();

    // Wedin bound: per-view sin(theta) samples from residual projections on
    // random directions orthogonal to the retained bases
    const int draws = params.n_resamples;
    std::vector<double> wedin_sv_sq(static_cast<std::size_t>(draws));
    std::vector<std::vector<double>> sin_theta(
        k, std::vector<double>(static_cast<std::size_t>(draws)));
    for (std::size_t v = 0; v < k; ++v) {
        for (int i = 0; i < draws; ++i) {
            Rng rng = Rng::keyed(params.seed,
                                 (static_cast<std::uint64_t>(v) << 40) |
                                     static_cast<std::uint64_t>(i));
            const Eigen::VectorXd u_dir = random_orthogonal_direction(score_basis[v], rng);
            const Eigen::VectorXd v_dir = random_orthogonal_direction(loading_basis[v], rng);
            const double u_norm = (x[v].transpose() * u_dir).norm();
            const double v_norm = (x[v] * v_dir).norm();
            const double bound =
                sigma_min[v] > 0 ? std::max(u_norm, v_norm) / sigma_min[v] : 1.0;
            sin_theta[v][static_cast<std::size_t>(i)] = std::min(1.0, bound);
        }
    }
    for (int i = 0; i < draws; ++i) {
        double sum_sq = 0.0;
        for (std::size_t v = 0; v < k; ++v) {
            const double s = sin_theta[v][static_cast<std::size_t>(i)];
            sum_sq += s * s;
        }
        wedin_sv_sq[static_cast<std::size_t>(i)] = static_cast<double>(k) - sum_sq;
    }

    // random-direction bound: largest squared singular value of stacked
    // uniformly random bases of the same shapes
    std::vector<double> random_sv_sq(static_cast<std::size_t>(draws));
    for (int i = 0; i < draws; ++i) {
        Rng rng = Rng::keyed(params.seed,
                             (std::uint64_t{2} << 40) | static_cast<std::uint64_t>(i));
        Eigen::MatrixXd rand_stack(n, r1 + r2);
        Eigen::Index at = 0;
        for (std::size_t v = 0; v < k; ++v) {
            const Eigen::Index rv = params.initial_ranks[v];
            Eigen::MatrixXd g = rng.gaussian(n, rv);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
            rand_stack.middleCols(at, rv) =
                qr.householderQ() * Eigen::MatrixXd::Identity(n, rv);
            at += rv;
        }
        Eigen::BDCSVD<Eigen::MatrixXd> rs(rand_stack);
        random_sv_sq[static_cast<std::size_t>(i)] =
            rs.singularValues()(0) * rs.singularValues()(0);
    }

    AjiveResult result;
    result.means = centered.means;
    result.stacked_sv_sq = sv_sq;
    result.wedin_threshold = quantile_of(std::move(wedin_sv_sq), params.quantile);
    result.random_threshold = quantile_of(std::move(random_sv_sq), params.quantile);
    const double threshold = std::max(result.wedin_threshold, result.random_threshold);
    result.binding_bound =
        result.wedin_threshold >= result.random_threshold ? "wedin" : "random";

    Eigen::Index joint_rank = 0;
    for (Eigen::Index i = 0; i < sv_sq.size(); ++i)
        if (sv_sq(i) > threshold) ++joint_rank;
    joint_rank = std::min(joint_rank, std::min(r1, r2));
    result.joint_rank = joint_rank;
    result.common_scores = stack_svd.matrixU().leftCols(joint_rank);
    fix_column_signs(result.common_scores);

    for (std::size_t v = 0; v < k; ++v) {
        const Eigen::MatrixXd& g = result.common_scores;
        const Eigen::MatrixXd j_v = g * (g.transpose() * x[v]);
        const Eigen::MatrixXd residual = x[v] - j_v;

        const double initial_energy =
            all_sv[v].head(params.initial_ranks[v]).squaredNorm();
        const double joint_energy = j_v.squaredNorm();
        double target = std::max(0.0, initial_energy - joint_energy) * 0.95;
        if (target <= 1e-10 * initial_energy) target = 0.0;  // all signal is joint

        Eigen::BDCSVD<Eigen::MatrixXd> res_svd(residual,
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::Index ind_rank =
            std::min(rank_for_energy(res_svd.singularValues(), target),
                     params.initial_ranks[v]);
        Eigen::MatrixXd i_v = Eigen::MatrixXd::Zero(x[v].rows(), x[v].cols());
        if (ind_rank > 0)
            i_v = res_svd.matrixU().leftCols(ind_rank) *
                  res_svd.singularValues().head(ind_rank).asDiagonal() *
                  res_svd.matrixV().leftCols(ind_rank).transpose();

        result.joint.push_back(j_v);
        result.noise.push_back(x[v] - j_v - i_v);
        result.individual.push_back(std::move(i_v));
        result.individual_ranks.push_back(ind_rank);
    }
    return result;
}

}  // namespace mvkit
