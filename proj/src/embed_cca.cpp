#include <Eigen/Dense>
#include <string>

#include "mvkit/embed.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/metrics.hpp"
#include "mvkit/validation.hpp"

namespace mvkit {

CcaModel cca_fit(const MultiviewDataset& ds, Eigen::Index n_components, double regularization) {
    if (ds.n_views() != 2)
        throw ViewCountError("cca_fit: expected 2 views, got " + std::to_string(ds.n_views()));
    if (regularization < 0) throw BadParams("cca_fit: regularization must be >= 0");
    const Eigen::Index n = ds.n_samples();
    const Eigen::Index d1 = ds.view(0).cols(), d2 = ds.view(1).cols();
    const Eigen::Index max_r = std::min({d1, d2, n - 1});
    if (n_components < 1 || n_components > max_r)
        throw RankError("cca_fit: n_components " + std::to_string(n_components) +
                        " out of range [1, " + std::to_string(max_r) + "]");

    ScaledDataset centered = center_scale(ds, true, false);
    const Eigen::MatrixXd& x1 = centered.data.view(0);
    const Eigen::MatrixXd& x2 = centered.data.view(1);
    const double denom = static_cast<double>(n - 1);

    Eigen::MatrixXd s11 = x1.transpose() * x1 / denom;
    Eigen::MatrixXd s22 = x2.transpose() * x2 / denom;
    const Eigen::MatrixXd s12 = x1.transpose() * x2 / denom;
    s11.diagonal().array() += regularization;
    s22.diagonal().array() += regularization;

    const Eigen::MatrixXd s11_isqrt = inverse_sqrt_spd(
        s11, "cca_fit: within-view covariance of view 0 is rank deficient; "
             "pass regularization > 0");
    const Eigen::MatrixXd s22_isqrt = inverse_sqrt_spd(
        s22, "cca_fit: within-view covariance of view 1 is rank deficient; "
             "pass regularization > 0");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s11_isqrt * s12 * s22_isqrt,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);

    CcaModel model;
    model.n_components = n_components;
    model.weights = {s11_isqrt * svd.matrixU().leftCols(n_components),
                     s22_isqrt * svd.matrixV().leftCols(n_components)};
    model.correlations =
        svd.singularValues().head(n_components).cwiseMin(1.0).cwiseMax(0.0);
    model.means = centered.means;
    // paired sign fix keyed on view 0 keeps score correlations positive
    for (Eigen::Index j = 0; j < n_components; ++j) {
        Eigen::Index at;
        model.weights[0].col(j).cwiseAbs().maxCoeff(&at);
        if (model.weights[0](at, j) < 0) {
            model.weights[0].col(j) *= -1;
            model.weights[1].col(j) *= -1;
        }
    }
    model.state.fitted = true;
    return model;
}

std::vector<Eigen::MatrixXd> cca_transform(const CcaModel& model, const MultiviewDataset& ds) {
    model.state.require_fitted("cca_transform");
    if (ds.n_views() != model.weights.size())
        throw ViewCountError("cca_transform: model has " + std::to_string(model.weights.size()) +
                             " views, data has " + std::to_string(ds.n_views()));
    std::vector<Eigen::MatrixXd> scores;
    scores.reserve(ds.n_views());
    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        if (ds.view(v).cols() != model.weights[v].rows())
            throw ShapeMismatch("cca_transform: view " + std::to_string(v) + " has " +
                                std::to_string(ds.view(v).cols()) + " features, expected " +
                                std::to_string(model.weights[v].rows()));
        scores.push_back((ds.view(v).rowwise() - model.means[v]) * model.weights[v]);
    }
    return scores;
}

CcaModel mcca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                  std::vector<double> regularization, double tol, int max_iter) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("mcca_fit: expected at least 2 views, got " + std::to_string(k));
    if (regularization.empty()) regularization.assign(k, 0.0);
    if (regularization.size() == 1) regularization.assign(k, regularization[0]);
    if (regularization.size() != k)
        throw BadParams("mcca_fit: regularization needs one value per view");
    for (double lam : regularization)
        if (lam < 0) throw BadParams("mcca_fit: regularization must be >= 0");

    const Eigen::Index n = ds.n_samples();
    Eigen::Index max_r = n - 1;
    for (std::size_t v = 0; v < k; ++v) max_r = std::min(max_r, ds.view(v).cols());
    if (n_components < 1 || n_components > max_r)
        throw RankError("mcca_fit: n_components " + std::to_string(n_components) +
                        " out of range [1, " + std::to_string(max_r) + "]");

    ScaledDataset centered = center_scale(ds, true, false);
    std::vector<Eigen::MatrixXd> x;  // deflated working copies
    x.reserve(k);
    for (std::size_t v = 0; v < k; ++v) x.push_back(centered.data.view(v));
    const double denom = static_cast<double>(n - 1);

    CcaModel model;
    model.n_components = n_components;
    model.means = centered.means;
    model.correlations.resize(n_components);
    model.weights.resize(k);
    for (std::size_t v = 0; v < k; ++v)
        model.weights[v].resize(ds.view(v).cols(), n_components);
    model.converged = true;

    for (Eigen::Index comp = 0; comp < n_components; ++comp) {
        // covariance blocks of the current (deflated) data; the within-view
        // solve uses a pseudo-inverse restricted to the data's row space so
        // deflation-induced rank deficiency is harmless
        std::vector<Eigen::MatrixXd> bpinv(k);
        std::vector<std::vector<Eigen::MatrixXd>> cross(k, std::vector<Eigen::MatrixXd>(k));
        for (std::size_t v = 0; v < k; ++v) {
            Eigen::MatrixXd b = x[v].transpose() * x[v] / denom;
            b.diagonal().array() += regularization[v];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
            if (es.info() != Eigen::Success)
                throw NumericalFailure("mcca_fit: eigendecomposition failed for view " +
                                       std::to_string(v));
            const Eigen::VectorXd& ev = es.eigenvalues();
            const double floor = ev.cwiseAbs().maxCoeff() * 1e-12;
            Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                if (ev(i) > floor) inv(i) = 1.0 / ev(i);
            bpinv[v] = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
            for (std::size_t u = 0; u < k; ++u)
                if (u != v) cross[v][u] = x[v].transpose() * x[u] / denom;
        }

        auto b_norm = [&](std::size_t v, const Eigen::VectorXd& w) {
            const Eigen::VectorXd b = x[v].transpose() * (x[v] * w) / denom;
            return std::sqrt(std::max(0.0, w.dot(b) + regularization[v] * w.squaredNorm()));
        };

        // deterministic init: leading principal axis of each view
        std::vector<Eigen::VectorXd> w(k);
        for (std::size_t v = 0; v < k; ++v) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x[v].transpose() * x[v] / denom);
            if (es.info() != Eigen::Success)
                throw NumericalFailure("mcca_fit: eigendecomposition failed for view " +
                                       std::to_string(v));
            w[v] = es.eigenvectors().rightCols<1>();
            const double norm = b_norm(v, w[v]);
            if (norm <= 0)
                throw NumericalFailure("mcca_fit: view " + std::to_string(v) +
                                       " has no variance left at component " +
                                       std::to_string(comp));
            w[v] /= norm;
        }

        bool comp_converged = false;
        for (int it = 0; it < max_iter && !comp_converged; ++it) {
            double max_change = 0.0;
            for (std::size_t v = 0; v < k; ++v) {
                Eigen::VectorXd target = Eigen::VectorXd::Zero(x[v].cols());
                for (std::size_t u = 0; u < k; ++u)
                    if (u != v) target += cross[v][u] * w[u];
                Eigen::VectorXd wn = bpinv[v] * target;
                const double norm = b_norm(v, wn);
                if (norm <= 1e-300) continue;  // degenerate direction, keep previous
                wn /= norm;
                max_change = std::max(max_change, (wn - w[v]).cwiseAbs().maxCoeff());
                w[v] = std::move(wn);
            }
            comp_converged = max_change < tol;
        }
        if (!comp_converged) model.converged = false;

        // global sign keyed on view 0 (flipping all views preserves SUMCOR)
        Eigen::Index at;
        w[0].cwiseAbs().maxCoeff(&at);
        if (w[0](at) < 0)
            for (std::size_t v = 0; v < k; ++v) w[v] = -w[v];

        std::vector<Eigen::VectorXd> scores(k);
        for (std::size_t v = 0; v < k; ++v) {
            scores[v] = x[v] * w[v];
            model.weights[v].col(comp) = w[v];
        }
        double corr_sum = 0.0;
        int pairs = 0;
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t v = u + 1; v < k; ++v) {
                corr_sum += pearson(scores[u], scores[v]);
                ++pairs;
            }
        model.correlations(comp) = std::min(1.0, std::max(0.0, corr_sum / pairs));

        // deflate each view against its own score vector
        for (std::size_t v = 0; v < k; ++v) {
            const double ss = scores[v].squaredNorm();
            if (ss > 0) x[v] -= scores[v] * (scores[v].transpose() * x[v]) / ss;
        }
    }
    model.state.fitted = true;
    return model;
}

}  // namespace mvkit
