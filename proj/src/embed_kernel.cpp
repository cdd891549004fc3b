#include <Eigen/Dense>
#include <string>

#include "mvkit/embed.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/metrics.hpp"

namespace mvkit {

namespace {

void check_kernel(const KernelSpec& k) {
    if (k.kind == KernelSpec::Kind::rbf && k.gamma <= 0)
        throw KernelError("rbf kernel needs gamma > 0");
    if (k.kind == KernelSpec::Kind::polynomial && k.degree < 1)
        throw KernelError("polynomial kernel needs degree >= 1");
    if (k.regularization < 0 || k.regularization > 1)
        throw KernelError("kernel regularization must lie in [0, 1]");
}

}  // namespace

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const KernelSpec& kernel) {
    switch (kernel.kind) {
        case KernelSpec::Kind::linear:
            return a * b.transpose();
        case KernelSpec::Kind::polynomial:
            return ((a * b.transpose()).array() + kernel.coef0).pow(kernel.degree).matrix();
        case KernelSpec::Kind::rbf: {
            Eigen::MatrixXd g(a.rows(), b.rows());
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < b.rows(); ++j)
                    g(i, j) = std::exp(-kernel.gamma * (a.row(i) - b.row(j)).squaredNorm());
            return g;
        }
    }
    throw KernelError("unknown kernel kind");
}

Eigen::MatrixXd center_gram(const Eigen::MatrixXd& gram) {
    const Eigen::VectorXd row_means = gram.rowwise().mean();
    const Eigen::RowVectorXd col_means = gram.colwise().mean();
    const double grand = col_means.mean();
    Eigen::MatrixXd c = gram;
    c.colwise() -= row_means;
    c.rowwise() -= col_means;
    c.array() += grand;
    return (c + c.transpose()) / 2.0;  // enforce exact symmetry
}

KmccaModel kmcca_fit(const MultiviewDataset& ds, Eigen::Index n_components,
                     const KernelSpec& kernel) {
    check_kernel(kernel);
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("kmcca_fit: expected at least 2 views, got " + std::to_string(k));
    const Eigen::Index n = ds.n_samples();
    if (n_components < 1 || n_components > n)
        throw RankError("kmcca_fit: n_components " + std::to_string(n_components) +
                        " out of range [1, " + std::to_string(n) + "]");

    const double eps = kernel.regularization;
    std::vector<Eigen::MatrixXd> grams(k);
    std::vector<Eigen::RowVectorXd> raw_col_means(k);
    std::vector<double> raw_means(k);
    for (std::size_t v = 0; v < k; ++v) {
        const Eigen::MatrixXd raw = kernel_matrix(ds.view(v), ds.view(v), kernel);
        raw_col_means[v] = raw.colwise().mean();
        raw_means[v] = raw.mean();
        grams[v] = center_gram(raw);
    }

    // The generalized problem A a = lambda B a with B = diag((K_v + eps I)^2)
    // reduces to the ordinary symmetric problem on M = B^{-1/2} A B^{-1/2},
    // whose blocks F_v F_u with F_v = K_v (K_v + eps I)^{-1} stay well
    // conditioned (eigenvalue factors mu/(mu + eps) in [0, 1]).
    std::vector<Eigen::MatrixXd> filter(k), dual_map(k);
    for (std::size_t v = 0; v < k; ++v) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(grams[v]);
        if (es.info() != Eigen::Success)
            throw NumericalFailure("kmcca_fit: Gram eigendecomposition failed for view " +
                                   std::to_string(v));
        const Eigen::VectorXd& mu = es.eigenvalues();
        const double floor = mu.cwiseAbs().maxCoeff() * 1e-12;
        if (eps <= 0 && mu.minCoeff() <= floor)
            throw NumericalFailure(
                "kmcca_fit: centered Gram matrix of view " + std::to_string(v) +
                " is singular; a kernel regularization > 0 is required");
        Eigen::VectorXd f(mu.size()), inv(mu.size());
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            const double m = std::max(mu(i), 0.0);
            f(i) = m / (m + eps);
            inv(i) = (m + eps) > 0 ? 1.0 / (m + eps) : 0.0;
        }
        filter[v] = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose();
        dual_map[v] = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    }

    const Eigen::Index kn = static_cast<Eigen::Index>(k) * n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(kn, kn);
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t u = v + 1; u < k; ++u) {
            const Eigen::MatrixXd block = filter[v] * filter[u];
            m.block(static_cast<Eigen::Index>(v) * n, static_cast<Eigen::Index>(u) * n, n, n) =
                block;
            m.block(static_cast<Eigen::Index>(u) * n, static_cast<Eigen::Index>(v) * n, n, n) =
                block.transpose();
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("kmcca_fit: eigensolve of the coupled system failed");

    KmccaModel model;
    model.kernel = kernel;
    model.n_components = n_components;
    model.eigenvalues.resize(n_components);
    model.dual_coefs.assign(k, Eigen::MatrixXd(n, n_components));
    model.train_views.reserve(k);
    for (std::size_t v = 0; v < k; ++v) model.train_views.push_back(ds.view(v));

    // per-view Gram centering statistics for out-of-sample evaluation
    model.gram_col_means = std::move(raw_col_means);
    model.gram_means = std::move(raw_means);

    std::vector<Eigen::MatrixXd> scores(k, Eigen::MatrixXd(n, n_components));
    model.score_scales.resize(static_cast<Eigen::Index>(k) * n_components);
    for (Eigen::Index comp = 0; comp < n_components; ++comp) {
        Eigen::VectorXd y = es.eigenvectors().col(kn - 1 - comp);
        model.eigenvalues(comp) = es.eigenvalues()(kn - 1 - comp);
        // global sign keyed on view 0
        Eigen::Index at;
        y.head(n).cwiseAbs().maxCoeff(&at);
        if (y(at) < 0) y = -y;
        for (std::size_t v = 0; v < k; ++v) {
            const Eigen::VectorXd yv = y.segment(static_cast<Eigen::Index>(v) * n, n);
            Eigen::VectorXd av = dual_map[v] * yv;    // alpha = (K + eps I)^{-1} y
            Eigen::VectorXd s = filter[v] * yv;       // score = K alpha, well conditioned
            const double sd = std::sqrt(s.squaredNorm() / static_cast<double>(n - 1));
            const double scale = sd > 0 ? 1.0 / sd : 1.0;
            model.dual_coefs[v].col(comp) = av * scale;
            model.score_scales(static_cast<Eigen::Index>(v) * n_components + comp) = scale;
            scores[v].col(comp) = s * scale;
        }
    }

    model.correlations.resize(n_components);
    for (Eigen::Index comp = 0; comp < n_components; ++comp) {
        double corr = 0.0;
        int pairs = 0;
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t v = u + 1; v < k; ++v) {
                corr += pearson(scores[u].col(comp), scores[v].col(comp));
                ++pairs;
            }
        model.correlations(comp) = std::min(1.0, std::max(0.0, corr / pairs));
    }
    model.state.fitted = true;
    return model;
}

std::vector<Eigen::MatrixXd> kmcca_transform(const KmccaModel& model, const MultiviewDataset& ds) {
    model.state.require_fitted("kmcca_transform");
    if (static_cast<Eigen::Index>(ds.n_views()) != model.n_views())
        throw ViewCountError("kmcca_transform: view count mismatch");
    const Eigen::Index n_train = model.train_views[0].rows();
    std::vector<Eigen::MatrixXd> out;
    out.reserve(ds.n_views());
    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        if (ds.view(v).cols() != model.train_views[v].cols())
            throw ShapeMismatch("kmcca_transform: view " + std::to_string(v) +
                                " feature width mismatch");
        Eigen::MatrixXd knew = kernel_matrix(ds.view(v), model.train_views[v], model.kernel);
        // center against the training Gram statistics
        const Eigen::VectorXd new_row_means = knew.rowwise().mean();
        knew.colwise() -= new_row_means;
        knew.rowwise() -= model.gram_col_means[v];
        knew.array() += model.gram_means[v];
        out.push_back(knew * model.dual_coefs[v]);
        (void)n_train;
    }
    return out;
}

}  // namespace mvkit
