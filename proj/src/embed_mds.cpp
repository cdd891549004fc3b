#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <string>

#include "mvkit/embed.hpp"
#include "mvkit/linalg.hpp"

namespace mvkit {

Eigen::MatrixXd euclidean_distances(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd d = pairwise_sq_distances(x);
    return d.cwiseSqrt();
}

namespace {

// B = -1/2 J D2 J with J = I - 11^T/n (classical MDS double centering)
Eigen::MatrixXd double_center(const Eigen::MatrixXd& d2) {
    const Eigen::VectorXd row_means = d2.rowwise().mean();
    const double grand = row_means.mean();
    Eigen::MatrixXd b = -0.5 * d2;
    b.colwise() += 0.5 * row_means;
    b.rowwise() += 0.5 * row_means.transpose();
    b.array() -= 0.5 * grand;
    return (b + b.transpose()) / 2.0;
}

}  // namespace

Eigen::MatrixXd mvmds_fit_transform(const MultiviewDataset& ds, Eigen::Index n_components) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("mvmds: expected at least 2 views, got " + std::to_string(k));
    const Eigen::Index n = ds.n_samples();
    if (n < 3) throw RankError("mvmds: need at least 3 samples");
    if (n_components < 1 || n_components > n - 1)
        throw RankError("mvmds: n_components " + std::to_string(n_components) +
                        " out of range [1, " + std::to_string(n - 1) + "]");

    Eigen::MatrixXd summed = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t v = 0; v < k; ++v)
        summed += double_center(pairwise_sq_distances(ds.view(v)));

    Eigen::MatrixXd components(n, n_components);
    for (Eigen::Index comp = 0; comp < n_components; ++comp) {
        EigDescending eig = sym_eig_descending(summed, "mvmds");
        Eigen::VectorXd q = eig.vectors.col(0);
        Eigen::Index at;
        q.cwiseAbs().maxCoeff(&at);
        if (q(at) < 0) q = -q;
        components.col(comp) = q;
        // deflate on both sides; deflating the sum equals deflating each B_v
        const Eigen::VectorXd sq = summed * q;
        summed -= q * sq.transpose() + sq * q.transpose() - (q.dot(sq)) * (q * q.transpose());
        summed = (summed + summed.transpose()) / 2.0;
    }
    return components;
}

OmnibusResult omnibus_fit_transform(const MultiviewDataset& ds, Eigen::Index d_embed) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("omnibus: expected at least 2 views, got " + std::to_string(k));
    const Eigen::Index n = ds.n_samples();
    if (n < 3) throw RankError("omnibus: need at least 3 samples");
    const Eigen::Index kn = static_cast<Eigen::Index>(k) * n;
    if (d_embed < 1 || d_embed > kn)
        throw RankError("omnibus: d_embed " + std::to_string(d_embed) + " out of range [1, " +
                        std::to_string(kn) + "]");

    std::vector<Eigen::MatrixXd> dist(k);
    for (std::size_t v = 0; v < k; ++v) dist[v] = euclidean_distances(ds.view(v));

    Eigen::MatrixXd omni(kn, kn);
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t u = 0; u < k; ++u)
            omni.block(static_cast<Eigen::Index>(v) * n, static_cast<Eigen::Index>(u) * n, n, n) =
                v == u ? dist[v] : ((dist[v] + dist[u]) / 2.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(omni);
    if (es.info() != Eigen::Success) throw NumericalFailure("omnibus: eigendecomposition failed");

    // order by |eigenvalue| descending; ties broken toward the larger value
    std::vector<Eigen::Index> order(static_cast<std::size_t>(kn));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ma = std::abs(es.eigenvalues()(a)), mb = std::abs(es.eigenvalues()(b));
        if (ma != mb) return ma > mb;
        if (es.eigenvalues()(a) != es.eigenvalues()(b))
            return es.eigenvalues()(a) > es.eigenvalues()(b);
        return a < b;
    });

    OmnibusResult result;
    result.eigenvalues.resize(d_embed);
    Eigen::MatrixXd z(kn, d_embed);
    for (Eigen::Index j = 0; j < d_embed; ++j) {
        const Eigen::Index idx = order[static_cast<std::size_t>(j)];
        const double lambda = es.eigenvalues()(idx);
        result.eigenvalues(j) = lambda;
        Eigen::VectorXd vec = es.eigenvectors().col(idx);
        Eigen::Index at;
        vec.cwiseAbs().maxCoeff(&at);
        if (vec(at) < 0) vec = -vec;
        z.col(j) = vec * std::sqrt(std::abs(lambda));
    }
    result.embeddings.reserve(k);
    for (std::size_t v = 0; v < k; ++v)
        result.embeddings.push_back(z.middleRows(static_cast<Eigen::Index>(v) * n, n));
    return result;
}

}  // namespace mvkit
