#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "mvkit/cluster.hpp"
#include "mvkit/linalg.hpp"

namespace mvkit {

namespace {

double median_heuristic_gamma(const Eigen::MatrixXd& sq_dists) {
    const Eigen::Index n = sq_dists.rows();
    std::vector<double> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) upper.push_back(sq_dists(i, j));
    if (upper.empty()) return 1.0;
    const std::size_t mid = upper.size() / 2;
    std::nth_element(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(mid), upper.end());
    const double median_sq = upper[mid];
    return median_sq > 0 ? 1.0 / (2.0 * median_sq) : 1.0;
}

Eigen::MatrixXd row_normalized(const Eigen::MatrixXd& u) {
    Eigen::MatrixXd out = u;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm > 0) out.row(i) /= norm;
    }
    return out;
}

}  // namespace

Eigen::MatrixXd build_affinity(const Eigen::MatrixXd& x, const AffinityParams& params) {
    const Eigen::Index n = x.rows();
    const Eigen::MatrixXd sq = pairwise_sq_distances(x);
    if (params.kind == AffinityParams::Kind::rbf) {
        if (params.gamma && *params.gamma <= 0) throw BadParams("affinity: gamma must be > 0");
        const double gamma = params.gamma ? *params.gamma : median_heuristic_gamma(sq);
        return (-gamma * sq.array()).exp().matrix();
    }
    // symmetric k-nearest-neighbor graph (union of directed edges)
    if (params.n_neighbors < 1 || params.n_neighbors >= n)
        throw BadParams("affinity: n_neighbors must lie in [1, n_samples)");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (sq(i, a) != sq(i, b)) return sq(i, a) < sq(i, b);
            return a < b;
        });
        Eigen::Index added = 0;
        for (Eigen::Index j : order) {
            if (j == i) continue;
            w(i, j) = 1.0;
            if (++added == params.n_neighbors) break;
        }
    }
    return w.cwiseMax(w.transpose());
}

Eigen::MatrixXd laplacian_embedding(const Eigen::MatrixXd& affinity, Eigen::Index n_components) {
    const Eigen::Index n = affinity.rows();
    if (n_components < 1 || n_components > n)
        throw BadParams("laplacian_embedding: bad component count");
    Eigen::VectorXd inv_sqrt_deg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = affinity.row(i).sum();
        inv_sqrt_deg(i) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    Eigen::MatrixXd lap = inv_sqrt_deg.asDiagonal() * affinity * inv_sqrt_deg.asDiagonal();
    lap = (lap + lap.transpose()) / 2.0;
    EigDescending eig = sym_eig_descending(lap, "laplacian_embedding");
    Eigen::MatrixXd u = eig.vectors.leftCols(n_components);
    fix_column_signs(u);
    return u;
}

ClusterResult mv_spectral_fit_predict(const MultiviewDataset& ds, const ClusterParams& params,
                                      const AffinityParams& affinity) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("mv_spectral: expected at least 2 views, got " + std::to_string(k));
    const Eigen::Index n = ds.n_samples();
    if (n < params.n_clusters + 1)
        throw BadParams("mv_spectral: need at least n_clusters + 1 samples");
    if (affinity.info_iter < 0) throw BadParams("mv_spectral: info_iter must be >= 0");

    std::vector<Eigen::MatrixXd> w(k), u(k);
    for (std::size_t v = 0; v < k; ++v) {
        w[v] = build_affinity(ds.view(v), affinity);
        u[v] = laplacian_embedding(w[v], params.n_clusters);
    }

    // co-training rounds: project each view's affinity through another
    // view's current embedding (synchronous, round-robin partner)
    for (int round = 0; round < affinity.info_iter; ++round) {
        std::vector<Eigen::MatrixXd> w_next(k), u_next(k);
        for (std::size_t v = 0; v < k; ++v) {
            const std::size_t partner =
                (v + 1 + static_cast<std::size_t>(round) % (k - 1)) % k;
            const Eigen::MatrixXd proj = u[partner] * u[partner].transpose();
            Eigen::MatrixXd m = proj * w[v] * proj;
            w_next[v] = (m + m.transpose()) / 2.0;
            u_next[v] = laplacian_embedding(w_next[v], params.n_clusters);
        }
        w = std::move(w_next);
        u = std::move(u_next);
    }

    Eigen::MatrixXd stacked(n, static_cast<Eigen::Index>(k) * params.n_clusters);
    for (std::size_t v = 0; v < k; ++v)
        stacked.middleCols(static_cast<Eigen::Index>(v) * params.n_clusters, params.n_clusters) =
            u[v];
    ClusterResult final = kmeans_fit_predict(row_normalized(stacked), params);

    ClusterResult result;
    result.labels = std::move(final.labels);
    result.spectral_bases = std::move(u);
    result.n_iter = affinity.info_iter;
    result.objective = final.objective;
    result.converged = true;
    return result;
}

ClusterResult coreg_spectral_fit_predict(const MultiviewDataset& ds, const ClusterParams& params,
                                         const AffinityParams& affinity) {
    const std::size_t k = ds.n_views();
    if (k < 2)
        throw ViewCountError("coreg_spectral: expected at least 2 views, got " +
                             std::to_string(k));
    const Eigen::Index n = ds.n_samples();
    if (n < params.n_clusters + 1)
        throw BadParams("coreg_spectral: need at least n_clusters + 1 samples");
    const double lambda = affinity.coupling;
    if (lambda < 0) throw BadParams("coreg_spectral: coupling must be >= 0");

    std::vector<Eigen::MatrixXd> lap(k), u(k);
    for (std::size_t v = 0; v < k; ++v) {
        const Eigen::MatrixXd w = build_affinity(ds.view(v), affinity);
        Eigen::VectorXd inv_sqrt_deg(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = w.row(i).sum();
            inv_sqrt_deg(i) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
        }
        lap[v] = inv_sqrt_deg.asDiagonal() * w * inv_sqrt_deg.asDiagonal();
        lap[v] = (lap[v] + lap[v].transpose()) / 2.0;
        u[v] = laplacian_embedding(w, params.n_clusters);
    }

    auto objective = [&]() {
        double obj = 0.0;
        for (std::size_t v = 0; v < k; ++v) obj += (u[v].transpose() * lap[v] * u[v]).trace();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                obj += lambda * (u[a].transpose() * u[b]).squaredNorm();
        return obj;
    };

    std::vector<double> trace{objective()};
    int cycles = 0;
    bool converged = false;
    for (cycles = 1; cycles <= params.max_iter; ++cycles) {
        const double before = trace.back();
        for (std::size_t v = 0; v < k; ++v) {
            Eigen::MatrixXd m = lap[v];
            for (std::size_t o = 0; o < k; ++o)
                if (o != v) m.noalias() += lambda * (u[o] * u[o].transpose());
            m = (m + m.transpose()) / 2.0;
            EigDescending eig = sym_eig_descending(m, "coreg_spectral");
            u[v] = eig.vectors.leftCols(params.n_clusters);
            fix_column_signs(u[v]);
            trace.push_back(objective());
        }
        if (trace.back() - before < params.tol * std::max(1.0, std::abs(trace.back()))) {
            converged = true;
            break;
        }
    }

    ClusterResult final = kmeans_fit_predict(row_normalized(u[0]), params);

    ClusterResult result;
    result.labels = std::move(final.labels);
    result.spectral_bases = std::move(u);
    result.n_iter = cycles;
    result.objective = trace.back();
    result.converged = converged;
    result.objective_trace = std::move(trace);
    return result;
}

}  // namespace mvkit
