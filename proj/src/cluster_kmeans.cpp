#include <Eigen/Dense>
#include <limits>
#include <string>

#include "mvkit/cluster.hpp"
#include "mvkit/linalg.hpp"
#include "mvkit/random.hpp"

namespace mvkit {

namespace {

void check_params(const ClusterParams& p, Eigen::Index n) {
    if (p.n_clusters < 1) throw BadParams("n_clusters must be >= 1");
    if (p.n_clusters > n)
        throw BadParams("n_clusters " + std::to_string(p.n_clusters) + " exceeds n_samples " +
                        std::to_string(n));
    if (p.max_iter < 1) throw BadParams("max_iter must be >= 1");
    if (p.n_init < 1) throw BadParams("n_init must be >= 1");
}

// squared Euclidean distances, rows of x vs rows of c
Eigen::MatrixXd sq_dist_to(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c) {
    Eigen::MatrixXd d = -2.0 * x * c.transpose();
    d.colwise() += x.rowwise().squaredNorm();
    d.rowwise() += c.rowwise().squaredNorm().transpose();
    return d.cwiseMax(0.0);
}

Eigen::VectorXi assign_rows(const Eigen::MatrixXd& dist) {
    Eigen::VectorXi labels(dist.rows());
    for (Eigen::Index i = 0; i < dist.rows(); ++i) {
        Eigen::Index at;
        dist.row(i).minCoeff(&at);
        labels(i) = static_cast<int>(at);
    }
    return labels;
}

// k-means++ seeding; returns the chosen centroid rows
Eigen::MatrixXd kmeanspp(const Eigen::MatrixXd& x, Eigen::Index k, Rng& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centroids(k, x.cols());
    centroids.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd best = (x.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (Eigen::Index c = 1; c < k; ++c) {
        const double total = best.sum();
        Eigen::Index pick;
        if (total <= 0) {
            pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        } else {
            double target = rng.uniform() * total;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                target -= best(i);
                if (target <= 0) {
                    pick = i;
                    break;
                }
            }
        }
        centroids.row(c) = x.row(pick);
        best = best.cwiseMin((x.rowwise() - centroids.row(c)).rowwise().squaredNorm());
    }
    return centroids;
}

// recompute centroids; empty clusters are reseeded to the sample farthest
// from its assigned centroid
void update_centroids(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                      Eigen::MatrixXd& centroids) {
    const Eigen::Index k = centroids.rows();
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        sums.row(labels(i)) += x.row(i);
        counts(labels(i)) += 1.0;
    }
    std::vector<Eigen::Index> empties;
    for (Eigen::Index c = 0; c < k; ++c) {
        if (counts(c) > 0)
            centroids.row(c) = sums.row(c) / counts(c);
        else
            empties.push_back(c);
    }
    for (Eigen::Index c : empties) {
        double worst = -1.0;
        Eigen::Index pick = 0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const double d = (x.row(i) - centroids.row(labels(i))).squaredNorm();
            if (d > worst) {
                worst = d;
                pick = i;
            }
        }
        centroids.row(c) = x.row(pick);
    }
}

// mean pairwise squared distance via sum_{i,j} |xi-xj|^2 = 2n sum_i |xi - mean|^2
double mean_pairwise_sq_dist(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    if (n < 2) return 1.0;
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const double ss = (x.rowwise() - mean).rowwise().squaredNorm().sum();
    const double m = 2.0 * ss / static_cast<double>(n - 1);
    return m > 0 ? m : 1.0;
}

}  // namespace

ClusterResult kmeans_fit_predict(const Eigen::MatrixXd& x, const ClusterParams& params) {
    check_params(params, x.rows());
    const Eigen::Index k = params.n_clusters;

    ClusterResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < params.n_init; ++restart) {
        Rng rng = Rng::keyed(params.seed, static_cast<std::uint64_t>(restart));
        Eigen::MatrixXd centroids = kmeanspp(x, k, rng);
        Eigen::VectorXi labels = assign_rows(sq_dist_to(x, centroids));
        int it = 1;
        bool converged = false;
        for (; it <= params.max_iter; ++it) {
            update_centroids(x, labels, centroids);
            Eigen::VectorXi next = assign_rows(sq_dist_to(x, centroids));
            if ((next.array() == labels.array()).all()) {
                converged = true;
                break;
            }
            labels = std::move(next);
        }
        double objective = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            objective += (x.row(i) - centroids.row(labels(i))).squaredNorm();
        if (objective < best.objective) {
            best.labels = labels;
            best.centroids = {centroids};
            best.objective = objective;
            best.n_iter = it;
            best.converged = converged;
        }
    }
    return best;
}

ClusterResult mv_kmeans_fit_predict(const MultiviewDataset& ds, const ClusterParams& params) {
    if (ds.n_views() != 2)
        throw ViewCountError("mv_kmeans: expected 2 views, got " + std::to_string(ds.n_views()));
    check_params(params, ds.n_samples());
    const Eigen::MatrixXd& x1 = ds.view(0);
    const Eigen::MatrixXd& x2 = ds.view(1);
    const Eigen::Index k = params.n_clusters;
    const double norm1 = mean_pairwise_sq_dist(x1);
    const double norm2 = mean_pairwise_sq_dist(x2);

    ClusterResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < params.n_init; ++restart) {
        Rng rng = Rng::keyed(params.seed, static_cast<std::uint64_t>(restart));
        Eigen::MatrixXd c2 = kmeanspp(x2, k, rng);  // seed in the second view
        Eigen::MatrixXd c1(k, x1.cols());
        Eigen::VectorXi labels = assign_rows(sq_dist_to(x2, c2));
        update_centroids(x1, labels, c1);

        int it = 0;
        bool converged = false;
        Eigen::VectorXi prev = labels;
        for (it = 1; it <= params.max_iter; ++it) {
            // half-iteration: assign in view 1, recompute view 2's centroids
            labels = assign_rows(sq_dist_to(x1, c1));
            update_centroids(x2, labels, c2);
            // half-iteration: assign in view 2, recompute view 1's centroids
            labels = assign_rows(sq_dist_to(x2, c2));
            update_centroids(x1, labels, c1);
            if ((labels.array() == prev.array()).all()) {
                converged = true;
                break;
            }
            prev = labels;
        }

        // consensus assignment over both views, scale-normalized
        Eigen::MatrixXd combined = sq_dist_to(x1, c1) / norm1 + sq_dist_to(x2, c2) / norm2;
        Eigen::VectorXi final_labels = assign_rows(combined);
        double objective = 0.0;
        for (Eigen::Index i = 0; i < combined.rows(); ++i)
            objective += combined(i, final_labels(i));

        if (objective < best.objective) {
            best.labels = std::move(final_labels);
            best.centroids = {c1, c2};
            best.objective = objective;
            best.n_iter = it;
            best.converged = converged;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// spherical variant: unit-norm rows/centroids, distance = 1 - cosine
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd normalize_rows_strict(const Eigen::MatrixXd& x, std::size_t view) {
    Eigen::MatrixXd out = x;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm == 0.0)
            throw ZeroRow("mv_spherical_kmeans: sample " + std::to_string(i) + " of view " +
                          std::to_string(view) + " has zero norm");
        out.row(i) /= norm;
    }
    return out;
}

// 1 - cosine distances for unit-norm rows
Eigen::MatrixXd cos_dist_to(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c) {
    return (1.0 - (x * c.transpose()).array()).max(0.0).matrix();
}

void update_centroids_spherical(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                Eigen::MatrixXd& centroids) {
    update_centroids(x, labels, centroids);
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        const double norm = centroids.row(c).norm();
        if (norm > 0) centroids.row(c) /= norm;
    }
}

double mean_pairwise_cos_dist(const Eigen::MatrixXd& unit_rows) {
    const Eigen::Index n = unit_rows.rows();
    if (n < 2) return 1.0;
    // mean over ordered pairs i != j of (1 - xi.xj)
    const double sum_sq = unit_rows.colwise().sum().squaredNorm();
    const double mean_cos =
        (sum_sq - static_cast<double>(n)) / (static_cast<double>(n) * (n - 1));
    const double m = 1.0 - mean_cos;
    return m > 0 ? m : 1.0;
}

}  // namespace

ClusterResult mv_spherical_kmeans_fit_predict(const MultiviewDataset& ds,
                                              const ClusterParams& params) {
    if (ds.n_views() != 2)
        throw ViewCountError("mv_spherical_kmeans: expected 2 views, got " +
                             std::to_string(ds.n_views()));
    check_params(params, ds.n_samples());
    const Eigen::MatrixXd x1 = normalize_rows_strict(ds.view(0), 0);
    const Eigen::MatrixXd x2 = normalize_rows_strict(ds.view(1), 1);
    const Eigen::Index k = params.n_clusters;
    const double norm1 = mean_pairwise_cos_dist(x1);
    const double norm2 = mean_pairwise_cos_dist(x2);

    ClusterResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < params.n_init; ++restart) {
        Rng rng = Rng::keyed(params.seed, static_cast<std::uint64_t>(restart));
        Eigen::MatrixXd c2 = kmeanspp(x2, k, rng);  // unit rows already
        Eigen::MatrixXd c1(k, x1.cols());
        Eigen::VectorXi labels = assign_rows(cos_dist_to(x2, c2));
        update_centroids_spherical(x1, labels, c1);

        int it = 0;
        bool converged = false;
        Eigen::VectorXi prev = labels;
        for (it = 1; it <= params.max_iter; ++it) {
            labels = assign_rows(cos_dist_to(x1, c1));
            update_centroids_spherical(x2, labels, c2);
            labels = assign_rows(cos_dist_to(x2, c2));
            update_centroids_spherical(x1, labels, c1);
            if ((labels.array() == prev.array()).all()) {
                converged = true;
                break;
            }
            prev = labels;
        }

        Eigen::MatrixXd combined = cos_dist_to(x1, c1) / norm1 + cos_dist_to(x2, c2) / norm2;
        Eigen::VectorXi final_labels = assign_rows(combined);
        double objective = 0.0;
        for (Eigen::Index i = 0; i < combined.rows(); ++i)
            objective += combined(i, final_labels(i));

        if (objective < best.objective) {
            best.labels = std::move(final_labels);
            best.centroids = {c1, c2};
            best.objective = objective;
            best.n_iter = it;
            best.converged = converged;
        }
    }
    return best;
}

}  // namespace mvkit
