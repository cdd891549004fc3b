#include "mvkit/compose.hpp"

#include <string>
#include <utility>

#include "mvkit/random.hpp"

namespace mvkit {

namespace {

void check_source(const ViewMatrix& x) {
    if (x.data.rows() < 1 || x.data.cols() < 1) throw EmptyInput("compose: empty source matrix");
    if (!x.data.allFinite()) throw NonFinite("compose: source matrix contains NaN or inf");
}

}  // namespace

SubspaceResult random_subspace(const ViewMatrix& x, const SubspaceSpec& spec) {
    check_source(x);
    const Eigen::Index d = x.data.cols();
    if (spec.n_views < 1) throw BadSpec("random_subspace: n_views must be >= 1");
    if (spec.subset_size < 1 || spec.subset_size > d)
        throw BadSpec("random_subspace: subset_size " + std::to_string(spec.subset_size) +
                      " out of range [1, " + std::to_string(d) + "]");

    std::vector<ViewMatrix> views;
    std::vector<std::vector<Eigen::Index>> indices;
    views.reserve(spec.n_views);
    indices.reserve(spec.n_views);
    for (std::size_t v = 0; v < spec.n_views; ++v) {
        Rng rng = Rng::keyed(spec.seed, v);
        auto cols = rng.sample_without_replacement(d, spec.subset_size);
        Eigen::MatrixXd sub(x.data.rows(), spec.subset_size);
        std::vector<std::string> names;
        if (!x.feature_names.empty()) names.reserve(cols.size());
        for (Eigen::Index j = 0; j < spec.subset_size; ++j) {
            sub.col(j) = x.data.col(cols[static_cast<std::size_t>(j)]);
            if (!x.feature_names.empty())
                names.push_back(x.feature_names[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])]);
        }
        views.emplace_back(std::move(sub), std::move(names));
        indices.push_back(std::move(cols));
    }
    return SubspaceResult{MultiviewDataset(std::move(views)), std::move(indices)};
}

MultiviewDataset random_gaussian_projection(const ViewMatrix& x, const ProjectionSpec& spec) {
    check_source(x);
    if (spec.n_views < 1) throw BadSpec("random_gaussian_projection: n_views must be >= 1");
    if (spec.n_components < 1) throw BadSpec("random_gaussian_projection: n_components must be >= 1");

    const double sd = 1.0 / std::sqrt(static_cast<double>(spec.n_components));
    std::vector<ViewMatrix> views;
    views.reserve(spec.n_views);
    for (std::size_t v = 0; v < spec.n_views; ++v) {
        Rng rng = Rng::keyed(spec.seed, v);
        Eigen::MatrixXd r = rng.gaussian(x.data.cols(), spec.n_components) * sd;
        views.emplace_back(x.data * r);
    }
    return MultiviewDataset(std::move(views));
}

ViewMatrix concat_views(const MultiviewDataset& ds) {
    Eigen::Index width = 0;
    for (std::size_t v = 0; v < ds.n_views(); ++v) width += ds.view(v).cols();
    Eigen::MatrixXd out(ds.n_samples(), width);
    std::vector<std::string> names;
    bool all_named = true;
    for (std::size_t v = 0; v < ds.n_views(); ++v)
        all_named = all_named && !ds.view_matrix(v).feature_names.empty();
    Eigen::Index at = 0;
    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        out.middleCols(at, ds.view(v).cols()) = ds.view(v);
        at += ds.view(v).cols();
        if (all_named)
            names.insert(names.end(), ds.view_matrix(v).feature_names.begin(),
                         ds.view_matrix(v).feature_names.end());
    }
    return ViewMatrix(std::move(out), std::move(names));
}

MultiviewDataset split_features(const ViewMatrix& x, const std::vector<Eigen::Index>& boundaries) {
    check_source(x);
    const Eigen::Index d = x.data.cols();
    Eigen::Index prev = 0;
    for (Eigen::Index b : boundaries) {
        if (b <= prev || b >= d)
            throw BadBoundaries("split_features: boundary " + std::to_string(b) +
                                " not strictly inside (" + std::to_string(prev) + ", " +
                                std::to_string(d) + ")");
        prev = b;
    }
    std::vector<ViewMatrix> views;
    views.reserve(boundaries.size() + 1);
    Eigen::Index start = 0;
    auto take = [&](Eigen::Index stop) {
        Eigen::MatrixXd block = x.data.middleCols(start, stop - start);
        std::vector<std::string> names;
        if (!x.feature_names.empty())
            names.assign(x.feature_names.begin() + start, x.feature_names.begin() + stop);
        views.emplace_back(std::move(block), std::move(names));
        start = stop;
    };
    for (Eigen::Index b : boundaries) take(b);
    take(d);
    return MultiviewDataset(std::move(views));
}

}  // namespace mvkit
