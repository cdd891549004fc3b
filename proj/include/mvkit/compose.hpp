#pragma once

#include <cstdint>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

struct SubspaceSpec {
    std::size_t n_views = 2;
    Eigen::Index subset_size = 1;
    std::uint64_t seed = 0;
};

struct ProjectionSpec {
    std::size_t n_views = 2;
    Eigen::Index n_components = 1;
    std::uint64_t seed = 0;
};

/// random_subspace output: the views plus the column indices each one drew.
struct SubspaceResult {
    MultiviewDataset data;
    std::vector<std::vector<Eigen::Index>> column_indices;
};

/// n_views column subsets of X, each of subset_size columns sampled
/// uniformly without replacement (independently per view, so views may
/// overlap). Deterministic given (shape of X, spec).
SubspaceResult random_subspace(const ViewMatrix& x, const SubspaceSpec& spec);

/// n_views Gaussian random projections X * R_v; entries of R_v are iid
/// N(0, 1/n_components) so squared norms are preserved in expectation.
MultiviewDataset random_gaussian_projection(const ViewMatrix& x, const ProjectionSpec& spec);

/// Horizontal concatenation of all views in order.
ViewMatrix concat_views(const MultiviewDataset& ds);

/// Split columns at the given strictly increasing interior boundaries into
/// m+1 contiguous views. boundaries must satisfy 0 < b_1 < ... < b_m < cols.
MultiviewDataset split_features(const ViewMatrix& x, const std::vector<Eigen::Index>& boundaries);

}  // namespace mvkit
