#pragma once

#include <optional>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

/// Validate a list of per-view matrices and assemble a dataset.
/// Rejects mismatched row counts (ShapeMismatch), NaN/inf entries
/// (NonFinite), empty inputs (EmptyInput) and, when require_k is given,
/// any other view count (ViewCountError). Ragged feature widths are fine.
MultiviewDataset validate_views(std::vector<ViewMatrix> views,
                                std::optional<std::size_t> require_k = std::nullopt,
                                Eigen::Index min_samples = 1);

/// Centered/scaled copy of a dataset plus the statistics needed to undo it.
struct ScaledDataset {
    MultiviewDataset data;
    std::vector<Eigen::RowVectorXd> means;   // what was subtracted
    std::vector<Eigen::RowVectorXd> scales;  // what columns were divided by
    std::vector<std::vector<Eigen::Index>> constant_columns;  // zero-variance, left at scale 1

    /// Reconstruct the original dataset from the stored statistics.
    MultiviewDataset inverse() const;
};

/// Column-wise centering and (optionally) scaling to unit sample standard
/// deviation (n-1 denominator). Zero-variance columns keep scale 1 and are
/// flagged in constant_columns rather than treated as errors.
ScaledDataset center_scale(const MultiviewDataset& ds, bool center = true,
                           bool unit_variance = false);

}  // namespace mvkit
