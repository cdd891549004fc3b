#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>

namespace mvkit {

/// Standalone SVG pairwise scatter matrix of up to the first 4 embedding
/// dimensions, color-keyed by labels when given. Deterministic bytes for a
/// given input. Throws RankError when the embedding has fewer than 2 columns.
std::string scatter_svg(const Eigen::MatrixXd& embedding,
                        const std::optional<Eigen::VectorXi>& labels = std::nullopt);

/// scatter_svg written to a file.
void emit_scatter_svg(const Eigen::MatrixXd& embedding,
                      const std::optional<Eigen::VectorXi>& labels,
                      const std::filesystem::path& out);

}  // namespace mvkit
