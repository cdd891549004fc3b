#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvkit/types.hpp"

namespace mvkit {

/// Synthetic multiview generator: latent z (standard normal, or a spherical
/// Gaussian mixture when n_clusters > 0) pushed through per-view orthonormal
/// loadings plus isotropic noise.
struct SyntheticSpec {
    Eigen::Index n_samples = 100;
    Eigen::Index latent_dim = 2;
    std::vector<Eigen::Index> view_dims = {10, 10};
    double noise_sigma = 0.0;
    Eigen::Index n_clusters = 0;  // 0 = continuous latent
    double separation = 1.0;      // pairwise distance between mixture centers
    std::uint64_t seed = 0;
};

struct SyntheticData {
    MultiviewDataset data;            // labels attached when n_clusters > 0
    Eigen::MatrixXd latent;           // n x latent_dim ground truth
    std::optional<Eigen::VectorXi> labels;
};

SyntheticData make_latent_views(const SyntheticSpec& spec);

/// On-disk layout: one CSV per view, optional labels.csv, and manifest.json
/// listing view files in order plus n_samples and the header flag.
struct DatasetManifest {
    std::vector<std::string> view_files;
    std::optional<std::string> labels_file;
    Eigen::Index n_samples = 0;
    bool header = false;
};

/// Load a dataset directory. Uses manifest.json when present, otherwise the
/// convention view_*.csv (lexicographic) + optional labels.csv.
MultiviewDataset load_multiview_dir(const std::filesystem::path& dir);

/// Write one CSV per view (17 significant digits), labels.csv when labeled,
/// and manifest.json. Refuses to overwrite existing files unless force.
DatasetManifest save_multiview_dir(const MultiviewDataset& ds, const std::filesystem::path& dir,
                                   bool force = false);

}  // namespace mvkit
