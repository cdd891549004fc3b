#pragma once

#include <Eigen/Dense>

namespace mvkit {

/// Adjusted Rand index between two partitions of the same samples.
/// 1 iff the partitions are identical up to label permutation; values
/// near 0 for independent partitions; lower bound -0.5. Symmetric.
double adjusted_rand_index(const Eigen::VectorXi& a, const Eigen::VectorXi& b);

/// Fraction of exact matches between predicted and true values.
double accuracy_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Root mean squared error.
double rmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Sample Pearson correlation of two equally sized vectors; 0 when either
/// vector is constant.
double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace mvkit
