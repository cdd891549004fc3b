#pragma once

#include <Eigen/Dense>
#include <string>

#include "mvkit/errors.hpp"

namespace mvkit {

/// Inverse symmetric square root of an SPD matrix via eigendecomposition.
/// Throws NumericalFailure with the given message when the matrix is not
/// numerically positive definite.
inline Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& m, const std::string& on_singular) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("inverse_sqrt_spd: eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double floor = ev.size() ? std::abs(ev(ev.size() - 1)) * 1e-12 : 0.0;
    if (ev(0) <= floor) throw NumericalFailure(on_singular);
    return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

/// Flip each column so its largest-magnitude entry is positive.
inline void fix_column_signs(Eigen::MatrixXd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index at;
        m.col(j).cwiseAbs().maxCoeff(&at);
        if (m(at, j) < 0) m.col(j) *= -1;
    }
}

/// Eigenpairs of a symmetric matrix sorted by descending eigenvalue.
struct EigDescending {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

inline EigDescending sym_eig_descending(const Eigen::MatrixXd& m, const std::string& stage) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw NumericalFailure(stage + ": eigendecomposition failed");
    const Eigen::Index n = m.rows();
    EigDescending out;
    out.values = es.eigenvalues().reverse();
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
    return out;
}

/// Pairwise squared Euclidean distances between the rows of x, exactly
/// symmetric with a zero diagonal.
inline Eigen::MatrixXd pairwise_sq_distances(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (x.row(i) - x.row(j)).squaredNorm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

}  // namespace mvkit
