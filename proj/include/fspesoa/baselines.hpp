#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fspesoa/matrix.hpp"

namespace fspesoa {

/// Eigen pairs of a symmetric matrix, sorted by descending eigenvalue.
/// eigenvectors holds one unit vector per row, aligned with eigenvalues.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix, iterated until every
/// off-diagonal magnitude drops below `tolerance` or `max_sweeps` full sweeps.
/// Throws on non-convergence, reporting the final off-diagonal norm.
EigenDecomposition jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-12,
                                std::size_t max_sweeps = 100);

/// Covariance of the rows with population divisor n.
Matrix covariance(const Matrix& centered);

struct PcaModel {
    std::vector<double> mean;
    Matrix components;  // k x m, orthonormal rows
    std::vector<double> eigenvalues;
};

/// Principal components of the training rows. Sign convention: the
/// largest-magnitude entry of each component is positive.
PcaModel pca_fit(const Matrix& train, std::size_t k);
Matrix pca_transform(const PcaModel& model, const Matrix& features);

struct LdaModel {
    Matrix projection;  // k x m
    Matrix class_means;
    std::vector<double> global_mean;
    std::vector<double> eigenvalues;
    double regularization = 0.0;
};

/// Fisher discriminant directions: the top-k eigenvectors of the
/// within/between scatter problem, solved through a Cholesky-symmetrized
/// eigenproblem on the same Jacobi engine. Requires k <= C-1.
LdaModel lda_fit(const Matrix& train, const std::vector<int>& labels, std::size_t k);
Matrix lda_transform(const LdaModel& model, const Matrix& features);

void to_json(nlohmann::json& j, const PcaModel& model);
void from_json(const nlohmann::json& j, PcaModel& model);
void to_json(nlohmann::json& j, const LdaModel& model);
void from_json(const nlohmann::json& j, LdaModel& model);

}  // namespace fspesoa
