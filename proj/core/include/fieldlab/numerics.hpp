#ifndef FIELDLAB_NUMERICS_HPP
#define FIELDLAB_NUMERICS_HPP

#include <random>

#include <Eigen/Dense>

namespace fieldlab {

/// exp(A) by scaling-and-squaring with the order-13 Pade approximant.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a);
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

/// Positive square root of a symmetric positive semidefinite matrix.
/// Eigenvalues closer than `group_tol` are averaged before the root is taken,
/// so near-degenerate clusters stay exactly degenerate.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a, double group_tol = 1e-10);

/// Inverse positive square root, same eigenvalue grouping.
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a, double group_tol = 1e-10);

/// Deterministic RNG for sampled property checks.
using Rng = std::mt19937_64;

Eigen::VectorXd random_vector(Rng& rng, int n, double scale = 1.0);
Eigen::VectorXcd random_complex_vector(Rng& rng, int n, double scale = 1.0);
Eigen::MatrixXd random_symmetric(Rng& rng, int n, double scale = 1.0);

}  // namespace fieldlab

#endif
