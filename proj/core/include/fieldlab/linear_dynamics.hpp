#ifndef FIELDLAB_LINEAR_DYNAMICS_HPP
#define FIELDLAB_LINEAR_DYNAMICS_HPP

#include <vector>

#include "fieldlab/symplectic.hpp"

namespace fieldlab {

/// H(eta) = 1/2 eta^T F eta with F symmetric over phase coordinates.
class QuadraticHamiltonian {
public:
    QuadraticHamiltonian(LatticePtr lattice, const Eigen::MatrixXd& form_matrix);

    /// Decoupled oscillators: H = 1/2 sum_i mu_i (pi_i^2 + omega_i^2 phi_i^2).
    static QuadraticHamiltonian oscillator(LatticePtr lattice, const Eigen::VectorXd& omegas);

    /// Nearest-neighbour chain, periodic, spacing a:
    /// H = 1/2 sum mu (pi^2 + ((phi_{i+1}-phi_i)/a)^2 + m^2 phi^2).
    static QuadraticHamiltonian klein_gordon_chain(LatticePtr lattice, double mass,
                                                   double spacing);

    const LatticePtr& lattice() const { return lattice_; }
    const Eigen::MatrixXd& form_matrix() const { return form_; }

    double value(const PhaseVector& eta) const;

private:
    LatticePtr lattice_;
    Eigen::MatrixXd form_;
};

/// The generator of linear evolution, anti-self-adjoint with respect to Omega.
class GeneratorOperator {
public:
    GeneratorOperator(LatticePtr lattice, const Eigen::MatrixXd& matrix);

    const LatticePtr& lattice() const { return lattice_; }
    const Eigen::MatrixXd& matrix() const { return mat_; }

    /// Residual of the Omega-anti-self-adjointness identity H^T Om + Om H = 0.
    double anti_self_adjoint_residual() const;

private:
    LatticePtr lattice_;
    Eigen::MatrixXd mat_;
};

/// Raise an index of the form matrix with Omega: eta' = G^-1 S F eta, the
/// coordinate form of Hamilton's equations.
GeneratorOperator build_generator(const QuadraticHamiltonian& h);

/// Inverse of build_generator, recovering the symmetric form matrix.
QuadraticHamiltonian hamiltonian_from_generator(const GeneratorOperator& gen);

/// U(t) = exp(H t).
Eigen::MatrixXd evolve_linear(const GeneratorOperator& gen, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseVector> states;
    std::vector<double> energies;
};

/// Stoermer-Verlet integration of Hamilton's equations; requires the form
/// matrix to have no phi-pi cross block (kinetic/potential splitting).
Trajectory integrate_hamilton(const QuadraticHamiltonian& h, const PhaseVector& eta0,
                              double t, double dt);

}  // namespace fieldlab

#endif
