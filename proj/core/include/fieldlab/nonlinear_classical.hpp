#ifndef FIELDLAB_NONLINEAR_CLASSICAL_HPP
#define FIELDLAB_NONLINEAR_CLASSICAL_HPP

#include "fieldlab/linear_dynamics.hpp"

namespace fieldlab {

/// Lattice phi^4 Hamiltonian on a periodic chain:
/// H = 1/2 sum mu pi^2 + 1/2 sum mu ((phi_{i+1}-phi_i)/a)^2
///   + 1/2 m^2 sum mu phi^2 + lambda sum mu phi^4.
class FieldHamiltonian {
public:
    FieldHamiltonian(LatticePtr lattice, double mass, double coupling, double spacing);

    const LatticePtr& lattice() const { return lattice_; }
    double mass() const { return mass_; }
    double coupling() const { return coupling_; }
    double spacing() const { return spacing_; }

    double energy(const PhaseVector& eta) const;

    /// d phi_i/dt and d pi_i/dt of Hamilton's equations (weighted gradient).
    Eigen::VectorXd phi_velocity(const Eigen::VectorXd& pi) const;
    Eigen::VectorXd pi_velocity(const Eigen::VectorXd& phi) const;

    /// The quadratic part (lambda dropped), for cross-checks against the
    /// linear evolution.
    QuadraticHamiltonian quadratic_part() const;

private:
    LatticePtr lattice_;
    double mass_;
    double coupling_;
    double spacing_;
};

/// Stoermer-Verlet on the kinetic/potential splitting. Guards: dt <= a/2,
/// and |eta| > 1e8 aborts with a singular-trajectory error.
Trajectory nonlinear_evolve(const FieldHamiltonian& h, const PhaseVector& eta0, double t,
                            double dt);

/// Finite-difference Jacobian of the time-t flow tested against the
/// Omega-pullback identity. The differencing step is proportional to dt, so
/// the residual shrinks as dt^2; the stepper itself is symplectic exactly.
double flow_symplecticity(const FieldHamiltonian& h, const PhaseVector& eta0, double t,
                          double dt);

/// Lattice field momentum P = sum_i mu_i pi_i (phi_{i+1}-phi_{i-1})/(2a),
/// the discrete translation generator; constant along trajectories of a
/// translation-invariant Hamiltonian up to discretization order.
double field_momentum(const FieldHamiltonian& h, const PhaseVector& eta);

}  // namespace fieldlab

#endif
