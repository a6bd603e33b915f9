#ifndef FIELDLAB_COMPLEX_STRUCTURE_HPP
#define FIELDLAB_COMPLEX_STRUCTURE_HPP

#include <string>

#include "fieldlab/linear_dynamics.hpp"

namespace fieldlab {

struct CompatibilityReport {
    double square_residual = 0.0;     // |J^2 + 1|_max
    double symplectic_residual = 0.0; // |J^T Om J - Om|_max
    double positivity_min = 0.0;      // min eigenvalue of sym(J^T Om)
    bool square_ok = false;
    bool symplectic_ok = false;
    bool positive_ok = false;
    bool pass = false;

    std::string to_json() const;
};

CompatibilityReport check_compatibility(const SpatialLattice& lattice, const Eigen::MatrixXd& j,
                                        double tol = 1e-12);

/// A symplectic-compatible complex structure; validated on construction.
class ComplexStructure {
public:
    ComplexStructure(LatticePtr lattice, const Eigen::MatrixXd& matrix, double tol = 1e-12);

    /// The standard per-site structure (phi,pi) -> (pi,-phi).
    static ComplexStructure standard(LatticePtr lattice);

    const LatticePtr& lattice() const { return lattice_; }
    const Eigen::MatrixXd& matrix() const { return mat_; }

    PhaseVector apply(const PhaseVector& eta) const;

private:
    LatticePtr lattice_;
    Eigen::MatrixXd mat_;
};

/// J = H/|H| with |H| the positive square root of H^dag H (Omega-adjoint),
/// valid when the Hamiltonian form is positive definite and the generator
/// invertible. Commutes with exp(H t) by construction.
ComplexStructure polar_complex_structure(const GeneratorOperator& gen);

/// <eta,eta'> = Omega(J eta, eta') - i Omega(eta, eta').
Complex induced_inner_product(const ComplexStructure& j, const PhaseVector& a,
                              const PhaseVector& b);

/// The doubled-space data of the positive-frequency construction, in the
/// complex representation z = a + i b of (a,b) in Phi x Phi.
struct ComplexificationSplit {
    Eigen::MatrixXcd projector;  // P onto the positive-frequency eigenspace
    ComplexStructure jtilde;     // extracted via P = (1 - i Jt)/2
};

ComplexificationSplit positive_frequency_split(const GeneratorOperator& gen);

/// Hermitian form <z,w> = -i z^H Omega w on the complexified phase space.
Complex doubled_inner(const SpatialLattice& lattice, const Eigen::VectorXcd& z,
                      const Eigen::VectorXcd& w);

}  // namespace fieldlab

#endif
