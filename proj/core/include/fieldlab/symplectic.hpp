#ifndef FIELDLAB_SYMPLECTIC_HPP
#define FIELDLAB_SYMPLECTIC_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fieldlab/lattice.hpp"

namespace fieldlab {

/// A point of phase space: a (field, momentum) pair over one lattice.
/// Phase coordinates are ordered (phi_0..phi_{N-1}, pi_0..pi_{N-1}).
class PhaseVector {
public:
    PhaseVector(FieldFunction phi, FieldFunction pi);
    PhaseVector(LatticePtr lattice, const Eigen::VectorXd& coords);

    static PhaseVector zero(LatticePtr lattice);

    const FieldFunction& phi() const { return phi_; }
    const FieldFunction& pi() const { return pi_; }
    const LatticePtr& lattice() const { return phi_.lattice(); }
    int sites() const { return phi_.size(); }

    /// Stacked coordinates (phi; pi).
    Eigen::VectorXd coords() const;
    double norm() const;

    PhaseVector operator+(const PhaseVector& other) const;
    PhaseVector operator-(const PhaseVector& other) const;
    PhaseVector scaled(double factor) const;
    PhaseVector operator-() const { return scaled(-1.0); }

private:
    FieldFunction phi_;
    FieldFunction pi_;
};

void require_same_lattice(const PhaseVector& a, const PhaseVector& b);

/// Omega(a,b) = sum_i mu_i (phi_i pi'_i - pi_i phi'_i).
double omega(const PhaseVector& a, const PhaseVector& b);

/// Matrix of Omega in phase coordinates: [[0, M],[-M, 0]] with M = diag(mu).
Eigen::MatrixXd omega_matrix(const SpatialLattice& lattice);

/// Contravariant form used by Poisson brackets and the Moyal series:
/// [[0, M^-1],[-M^-1, 0]].
Eigen::MatrixXd omega_inverse_matrix(const SpatialLattice& lattice);

/// The dual-to-phase map (phi, pi) -> (pi, -phi); squares to -identity.
PhaseVector omega_map(const PhaseVector& eta);

/// A scalar observable on phase space. `gradient`, when present, returns the
/// Euclidean coordinate partials (length 2N); otherwise centered finite
/// differences with step h = 1e-5 (1 + |eta|) are used.
struct Observable {
    std::function<double(const PhaseVector&)> value;
    std::function<Eigen::VectorXd(const PhaseVector&)> gradient;

    Eigen::VectorXd gradient_at(const PhaseVector& eta) const;
};

Observable coordinate_phi(int site);
Observable coordinate_pi(int site);

/// {f,g}(eta) = sum_i (1/mu_i) (d_phi_i f d_pi_i g - d_pi_i f d_phi_i g),
/// the weighted-pairing reading of Omega(grad f, grad g).
double poisson_bracket(const Observable& f, const Observable& g, const PhaseVector& eta);

/// A (possibly nonlinear) phase-space map. `derivative`, when present, gives
/// the 2N x 2N Jacobian in phase coordinates; otherwise centered finite
/// differences are used.
struct SymplecticMap {
    std::function<PhaseVector(const PhaseVector&)> apply;
    std::function<Eigen::MatrixXd(const PhaseVector&)> derivative;
    bool is_linear = false;

    static SymplecticMap linear(LatticePtr lattice, const Eigen::MatrixXd& matrix);

    Eigen::MatrixXd derivative_at(const PhaseVector& eta) const;
};

struct SymplectomorphismReport {
    std::vector<double> residuals;  // per sample: max |DU^T Omega DU - Omega|
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    std::string to_json() const;
};

SymplectomorphismReport is_symplectomorphism(const SymplecticMap& map,
                                             const std::vector<PhaseVector>& samples,
                                             double tol);

}  // namespace fieldlab

#endif
