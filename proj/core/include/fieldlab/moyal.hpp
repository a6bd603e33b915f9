#ifndef FIELDLAB_MOYAL_HPP
#define FIELDLAB_MOYAL_HPP

#include <map>
#include <utility>
#include <vector>

#include "fieldlab/complex_structure.hpp"
#include "fieldlab/numerics.hpp"

namespace fieldlab {

/// Finite complex-linear combination of Weyl generators W(eta), eta a dual
/// phase vector. Keys are canonically rounded at 1e-12 so eta + eta'
/// collisions merge deterministically; zero coefficients are purged.
class WeylElement {
public:
    explicit WeylElement(LatticePtr lattice);

    /// alpha * W(eta).
    static WeylElement generator(const PhaseVector& eta, Complex alpha = 1.0);
    static WeylElement unit(LatticePtr lattice);  // W(0)
    static WeylElement zero(LatticePtr lattice);

    const LatticePtr& lattice() const { return lattice_; }
    int term_count() const { return static_cast<int>(terms_.size()); }
    const std::map<std::vector<double>, Complex>& terms() const { return terms_; }

    void add_term(const PhaseVector& eta, Complex alpha);

    WeylElement operator+(const WeylElement& other) const;
    WeylElement scaled(Complex factor) const;

    /// Value of the element as a function on phase space:
    /// sum alpha_k exp(i eta_k(psi)), with eta(psi) the weighted pairing.
    Complex evaluate(const PhaseVector& psi) const;

    bool approx_equal(const WeylElement& other, double tol) const;

private:
    LatticePtr lattice_;
    std::map<std::vector<double>, Complex> terms_;
};

/// Weighted dual pairing eta(psi) = sum_i mu_i (f_i phi_i + g_i pi_i).
double dual_pairing(const PhaseVector& eta, const PhaseVector& psi);

/// Bilinear extension of W(eta) * W(eta') = exp(-i/2 Omega(eta,eta')) W(eta+eta').
WeylElement weyl_star(const WeylElement& a, const WeylElement& b);

/// Conjugate coefficients, negate generators: (W(eta))^* = W(-eta).
WeylElement weyl_involution(const WeylElement& a);

/// (lower, upper) bounds on the supremum norm: upper = sum |alpha|, lower by
/// sampled evaluation over random phase vectors.
std::pair<double, double> sup_norm_bounds(const WeylElement& a, int sample_count,
                                          Rng& rng);

/// Polynomial function of the phase coordinates: exponent multi-index over
/// the 2N coordinates -> complex coefficient.
class PolynomialObservable {
public:
    explicit PolynomialObservable(LatticePtr lattice);

    static PolynomialObservable constant(LatticePtr lattice, Complex c);
    static PolynomialObservable coordinate(LatticePtr lattice, int coord);
    static PolynomialObservable phi(LatticePtr lattice, int site);
    static PolynomialObservable pi(LatticePtr lattice, int site);

    const LatticePtr& lattice() const { return lattice_; }
    const std::map<std::vector<int>, Complex>& monomials() const { return monos_; }
    int degree() const;
    double max_coefficient() const;

    void add_monomial(const std::vector<int>& exponents, Complex coeff);

    PolynomialObservable operator+(const PolynomialObservable& other) const;
    PolynomialObservable operator-(const PolynomialObservable& other) const;
    PolynomialObservable operator*(const PolynomialObservable& other) const;
    PolynomialObservable scaled(Complex factor) const;
    PolynomialObservable pow(int exponent) const;

    PolynomialObservable derivative(int coord) const;

    Complex evaluate(const PhaseVector& psi) const;

    /// Substitution of one polynomial per coordinate.
    PolynomialObservable compose(const std::vector<PolynomialObservable>& map) const;

private:
    LatticePtr lattice_;
    std::map<std::vector<int>, Complex> monos_;
};

/// The star-product series, terminating at n = min(deg p, deg q).
PolynomialObservable moyal_star_poly(const PolynomialObservable& p,
                                     const PolynomialObservable& q);

/// Quasi-free state with characteristic functional
/// E(W(eta)) = exp(i eta(mean) - 1/4 <eta,eta>_J).
class GaussianState {
public:
    GaussianState(PhaseVector mean, ComplexStructure j);

    const PhaseVector& mean() const { return mean_; }
    const ComplexStructure& structure() const { return j_; }

    Complex characteristic(const PhaseVector& eta) const;

private:
    PhaseVector mean_;
    ComplexStructure j_;
};

/// Linear extension of the characteristic functional to the Weyl algebra.
Complex gaussian_expect(const GaussianState& state, const WeylElement& a);

/// Dense order-n moment tensor; indices run over the 2N phase coordinates,
/// components carry the 1/mu Riesz scaling of the Frechet gradient.
struct NPointTensor {
    int order;
    int dim;
    std::vector<Complex> data;  // row-major over (dim)^order

    Complex at(const std::vector<int>& idx) const;
};

/// (-i)^n-th Frechet derivative of the characteristic functional at eta = 0,
/// n in 1..4.
NPointTensor n_point(const GaussianState& state, int order);

/// Gamma(U): W(eta) -> W(U eta), extended linearly. U must be linear and
/// symplectic; for nonlinear U no such automorphism exists and the call is
/// rejected.
WeylElement linear_automorphism(const SymplecticMap& u, const WeylElement& a);

/// A polynomial phase-space map: one polynomial per coordinate.
using PolynomialMap = std::vector<PolynomialObservable>;

PolynomialMap polynomial_map_identity(const LatticePtr& lattice);

/// Max coefficient of (f o U) * (g o U) - (f * g) o U; zero for linear
/// symplectic U, reported verbatim for nonlinear U.
double star_covariance_residual(const PolynomialObservable& f, const PolynomialObservable& g,
                                const PolynomialMap& u);

}  // namespace fieldlab

#endif
