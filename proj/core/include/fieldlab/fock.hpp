#ifndef FIELDLAB_FOCK_HPP
#define FIELDLAB_FOCK_HPP

#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fieldlab/lattice.hpp"

namespace fieldlab {

/// A quantum mode label: complex amplitudes over the d one-particle modes.
using ModeVector = Eigen::VectorXcd;

using SparseOp = Eigen::SparseMatrix<Complex>;

/// Occupation-number basis over d modes with total-particle cutoff N_max,
/// ordered graded-lexicographically. Basis size is C(d + N_max, N_max).
class FockSpace {
public:
    FockSpace(int modes, int cutoff);

    static std::shared_ptr<const FockSpace> make(int modes, int cutoff) {
        return std::make_shared<FockSpace>(modes, cutoff);
    }

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const std::vector<int>& occupation(int index) const { return basis_[index]; }
    int total_particles(int index) const { return totals_[index]; }
    /// -1 when the multi-index is outside the truncation.
    int index_of(const std::vector<int>& occupation) const;

    /// Single-mode ladder operators in the occupation basis.
    const SparseOp& mode_annihilator(int mode) const { return lowering_[mode]; }
    const SparseOp& mode_creator(int mode) const { return raising_[mode]; }

private:
    int modes_;
    int cutoff_;
    std::vector<std::vector<int>> basis_;
    std::vector<int> totals_;
    std::map<std::vector<int>, int> index_;
    std::vector<SparseOp> lowering_;
    std::vector<SparseOp> raising_;
};

using FockSpacePtr = std::shared_ptr<const FockSpace>;

/// A complex coefficient vector over the occupation basis.
class FockState {
public:
    FockState(FockSpacePtr space, Eigen::VectorXcd coefficients);

    static FockState vacuum(FockSpacePtr space);
    static FockState single_particle(FockSpacePtr space, const ModeVector& eta);
    static FockState basis_state(FockSpacePtr space, const std::vector<int>& occupation);

    const FockSpacePtr& space() const { return space_; }
    const Eigen::VectorXcd& coefficients() const { return coeffs_; }
    double norm() const { return coeffs_.norm(); }
    bool is_physical(double tol = 1e-10) const { return std::abs(norm() - 1.0) <= tol; }
    FockState normalized() const;

    Complex inner(const FockState& other) const;

private:
    FockSpacePtr space_;
    Eigen::VectorXcd coeffs_;
};

/// a_eta = sum conj(eta_mu) a_mu (antilinear in eta).
SparseOp annihilation_operator(const FockSpace& space, const ModeVector& eta);
/// a^dag_eta = sum eta_mu a^dag_mu; drops the top total-particle sector.
SparseOp creation_operator(const FockSpace& space, const ModeVector& eta);

FockState annihilate(const ModeVector& eta, const FockState& psi);
FockState create(const ModeVector& eta, const FockState& psi);

/// n_eta = a^dag_eta a_eta.
SparseOp number_operator(const FockSpace& space, const ModeVector& eta);
/// N = sum_mu a^dag_mu a_mu; diagonal with eigenvalue sum(n_i).
SparseOp total_number(const FockSpace& space);
/// T_hat = sum a^dag_mu T^mu_nu a^nu; requires T self-adjoint to 1e-12.
SparseOp total_t_operator(const FockSpace& space, const Eigen::MatrixXcd& t);
/// n(x) = a^dag_x a_x / mu_x in the site mode basis; the mode count must
/// equal the lattice site count.
SparseOp density_operator(const FockSpace& space, const SpatialLattice& lattice, int site);

struct WeylOperator {
    Eigen::MatrixXcd matrix;
    double unitarity_residual;  // truncation quality: |W W^dag - 1|_max
};

/// W(eta) = exp(i (a_eta + a^dag_eta)/sqrt(2)), exact exponential of the
/// truncated quadrature.
WeylOperator weyl_operator(const FockSpace& space, const ModeVector& eta);

/// Gamma(U): U acting on every particle slot; block diagonal over total
/// particle number and exactly unitary for unitary U.
Eigen::MatrixXcd second_quantize(const FockSpace& space, const Eigen::MatrixXcd& u);

/// H_F = sum a^dag_mu H^mu_nu a^nu.
SparseOp fock_hamiltonian(const FockSpace& space, const Eigen::MatrixXcd& h);

/// exp(-i H_F t) psi via Hermitian eigen-decomposition.
FockState evolve_quantum(const SparseOp& fock_h, const FockState& psi0, double t);

/// Projector onto total particle number <= n_max.
Eigen::MatrixXcd sector_projector(const FockSpace& space, int n_max);

}  // namespace fieldlab

#endif
