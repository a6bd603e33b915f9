#include "fieldlab/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldlab {

namespace {

void enumerate_sector(int modes, int total, std::vector<int>& current, int mode,
                      std::vector<std::vector<int>>& out) {
    if (mode == modes - 1) {
        current[mode] = total;
        out.push_back(current);
        return;
    }
    for (int n = total; n >= 0; --n) {  // lexicographic: larger leading occupation first
        current[mode] = n;
        enumerate_sector(modes, total - n, current, mode + 1, out);
    }
}

}  // namespace

FockSpace::FockSpace(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes <= 0) throw std::invalid_argument("mode count must be positive");
    if (cutoff < 0) throw std::invalid_argument("particle cutoff must be nonnegative");
    std::vector<int> current(static_cast<size_t>(modes), 0);
    for (int total = 0; total <= cutoff; ++total) {
        enumerate_sector(modes, total, current, 0, basis_);
    }
    for (int i = 0; i < dim(); ++i) {
        index_[basis_[i]] = i;
        int total = 0;
        for (int n : basis_[i]) total += n;
        totals_.push_back(total);
    }

    lowering_.resize(static_cast<size_t>(modes));
    raising_.resize(static_cast<size_t>(modes));
    for (int mode = 0; mode < modes; ++mode) {
        std::vector<Eigen::Triplet<Complex>> lower, raise;
        for (int i = 0; i < dim(); ++i) {
            std::vector<int> occ = basis_[i];
            if (occ[mode] > 0) {
                const double amp = std::sqrt(static_cast<double>(occ[mode]));
                occ[mode] -= 1;
                const int j = index_.at(occ);
                lower.emplace_back(j, i, amp);
                raise.emplace_back(i, j, amp);
            }
        }
        lowering_[mode].resize(dim(), dim());
        lowering_[mode].setFromTriplets(lower.begin(), lower.end());
        raising_[mode].resize(dim(), dim());
        raising_[mode].setFromTriplets(raise.begin(), raise.end());
    }
}

int FockSpace::index_of(const std::vector<int>& occupation) const {
    auto it = index_.find(occupation);
    return it == index_.end() ? -1 : it->second;
}

FockState::FockState(FockSpacePtr space, Eigen::VectorXcd coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != space_->dim()) {
        throw std::invalid_argument("coefficient count != Fock basis size");
    }
}

FockState FockState::vacuum(FockSpacePtr space) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space->dim());
    c[0] = 1.0;
    return FockState(std::move(space), std::move(c));
}

FockState FockState::single_particle(FockSpacePtr space, const ModeVector& eta) {
    if (eta.size() != space->modes()) throw std::invalid_argument("mode vector length mismatch");
    if (space->cutoff() < 1) throw std::invalid_argument("cutoff too small for one particle");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space->dim());
    for (int mode = 0; mode < space->modes(); ++mode) {
        std::vector<int> occ(static_cast<size_t>(space->modes()), 0);
        occ[mode] = 1;
        c[space->index_of(occ)] = eta[mode];
    }
    return FockState(std::move(space), std::move(c));
}

FockState FockState::basis_state(FockSpacePtr space, const std::vector<int>& occupation) {
    const int idx = space->index_of(occupation);
    if (idx < 0) throw std::invalid_argument("occupation outside truncation");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space->dim());
    c[idx] = 1.0;
    return FockState(std::move(space), std::move(c));
}

FockState FockState::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
    return FockState(space_, coeffs_ / n);
}

Complex FockState::inner(const FockState& other) const {
    if (space_.get() != other.space_.get() &&
        (space_->modes() != other.space_->modes() || space_->cutoff() != other.space_->cutoff())) {
        throw std::invalid_argument("states on different Fock spaces");
    }
    return coeffs_.dot(other.coeffs_);
}

SparseOp annihilation_operator(const FockSpace& space, const ModeVector& eta) {
    if (eta.size() != space.modes()) throw std::invalid_argument("mode vector length mismatch");
    SparseOp op(space.dim(), space.dim());
    for (int mode = 0; mode < space.modes(); ++mode) {
        if (eta[mode] != Complex(0.0)) op += std::conj(eta[mode]) * space.mode_annihilator(mode);
    }
    return op;
}

SparseOp creation_operator(const FockSpace& space, const ModeVector& eta) {
    if (eta.size() != space.modes()) throw std::invalid_argument("mode vector length mismatch");
    SparseOp op(space.dim(), space.dim());
    for (int mode = 0; mode < space.modes(); ++mode) {
        if (eta[mode] != Complex(0.0)) op += eta[mode] * space.mode_creator(mode);
    }
    return op;
}

FockState annihilate(const ModeVector& eta, const FockState& psi) {
    return FockState(psi.space(),
                     annihilation_operator(*psi.space(), eta) * psi.coefficients());
}

FockState create(const ModeVector& eta, const FockState& psi) {
    return FockState(psi.space(), creation_operator(*psi.space(), eta) * psi.coefficients());
}

SparseOp number_operator(const FockSpace& space, const ModeVector& eta) {
    const SparseOp a = annihilation_operator(space, eta);
    return SparseOp(creation_operator(space, eta) * a);
}

SparseOp total_number(const FockSpace& space) {
    std::vector<Eigen::Triplet<Complex>> entries;
    for (int i = 0; i < space.dim(); ++i) {
        entries.emplace_back(i, i, static_cast<double>(space.total_particles(i)));
    }
    SparseOp op(space.dim(), space.dim());
    op.setFromTriplets(entries.begin(), entries.end());
    return op;
}

SparseOp total_t_operator(const FockSpace& space, const Eigen::MatrixXcd& t) {
    if (t.rows() != space.modes() || t.cols() != space.modes()) {
        throw std::invalid_argument("one-particle operator has wrong dimensions");
    }
    if ((t - t.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("one-particle operator is not self-adjoint to 1e-12");
    }
    SparseOp op(space.dim(), space.dim());
    for (int mu = 0; mu < space.modes(); ++mu) {
        for (int nu = 0; nu < space.modes(); ++nu) {
            if (t(mu, nu) != Complex(0.0)) {
                op += t(mu, nu) * SparseOp(space.mode_creator(mu) * space.mode_annihilator(nu));
            }
        }
    }
    return op;
}

SparseOp density_operator(const FockSpace& space, const SpatialLattice& lattice, int site) {
    if (space.modes() != lattice.site_count()) {
        throw std::invalid_argument("mode basis is not aligned with the lattice sites");
    }
    if (site < 0 || site >= lattice.site_count()) {
        throw std::invalid_argument("site index out of range");
    }
    return SparseOp((1.0 / lattice.weight(site)) *
                    SparseOp(space.mode_creator(site) * space.mode_annihilator(site)));
}

WeylOperator weyl_operator(const FockSpace& space, const ModeVector& eta) {
    const Eigen::MatrixXcd quad =
        (Eigen::MatrixXcd(annihilation_operator(space, eta)) +
         Eigen::MatrixXcd(creation_operator(space, eta))) / std::sqrt(2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(quad);
    Eigen::VectorXcd phases(space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        phases[i] = std::exp(Complex(0.0, es.eigenvalues()[i]));
    }
    WeylOperator out;
    out.matrix = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    out.unitarity_residual =
        (out.matrix * out.matrix.adjoint() -
         Eigen::MatrixXcd::Identity(space.dim(), space.dim())).cwiseAbs().maxCoeff();
    return out;
}

Eigen::MatrixXcd second_quantize(const FockSpace& space, const Eigen::MatrixXcd& u) {
    if (u.rows() != space.modes() || u.cols() != space.modes()) {
        throw std::invalid_argument("one-particle map has wrong dimensions");
    }
    if ((u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
            .cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("one-particle map is not unitary to 1e-10");
    }
    // transformed creation operators b^dag_mu = sum_nu U_{nu mu} a^dag_nu
    std::vector<SparseOp> transformed;
    for (int mu = 0; mu < space.modes(); ++mu) {
        SparseOp b(space.dim(), space.dim());
        for (int nu = 0; nu < space.modes(); ++nu) {
            if (u(nu, mu) != Complex(0.0)) b += u(nu, mu) * space.mode_creator(nu);
        }
        transformed.push_back(std::move(b));
    }
    Eigen::MatrixXcd gamma(space.dim(), space.dim());
    for (int col = 0; col < space.dim(); ++col) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
        v[0] = 1.0;
        double norm_factor = 1.0;
        const std::vector<int>& occ = space.occupation(col);
        for (int mu = 0; mu < space.modes(); ++mu) {
            for (int k = 0; k < occ[mu]; ++k) {
                v = transformed[static_cast<size_t>(mu)] * v;
                norm_factor *= static_cast<double>(k + 1);
            }
        }
        gamma.col(col) = v / std::sqrt(norm_factor);
    }
    return gamma;
}

SparseOp fock_hamiltonian(const FockSpace& space, const Eigen::MatrixXcd& h) {
    return total_t_operator(space, h);
}

FockState evolve_quantum(const SparseOp& fock_h, const FockState& psi0, double t) {
    const Eigen::MatrixXcd dense(fock_h);
    if ((dense - dense.adjoint()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, dense.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("Fock Hamiltonian is not self-adjoint");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    Eigen::VectorXcd phases(dense.rows());
    for (int i = 0; i < dense.rows(); ++i) {
        phases[i] = std::exp(Complex(0.0, -es.eigenvalues()[i] * t));
    }
    const Eigen::VectorXcd out = es.eigenvectors() *
        (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi0.coefficients()));
    return FockState(psi0.space(), out);
}

Eigen::MatrixXcd sector_projector(const FockSpace& space, int n_max) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        if (space.total_particles(i) <= n_max) p(i, i) = 1.0;
    }
    return p;
}

}  // namespace fieldlab
