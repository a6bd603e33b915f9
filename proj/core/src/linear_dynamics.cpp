#include "fieldlab/linear_dynamics.hpp"

#include <cmath>

#include "fieldlab/numerics.hpp"

namespace fieldlab {

QuadraticHamiltonian::QuadraticHamiltonian(LatticePtr lattice, const Eigen::MatrixXd& form_matrix)
    : lattice_(std::move(lattice)), form_(form_matrix) {
    const int dim = 2 * lattice_->site_count();
    if (form_.rows() != dim || form_.cols() != dim) {
        throw std::invalid_argument("form matrix has wrong dimensions");
    }
    if ((form_ - form_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("form matrix is not symmetric to 1e-12");
    }
    form_ = 0.5 * (form_ + form_.transpose());
}

QuadraticHamiltonian QuadraticHamiltonian::oscillator(LatticePtr lattice,
                                                      const Eigen::VectorXd& omegas) {
    const int n = lattice->site_count();
    if (omegas.size() != n) throw std::invalid_argument("omega count != site count");
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        f(i, i) = lattice->weight(i) * omegas[i] * omegas[i];
        f(n + i, n + i) = lattice->weight(i);
    }
    return QuadraticHamiltonian(std::move(lattice), f);
}

QuadraticHamiltonian QuadraticHamiltonian::klein_gordon_chain(LatticePtr lattice, double mass,
                                                              double spacing) {
    const int n = lattice->site_count();
    if (spacing <= 0.0) throw std::invalid_argument("lattice spacing must be positive");
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const double mu = lattice->weight(i);
        f(n + i, n + i) = mu;
        f(i, i) += mu * mass * mass;
        // forward-difference gradient term, periodic wrap
        const int j = (i + 1) % n;
        const double c = mu / (spacing * spacing);
        f(i, i) += c;
        f(j, j) += c;
        f(i, j) -= c;
        f(j, i) -= c;
    }
    return QuadraticHamiltonian(std::move(lattice), f);
}

double QuadraticHamiltonian::value(const PhaseVector& eta) const {
    if (!eta.lattice()->same_as(*lattice_)) {
        throw LatticeMismatchError("phase vector on a different lattice");
    }
    const Eigen::VectorXd x = eta.coords();
    return 0.5 * x.dot(form_ * x);
}

GeneratorOperator::GeneratorOperator(LatticePtr lattice, const Eigen::MatrixXd& matrix)
    : lattice_(std::move(lattice)), mat_(matrix) {
    const int dim = 2 * lattice_->site_count();
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument("generator matrix has wrong dimensions");
    }
    if (anti_self_adjoint_residual() > 1e-12 * std::max(1.0, mat_.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("generator is not anti-self-adjoint with respect to Omega");
    }
}

double GeneratorOperator::anti_self_adjoint_residual() const {
    const Eigen::MatrixXd om = omega_matrix(*lattice_);
    return (mat_.transpose() * om + om * mat_).cwiseAbs().maxCoeff();
}

GeneratorOperator build_generator(const QuadraticHamiltonian& h) {
    const Eigen::MatrixXd gen = omega_inverse_matrix(*h.lattice()) * h.form_matrix();
    return GeneratorOperator(h.lattice(), gen);
}

QuadraticHamiltonian hamiltonian_from_generator(const GeneratorOperator& gen) {
    // inverse of F -> G^-1 S F, with (G^-1 S)^-1 = -S G = Omega^T
    const Eigen::MatrixXd form = omega_matrix(*gen.lattice()).transpose() * gen.matrix();
    return QuadraticHamiltonian(gen.lattice(), form);
}

Eigen::MatrixXd evolve_linear(const GeneratorOperator& gen, double t) {
    return matrix_exp(Eigen::MatrixXd(gen.matrix() * t));
}

Trajectory integrate_hamilton(const QuadraticHamiltonian& h, const PhaseVector& eta0,
                              double t, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
    const int n = eta0.sites();
    if (!eta0.lattice()->same_as(*h.lattice())) {
        throw LatticeMismatchError("initial state on a different lattice");
    }
    const Eigen::MatrixXd& f = h.form_matrix();
    if (f.topRightCorner(n, n).cwiseAbs().maxCoeff() > 0.0) {
        throw std::invalid_argument("integrate_hamilton requires a separable form matrix");
    }
    const Eigen::VectorXd inv_mu = h.lattice()->weights().cwiseInverse();
    const Eigen::MatrixXd v_block = f.topLeftCorner(n, n);      // potential
    const Eigen::MatrixXd t_block = f.bottomRightCorner(n, n);  // kinetic

    Eigen::VectorXd phi = eta0.coords().head(n);
    Eigen::VectorXd pi = eta0.coords().tail(n);

    Trajectory traj;
    auto record = [&](double time) {
        Eigen::VectorXd coords(2 * n);
        coords << phi, pi;
        PhaseVector state(eta0.lattice(), coords);
        traj.times.push_back(time);
        traj.energies.push_back(h.value(state));
        traj.states.push_back(std::move(state));
    };
    record(0.0);

    double time = 0.0;
    while (time < t - 1e-15 * std::max(1.0, t)) {
        const double step = std::min(dt, t - time);
        pi -= 0.5 * step * inv_mu.cwiseProduct(v_block * phi);
        phi += step * inv_mu.cwiseProduct(t_block * pi);
        pi -= 0.5 * step * inv_mu.cwiseProduct(v_block * phi);
        time += step;
        record(time);
    }
    return traj;
}

}  // namespace fieldlab
