#include "fieldlab/nonlinear_classical.hpp"

#include <cmath>

namespace fieldlab {

FieldHamiltonian::FieldHamiltonian(LatticePtr lattice, double mass, double coupling,
                                   double spacing)
    : lattice_(std::move(lattice)), mass_(mass), coupling_(coupling), spacing_(spacing) {
    if (mass_ < 0.0) throw std::invalid_argument("mass must be nonnegative");
    if (spacing_ <= 0.0) throw std::invalid_argument("lattice spacing must be positive");
}

double FieldHamiltonian::energy(const PhaseVector& eta) const {
    if (!eta.lattice()->same_as(*lattice_)) {
        throw LatticeMismatchError("phase vector on a different lattice");
    }
    const int n = eta.sites();
    const Eigen::VectorXd& mu = lattice_->weights();
    const Eigen::VectorXd phi = eta.phi().values().real();
    const Eigen::VectorXd pi = eta.pi().values().real();
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        const double grad = (phi[(i + 1) % n] - phi[i]) / spacing_;
        e += mu[i] * (0.5 * pi[i] * pi[i] + 0.5 * grad * grad +
                      0.5 * mass_ * mass_ * phi[i] * phi[i] +
                      coupling_ * phi[i] * phi[i] * phi[i] * phi[i]);
    }
    if (!std::isfinite(e)) throw NumericalGuardError("energy evaluated non-finite");
    return e;
}

Eigen::VectorXd FieldHamiltonian::phi_velocity(const Eigen::VectorXd& pi) const {
    return pi;  // d phi_i/dt = (1/mu_i) dH/dpi_i = pi_i
}

Eigen::VectorXd FieldHamiltonian::pi_velocity(const Eigen::VectorXd& phi) const {
    const int n = static_cast<int>(phi.size());
    const Eigen::VectorXd& mu = lattice_->weights();
    Eigen::VectorXd out(n);
    const double inv_a2 = 1.0 / (spacing_ * spacing_);
    for (int i = 0; i < n; ++i) {
        // dH/dphi_i collects the two gradient links touching site i
        const int prev = (i + n - 1) % n;
        const int next = (i + 1) % n;
        double dv = mu[i] * (mass_ * mass_ * phi[i] +
                             4.0 * coupling_ * phi[i] * phi[i] * phi[i]);
        dv += mu[i] * inv_a2 * (phi[i] - phi[next]);
        dv += mu[prev] * inv_a2 * (phi[i] - phi[prev]);
        out[i] = -dv / mu[i];
    }
    return out;
}

QuadraticHamiltonian FieldHamiltonian::quadratic_part() const {
    return QuadraticHamiltonian::klein_gordon_chain(lattice_, mass_, spacing_);
}

Trajectory nonlinear_evolve(const FieldHamiltonian& h, const PhaseVector& eta0, double t,
                            double dt) {
    if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
    if (dt > 0.5 * h.spacing()) {
        throw NumericalGuardError("Courant guard: dt must not exceed a/2");
    }
    const int n = eta0.sites();
    Eigen::VectorXd phi = eta0.coords().head(n);
    Eigen::VectorXd pi = eta0.coords().tail(n);

    Trajectory traj;
    auto record = [&](double time) {
        Eigen::VectorXd coords(2 * n);
        coords << phi, pi;
        PhaseVector state(eta0.lattice(), coords);
        traj.times.push_back(time);
        traj.energies.push_back(h.energy(state));
        traj.states.push_back(std::move(state));
    };
    record(0.0);

    const double t_end = std::abs(t);
    const double direction = t < 0.0 ? -1.0 : 1.0;
    double time = 0.0;
    while (time < t_end - 1e-15 * std::max(1.0, t_end)) {
        const double step = direction * std::min(dt, t_end - time);
        pi += 0.5 * step * h.pi_velocity(phi);
        phi += step * h.phi_velocity(pi);
        pi += 0.5 * step * h.pi_velocity(phi);
        time += std::abs(step);
        if (std::sqrt(phi.squaredNorm() + pi.squaredNorm()) > 1e8) {
            throw NumericalGuardError("singular trajectory: state norm exceeded 1e8");
        }
        record(direction * time);
    }
    return traj;
}

double flow_symplecticity(const FieldHamiltonian& h, const PhaseVector& eta0, double t,
                          double dt) {
    const Eigen::VectorXd x = eta0.coords();
    const int dim = static_cast<int>(x.size());
    // differencing step tied to dt: the stepper itself is symplectic at any
    // dt, so the reported residual is the O(step^2) differencing error
    const double step = dt * (1.0 + x.norm());
    Eigen::MatrixXd jac(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        const auto fp = nonlinear_evolve(h, PhaseVector(eta0.lattice(), xp), t, dt);
        const auto fm = nonlinear_evolve(h, PhaseVector(eta0.lattice(), xm), t, dt);
        jac.col(j) =
            (fp.states.back().coords() - fm.states.back().coords()) / (2.0 * step);
    }
    const Eigen::MatrixXd om = omega_matrix(*eta0.lattice());
    return (jac.transpose() * om * jac - om).cwiseAbs().maxCoeff();
}

double field_momentum(const FieldHamiltonian& h, const PhaseVector& eta) {
    const int n = eta.sites();
    const Eigen::VectorXd& mu = eta.lattice()->weights();
    const Eigen::VectorXd phi = eta.phi().values().real();
    const Eigen::VectorXd pi = eta.pi().values().real();
    double p = 0.0;
    for (int i = 0; i < n; ++i) {
        p += mu[i] * pi[i] * (phi[(i + 1) % n] - phi[(i + n - 1) % n]) / (2.0 * h.spacing());
    }
    return p;
}

}  // namespace fieldlab
