#include "fieldlab/symplectic.hpp"

#include <cmath>

#include <json.hpp>

namespace fieldlab {

PhaseVector::PhaseVector(FieldFunction phi, FieldFunction pi)
    : phi_(std::move(phi)), pi_(std::move(pi)) {
    require_same_lattice(phi_, pi_);
    if (!phi_.is_real() || !pi_.is_real()) {
        throw std::invalid_argument("phase vector components must be real-valued");
    }
}

PhaseVector::PhaseVector(LatticePtr lattice, const Eigen::VectorXd& coords)
    : phi_(lattice, Eigen::VectorXd(coords.head(lattice->site_count()))),
      pi_(lattice, Eigen::VectorXd(coords.tail(lattice->site_count()))) {
    if (coords.size() != 2 * lattice->site_count()) {
        throw std::invalid_argument("phase coordinate vector has wrong length");
    }
}

PhaseVector PhaseVector::zero(LatticePtr lattice) {
    return PhaseVector(FieldFunction::zero(lattice), FieldFunction::zero(lattice));
}

Eigen::VectorXd PhaseVector::coords() const {
    Eigen::VectorXd out(2 * sites());
    out.head(sites()) = phi_.values().real();
    out.tail(sites()) = pi_.values().real();
    return out;
}

double PhaseVector::norm() const { return coords().norm(); }

PhaseVector PhaseVector::operator+(const PhaseVector& other) const {
    return PhaseVector(phi_ + other.phi_, pi_ + other.pi_);
}

PhaseVector PhaseVector::operator-(const PhaseVector& other) const {
    return PhaseVector(phi_ - other.phi_, pi_ - other.pi_);
}

PhaseVector PhaseVector::scaled(double factor) const {
    return PhaseVector(phi_.scaled(factor), pi_.scaled(factor));
}

void require_same_lattice(const PhaseVector& a, const PhaseVector& b) {
    require_same_lattice(a.phi(), b.phi());
}

double omega(const PhaseVector& a, const PhaseVector& b) {
    require_same_lattice(a, b);
    const Eigen::VectorXd& mu = a.lattice()->weights();
    double acc = 0.0;
    for (int i = 0; i < a.sites(); ++i) {
        acc += mu[i] * (std::real(a.phi().values()[i]) * std::real(b.pi().values()[i]) -
                        std::real(a.pi().values()[i]) * std::real(b.phi().values()[i]));
    }
    return acc;
}

Eigen::MatrixXd omega_matrix(const SpatialLattice& lattice) {
    const int n = lattice.site_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out(i, n + i) = lattice.weight(i);
        out(n + i, i) = -lattice.weight(i);
    }
    return out;
}

Eigen::MatrixXd omega_inverse_matrix(const SpatialLattice& lattice) {
    const int n = lattice.site_count();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out(i, n + i) = 1.0 / lattice.weight(i);
        out(n + i, i) = -1.0 / lattice.weight(i);
    }
    return out;
}

PhaseVector omega_map(const PhaseVector& eta) {
    return PhaseVector(eta.pi(), eta.phi().scaled(-1.0));
}

Eigen::VectorXd Observable::gradient_at(const PhaseVector& eta) const {
    if (!value) throw std::invalid_argument("observable has no value closure");
    if (gradient) return gradient(eta);
    const Eigen::VectorXd x = eta.coords();
    const double h = 1e-5 * (1.0 + x.norm());
    Eigen::VectorXd grad(x.size());
    for (int i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        grad[i] = (value(PhaseVector(eta.lattice(), xp)) -
                   value(PhaseVector(eta.lattice(), xm))) / (2.0 * h);
    }
    return grad;
}

Observable coordinate_phi(int site) {
    return Observable{
        [site](const PhaseVector& eta) { return std::real(eta.phi().values()[site]); },
        [site](const PhaseVector& eta) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * eta.sites());
            g[site] = 1.0;
            return g;
        }};
}

Observable coordinate_pi(int site) {
    return Observable{
        [site](const PhaseVector& eta) { return std::real(eta.pi().values()[site]); },
        [site](const PhaseVector& eta) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * eta.sites());
            g[eta.sites() + site] = 1.0;
            return g;
        }};
}

double poisson_bracket(const Observable& f, const Observable& g, const PhaseVector& eta) {
    const Eigen::VectorXd gf = f.gradient_at(eta);
    const Eigen::VectorXd gg = g.gradient_at(eta);
    const Eigen::VectorXd& mu = eta.lattice()->weights();
    const int n = eta.sites();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += (gf[i] * gg[n + i] - gf[n + i] * gg[i]) / mu[i];
    }
    return acc;
}

SymplecticMap SymplecticMap::linear(LatticePtr lattice, const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != 2 * lattice->site_count() ||
        matrix.cols() != 2 * lattice->site_count()) {
        throw std::invalid_argument("linear map matrix has wrong dimensions");
    }
    SymplecticMap map;
    map.apply = [lattice, matrix](const PhaseVector& eta) {
        return PhaseVector(lattice, Eigen::VectorXd(matrix * eta.coords()));
    };
    map.derivative = [matrix](const PhaseVector&) { return matrix; };
    map.is_linear = true;
    return map;
}

Eigen::MatrixXd SymplecticMap::derivative_at(const PhaseVector& eta) const {
    if (derivative) return derivative(eta);
    const Eigen::VectorXd x = eta.coords();
    const double h = 1e-5 * (1.0 + x.norm());
    Eigen::MatrixXd jac(x.size(), x.size());
    for (int j = 0; j < x.size(); ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = (apply(PhaseVector(eta.lattice(), xp)).coords() -
                      apply(PhaseVector(eta.lattice(), xm)).coords()) / (2.0 * h);
    }
    return jac;
}

std::string SymplectomorphismReport::to_json() const {
    nlohmann::json doc;
    doc["residuals"] = residuals;
    doc["max_residual"] = max_residual;
    doc["tolerance"] = tolerance;
    doc["pass"] = pass;
    return doc.dump();
}

SymplectomorphismReport is_symplectomorphism(const SymplecticMap& map,
                                             const std::vector<PhaseVector>& samples,
                                             double tol) {
    SymplectomorphismReport report;
    report.tolerance = tol;
    for (const PhaseVector& eta : samples) {
        const Eigen::MatrixXd du = map.derivative_at(eta);
        const Eigen::MatrixXd om = omega_matrix(*eta.lattice());
        const double res = (du.transpose() * om * du - om).cwiseAbs().maxCoeff();
        report.residuals.push_back(res);
        report.max_residual = std::max(report.max_residual, res);
    }
    report.pass = report.max_residual <= tol;
    return report;
}

}  // namespace fieldlab
