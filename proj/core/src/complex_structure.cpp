#include "fieldlab/complex_structure.hpp"

#include <cmath>

#include <json.hpp>

#include "fieldlab/numerics.hpp"

namespace fieldlab {

std::string CompatibilityReport::to_json() const {
    nlohmann::json doc;
    doc["square_residual"] = square_residual;
    doc["symplectic_residual"] = symplectic_residual;
    doc["positivity_min"] = positivity_min;
    doc["square_ok"] = square_ok;
    doc["symplectic_ok"] = symplectic_ok;
    doc["positive_ok"] = positive_ok;
    doc["pass"] = pass;
    return doc.dump();
}

CompatibilityReport check_compatibility(const SpatialLattice& lattice, const Eigen::MatrixXd& j,
                                        double tol) {
    const int dim = 2 * lattice.site_count();
    if (j.rows() != dim || j.cols() != dim) {
        throw std::invalid_argument("candidate matrix has wrong dimensions");
    }
    const Eigen::MatrixXd om = omega_matrix(lattice);
    CompatibilityReport rep;
    rep.square_residual =
        (j * j + Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    rep.symplectic_residual = (j.transpose() * om * j - om).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd quad = j.transpose() * om;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (quad + quad.transpose()));
    rep.positivity_min = es.eigenvalues().minCoeff();
    rep.square_ok = rep.square_residual <= tol;
    rep.symplectic_ok = rep.symplectic_residual <= tol;
    rep.positive_ok = rep.positivity_min >= -tol;
    rep.pass = rep.square_ok && rep.symplectic_ok && rep.positive_ok;
    return rep;
}

ComplexStructure::ComplexStructure(LatticePtr lattice, const Eigen::MatrixXd& matrix, double tol)
    : lattice_(std::move(lattice)), mat_(matrix) {
    const CompatibilityReport rep = check_compatibility(*lattice_, mat_, tol);
    if (!rep.pass) {
        throw std::invalid_argument("matrix is not a symplectic-compatible complex structure: " +
                                    rep.to_json());
    }
}

ComplexStructure ComplexStructure::standard(LatticePtr lattice) {
    const int n = lattice->site_count();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return ComplexStructure(std::move(lattice), j);
}

PhaseVector ComplexStructure::apply(const PhaseVector& eta) const {
    if (!eta.lattice()->same_as(*lattice_)) {
        throw LatticeMismatchError("phase vector on a different lattice");
    }
    return PhaseVector(eta.lattice(), Eigen::VectorXd(mat_ * eta.coords()));
}

namespace {

// Require the Hamiltonian form positive definite; name the offending
// eigenvalue otherwise. Returns the form matrix.
Eigen::MatrixXd checked_form(const GeneratorOperator& gen) {
    const Eigen::MatrixXd form = hamiltonian_from_generator(gen).form_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form);
    const double min_eig = es.eigenvalues().minCoeff();
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (min_eig <= 1e-12 * scale) {
        throw NumericalGuardError(
            "Hamiltonian form is not positive definite (interpreting the positivity "
            "precondition as positive definiteness of the form H_AB): offending eigenvalue " +
            std::to_string(min_eig));
    }
    return form;
}

}  // namespace

ComplexStructure polar_complex_structure(const GeneratorOperator& gen) {
    const Eigen::MatrixXd form = checked_form(gen);
    // Similarity by F^{1/2} turns the generator into a real antisymmetric C;
    // |H| and J are then pulled back from sqrt(C^T C).
    const Eigen::MatrixXd f_half = spd_sqrt(form);
    const Eigen::MatrixXd f_inv_half = spd_inv_sqrt(form);
    const Eigen::MatrixXd c = f_half * gen.matrix() * f_inv_half;
    const Eigen::MatrixXd q = spd_sqrt(Eigen::MatrixXd(c.transpose() * c));
    Eigen::PartialPivLU<Eigen::MatrixXd> q_lu(q);
    const Eigen::MatrixXd j = f_inv_half * c * q_lu.solve(f_half);
    return ComplexStructure(gen.lattice(), j);
}

Complex induced_inner_product(const ComplexStructure& j, const PhaseVector& a,
                              const PhaseVector& b) {
    return Complex(omega(j.apply(a), b), -omega(a, b));
}

Complex doubled_inner(const SpatialLattice& lattice, const Eigen::VectorXcd& z,
                      const Eigen::VectorXcd& w) {
    const Eigen::MatrixXd om = omega_matrix(lattice);
    return Complex(0.0, -1.0) * (z.adjoint() * (om * w))(0, 0);
}

ComplexificationSplit positive_frequency_split(const GeneratorOperator& gen) {
    checked_form(gen);
    const int dim = static_cast<int>(gen.matrix().rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es(gen.matrix());
    if (es.info() != Eigen::Success) {
        throw NumericalGuardError("generator eigen-decomposition failed");
    }
    const Eigen::VectorXcd lambda = es.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    Eigen::VectorXcd sel(dim);
    for (int i = 0; i < dim; ++i) {
        if (std::abs(lambda[i].imag()) <= 1e-10 * scale) {
            throw NumericalGuardError("generator has a (near-)zero mode; no frequency split");
        }
        sel[i] = lambda[i].imag() > 0.0 ? 1.0 : 0.0;
    }
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::MatrixXcd p = v * sel.asDiagonal() * v.inverse();

    // P = (1 - i Jt)/2  =>  Jt = i (2P - 1); must come out real
    const Eigen::MatrixXcd jt_c =
        Complex(0.0, 1.0) * (2.0 * p - Eigen::MatrixXcd::Identity(dim, dim));
    if (jt_c.imag().cwiseAbs().maxCoeff() > 1e-10) {
        throw NumericalGuardError("extracted complex structure has a non-real part");
    }
    return ComplexificationSplit{p, ComplexStructure(gen.lattice(), jt_c.real(), 1e-10)};
}

}  // namespace fieldlab
