#include "fieldlab/implementability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fieldlab/numerics.hpp"

namespace fieldlab {

double hs_norm_commutator(const SpatialLattice& lattice, const Eigen::MatrixXd& s,
                          const ComplexStructure& j) {
    const Eigen::MatrixXd om = omega_matrix(lattice);
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    const double symp_res = (s.transpose() * om * s - om).cwiseAbs().maxCoeff();
    if (symp_res > 1e-10 * scale * scale) {
        throw std::invalid_argument("map is not symplectic: pullback residual " +
                                    std::to_string(symp_res));
    }
    return (s * j.matrix() - j.matrix() * s).norm();
}

std::string to_string(HsTrend trend) {
    switch (trend) {
        case HsTrend::bounded: return "bounded";
        case HsTrend::growing: return "growing";
        default: return "inconclusive";
    }
}

std::string HSReport::to_json() const {
    nlohmann::json doc;
    doc["sizes"] = lattice_sizes;
    doc["hs_norms"] = hs_norms;
    doc["trend"] = to_string(trend);
    doc["note"] = note;
    return doc.dump();
}

std::string HSReport::to_csv() const {
    std::ostringstream out;
    out << "size,hs_norm\n";
    out.precision(17);
    for (size_t i = 0; i < hs_norms.size(); ++i) {
        out << lattice_sizes[i] << "," << hs_norms[i] << "\n";
    }
    return out.str();
}

SymplecticFamily squeezing_family(double r) {
    SymplecticFamily fam;
    fam.lattice = [](int size) { return SpatialLattice::uniform(size); };
    fam.map = [r](int size) {
        Eigen::VectorXd diag(2 * size);
        diag.head(size).setConstant(std::exp(r));
        diag.tail(size).setConstant(std::exp(-r));
        return Eigen::MatrixXd(diag.asDiagonal());
    };
    fam.structure = [](int size) {
        return ComplexStructure::standard(SpatialLattice::uniform(size));
    };
    return fam;
}

SymplecticFamily mass_shift_family(double mass_from, double mass_to, double spacing) {
    SymplecticFamily fam;
    fam.lattice = [](int size) { return SpatialLattice::uniform(size); };
    auto k_matrix = [spacing](int size, double mass) {
        const LatticePtr lat = SpatialLattice::uniform(size);
        const auto h = QuadraticHamiltonian::klein_gordon_chain(lat, mass, spacing);
        return Eigen::MatrixXd(h.form_matrix().topLeftCorner(size, size));
    };
    fam.map = [k_matrix, mass_from, mass_to](int size) {
        // mode-wise Bogoliubov map diag((K1/K2)^{1/4}, (K2/K1)^{1/4}); K1, K2
        // commute (both functions of the chain Laplacian), so this is symplectic
        // and intertwines the two polar structures
        const Eigen::MatrixXd k1 = k_matrix(size, mass_from);
        const Eigen::MatrixXd k2 = k_matrix(size, mass_to);
        const Eigen::MatrixXd a =
            spd_sqrt(Eigen::MatrixXd(spd_sqrt(k1) * spd_inv_sqrt(k2)));
        const Eigen::MatrixXd a_inv = a.inverse();
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * size, 2 * size);
        s.topLeftCorner(size, size) = a;
        s.bottomRightCorner(size, size) = a_inv;
        return s;
    };
    fam.structure = [mass_from, spacing](int size) {
        const LatticePtr lat = SpatialLattice::uniform(size);
        const auto h = QuadraticHamiltonian::klein_gordon_chain(lat, mass_from, spacing);
        return polar_complex_structure(build_generator(h));
    };
    return fam;
}

HSReport implementability_scan(const SymplecticFamily& family, const std::vector<int>& sizes) {
    HSReport report;
    for (int size : sizes) {
        const LatticePtr lat = family.lattice(size);
        const ComplexStructure j = family.structure(size);
        report.lattice_sizes.push_back(size);
        report.hs_norms.push_back(hs_norm_commutator(*lat, family.map(size), j));
    }

    const size_t n = report.hs_norms.size();
    if (n < 2) {
        report.trend = HsTrend::inconclusive;
        return report;
    }
    const auto& norms = report.hs_norms;
    // norms at roundoff are bounded regardless of their relative spread
    if (*std::max_element(norms.begin(), norms.end()) <= 1e-10) {
        report.trend = HsTrend::bounded;
        return report;
    }
    // bounded: Cauchy-like over the final half of the ladder (<= 5% variation)
    const size_t half = n / 2;
    double lo = norms[half], hi = norms[half];
    for (size_t i = half; i < n; ++i) {
        lo = std::min(lo, norms[i]);
        hi = std::max(hi, norms[i]);
    }
    const double spread = hi - lo;
    if (spread <= 0.05 * std::max(hi, 1e-300)) {
        report.trend = HsTrend::bounded;
        return report;
    }
    bool monotone = true;
    for (size_t i = 1; i < n; ++i) {
        if (norms[i] < norms[i - 1]) monotone = false;
    }
    if (monotone && norms.back() > 2.0 * norms.front()) {
        report.trend = HsTrend::growing;
    } else {
        report.trend = HsTrend::inconclusive;
    }
    return report;
}

}  // namespace fieldlab
