#ifndef FIELDLAB_IMPLEMENTABILITY_HPP
#define FIELDLAB_IMPLEMENTABILITY_HPP

#include <functional>
#include <string>
#include <vector>

#include "fieldlab/complex_structure.hpp"

namespace fieldlab {

/// Frobenius norm of SJ - JS. S must pass the symplectomorphism check and J
/// the compatibility check before the norm is reported.
double hs_norm_commutator(const SpatialLattice& lattice, const Eigen::MatrixXd& s,
                          const ComplexStructure& j);

enum class HsTrend { bounded, growing, inconclusive };

std::string to_string(HsTrend trend);

struct HSReport {
    std::vector<int> lattice_sizes;
    std::vector<double> hs_norms;
    HsTrend trend = HsTrend::inconclusive;
    /// The infinite-dimensional criterion cannot be tested literally at
    /// truncation; growth-vs-size is this module's proxy, and every report
    /// says so.
    std::string note =
        "finite-truncation proxy: trend of the commutator norm with lattice size, "
        "not the Hilbert-Schmidt criterion itself";

    std::string to_json() const;
    std::string to_csv() const;  // columns: size, hs_norm
};

/// A lattice-size-indexed pair (S_d, J_d).
struct SymplecticFamily {
    std::function<LatticePtr(int size)> lattice;
    std::function<Eigen::MatrixXd(int size)> map;
    std::function<ComplexStructure(int size)> structure;
};

/// Per-mode squeezing diag(e^r, e^-r) against the standard J; the norm grows
/// as 2 sqrt(2) sinh(r) sqrt(d).
SymplecticFamily squeezing_family(double r);

/// Bogoliubov map between the m=mass_from and m=mass_to Klein-Gordon chains
/// (periodic, fixed spacing), against the polar J of the mass_from chain.
SymplecticFamily mass_shift_family(double mass_from, double mass_to, double spacing);

/// Classification: bounded when the relative variation over the final half of
/// the ladder is <= 5%; growing when monotone increasing beyond 2x the first
/// norm; otherwise inconclusive.
HSReport implementability_scan(const SymplecticFamily& family, const std::vector<int>& sizes);

}  // namespace fieldlab

#endif
