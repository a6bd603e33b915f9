#ifndef FIELDLAB_LATTICE_HPP
#define FIELDLAB_LATTICE_HPP

#include <complex>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fieldlab {

using Complex = std::complex<double>;

/// Thrown when two objects built over different lattices are combined.
class LatticeMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical guard trips (blow-up, instability, indefiniteness).
class NumericalGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite discretization of the spatial manifold: per-site measure weights
/// and an ordered partition of the sites into contiguous patches.
class SpatialLattice {
public:
    SpatialLattice(Eigen::VectorXd weights, std::vector<std::vector<int>> patches);

    /// Uniform weights, single patch covering all sites.
    static std::shared_ptr<const SpatialLattice> uniform(int sites, double weight = 1.0);

    /// Uniform weights, sites split into `patch_count` near-equal contiguous patches.
    static std::shared_ptr<const SpatialLattice> uniform_patched(int sites, int patch_count,
                                                                 double weight = 1.0);

    /// {"sites": N, "weights": [...], "patches": [[i,...],...]};
    /// weights default to 1.0, patches default to one patch of all sites.
    static std::shared_ptr<const SpatialLattice> from_json(const std::string& text);

    int site_count() const { return static_cast<int>(weights_.size()); }
    int patch_count() const { return static_cast<int>(patches_.size()); }
    const Eigen::VectorXd& weights() const { return weights_; }
    double weight(int i) const { return weights_[i]; }
    const std::vector<int>& patch(int n) const { return patches_[n]; }
    const std::vector<std::vector<int>>& patches() const { return patches_; }

    bool same_as(const SpatialLattice& other) const;

private:
    Eigen::VectorXd weights_;
    std::vector<std::vector<int>> patches_;
};

using LatticePtr = std::shared_ptr<const SpatialLattice>;

/// A scalar function on the lattice sites. The scalar type (real vs complex)
/// is fixed at construction; mixing the two in one operation is an error.
class FieldFunction {
public:
    FieldFunction(LatticePtr lattice, const Eigen::VectorXd& values);
    FieldFunction(LatticePtr lattice, Eigen::VectorXcd values);

    static FieldFunction zero(LatticePtr lattice, bool real = true);

    const LatticePtr& lattice() const { return lattice_; }
    const Eigen::VectorXcd& values() const { return values_; }
    Eigen::VectorXd real_values() const;
    bool is_real() const { return real_; }
    int size() const { return static_cast<int>(values_.size()); }

    FieldFunction operator+(const FieldFunction& other) const;
    FieldFunction operator-(const FieldFunction& other) const;
    FieldFunction scaled(Complex factor) const;

private:
    LatticePtr lattice_;
    Eigen::VectorXcd values_;
    bool real_;
};

/// A field function together with the patches that carry its support;
/// values vanish outside the listed patches.
class CompactlySupportedFunction {
public:
    CompactlySupportedFunction(FieldFunction base, std::set<int> support_patches);

    const FieldFunction& base() const { return base_; }
    const std::set<int>& support_patches() const { return support_; }

private:
    FieldFunction base_;
    std::set<int> support_;
};

void require_same_lattice(const FieldFunction& f, const FieldFunction& g);
void require_same_scalar_type(const FieldFunction& f, const FieldFunction& g);

/// Weighted L2 inner product, antilinear in the first slot.
Complex l2_inner(const FieldFunction& f, const FieldFunction& g);

/// Weighted L2 norm.
double l2_norm(const FieldFunction& f);

/// Weighted L2 norm restricted to one patch.
double patch_norm(const FieldFunction& f, int patch);

/// d(f,g) = sum_{n>=1} 2^-n ||f-g||_n / (1 + ||f-g||_n), patch norms weighted.
double frechet_metric(const FieldFunction& f, const FieldFunction& g);

/// Pairing of a compactly supported dual function with a field function.
double dual_pair(const CompactlySupportedFunction& psi, const FieldFunction& phi);

/// Restriction of f to patches 1..k (1-based), zero elsewhere.
CompactlySupportedFunction truncate_to_patches(const FieldFunction& f, int k);

}  // namespace fieldlab

#endif
