#include "fieldlab/lattice.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace fieldlab {

SpatialLattice::SpatialLattice(Eigen::VectorXd weights, std::vector<std::vector<int>> patches)
    : weights_(std::move(weights)), patches_(std::move(patches)) {
    if (weights_.size() == 0) {
        throw std::invalid_argument("lattice must have at least one site");
    }
    for (int i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0)) {
            throw std::invalid_argument("measure weight at site " + std::to_string(i) +
                                        " is not strictly positive");
        }
    }
    std::vector<bool> seen(static_cast<size_t>(weights_.size()), false);
    for (const auto& patch : patches_) {
        if (patch.empty()) {
            throw std::invalid_argument("empty patch in lattice partition");
        }
        for (int site : patch) {
            if (site < 0 || site >= weights_.size()) {
                throw std::invalid_argument("patch site index out of range");
            }
            if (seen[static_cast<size_t>(site)]) {
                throw std::invalid_argument("patches are not disjoint");
            }
            seen[static_cast<size_t>(site)] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("patches do not cover the site set");
    }
}

LatticePtr SpatialLattice::uniform(int sites, double weight) {
    return uniform_patched(sites, 1, weight);
}

LatticePtr SpatialLattice::uniform_patched(int sites, int patch_count, double weight) {
    if (sites <= 0) throw std::invalid_argument("site count must be positive");
    if (patch_count <= 0 || patch_count > sites) {
        throw std::invalid_argument("patch count must be in [1, sites]");
    }
    std::vector<std::vector<int>> patches(static_cast<size_t>(patch_count));
    for (int i = 0; i < sites; ++i) {
        patches[static_cast<size_t>(i * patch_count / sites)].push_back(i);
    }
    return std::make_shared<SpatialLattice>(Eigen::VectorXd::Constant(sites, weight),
                                            std::move(patches));
}

LatticePtr SpatialLattice::from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.contains("sites")) throw std::invalid_argument("lattice JSON missing \"sites\"");
    const int sites = doc["sites"].get<int>();
    if (sites <= 0) throw std::invalid_argument("lattice JSON: sites must be positive");

    Eigen::VectorXd weights = Eigen::VectorXd::Ones(sites);
    if (doc.contains("weights")) {
        auto w = doc["weights"].get<std::vector<double>>();
        if (static_cast<int>(w.size()) != sites) {
            throw std::invalid_argument("lattice JSON: weights length != sites");
        }
        weights = Eigen::Map<Eigen::VectorXd>(w.data(), sites);
    }

    std::vector<std::vector<int>> patches;
    if (doc.contains("patches")) {
        patches = doc["patches"].get<std::vector<std::vector<int>>>();
    } else {
        patches.emplace_back();
        for (int i = 0; i < sites; ++i) patches.front().push_back(i);
    }
    return std::make_shared<SpatialLattice>(std::move(weights), std::move(patches));
}

bool SpatialLattice::same_as(const SpatialLattice& other) const {
    return this == &other ||
           (weights_ == other.weights_ && patches_ == other.patches_);
}

FieldFunction::FieldFunction(LatticePtr lattice, const Eigen::VectorXd& values)
    : lattice_(std::move(lattice)), values_(values.cast<Complex>()), real_(true) {
    if (values.size() != lattice_->site_count()) {
        throw std::invalid_argument("field value count != lattice site count");
    }
}

FieldFunction::FieldFunction(LatticePtr lattice, Eigen::VectorXcd values)
    : lattice_(std::move(lattice)), values_(std::move(values)), real_(false) {
    if (values_.size() != lattice_->site_count()) {
        throw std::invalid_argument("field value count != lattice site count");
    }
}

FieldFunction FieldFunction::zero(LatticePtr lattice, bool real) {
    const int n = lattice->site_count();
    if (real) {
        const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(n);
        return FieldFunction(std::move(lattice), zeros);
    }
    Eigen::VectorXcd zeros = Eigen::VectorXcd::Zero(n);
    return FieldFunction(std::move(lattice), std::move(zeros));
}

Eigen::VectorXd FieldFunction::real_values() const {
    if (!real_) throw std::invalid_argument("field function is complex-valued");
    return values_.real();
}

FieldFunction FieldFunction::operator+(const FieldFunction& other) const {
    require_same_lattice(*this, other);
    require_same_scalar_type(*this, other);
    FieldFunction out = *this;
    out.values_ += other.values_;
    return out;
}

FieldFunction FieldFunction::operator-(const FieldFunction& other) const {
    require_same_lattice(*this, other);
    require_same_scalar_type(*this, other);
    FieldFunction out = *this;
    out.values_ -= other.values_;
    return out;
}

FieldFunction FieldFunction::scaled(Complex factor) const {
    if (real_ && factor.imag() != 0.0) {
        throw std::invalid_argument("complex scaling of a real field function");
    }
    FieldFunction out = *this;
    out.values_ *= factor;
    return out;
}

CompactlySupportedFunction::CompactlySupportedFunction(FieldFunction base,
                                                       std::set<int> support_patches)
    : base_(std::move(base)), support_(std::move(support_patches)) {
    const auto& lat = *base_.lattice();
    for (int p : support_) {
        if (p < 0 || p >= lat.patch_count()) {
            throw std::invalid_argument("support patch index out of range");
        }
    }
    for (int n = 0; n < lat.patch_count(); ++n) {
        if (support_.count(n)) continue;
        for (int site : lat.patch(n)) {
            if (std::abs(base_.values()[site]) != 0.0) {
                throw std::invalid_argument("nonzero value outside declared support patches");
            }
        }
    }
}

void require_same_lattice(const FieldFunction& f, const FieldFunction& g) {
    if (!f.lattice()->same_as(*g.lattice())) {
        throw LatticeMismatchError("field functions live on different lattices");
    }
}

void require_same_scalar_type(const FieldFunction& f, const FieldFunction& g) {
    if (f.is_real() != g.is_real()) {
        throw std::invalid_argument("mixing real and complex field functions");
    }
}

Complex l2_inner(const FieldFunction& f, const FieldFunction& g) {
    require_same_lattice(f, g);
    require_same_scalar_type(f, g);
    const Eigen::VectorXd& mu = f.lattice()->weights();
    Complex acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        acc += mu[i] * std::conj(f.values()[i]) * g.values()[i];
    }
    return acc;
}

double l2_norm(const FieldFunction& f) {
    return std::sqrt(std::real(l2_inner(f, f)));
}

double patch_norm(const FieldFunction& f, int patch) {
    const auto& lat = *f.lattice();
    double acc = 0.0;
    for (int site : lat.patch(patch)) {
        acc += lat.weight(site) * std::norm(f.values()[site]);
    }
    return std::sqrt(acc);
}

double frechet_metric(const FieldFunction& f, const FieldFunction& g) {
    require_same_lattice(f, g);
    require_same_scalar_type(f, g);
    const FieldFunction diff = f - g;
    double d = 0.0;
    double scale = 1.0;
    for (int n = 0; n < f.lattice()->patch_count(); ++n) {
        scale *= 0.5;  // patch n (0-based) carries weight 2^-(n+1)
        const double nn = patch_norm(diff, n);
        d += scale * nn / (1.0 + nn);
    }
    return d;
}

double dual_pair(const CompactlySupportedFunction& psi, const FieldFunction& phi) {
    require_same_lattice(psi.base(), phi);
    require_same_scalar_type(psi.base(), phi);
    const auto& lat = *phi.lattice();
    double acc = 0.0;
    for (int p : psi.support_patches()) {
        for (int site : lat.patch(p)) {
            acc += lat.weight(site) *
                   std::real(psi.base().values()[site] * phi.values()[site]);
        }
    }
    return acc;
}

CompactlySupportedFunction truncate_to_patches(const FieldFunction& f, int k) {
    const auto& lat = *f.lattice();
    if (k < 1 || k > lat.patch_count()) {
        throw std::invalid_argument("patch truncation index out of range");
    }
    Eigen::VectorXcd values = Eigen::VectorXcd::Zero(f.size());
    std::set<int> support;
    for (int n = 0; n < k; ++n) {
        support.insert(n);
        for (int site : lat.patch(n)) values[site] = f.values()[site];
    }
    FieldFunction base = f.is_real()
        ? FieldFunction(f.lattice(), Eigen::VectorXd(values.real()))
        : FieldFunction(f.lattice(), std::move(values));
    return CompactlySupportedFunction(std::move(base), std::move(support));
}

}  // namespace fieldlab
