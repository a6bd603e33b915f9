#include "fieldlab/moyal.hpp"

#include <algorithm>
#include <cmath>

namespace fieldlab {

namespace {

constexpr double kKeyQuantum = 1e-12;

std::vector<double> canonical_key(const Eigen::VectorXd& coords) {
    std::vector<double> key(static_cast<size_t>(coords.size()));
    for (int i = 0; i < coords.size(); ++i) {
        const double rounded = std::round(coords[i] / kKeyQuantum) * kKeyQuantum;
        key[static_cast<size_t>(i)] = rounded == 0.0 ? 0.0 : rounded;  // normalize -0
    }
    return key;
}

PhaseVector key_to_vector(const LatticePtr& lattice, const std::vector<double>& key) {
    Eigen::VectorXd coords =
        Eigen::Map<const Eigen::VectorXd>(key.data(), static_cast<long>(key.size()));
    return PhaseVector(lattice, coords);
}

}  // namespace

WeylElement::WeylElement(LatticePtr lattice) : lattice_(std::move(lattice)) {}

WeylElement WeylElement::generator(const PhaseVector& eta, Complex alpha) {
    WeylElement out(eta.lattice());
    out.add_term(eta, alpha);
    return out;
}

WeylElement WeylElement::unit(LatticePtr lattice) {
    return generator(PhaseVector::zero(lattice), 1.0);
}

WeylElement WeylElement::zero(LatticePtr lattice) { return WeylElement(std::move(lattice)); }

void WeylElement::add_term(const PhaseVector& eta, Complex alpha) {
    if (!eta.lattice()->same_as(*lattice_)) {
        throw LatticeMismatchError("generator on a different lattice");
    }
    const std::vector<double> key = canonical_key(eta.coords());
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (alpha != Complex(0.0)) terms_[key] = alpha;
    } else {
        it->second += alpha;
        if (it->second == Complex(0.0)) terms_.erase(it);
    }
}

WeylElement WeylElement::operator+(const WeylElement& other) const {
    if (!other.lattice_->same_as(*lattice_)) {
        throw LatticeMismatchError("elements on different lattices");
    }
    WeylElement out = *this;
    for (const auto& [key, alpha] : other.terms_) {
        auto it = out.terms_.find(key);
        if (it == out.terms_.end()) {
            out.terms_[key] = alpha;
        } else {
            it->second += alpha;
            if (it->second == Complex(0.0)) out.terms_.erase(it);
        }
    }
    return out;
}

WeylElement WeylElement::scaled(Complex factor) const {
    WeylElement out(lattice_);
    if (factor == Complex(0.0)) return out;
    for (const auto& [key, alpha] : terms_) out.terms_[key] = factor * alpha;
    return out;
}

Complex WeylElement::evaluate(const PhaseVector& psi) const {
    Complex acc = 0.0;
    for (const auto& [key, alpha] : terms_) {
        acc += alpha * std::exp(Complex(0.0, dual_pairing(key_to_vector(lattice_, key), psi)));
    }
    return acc;
}

bool WeylElement::approx_equal(const WeylElement& other, double tol) const {
    WeylElement diff = *this + other.scaled(-1.0);
    for (const auto& [key, alpha] : diff.terms_) {
        if (std::abs(alpha) > tol) return false;
    }
    return true;
}

double dual_pairing(const PhaseVector& eta, const PhaseVector& psi) {
    require_same_lattice(eta, psi);
    const Eigen::VectorXd& mu = eta.lattice()->weights();
    const int n = eta.sites();
    const Eigen::VectorXd a = eta.coords();
    const Eigen::VectorXd b = psi.coords();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += mu[i] * (a[i] * b[i] + a[n + i] * b[n + i]);
    }
    return acc;
}

WeylElement weyl_star(const WeylElement& a, const WeylElement& b) {
    if (!a.lattice()->same_as(*b.lattice())) {
        throw LatticeMismatchError("elements on different lattices");
    }
    WeylElement out(a.lattice());
    for (const auto& [ka, alpha] : a.terms()) {
        const PhaseVector eta_a = key_to_vector(a.lattice(), ka);
        for (const auto& [kb, beta] : b.terms()) {
            const PhaseVector eta_b = key_to_vector(a.lattice(), kb);
            const Complex phase = std::exp(Complex(0.0, -0.5 * omega(eta_a, eta_b)));
            out.add_term(eta_a + eta_b, alpha * beta * phase);
        }
    }
    return out;
}

WeylElement weyl_involution(const WeylElement& a) {
    WeylElement out(a.lattice());
    for (const auto& [key, alpha] : a.terms()) {
        out.add_term(key_to_vector(a.lattice(), key).scaled(-1.0), std::conj(alpha));
    }
    return out;
}

std::pair<double, double> sup_norm_bounds(const WeylElement& a, int sample_count, Rng& rng) {
    if (sample_count < 1) throw std::invalid_argument("sample count must be >= 1");
    double upper = 0.0;
    for (const auto& [key, alpha] : a.terms()) upper += std::abs(alpha);
    double lower = 0.0;
    const int dim = 2 * a.lattice()->site_count();
    // include the origin; single-generator elements then give lower == upper
    lower = std::abs(a.evaluate(PhaseVector::zero(a.lattice())));
    for (int s = 1; s < sample_count; ++s) {
        const PhaseVector psi(a.lattice(), random_vector(rng, dim, 2.0));
        lower = std::max(lower, std::abs(a.evaluate(psi)));
    }
    lower = std::min(lower, upper);  // clamp sampling roundoff
    return {lower, upper};
}

PolynomialObservable::PolynomialObservable(LatticePtr lattice) : lattice_(std::move(lattice)) {}

PolynomialObservable PolynomialObservable::constant(LatticePtr lattice, Complex c) {
    PolynomialObservable out(lattice);
    out.add_monomial(std::vector<int>(static_cast<size_t>(2 * lattice->site_count()), 0), c);
    return out;
}

PolynomialObservable PolynomialObservable::coordinate(LatticePtr lattice, int coord) {
    const int dim = 2 * lattice->site_count();
    if (coord < 0 || coord >= dim) throw std::invalid_argument("coordinate index out of range");
    PolynomialObservable out(lattice);
    std::vector<int> exp(static_cast<size_t>(dim), 0);
    exp[static_cast<size_t>(coord)] = 1;
    out.add_monomial(exp, 1.0);
    return out;
}

PolynomialObservable PolynomialObservable::phi(LatticePtr lattice, int site) {
    return coordinate(lattice, site);
}

PolynomialObservable PolynomialObservable::pi(LatticePtr lattice, int site) {
    const int offset = lattice->site_count();
    return coordinate(std::move(lattice), offset + site);
}

int PolynomialObservable::degree() const {
    int deg = 0;
    for (const auto& [exp, c] : monos_) {
        int total = 0;
        for (int e : exp) total += e;
        deg = std::max(deg, total);
    }
    return deg;
}

double PolynomialObservable::max_coefficient() const {
    double m = 0.0;
    for (const auto& [exp, c] : monos_) m = std::max(m, std::abs(c));
    return m;
}

void PolynomialObservable::add_monomial(const std::vector<int>& exponents, Complex coeff) {
    if (static_cast<int>(exponents.size()) != 2 * lattice_->site_count()) {
        throw std::invalid_argument("exponent multi-index has wrong length");
    }
    auto it = monos_.find(exponents);
    if (it == monos_.end()) {
        if (coeff != Complex(0.0)) monos_[exponents] = coeff;
    } else {
        it->second += coeff;
        if (it->second == Complex(0.0)) monos_.erase(it);
    }
}

PolynomialObservable PolynomialObservable::operator+(const PolynomialObservable& other) const {
    PolynomialObservable out = *this;
    for (const auto& [exp, c] : other.monos_) out.add_monomial(exp, c);
    return out;
}

PolynomialObservable PolynomialObservable::operator-(const PolynomialObservable& other) const {
    return *this + other.scaled(-1.0);
}

PolynomialObservable PolynomialObservable::operator*(const PolynomialObservable& other) const {
    PolynomialObservable out(lattice_);
    for (const auto& [ea, ca] : monos_) {
        for (const auto& [eb, cb] : other.monos_) {
            std::vector<int> exp = ea;
            for (size_t i = 0; i < exp.size(); ++i) exp[i] += eb[i];
            out.add_monomial(exp, ca * cb);
        }
    }
    return out;
}

PolynomialObservable PolynomialObservable::scaled(Complex factor) const {
    PolynomialObservable out(lattice_);
    if (factor == Complex(0.0)) return out;
    for (const auto& [exp, c] : monos_) out.monos_[exp] = factor * c;
    return out;
}

PolynomialObservable PolynomialObservable::pow(int exponent) const {
    if (exponent < 0) throw std::invalid_argument("negative polynomial power");
    PolynomialObservable out = constant(lattice_, 1.0);
    for (int k = 0; k < exponent; ++k) out = out * (*this);
    return out;
}

PolynomialObservable PolynomialObservable::derivative(int coord) const {
    PolynomialObservable out(lattice_);
    for (const auto& [exp, c] : monos_) {
        const int e = exp[static_cast<size_t>(coord)];
        if (e == 0) continue;
        std::vector<int> lowered = exp;
        lowered[static_cast<size_t>(coord)] -= 1;
        out.add_monomial(lowered, c * static_cast<double>(e));
    }
    return out;
}

Complex PolynomialObservable::evaluate(const PhaseVector& psi) const {
    const Eigen::VectorXd x = psi.coords();
    Complex acc = 0.0;
    for (const auto& [exp, c] : monos_) {
        Complex term = c;
        for (size_t i = 0; i < exp.size(); ++i) {
            for (int k = 0; k < exp[i]; ++k) term *= x[static_cast<long>(i)];
        }
        acc += term;
    }
    return acc;
}

PolynomialObservable PolynomialObservable::compose(
    const std::vector<PolynomialObservable>& map) const {
    if (static_cast<int>(map.size()) != 2 * lattice_->site_count()) {
        throw std::invalid_argument("polynomial map has wrong coordinate count");
    }
    PolynomialObservable out(lattice_);
    for (const auto& [exp, c] : monos_) {
        PolynomialObservable term = constant(lattice_, c);
        for (size_t i = 0; i < exp.size(); ++i) {
            if (exp[i] > 0) term = term * map[i].pow(exp[i]);
        }
        out = out + term;
    }
    return out;
}

PolynomialObservable moyal_star_poly(const PolynomialObservable& p,
                                     const PolynomialObservable& q) {
    if (!p.lattice()->same_as(*q.lattice())) {
        throw LatticeMismatchError("polynomials on different lattices");
    }
    const LatticePtr& lattice = p.lattice();
    const int n = lattice->site_count();
    const Eigen::VectorXd& mu = lattice->weights();
    const int max_order = std::min(p.degree(), q.degree());

    PolynomialObservable result(lattice);
    // contraction stack: sum_k c_k (partials of p) x (partials of q)
    struct Pair {
        PolynomialObservable left, right;
        Complex coeff;
    };
    std::vector<Pair> stack{{p, q, Complex(1.0)}};
    Complex series_factor = 1.0;  // (i/2)^order / order!
    for (int order = 0; order <= max_order; ++order) {
        if (order > 0) {
            series_factor *= Complex(0.0, 0.5) / static_cast<double>(order);
            std::vector<Pair> next;
            for (const Pair& pair : stack) {
                for (int site = 0; site < n; ++site) {
                    const int phi_c = site, pi_c = n + site;
                    PolynomialObservable lp = pair.left.derivative(phi_c);
                    PolynomialObservable rq = pair.right.derivative(pi_c);
                    if (!lp.monomials().empty() && !rq.monomials().empty()) {
                        next.push_back({std::move(lp), std::move(rq), pair.coeff / mu[site]});
                    }
                    PolynomialObservable lp2 = pair.left.derivative(pi_c);
                    PolynomialObservable rq2 = pair.right.derivative(phi_c);
                    if (!lp2.monomials().empty() && !rq2.monomials().empty()) {
                        next.push_back({std::move(lp2), std::move(rq2), -pair.coeff / mu[site]});
                    }
                }
            }
            stack = std::move(next);
            if (stack.empty()) break;
        }
        for (const Pair& pair : stack) {
            result = result + (pair.left * pair.right).scaled(series_factor * pair.coeff);
        }
    }
    return result;
}

GaussianState::GaussianState(PhaseVector mean, ComplexStructure j)
    : mean_(std::move(mean)), j_(std::move(j)) {
    if (!mean_.lattice()->same_as(*j_.lattice())) {
        throw LatticeMismatchError("mean and complex structure on different lattices");
    }
}

Complex GaussianState::characteristic(const PhaseVector& eta) const {
    const double linear = dual_pairing(eta, mean_);
    const double quad = omega(j_.apply(eta), eta);
    return std::exp(Complex(-0.25 * quad, linear));
}

Complex gaussian_expect(const GaussianState& state, const WeylElement& a) {
    if (!a.lattice()->same_as(*state.mean().lattice())) {
        throw LatticeMismatchError("element and state on different lattices");
    }
    Complex acc = 0.0;
    for (const auto& [key, alpha] : a.terms()) {
        Eigen::VectorXd coords =
            Eigen::Map<const Eigen::VectorXd>(key.data(), static_cast<long>(key.size()));
        acc += alpha * state.characteristic(PhaseVector(a.lattice(), coords));
    }
    return acc;
}

Complex NPointTensor::at(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != order) throw std::invalid_argument("index rank mismatch");
    size_t flat = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim) throw std::invalid_argument("index out of range");
        flat = flat * static_cast<size_t>(dim) + static_cast<size_t>(i);
    }
    return data[flat];
}

NPointTensor n_point(const GaussianState& state, int order) {
    if (order < 1 || order > 4) throw std::invalid_argument("n_point supports orders 1..4");
    const LatticePtr& lattice = state.mean().lattice();
    const int n = lattice->site_count();
    const int dim = 2 * n;
    const Eigen::VectorXd& mu = lattice->weights();

    // E = exp(i m(y) - 1/4 y^T Q y); derivatives keep the form P(y) E
    const Eigen::MatrixXd om = omega_matrix(*lattice);
    const Eigen::MatrixXd jq = state.structure().matrix().transpose() * om;
    const Eigen::MatrixXd q = 0.5 * (jq + jq.transpose());
    Eigen::VectorXd linear(dim);
    const Eigen::VectorXd mean = state.mean().coords();
    for (int i = 0; i < n; ++i) {
        linear[i] = mu[i] * mean[i];
        linear[n + i] = mu[i] * mean[n + i];
    }

    auto log_derivative = [&](int coord) {
        // d/dy_coord of (i m(y) - 1/4 y^T Q y)
        PolynomialObservable out = PolynomialObservable::constant(
            lattice, Complex(0.0, linear[coord]));
        for (int b = 0; b < dim; ++b) {
            if (q(coord, b) != 0.0) {
                out = out + PolynomialObservable::coordinate(lattice, b).scaled(
                                -0.5 * q(coord, b));
            }
        }
        return out;
    };

    NPointTensor tensor;
    tensor.order = order;
    tensor.dim = dim;
    size_t total = 1;
    for (int k = 0; k < order; ++k) total *= static_cast<size_t>(dim);
    tensor.data.assign(total, Complex(0.0));

    const PhaseVector origin = PhaseVector::zero(lattice);
    const Complex minus_i(0.0, -1.0);
    std::vector<int> idx(static_cast<size_t>(order), 0);
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        for (int k = order - 1; k >= 0; --k) {
            idx[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(dim));
            rem /= static_cast<size_t>(dim);
        }
        PolynomialObservable prefactor = PolynomialObservable::constant(lattice, 1.0);
        Complex scale = 1.0;
        for (int k = 0; k < order; ++k) {
            const int coord = idx[static_cast<size_t>(k)];
            prefactor = prefactor.derivative(coord) + prefactor * log_derivative(coord);
            scale *= minus_i / mu[coord % n];  // Riesz scaling per index
        }
        tensor.data[flat] = scale * prefactor.evaluate(origin);  // E(0) = 1
    }
    return tensor;
}

WeylElement linear_automorphism(const SymplecticMap& u, const WeylElement& a) {
    if (!u.is_linear) {
        throw std::invalid_argument(
            "no *-automorphism exists for the covariant action of a nonlinear map");
    }
    const PhaseVector origin = PhaseVector::zero(a.lattice());
    const Eigen::MatrixXd du = u.derivative_at(origin);
    const Eigen::MatrixXd om = omega_matrix(*a.lattice());
    if ((du.transpose() * om * du - om).cwiseAbs().maxCoeff() >
        1e-10 * std::max(1.0, du.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("map is not symplectic");
    }
    WeylElement out(a.lattice());
    for (const auto& [key, alpha] : a.terms()) {
        Eigen::VectorXd coords =
            Eigen::Map<const Eigen::VectorXd>(key.data(), static_cast<long>(key.size()));
        out.add_term(u.apply(PhaseVector(a.lattice(), coords)), alpha);
    }
    return out;
}

PolynomialMap polynomial_map_identity(const LatticePtr& lattice) {
    PolynomialMap map;
    for (int c = 0; c < 2 * lattice->site_count(); ++c) {
        map.push_back(PolynomialObservable::coordinate(lattice, c));
    }
    return map;
}

double star_covariance_residual(const PolynomialObservable& f, const PolynomialObservable& g,
                                const PolynomialMap& u) {
    const PolynomialObservable lhs = moyal_star_poly(f.compose(u), g.compose(u));
    const PolynomialObservable rhs = moyal_star_poly(f, g).compose(u);
    return (lhs - rhs).max_coefficient();
}

}  // namespace fieldlab
