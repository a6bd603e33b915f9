#include "fieldlab/covariant.hpp"

#include <cmath>
#include <sstream>

namespace fieldlab {

SpacetimeLattice::SpacetimeLattice(int sites_, int steps_, double spacing_, double dt_)
    : sites(sites_), steps(steps_), spacing(spacing_), dt(dt_) {
    if (sites < 2 || steps < 2) throw std::invalid_argument("need at least 2 sites and 2 steps");
    if (spacing <= 0.0 || dt <= 0.0) throw std::invalid_argument("spacing and dt must be positive");
    if (dt / spacing > 1.0 + 1e-12) {
        throw NumericalGuardError("instability guard: dt/a must not exceed 1");
    }
}

int SpacetimeLattice::cell_distance(int x1, int x2) const {
    const int d = std::abs(x1 - x2) % sites;
    return std::min(d, sites - d);
}

namespace {

Eigen::VectorXd step_slice(const SpacetimeLattice& lat, double mass,
                           const Eigen::VectorXd& prev, const Eigen::VectorXd& curr) {
    const int n = lat.sites;
    const double c = lat.dt * lat.dt / (lat.spacing * lat.spacing);
    Eigen::VectorXd next(n);
    for (int x = 0; x < n; ++x) {
        const double lap = curr[(x + 1) % n] - 2.0 * curr[x] + curr[(x + n - 1) % n];
        next[x] = 2.0 * curr[x] - prev[x] + c * lap -
                  lat.dt * lat.dt * mass * mass * curr[x];
    }
    return next;
}

void check_event(const SpacetimeLattice& lat, Event e) {
    if (e.t < 0 || e.t >= lat.steps || e.x < 0 || e.x >= lat.sites) {
        throw std::invalid_argument("event outside the spacetime lattice");
    }
}

}  // namespace

FieldHistory propagator(const SpacetimeLattice& lat, double mass, Event source,
                        PropagatorKind kind) {
    check_event(lat, source);
    FieldHistory phi = FieldHistory::Zero(lat.steps, lat.sites);
    // spacetime delta of amplitude 1/(a dt) enters one step after the source
    // slice with weight dt^2
    if (kind == PropagatorKind::retarded) {
        if (source.t + 1 < lat.steps) {
            phi(source.t + 1, source.x) = lat.dt / lat.spacing;
            for (int t = source.t + 2; t < lat.steps; ++t) {
                phi.row(t) = step_slice(lat, mass, phi.row(t - 2), phi.row(t - 1)).transpose();
            }
        }
    } else {
        if (source.t - 1 >= 0) {
            phi(source.t - 1, source.x) = lat.dt / lat.spacing;
            for (int t = source.t - 2; t >= 0; --t) {
                phi.row(t) = step_slice(lat, mass, phi.row(t + 2), phi.row(t + 1)).transpose();
            }
        }
    }
    return phi;
}

double pauli_jordan(const SpacetimeLattice& lat, double mass, Event e, Event source) {
    check_event(lat, e);
    const FieldHistory r = propagator(lat, mass, source, PropagatorKind::retarded);
    const FieldHistory a = propagator(lat, mass, source, PropagatorKind::advanced);
    return r(e.t, e.x) - a(e.t, e.x);
}

double equation_residual(const SpacetimeLattice& lat, double mass, const FieldHistory& phi) {
    if (phi.rows() != lat.steps || phi.cols() != lat.sites) {
        throw std::invalid_argument("field history has wrong shape");
    }
    double res = 0.0;
    for (int t = 1; t + 1 < lat.steps; ++t) {
        const Eigen::VectorXd predicted = step_slice(lat, mass, phi.row(t - 1), phi.row(t));
        res = std::max(res, (phi.row(t + 1).transpose() - predicted).cwiseAbs().maxCoeff());
    }
    return res;
}

FieldHistory evolve_solution(const SpacetimeLattice& lat, double mass,
                             const Eigen::VectorXd& slice0, const Eigen::VectorXd& slice1) {
    if (slice0.size() != lat.sites || slice1.size() != lat.sites) {
        throw std::invalid_argument("initial slice has wrong length");
    }
    FieldHistory phi(lat.steps, lat.sites);
    phi.row(0) = slice0.transpose();
    phi.row(1) = slice1.transpose();
    for (int t = 2; t < lat.steps; ++t) {
        phi.row(t) = step_slice(lat, mass, phi.row(t - 2), phi.row(t - 1)).transpose();
    }
    return phi;
}

double surface_form(const SpacetimeLattice& lat, double mass, const FieldHistory& phi1,
                    const FieldHistory& phi2, int t) {
    if (t < 1 || t + 1 >= lat.steps) {
        throw std::invalid_argument("slice must have both time neighbours");
    }
    for (const FieldHistory* phi : {&phi1, &phi2}) {
        const double res = equation_residual(lat, mass, *phi);
        if (res > 1e-8) {
            throw std::invalid_argument("input does not solve the discrete equation: residual " +
                                        std::to_string(res));
        }
    }
    double acc = 0.0;
    for (int x = 0; x < lat.sites; ++x) {
        const double d2 = (phi2(t + 1, x) - phi2(t - 1, x)) / (2.0 * lat.dt);
        const double d1 = (phi1(t + 1, x) - phi1(t - 1, x)) / (2.0 * lat.dt);
        acc += lat.spacing * (phi1(t, x) * d2 - phi2(t, x) * d1);
    }
    return acc;
}

FieldHistory pj_smear(const SpacetimeLattice& lat, double mass,
                      const std::vector<SourceTerm>& sources) {
    FieldHistory out = FieldHistory::Zero(lat.steps, lat.sites);
    for (const SourceTerm& s : sources) {
        const FieldHistory r = propagator(lat, mass, s.event, PropagatorKind::retarded);
        const FieldHistory a = propagator(lat, mass, s.event, PropagatorKind::advanced);
        out += s.amplitude * (r - a);
    }
    return out;
}

double pj_pairing(const SpacetimeLattice& lat, double mass,
                  const std::vector<SourceTerm>& s1, const std::vector<SourceTerm>& s2) {
    const double cell = lat.spacing * lat.dt;
    double acc = 0.0;
    for (const SourceTerm& b : s2) {
        const FieldHistory r = propagator(lat, mass, b.event, PropagatorKind::retarded);
        const FieldHistory a = propagator(lat, mass, b.event, PropagatorKind::advanced);
        for (const SourceTerm& f : s1) {
            acc += f.amplitude * b.amplitude * cell * cell *
                   (r(f.event.t, f.event.x) - a(f.event.t, f.event.x));
        }
    }
    return acc;
}

std::string kernel_to_csv(const FieldHistory& phi) {
    std::ostringstream out;
    out << "t,x,value\n";
    out.precision(17);
    for (int t = 0; t < phi.rows(); ++t) {
        for (int x = 0; x < phi.cols(); ++x) {
            out << t << "," << x << "," << phi(t, x) << "\n";
        }
    }
    return out.str();
}

}  // namespace fieldlab
