#ifndef FIELDLAB_COVARIANT_HPP
#define FIELDLAB_COVARIANT_HPP

#include <vector>

#include "fieldlab/lattice.hpp"

namespace fieldlab {

/// 1+1D lattice: N periodic spatial sites with spacing a, T time slices with
/// step dt. Stability requires dt/a <= 1.
struct SpacetimeLattice {
    int sites;
    int steps;
    double spacing;
    double dt;

    SpacetimeLattice(int sites_, int steps_, double spacing_, double dt_);

    /// Periodic spatial distance in cells.
    int cell_distance(int x1, int x2) const;
};

struct Event {
    int t;
    int x;
};

enum class PropagatorKind { retarded, advanced };

/// Rows are time slices, columns spatial sites.
using FieldHistory = Eigen::MatrixXd;

/// Impulse response of the leapfrog Klein-Gordon stepper,
/// phi^{t+1} = 2 phi^t - phi^{t-1} + dt^2 (Lap phi - m^2 phi), with unit
/// spacetime-delta source amplitude 1/(a dt) at the source event. The
/// retarded kernel vanishes at and before the source slice, the advanced one
/// at and after.
FieldHistory propagator(const SpacetimeLattice& lat, double mass, Event source,
                        PropagatorKind kind);

/// PJ(e, e') = R(e; e') - A(e; e'): response at e to a source at e'.
double pauli_jordan(const SpacetimeLattice& lat, double mass, Event e, Event source);

/// Max interior residual of the discrete field equation.
double equation_residual(const SpacetimeLattice& lat, double mass, const FieldHistory& phi);

/// Forward evolution from the first two slices.
FieldHistory evolve_solution(const SpacetimeLattice& lat, double mass,
                             const Eigen::VectorXd& slice0, const Eigen::VectorXd& slice1);

/// sum_x a (phi1 dphi2/dt - phi2 dphi1/dt) at slice t, centered time
/// difference matching the leapfrog stencil; slice-independent for solutions.
/// Inputs must solve the discrete equation to 1e-8.
double surface_form(const SpacetimeLattice& lat, double mass, const FieldHistory& phi1,
                    const FieldHistory& phi2, int t);

struct SourceTerm {
    Event event;
    double amplitude;
};

/// Solution obtained by smearing the Pauli-Jordan kernel over sources.
FieldHistory pj_smear(const SpacetimeLattice& lat, double mass,
                      const std::vector<SourceTerm>& sources);

/// Bilinear source pairing sum s1(e) PJ(e,e') s2(e') (a dt)^2; equals the
/// surface form of the smeared solutions.
double pj_pairing(const SpacetimeLattice& lat, double mass,
                  const std::vector<SourceTerm>& s1, const std::vector<SourceTerm>& s2);

std::string kernel_to_csv(const FieldHistory& phi);  // columns: t, x, value

}  // namespace fieldlab

#endif
