#include <doctest.h>

#include <cmath>

#include "fieldlab/fock.hpp"
#include "fieldlab/numerics.hpp"

using namespace fieldlab;

namespace {

Eigen::MatrixXcd dense(const SparseOp& op) { return Eigen::MatrixXcd(op); }

}  // namespace

TEST_CASE("fock basis enumeration") {
    const auto space = FockSpace::make(2, 2);
    CHECK(space->dim() == 6);  // C(4,2)

    // graded by total, larger leading occupation first inside a sector
    CHECK(space->occupation(0) == std::vector<int>{0, 0});
    CHECK(space->occupation(1) == std::vector<int>{1, 0});
    CHECK(space->occupation(2) == std::vector<int>{0, 1});
    CHECK(space->occupation(3) == std::vector<int>{2, 0});
    CHECK(space->occupation(4) == std::vector<int>{1, 1});
    CHECK(space->occupation(5) == std::vector<int>{0, 2});

    CHECK(space->index_of({1, 1}) == 4);
    CHECK(space->index_of({3, 0}) == -1);
    CHECK(space->total_particles(5) == 2);

    SUBCASE("dimension formula on larger truncations") {
        CHECK(FockSpace::make(3, 4)->dim() == 35);  // C(7,4)
        CHECK(FockSpace::make(1, 6)->dim() == 7);
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(FockSpace::make(0, 2), std::invalid_argument);
        CHECK_THROWS_AS(FockSpace::make(2, -1), std::invalid_argument);
    }
}

TEST_CASE("ladder operator matrix elements") {
    const auto space = FockSpace::make(1, 3);
    const Eigen::MatrixXcd a = dense(space->mode_annihilator(0));
    // a |n> = sqrt(n) |n-1>
    CHECK(std::abs(a(0, 1) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(a(1, 2) - Complex(std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(a(2, 3) - Complex(std::sqrt(3.0))) < 1e-15);
    const Eigen::MatrixXcd ad = dense(space->mode_creator(0));
    CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("canonical commutation relations below the cutoff") {
    const auto space = FockSpace::make(3, 4);
    Rng rng(13);
    const Eigen::MatrixXcd proj = sector_projector(*space, 3);  // cutoff - 1

    for (int k = 0; k < 10; ++k) {
        const ModeVector eta = random_complex_vector(rng, 3);
        const ModeVector psi = random_complex_vector(rng, 3);
        const Eigen::MatrixXcd a = dense(annihilation_operator(*space, eta));
        const Eigen::MatrixXcd bd = dense(creation_operator(*space, psi));
        const Complex pairing = eta.dot(psi);  // conj-linear in eta

        const Eigen::MatrixXcd comm = a * bd - bd * a;
        const Eigen::MatrixXcd expected = pairing * Eigen::MatrixXcd::Identity(space->dim(), space->dim());
        // exact on states kept away from the truncation surface
        const double residual = (proj * (comm - expected) * proj).cwiseAbs().maxCoeff();
        CHECK(residual <= 1e-12);

        // commutators of two annihilators vanish everywhere
        const Eigen::MatrixXcd b = dense(annihilation_operator(*space, psi));
        CHECK((a * b - b * a).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("annihilation is antilinear in its label") {
    const auto space = FockSpace::make(2, 2);
    Rng rng(19);
    const ModeVector eta = random_complex_vector(rng, 2);
    const Complex c(0.3, -1.2);
    const Eigen::MatrixXcd lhs = dense(annihilation_operator(*space, (c * eta).eval()));
    const Eigen::MatrixXcd rhs = std::conj(c) * dense(annihilation_operator(*space, eta));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("vacuum and one-particle states") {
    const auto space = FockSpace::make(2, 3);
    const FockState vac = FockState::vacuum(space);
    CHECK(vac.is_physical());
    CHECK(space->total_particles(0) == 0);

    ModeVector eta(2);
    eta << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const FockState one = FockState::single_particle(space, eta);
    CHECK(one.is_physical());

    // a_eta a^dag_eta |0> = <eta,eta>|0>
    const FockState round = annihilate(eta, create(eta, vac));
    CHECK(std::abs(round.inner(vac) / vac.inner(vac) - eta.squaredNorm()) < 1e-13);

    SUBCASE("annihilating the vacuum gives zero") {
        CHECK(annihilate(eta, vac).norm() == 0.0);
    }
    SUBCASE("basis states are orthonormal") {
        const FockState s1 = FockState::basis_state(space, {2, 1});
        const FockState s2 = FockState::basis_state(space, {1, 2});
        CHECK(std::abs(s1.inner(s1) - Complex(1.0)) < 1e-15);
        CHECK(std::abs(s1.inner(s2)) < 1e-15);
    }
}

TEST_CASE("number operators") {
    const auto space = FockSpace::make(2, 3);
    const Eigen::MatrixXcd n_total = dense(total_number(*space));
    for (int i = 0; i < space->dim(); ++i) {
        CHECK(std::abs(n_total(i, i) - Complex(space->total_particles(i))) < 1e-15);
    }

    ModeVector e0 = ModeVector::Zero(2);
    e0[0] = 1.0;
    const Eigen::MatrixXcd n0 = dense(number_operator(*space, e0));
    const int idx = space->index_of({2, 1});
    CHECK(std::abs(n0(idx, idx) - Complex(2.0)) < 1e-14);
}

TEST_CASE("density operator integrates to total number") {
    const auto lat = SpatialLattice::from_json(R"({"sites": 2, "weights": [0.5, 2.0]})");
    const auto space = FockSpace::make(2, 2);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(space->dim(), space->dim());
    for (int x = 0; x < 2; ++x) {
        sum += lat->weight(x) * dense(density_operator(*space, *lat, x));
    }
    CHECK((sum - dense(total_number(*space))).cwiseAbs().maxCoeff() < 1e-13);

    const auto wrong = SpatialLattice::uniform(3);
    CHECK_THROWS_AS(density_operator(*space, *wrong, 0), std::invalid_argument);
}

TEST_CASE("weyl operators") {
    const auto space = FockSpace::make(1, 24);
    ModeVector eta(1);
    eta << 1.0;
    const auto w = weyl_operator(*space, eta);
    CHECK(w.unitarity_residual < 1e-10);

    // vacuum expectation exp(-|eta|^2/4)
    const Complex vev = w.matrix(0, 0);
    CHECK(std::real(vev) == doctest::Approx(std::exp(-0.25)).epsilon(1e-8));
    CHECK(std::abs(std::imag(vev)) < 1e-10);

    SUBCASE("W(-eta) is the inverse") {
        const auto winv = weyl_operator(*space, (-eta).eval());
        const Eigen::MatrixXcd prod = w.matrix * winv.matrix;
        CHECK((prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-8);
    }
    SUBCASE("Weyl relation holds to the truncation tolerance") {
        ModeVector psi(1);
        psi << Complex(0.0, 0.7);
        const auto wp = weyl_operator(*space, psi);
        const auto wsum = weyl_operator(*space, (eta + psi).eval());
        // W(e)W(p) = exp(-i Im<e,p>/2) W(e+p)
        const Complex phase = std::exp(Complex(0.0, -0.5 * std::imag(eta.dot(psi))));
        const Eigen::MatrixXcd lhs = w.matrix * wp.matrix;
        const Eigen::MatrixXcd rhs = phase * wsum.matrix;
        const int keep = 12;  // stay away from the truncation surface
        CHECK((lhs - rhs).topLeftCorner(keep, keep).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("second quantization") {
    const auto space = FockSpace::make(2, 3);
    Rng rng(23);
    // random unitary via Hermitian exponential
    const Eigen::MatrixXcd herm =
        [&] {
            Eigen::MatrixXcd m = random_complex_vector(rng, 4).reshaped(2, 2).eval();
            return ((m + m.adjoint()) / 2.0).eval();
        }();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::MatrixXcd u =
        es.eigenvectors() *
        (Complex(0, 1) * es.eigenvalues().array()).exp().matrix().asDiagonal() *
        es.eigenvectors().inverse();

    const Eigen::MatrixXcd gu = second_quantize(*space, u);

    SUBCASE("exactly unitary") {
        CHECK((gu * gu.adjoint() -
               Eigen::MatrixXcd::Identity(space->dim(), space->dim()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("commutes with total number") {
        const Eigen::MatrixXcd n = dense(total_number(*space));
        CHECK((gu * n - n * gu).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("functorial on products") {
        const Eigen::MatrixXcd gu2 = second_quantize(*space, (u * u).eval());
        CHECK((gu * gu - gu2).cwiseAbs().maxCoeff() < 1e-11);
    }
    SUBCASE("intertwines creation operators") {
        Rng rng2(3);
        const ModeVector eta = random_complex_vector(rng2, 2);
        const Eigen::MatrixXcd cd = dense(creation_operator(*space, eta));
        const Eigen::MatrixXcd cd_u = dense(creation_operator(*space, (u * eta).eval()));
        const Eigen::MatrixXcd proj = sector_projector(*space, 2);
        CHECK((proj * (gu * cd * gu.adjoint() - cd_u) * proj).cwiseAbs().maxCoeff() < 1e-11);
    }
    SUBCASE("non-unitary input is rejected") {
        CHECK_THROWS_AS(second_quantize(*space, (2.0 * u).eval()), std::invalid_argument);
    }
}

TEST_CASE("quantum evolution conserves norm and energy") {
    const auto space = FockSpace::make(2, 3);
    Eigen::MatrixXcd h1(2, 2);
    h1 << 1.0, Complex(0.2, 0.1), Complex(0.2, -0.1), 2.0;
    const SparseOp hf = fock_hamiltonian(*space, h1);

    Rng rng(29);
    const FockState psi0 =
        FockState(space, random_complex_vector(rng, space->dim())).normalized();
    const FockState psi1 = evolve_quantum(hf, psi0, 1.4);
    CHECK(psi1.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const Eigen::MatrixXcd hd = dense(hf);
    const Complex e0 = psi0.coefficients().dot(hd * psi0.coefficients());
    const Complex e1 = psi1.coefficients().dot(hd * psi1.coefficients());
    CHECK(std::abs(e1 - e0) < 1e-11);

    SUBCASE("non-self-adjoint one-particle matrix is rejected") {
        Eigen::MatrixXcd bad(2, 2);
        bad << 0.0, 1.0, 0.0, 0.0;
        CHECK_THROWS_AS(total_t_operator(*space, bad), std::invalid_argument);
    }
}

TEST_CASE("sector projector") {
    const auto space = FockSpace::make(2, 3);
    const Eigen::MatrixXcd p = sector_projector(*space, 1);
    CHECK((p * p - p).cwiseAbs().maxCoeff() == 0.0);
    double trace = std::real(p.trace());
    CHECK(trace == doctest::Approx(3.0));  // |00>, |10>, |01>
}
