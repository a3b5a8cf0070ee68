#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fcqed/model.hpp"

using namespace fcqed;
using std::numbers::pi;

namespace {

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    return solver.eigenvalues();
}

}  // namespace

TEST_CASE("sector-1 spectrum of the uniform chain is the 5-site path spectrum") {
    SystemParams p;  // g1 = g2 = nu = 1, Delta = 0
    const HamiltonianBlock b = build_hamiltonian(p, 1);
    const Eigen::VectorXd w = sorted_eigenvalues(b.matrix);
    // eigenvalues 2 cos(k pi/6), k = 1..5
    const double s3 = std::sqrt(3.0);
    CHECK(w(0) == doctest::Approx(-s3).epsilon(1e-12));
    CHECK(w(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(w(2)) < 1e-10);
    CHECK(w(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w(4) == doctest::Approx(s3).epsilon(1e-12));
}

TEST_CASE("sector 0 is the 1x1 zero block for any parameters") {
    SystemParams p;
    p.g2 = cplx(0.3, 0.4);
    p.nu = 2.0;
    p.delta_detuning = 1.7;
    p.phi = 0.9;
    const HamiltonianBlock b = build_hamiltonian(p, 0);
    REQUIRE(b.matrix.rows() == 1);
    CHECK(std::abs(b.matrix(0, 0)) == 0.0);
}

TEST_CASE("isolated Jaynes-Cummings doublet: g2 = nu = 0") {
    SystemParams p;
    p.g1 = 0.7;
    p.g2 = 0.0;
    p.nu = 0.0;
    const Eigen::VectorXd w = sorted_eigenvalues(build_hamiltonian(p, 1).matrix);
    CHECK(w(0) == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(std::abs(w(1)) < 1e-12);
    CHECK(std::abs(w(2)) < 1e-12);
    CHECK(std::abs(w(3)) < 1e-12);
    CHECK(w(4) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("Hamiltonian blocks are Hermitian and sector-diagonal") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const FullSpace fs = full_space();
    for (int trial = 0; trial < 20; ++trial) {
        SystemParams p;
        p.g1 = cplx(u(rng), u(rng));
        p.g2 = cplx(u(rng), u(rng));
        p.nu = std::abs(u(rng));
        p.delta_detuning = u(rng);
        p.phi = u(rng);
        const Eigen::MatrixXcd h = build_hamiltonian_full(p);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        // no element couples different sectors
        for (int r = 0; r < fs.dim; ++r)
            for (int c = 0; c < fs.dim; ++c)
                if (fs.state(r).excitations() != fs.state(c).excitations())
                    CHECK(std::abs(h(r, c)) == 0.0);
    }
}

TEST_CASE("detuning sits on every basis state with atom 2 excited") {
    SystemParams p;
    p.g1 = 0.0;
    p.g2 = 0.0;
    p.nu = 0.0;
    p.delta_detuning = 1.25;
    const FullSpace fs = full_space();
    const Eigen::MatrixXcd h = build_hamiltonian_full(p);
    for (int g = 0; g < fs.dim; ++g)
        CHECK(h(g, g).real() == doctest::Approx(1.25 * fs.state(g).atom2).epsilon(1e-15));
}

TEST_CASE("phi is a gauge: spectra invariant under phi change") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p;
        p.g2 = 1.3;
        p.nu = 0.8;
        p.delta_detuning = 0.4;
        p.phi = 0.0;
        SystemParams q = p;
        q.phi = u(rng);
        for (int sector : {1, 2}) {
            const Eigen::VectorXd w0 = sorted_eigenvalues(build_hamiltonian(p, sector).matrix);
            const Eigen::VectorXd w1 = sorted_eigenvalues(build_hamiltonian(q, sector).matrix);
            CHECK((w0 - w1).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("chiral symmetry: sector-1 spectrum symmetric about 0 when Delta = delta = 0") {
    SystemParams p;
    p.nu = 1.7;
    const Eigen::VectorXd w = sorted_eigenvalues(build_hamiltonian(p, 1).matrix);
    for (int i = 0; i < 5; ++i)
        CHECK(w(i) == doctest::Approx(-w(4 - i)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("strong fibre coupling reduces to atoms + mode c") {
    SystemParams p;
    p.nu = 100.0;
    const HamiltonianBlock b = build_hamiltonian(p, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(b.matrix);
    Eigen::Index nearest = 0;
    solver.eigenvalues().cwiseAbs().minCoeff(&nearest);
    const Eigen::VectorXcd v = solver.eigenvectors().col(nearest);

    // span of {|atom1>, |atom2>, c^dag|vac>} in the sector-1 canonical order
    // (|00;001>, |00;010>, |00;100>, |01;000>, |10;000>)
    const double s2 = std::numbers::sqrt2;
    Eigen::MatrixXcd span(5, 3);
    span.setZero();
    span(4, 0) = 1.0;                      // atom 1 excited
    span(3, 1) = 1.0;                      // atom 2 excited
    span(2, 2) = 1.0 / s2;                 // photon in cavity 1
    span(0, 2) = -std::exp(cplx(0.0, 0.0)) / s2;  // minus photon in cavity 2 (phi = 0)
    const Eigen::VectorXcd proj = span * (span.adjoint() * v);
    CHECK(proj.squaredNorm() >= 0.999);
}

TEST_CASE("normal modes: frequencies 0 and ±sqrt(2) nu, unitary transform") {
    SystemParams p;
    p.nu = 1.0;
    p.phi = 0.6;
    const NormalModes nm = normal_mode_frequencies(p);
    std::vector<double> f(nm.frequencies.begin(), nm.frequencies.end());
    std::sort(f.begin(), f.end());
    CHECK(f[0] == doctest::Approx(-std::numbers::sqrt2).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(f[2] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));

    const Eigen::Matrix3cd uu = nm.transform * nm.transform.adjoint();
    CHECK((uu - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);

    // each transform row is an eigenvector of the one-photon coupling block
    Eigen::Matrix3cd h;  // basis (|100>, |010>, |001>) of the photon modes
    h << 0, p.nu, 0,
         p.nu, 0, p.nu * std::exp(cplx(0, -p.phi)),
         0, p.nu * std::exp(cplx(0, p.phi)), 0;
    for (int k = 0; k < 3; ++k) {
        // row k annihilates mode k; the created single-photon state is the
        // conjugate row
        const Eigen::Vector3cd state = nm.transform.row(k).conjugate();
        const Eigen::Vector3cd residual = h * state - nm.frequencies[size_t(k)] * state;
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
    }

    SystemParams zero;
    zero.nu = 0.0;
    const NormalModes nm0 = normal_mode_frequencies(zero);
    for (double w : nm0.frequencies) CHECK(w == 0.0);
}

TEST_CASE("short fibre estimates") {
    // n = l nubar / (2 pi c)
    CHECK(short_fibre_mode_count(1.0, 1e9, 3e8) == doctest::Approx(0.5305).epsilon(1e-3));
    CHECK(short_fibre_mode_count(1e-6, 1e9, 3e8) < 1e-5);  // l -> 0
    CHECK(short_fibre_mode_count(2.0, 1e9, 3e8) ==
          doctest::Approx(2.0 * short_fibre_mode_count(1.0, 1e9, 3e8)).epsilon(1e-12));
    CHECK_THROWS_AS(short_fibre_mode_count(0.0, 1e9, 3e8), std::invalid_argument);

    // nu ~ sqrt(4 pi nubar c / l)
    CHECK(fibre_coupling_estimate(1.0, 1e9, 3e8) == doctest::Approx(1.9416e9).epsilon(1e-3));
    CHECK(fibre_coupling_estimate(4.0, 1e9, 3e8) ==
          doctest::Approx(0.5 * fibre_coupling_estimate(1.0, 1e9, 3e8)).epsilon(1e-12));
    CHECK(fibre_coupling_estimate(1.0, 1e-12, 3e8) < 1.0);  // nubar -> 0
    CHECK_THROWS_AS(fibre_coupling_estimate(1.0, -1.0, 3e8), std::invalid_argument);
}

TEST_CASE("lambda-system reduction") {
    const auto r = lambda_effective_params(1.0, 10.0, 0.1);
    CHECK(r.g_eff == doctest::Approx(0.0999900).epsilon(1e-4));
    CHECK(r.kappa_eff == doctest::Approx(0.0009999).epsilon(1e-4));
    CHECK(r.g_eff / r.kappa_eff == doctest::Approx(100.0).epsilon(1e-12));

    const auto nodecay = lambda_effective_params(1.0, 4.0, 0.0);
    CHECK(nodecay.kappa_eff == 0.0);
    CHECK(nodecay.g_eff == doctest::Approx(1.0 / 4.0).epsilon(1e-12));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double h = u(rng), d = u(rng), xi = u(rng);
        const auto e = lambda_effective_params(h, d, xi);
        CHECK(e.g_eff / e.kappa_eff == doctest::Approx(d / xi).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lambda_effective_params(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    SystemParams p;
    p.nu = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.nu = 0.1;
    p.kappa = -1e-9;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.kappa = 0.0;
    CHECK(p.g() == doctest::Approx(1.0));
    p.g2 = 1.5;
    CHECK(p.delta_g() == doctest::Approx(0.5));
}
