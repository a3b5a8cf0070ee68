#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fcqed/gates.hpp"

using namespace fcqed;
using std::numbers::pi;

namespace {

KrausSet unitary_kraus(const Eigen::Matrix4cd& u) {
    KrausSet ks;
    for (auto& e : ks.ops) e.setZero();
    ks.ops[0] = u;  // outcome (0,0,0)
    return ks;
}

// rho -> I/4 Tr(rho)
ChannelMatrix depolarizing_channel() {
    ChannelMatrix ch;
    ch.map = Eigen::MatrixXcd::Zero(16, 16);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i) ch.map(4 * m + m, 4 * i + i) = 0.25;
    return ch;
}

Eigen::Matrix4cd random_unitary(std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix4cd a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = cplx(n(rng), n(rng));
    const Eigen::HouseholderQR<Eigen::Matrix4cd> qr(a);
    return qr.householderQ();
}

SystemParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    SystemParams p;
    p.g1 = cplx(u(rng), u(rng));
    p.g2 = cplx(u(rng), u(rng));
    p.nu = std::abs(u(rng));
    p.delta_detuning = u(rng);
    p.phi = u(rng) + 2.0;
    return p;
}

}  // namespace

TEST_CASE("channel from the identity Kraus set is the identity map") {
    SystemParams p;
    p.nu = 1.2;
    const ChannelMatrix ch = channel_from_kraus(kraus_set(p, 0.0));
    CHECK((ch.map - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-unitary Kraus set gives the conjugation map") {
    std::mt19937 rng(31);
    const Eigen::Matrix4cd u = random_unitary(rng);
    const ChannelMatrix ch = channel_from_kraus(unitary_kraus(u));
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix4cd rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho(r, c) = cplx(n(rng), n(rng));
    rho = (rho + rho.adjoint()).eval();
    CHECK((apply_channel(ch, rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("incomplete Kraus set is rejected") {
    KrausSet ks = unitary_kraus(Eigen::Matrix4cd::Identity());
    ks.ops[0] *= 0.9;
    CHECK_THROWS_AS(channel_from_kraus(ks), std::runtime_error);
}

TEST_CASE("fidelity of a channel against its own unitary is 1, and is symmetric") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Matrix4cd u = random_unitary(rng);
        const Eigen::Matrix4cd v = random_unitary(rng);
        const ChannelMatrix cu = channel_from_kraus(unitary_kraus(u));
        const ChannelMatrix cv = channel_from_kraus(unitary_kraus(v));
        CHECK(average_fidelity(cu, u) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(average_fidelity(cu, v) == doctest::Approx(average_fidelity(cv, u)).epsilon(1e-12));
    }
}

TEST_CASE("completely depolarizing channel has fidelity 1/4 against any target") {
    const ChannelMatrix ch = depolarizing_channel();
    CHECK(trace_preservation_defect(ch) < 1e-14);
    CHECK(min_choi_eigenvalue(ch) > -1e-14);
    std::mt19937 rng(33);
    CHECK(average_fidelity(ch, GateTarget::swap_gate()) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(average_fidelity(ch, GateTarget::cphase(1.1)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(average_fidelity(ch, random_unitary(rng)) == doctest::Approx(0.25).epsilon(1e-12));

    const auto mc = average_fidelity_monte_carlo(ch, GateTarget::swap_gate(), 100000, 99);
    CHECK(mc.std_error < 0.005);
    CHECK(std::abs(mc.estimate - 0.25) < 3.0 * mc.std_error + 1e-6);
}

TEST_CASE("Monte-Carlo estimator: identity channel, exact result") {
    const ChannelMatrix ch = channel_from_kraus(unitary_kraus(Eigen::Matrix4cd::Identity()));
    GateTarget id = GateTarget::cphase(0.0);
    const auto mc = average_fidelity_monte_carlo(ch, id, 500, 7);
    CHECK(mc.estimate == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mc.std_error < 1e-9);
    CHECK_THROWS_AS(average_fidelity_monte_carlo(ch, id, 50, 7), std::invalid_argument);
}

TEST_CASE("Monte-Carlo estimator agrees with the closed form on physical channels") {
    std::mt19937 rng(34);
    std::uniform_real_distribution<double> ut(0.2, 6.0);
    for (int trial = 0; trial < 10; ++trial) {
        const ChannelMatrix ch = channel_from_kraus(kraus_set(random_params(rng), ut(rng)));
        const Eigen::Matrix4cd tgt = random_unitary(rng);
        GateTarget gt = GateTarget::swap_gate();
        gt.matrix = tgt;
        const double closed = average_fidelity(ch, tgt);
        const auto mc = average_fidelity_monte_carlo(ch, gt, 20000, 1000 + trial);
        CHECK(std::abs(closed - mc.estimate) < 3.0 * mc.std_error + 1e-6);
    }
}

TEST_CASE("Monte-Carlo estimator is deterministic under a fixed seed") {
    std::mt19937 rng(35);
    const ChannelMatrix ch = channel_from_kraus(kraus_set(random_params(rng), 1.3));
    const auto a = average_fidelity_monte_carlo(ch, GateTarget::swap_gate(), 5000, 42);
    const auto b = average_fidelity_monte_carlo(ch, GateTarget::swap_gate(), 5000, 42);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("channels from physical Kraus sets are CP and trace preserving") {
    std::mt19937 rng(36);
    std::uniform_real_distribution<double> ut(0.0, 8.0);
    for (int trial = 0; trial < 25; ++trial) {
        const ChannelMatrix ch = channel_from_kraus(kraus_set(random_params(rng), ut(rng)));
        CHECK(trace_preservation_defect(ch) < 1e-8);
        CHECK(min_choi_eigenvalue(ch) > -1e-8);
    }
}

TEST_CASE("global phase on the Kraus set leaves the fidelity unchanged") {
    std::mt19937 rng(37);
    KrausSet ks = kraus_set(random_params(rng), 2.3);
    const ChannelMatrix before = channel_from_kraus(ks);
    const cplx phase = std::exp(cplx(0.0, 1.234));
    for (auto& e : ks.ops) e *= phase;
    const ChannelMatrix after = channel_from_kraus(ks);
    CHECK(std::abs(average_fidelity(before, GateTarget::swap_gate()) -
                   average_fidelity(after, GateTarget::swap_gate())) < 1e-12);
}

TEST_CASE("controlled-phase extraction on an exact U_theta") {
    const auto r = extract_controlled_phase(unitary_kraus(GateTarget::cphase(2.2).matrix));
    CHECK(r.theta == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(r.theta1 == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(r.theta2 == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(r.diag_dominance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extracted theta is invariant under pre/post local phase gates") {
    std::mt19937 rng(38);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    SystemParams p;
    p.g2 = 1.5;
    p.nu = 100.0;
    p.delta_detuning = -10.0;
    KrausSet ks = kraus_set(p, 4.5173);
    const double theta0 = extract_controlled_phase(ks).theta;
    for (int trial = 0; trial < 10; ++trial) {
        KrausSet dressed = ks;
        const Eigen::Matrix4cd pre = local_phase_gate(u(rng), u(rng));
        const Eigen::Matrix4cd post = local_phase_gate(u(rng), u(rng));
        for (auto& e : dressed.ops) e = post * e * pre;
        CHECK(extract_controlled_phase(dressed).theta ==
              doctest::Approx(theta0).epsilon(1e-10));
    }
}

TEST_CASE("phase extraction fails cleanly on a vanishing diagonal") {
    CHECK_THROWS_AS(extract_controlled_phase(unitary_kraus(GateTarget::swap_gate().matrix)),
                    std::runtime_error);
}

TEST_CASE("local-phase optimization recovers planted phases") {
    const double theta = 0.7, alpha = 1.9, betap = 4.4;
    const Eigen::Matrix4cd planted = local_phase_gate(alpha, betap) * GateTarget::cphase(theta).matrix;
    const ChannelMatrix ch = channel_from_kraus(unitary_kraus(planted));
    const auto r = fidelity_local_phase_optimized(ch, theta);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(std::remainder(r.theta1 - alpha, 2.0 * pi)) < 1e-5);
    CHECK(std::abs(std::remainder(r.theta2 - betap, 2.0 * pi)) < 1e-5);
}

TEST_CASE("phase-optimized swap fidelity upper-bounds the raw value") {
    std::mt19937 rng(39);
    std::uniform_real_distribution<double> ut(0.2, 6.0);
    for (int trial = 0; trial < 15; ++trial) {
        const ChannelMatrix ch = channel_from_kraus(kraus_set(random_params(rng), ut(rng)));
        const double raw = average_fidelity(ch, GateTarget::swap_gate());
        const double opt = swap_fidelity_phase_optimized(ch).fidelity;
        CHECK(opt + 1e-12 >= raw);
    }
}

TEST_CASE("swap scenario at the decoupling time exceeds 0.99") {
    SystemParams p;
    p.nu = 1.1;
    const ChannelMatrix ch = channel_from_kraus(kraus_set(p, 3.2786));
    CHECK(swap_fidelity_phase_optimized(ch).fidelity > 0.99);
}

TEST_CASE("dominant Kraus operator reproduces E_000 for a closed channel") {
    SystemParams p;
    p.g2 = 1.5;
    p.nu = 100.0;
    p.delta_detuning = -10.0;
    const KrausSet ks = kraus_set(p, 4.5173);
    const ChannelMatrix ch = channel_from_kraus(ks);
    const auto from_kraus = extract_controlled_phase(ks);
    const auto from_channel = extract_controlled_phase(ch);
    CHECK(from_channel.theta == doctest::Approx(from_kraus.theta).epsilon(1e-6));
    CHECK(from_channel.diag_dominance == doctest::Approx(from_kraus.diag_dominance).epsilon(1e-6));
}
