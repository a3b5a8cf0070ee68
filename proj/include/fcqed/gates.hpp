// gates.hpp — Atomic channels and gate fidelities
//
// A channel is a 16x16 matrix acting on row-major vectorized 4x4 density
// operators, vec(rho)[4r + c] = rho(r, c), so conjugation by K maps to
// kron(K, conj(K)).  The Haar-average gate fidelity comes from the
// entanglement-fidelity relation F = (d F_e + 1)/(d + 1) with d = 4.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fcqed/dynamics.hpp"
#include "fcqed/linalg.hpp"

namespace fcqed {

struct GateTarget {
    enum class Kind { swap, cphase };
    Kind kind{Kind::swap};
    double theta{0.0};  // entangling phase, cphase only
    Eigen::Matrix4cd matrix;

    static GateTarget swap_gate() {
        GateTarget t;
        t.kind = Kind::swap;
        t.matrix << 1, 0, 0, 0,
                    0, 0, 1, 0,
                    0, 1, 0, 0,
                    0, 0, 0, 1;
        return t;
    }

    // U_theta = Diag(1, 1, 1, e^{i theta})
    static GateTarget cphase(double theta) {
        GateTarget t;
        t.kind = Kind::cphase;
        t.theta = theta;
        t.matrix = Eigen::Matrix4cd::Identity();
        t.matrix(3, 3) = std::exp(cplx(0.0, theta));
        return t;
    }
};

// local phase gate diag(1, e^{i t1}) ⊗ diag(1, e^{i t2})
inline Eigen::Matrix4cd local_phase_gate(double theta1, double theta2) {
    Eigen::Vector4cd d;
    d << 1.0, std::exp(cplx(0.0, theta1)), std::exp(cplx(0.0, theta2)),
        std::exp(cplx(0.0, theta1 + theta2));
    return d.asDiagonal();
}

struct ChannelMatrix {
    enum class Origin { closed, dissipative };
    Eigen::MatrixXcd map;  // 16x16
    Origin origin{Origin::closed};
};

inline Eigen::Matrix4cd apply_channel(const ChannelMatrix& ch, const Eigen::Matrix4cd& rho) {
    return unvec_rowmajor(ch.map * vec_rowmajor(rho), 4);
}

// max-norm deviation from trace preservation, max_ij |sum_m S[(m,m),(i,j)] - delta_ij|
inline double trace_preservation_defect(const ChannelMatrix& ch) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx acc = 0.0;
            for (int m = 0; m < 4; ++m) acc += ch.map(4 * m + m, 4 * i + j);
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

// Choi matrix J[(m,i),(n,j)] = S[(m,n),(i,j)]; positive semidefinite iff CP.
inline Eigen::MatrixXcd choi_matrix(const ChannelMatrix& ch) {
    Eigen::MatrixXcd j(16, 16);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i)
            for (int n = 0; n < 4; ++n)
                for (int jj = 0; jj < 4; ++jj)
                    j(4 * m + i, 4 * n + jj) = ch.map(4 * m + n, 4 * i + jj);
    return j;
}

inline double min_choi_eigenvalue(const ChannelMatrix& ch) {
    const Eigen::MatrixXcd j = choi_matrix(ch);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (j + j.adjoint()));
    return solver.eigenvalues().minCoeff();
}

inline ChannelMatrix channel_from_kraus(const KrausSet& ks) {
    const double defect = ks.completeness_defect();
    if (defect > 1e-8)
        throw std::runtime_error("channel_from_kraus: Kraus completeness violated, defect = " +
                                 std::to_string(defect));
    ChannelMatrix ch;
    ch.origin = ChannelMatrix::Origin::closed;
    ch.map = Eigen::MatrixXcd::Zero(16, 16);
    for (const auto& e : ks.ops) ch.map += kron(e, e.conjugate());
    return ch;
}

// ------------------------------ average fidelity ------------------------------

// Entanglement fidelity of U^dag ∘ channel: Tr[(U^dag ⊗ U^T) S] / 16.
inline double entanglement_fidelity(const ChannelMatrix& ch, const Eigen::Matrix4cd& target) {
    const Eigen::Matrix4cd ut = target.adjoint();
    cplx acc = 0.0;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    acc += ut(m, a) * std::conj(ut(n, b)) * ch.map(4 * a + b, 4 * m + n);
    return acc.real() / 16.0;
}

// Haar average of <psi| U^dag Lambda(|psi><psi|) U |psi> over pure two-qubit
// inputs, in closed form: F = (4 F_e + 1)/5.
inline double average_fidelity(const ChannelMatrix& ch, const Eigen::Matrix4cd& target) {
    return (4.0 * entanglement_fidelity(ch, target) + 1.0) / 5.0;
}

inline double average_fidelity(const ChannelMatrix& ch, const GateTarget& target) {
    return average_fidelity(ch, target.matrix);
}

struct MonteCarloEstimate {
    double estimate{0.0};
    double std_error{0.0};
};

// Direct sampling oracle for the closed form: Haar states via normalized
// complex-normal 4-vectors; deterministic for a fixed seed.
inline MonteCarloEstimate average_fidelity_monte_carlo(const ChannelMatrix& ch,
                                                       const GateTarget& target,
                                                       int samples, std::uint64_t seed) {
    if (samples < 100)
        throw std::invalid_argument("average_fidelity_monte_carlo: need samples >= 100");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::Vector4cd psi;
        for (int i = 0; i < 4; ++i) psi(i) = cplx(normal(rng), normal(rng));
        psi.normalize();
        const Eigen::Matrix4cd rho = psi * psi.adjoint();
        const Eigen::Matrix4cd out = apply_channel(ch, rho);
        const Eigen::Vector4cd tpsi = target.matrix * psi;
        const double f = (tpsi.adjoint() * out * tpsi)(0).real();
        sum += f;
        sumsq += f * f;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sumsq / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

// -------------------------- controlled-phase extraction -----------------------

struct ControlledPhaseExtraction {
    double theta{0.0};           // local-phase-invariant entangling phase, [0, 2pi)
    double theta1{0.0};          // local phase, atom 2 branch |01>
    double theta2{0.0};          // local phase, atom 1 branch |10>
    double diag_dominance{0.0};  // sum |diag|^2 / Tr[E^dag E], in [0,1]
};

namespace detail {

inline double wrap_2pi(double x) {
    const double tau = 2.0 * std::numbers::pi;
    x = std::fmod(x, tau);
    if (x < 0.0) x += tau;
    return x;
}

inline ControlledPhaseExtraction extract_from_matrix(const Eigen::Matrix4cd& e) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(e(i, i)) < 1e-6)
            throw std::runtime_error(
                "extract_controlled_phase: diagonal entry " + std::to_string(i) +
                " has modulus < 1e-6, phase undefined");
    }
    const double a0 = std::arg(e(0, 0)), a1 = std::arg(e(1, 1));
    const double a2 = std::arg(e(2, 2)), a3 = std::arg(e(3, 3));
    ControlledPhaseExtraction r;
    r.theta1 = wrap_2pi(a1 - a0);
    r.theta2 = wrap_2pi(a2 - a0);
    r.theta = wrap_2pi(a3 - a2 - a1 + a0);
    double diag2 = 0.0;
    for (int i = 0; i < 4; ++i) diag2 += std::norm(e(i, i));
    r.diag_dominance = diag2 / (e.adjoint() * e).trace().real();
    return r;
}

}  // namespace detail

// Phases of the near-diagonal vacuum Kraus operator:
// theta1 = arg E11 - arg E00, theta2 = arg E22 - arg E00,
// theta  = arg E33 - arg E22 - arg E11 + arg E00 (all mod 2pi).
inline ControlledPhaseExtraction extract_controlled_phase(const KrausSet& ks) {
    return detail::extract_from_matrix(ks.at(0, 0, 0));
}

// Dominant Kraus operator of a channel (largest Choi eigenvalue); lets the
// same diagonal-phase readout run on tomographically reconstructed channels.
inline Eigen::Matrix4cd dominant_kraus(const ChannelMatrix& ch) {
    const Eigen::MatrixXcd j = choi_matrix(ch);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (j + j.adjoint()));
    Eigen::Index top;
    solver.eigenvalues().maxCoeff(&top);
    const Eigen::VectorXcd v = solver.eigenvectors().col(top) *
                               std::sqrt(std::max(0.0, solver.eigenvalues()(top)));
    Eigen::Matrix4cd e;
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i) e(m, i) = v(4 * m + i);
    return e;
}

inline ControlledPhaseExtraction extract_controlled_phase(const ChannelMatrix& ch) {
    return detail::extract_from_matrix(dominant_kraus(ch));
}

// ------------------------- local-phase-optimized fidelity ---------------------

struct PhaseOptimizedFidelity {
    double fidelity{0.0};
    double theta1{0.0};
    double theta2{0.0};
};

namespace detail {

// For fixed base target, F(theta1, theta2) against local_phase_gate * base is,
// per coordinate, exactly c0 + A cos(x) + B sin(x); each coordinate update is
// therefore exact, and the ascent converges in a few sweeps.
inline PhaseOptimizedFidelity ascend_local_phases(const ChannelMatrix& ch,
                                                  const Eigen::Matrix4cd& base,
                                                  double t1, double t2, double tol) {
    const auto F = [&](double x1, double x2) {
        return average_fidelity(ch, Eigen::Matrix4cd(local_phase_gate(x1, x2) * base));
    };
    const double half_pi = std::numbers::pi / 2.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        const double p1 = t1, p2 = t2;
        {
            const double f0 = F(0.0, t2), fq = F(half_pi, t2), fp = F(std::numbers::pi, t2);
            const double c0 = 0.5 * (f0 + fp);
            t1 = std::atan2(fq - c0, f0 - c0);
        }
        {
            const double f0 = F(t1, 0.0), fq = F(t1, half_pi), fp = F(t1, std::numbers::pi);
            const double c0 = 0.5 * (f0 + fp);
            t2 = std::atan2(fq - c0, f0 - c0);
        }
        if (std::abs(t1 - p1) < tol && std::abs(t2 - p2) < tol) break;
    }
    return {F(t1, t2), wrap_2pi(t1), wrap_2pi(t2)};
}

}  // namespace detail

// Maximize the average fidelity against local_phase_gate(t1,t2) * base over the
// two local phases.  Ascends from the supplied guess plus pi-shifted restarts
// (the 2-D landscape is a low-order trigonometric polynomial but can have a
// sub-optimal local maximum).
inline PhaseOptimizedFidelity optimize_local_phases(const ChannelMatrix& ch,
                                                    const Eigen::Matrix4cd& base,
                                                    double guess1 = 0.0, double guess2 = 0.0,
                                                    double tol = 1e-6) {
    PhaseOptimizedFidelity best{-1.0, 0.0, 0.0};
    const double pi = std::numbers::pi;
    for (const auto& [s1, s2] : {std::pair{0.0, 0.0}, {pi, 0.0}, {0.0, pi}, {pi, pi}}) {
        const auto r = detail::ascend_local_phases(ch, base, guess1 + s1, guess2 + s2, tol);
        if (r.fidelity > best.fidelity) best = r;
    }
    return best;
}

// Best fidelity against the family Diag(1, e^{i t1}, e^{i t2}, e^{i(theta+t1+t2)}):
// a controlled-phase gate of entangling phase theta up to local phase gates.
inline PhaseOptimizedFidelity fidelity_local_phase_optimized(const ChannelMatrix& ch,
                                                             double theta) {
    double g1 = 0.0, g2 = 0.0;
    try {
        const auto guess = extract_controlled_phase(ch);
        g1 = guess.theta1;
        g2 = guess.theta2;
    } catch (const std::runtime_error&) {
        // channel far from diagonal; plain restarts still cover the landscape
    }
    return optimize_local_phases(ch, GateTarget::cphase(theta).matrix, g1, g2);
}

// Best fidelity against swap composed with local phase gates.
inline PhaseOptimizedFidelity swap_fidelity_phase_optimized(const ChannelMatrix& ch) {
    return optimize_local_phases(ch, GateTarget::swap_gate().matrix);
}

}  // namespace fcqed
