// open_system.hpp — Dissipative dynamics on the 19-dimensional space
//
// Master equation:
//   rho' = -i[H,rho] + gamma/2 (L[a1]+L[a2]) + kappa/2 (L[s1]+L[s2]) + beta/2 L[b]
// with L[o] rho = 2 o rho o^dag - o^dag o rho - rho o^dag o, so a rate r means
// population decay e^{-rt}.  No thermal terms: jumps only lower the excitation
// number, which keeps the two-excitation cutoff exact.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcqed/basis.hpp"
#include "fcqed/dynamics.hpp"
#include "fcqed/gates.hpp"
#include "fcqed/linalg.hpp"
#include "fcqed/model.hpp"
#include "fcqed/operators.hpp"

namespace fcqed {

struct DensityMatrix {
    Eigen::MatrixXcd matrix;  // 19x19 over the full_space basis

    void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                  double pos_tol = 1e-8) const {
        if (matrix.rows() != FullSpace::dim || matrix.cols() != FullSpace::dim)
            throw std::invalid_argument("DensityMatrix: expected 19x19");
        const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
        if (herm > herm_tol)
            throw std::runtime_error("DensityMatrix: hermiticity defect " + std::to_string(herm));
        const double tr = std::abs(matrix.trace().real() - 1.0) + std::abs(matrix.trace().imag());
        if (tr > trace_tol)
            throw std::runtime_error("DensityMatrix: trace defect " + std::to_string(tr));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (matrix + matrix.adjoint()));
        const double lmin = solver.eigenvalues().minCoeff();
        if (lmin < -pos_tol)
            throw std::runtime_error("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
    }
};

// |atoms> ⊗ |field vacuum> as a DensityMatrix, atoms given as a 4-vector
inline DensityMatrix atomic_product_state(const Eigen::Vector4cd& atoms) {
    const FullSpace fs = full_space();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(fs.dim);
    for (int m = 0; m < 4; ++m) psi(atomic_vacuum_index(fs, m)) = atoms(m);
    psi.normalize();
    return DensityMatrix{psi * psi.adjoint()};
}

struct Liouvillian {
    SystemParams params;
    Eigen::MatrixXcd generator;  // 361x361 on vec(rho), row-major convention
};

inline Liouvillian build_liouvillian(const SystemParams& p) {
    p.validate();
    const FullSpace fs = full_space();
    const Eigen::MatrixXcd H = build_hamiltonian_full(p);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(fs.dim, fs.dim);

    Liouvillian li;
    li.params = p;
    li.generator = cplx(0.0, -1.0) * (kron(H, id) - kron(id, H.transpose()));

    const auto add_dissipator = [&](Mode mode, double rate) {
        if (rate == 0.0) return;
        const Eigen::MatrixXcd o = lowering_operator(fs, mode);
        const Eigen::MatrixXcd od_o = o.adjoint() * o;
        li.generator += (rate / 2.0) * (2.0 * kron(o, o.conjugate()) -
                                        kron(od_o, id) - kron(id, od_o.transpose()));
    };
    add_dissipator(Mode::cav1, p.gamma);
    add_dissipator(Mode::cav2, p.gamma);
    add_dissipator(Mode::atom1, p.kappa);
    add_dissipator(Mode::atom2, p.kappa);
    add_dissipator(Mode::fibre, p.beta);
    return li;
}

enum class EvolveMethod { exact, rk4 };

namespace detail {

inline Eigen::VectorXcd rk4_integrate(const Eigen::MatrixXcd& gen, Eigen::VectorXcd v,
                                      double t, double h) {
    const int steps = std::max(1, static_cast<int>(std::ceil(t / h)));
    const double hs = t / steps;
    for (int s = 0; s < steps; ++s) {
        const Eigen::VectorXcd k1 = gen * v;
        const Eigen::VectorXcd k2 = gen * (v + 0.5 * hs * k1);
        const Eigen::VectorXcd k3 = gen * (v + 0.5 * hs * k2);
        const Eigen::VectorXcd k4 = gen * (v + hs * k3);
        v += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
}

}  // namespace detail

// RK4 path with Richardson error estimate (runs at h and h/2, keeps the finer
// result, error = max-norm difference / 15).
inline std::pair<DensityMatrix, double> evolve_rk4_with_error(const Liouvillian& li,
                                                              const DensityMatrix& rho0,
                                                              double t, double step) {
    const Eigen::VectorXcd v0 = vec_rowmajor(rho0.matrix);
    const Eigen::VectorXcd coarse = detail::rk4_integrate(li.generator, v0, t, step);
    const Eigen::VectorXcd fine = detail::rk4_integrate(li.generator, v0, t, step / 2.0);
    const double err = (coarse - fine).cwiseAbs().maxCoeff() / 15.0;
    return {DensityMatrix{unvec_rowmajor(fine, FullSpace::dim)}, err};
}

// Propagate rho0 to time t.  exact: scaling-and-squaring matrix exponential of
// generator*t; rk4: fixed step, chosen so h*||generator||_1 <= 0.1 unless an
// explicit step is given.  Throws on positivity violation beyond 1e-6.
inline DensityMatrix evolve(const Liouvillian& li, const DensityMatrix& rho0, double t,
                            EvolveMethod method = EvolveMethod::exact, double step = 0.0) {
    if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
    rho0.validate();
    if (t == 0.0) return rho0;

    DensityMatrix out;
    if (method == EvolveMethod::exact) {
        const Eigen::MatrixXcd u = (li.generator * t).exp();
        out.matrix = unvec_rowmajor(u * vec_rowmajor(rho0.matrix), FullSpace::dim);
    } else {
        double h = step;
        if (h <= 0.0) {
            const double norm1 = li.generator.cwiseAbs().colwise().sum().maxCoeff();
            h = 0.1 / std::max(norm1, 1e-12);
        }
        out = evolve_rk4_with_error(li, rho0, t, h).first;
    }

    // symmetrize round-off, then re-check the state invariants
    out.matrix = 0.5 * (out.matrix + out.matrix.adjoint());
    try {
        out.validate(1e-9, 1e-8, 1e-6);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string("evolve: integration failure at t = ") +
                                 std::to_string(t) + ": " + e.what());
    }
    return out;
}

// --------------------------- field partial trace ------------------------------

// Trace out the three bosonic modes: rho_at(m,n) = sum_f <m,f| rho |n,f>.
inline Eigen::Matrix4cd partial_trace_field(const Eigen::MatrixXcd& rho) {
    static const FullSpace fs = full_space();
    Eigen::Matrix4cd at = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 4; ++m) {
        const auto [ma1, ma2] = atomic_basis[static_cast<std::size_t>(m)];
        for (int n = 0; n < 4; ++n) {
            const auto [na1, na2] = atomic_basis[static_cast<std::size_t>(n)];
            for (int f1 = 0; f1 <= 2; ++f1)
                for (int ff = 0; ff + f1 <= 2; ++ff)
                    for (int f2 = 0; f2 + ff + f1 <= 2; ++f2) {
                        const int ftot = f1 + ff + f2;
                        if (atomic_excitations(m) + ftot > 2) continue;
                        if (atomic_excitations(n) + ftot > 2) continue;
                        const int gm = fs.global_index({ma1, ma2, {f1, ff, f2}});
                        const int gn = fs.global_index({na1, na2, {f1, ff, f2}});
                        at(m, n) += rho(gm, gn);
                    }
        }
    }
    return at;
}

inline Eigen::Matrix4cd partial_trace_field(const DensityMatrix& rho) {
    return partial_trace_field(rho.matrix);
}

// ------------------------------ process tomography ----------------------------

namespace detail {

// Columns of the 16x16 atomic map from the 361x361 propagator: the probe
// |m><n| ⊗ |vac><vac| is a unit vector in vec space, so its image is a column
// read-out followed by the field partial trace.
inline ChannelMatrix assemble_channel(const Eigen::MatrixXcd& propagator_vec,
                                      const FullSpace& fs) {
    ChannelMatrix ch;
    ch.origin = ChannelMatrix::Origin::dissipative;
    ch.map = Eigen::MatrixXcd::Zero(16, 16);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const int col = FullSpace::dim * atomic_vacuum_index(fs, m) +
                            atomic_vacuum_index(fs, n);
            const Eigen::Matrix4cd at =
                partial_trace_field(unvec_rowmajor(propagator_vec.col(col), FullSpace::dim));
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) ch.map(4 * r + c, 4 * m + n) = at(r, c);
        }
    return ch;
}

inline void check_channel(const ChannelMatrix& ch, double t) {
    const double tp = trace_preservation_defect(ch);
    if (tp > 1e-6)
        throw std::runtime_error("tomography_channel: trace preservation defect " +
                                 std::to_string(tp) + " at t = " + std::to_string(t));
    const double cp = min_choi_eigenvalue(ch);
    if (cp < -1e-6)
        throw std::runtime_error("tomography_channel: Choi eigenvalue " + std::to_string(cp) +
                                 " at t = " + std::to_string(t));
}

}  // namespace detail

// Atomic channel at time t: evolve the 16 operator-basis elements |m><n| ⊗ vac
// by linearity of the Liouvillian and trace out the field.
inline ChannelMatrix tomography_channel(const Liouvillian& li, double t) {
    if (t < 0.0) throw std::invalid_argument("tomography_channel: t must be >= 0");
    static const FullSpace fs = full_space();
    const Eigen::MatrixXcd u = (li.generator * t).exp();
    ChannelMatrix ch = detail::assemble_channel(u, fs);
    detail::check_channel(ch, t);
    return ch;
}

// Channels on the grid t0, t0+dt, ..., t0+(n-1)dt.  One exponential for t0 and
// one for dt; the 16 probe columns are then stepped, which keeps long
// dissipative scans cheap.
inline std::vector<ChannelMatrix> tomography_channels_on_grid(const Liouvillian& li,
                                                              double t0, double dt, int n) {
    if (n <= 0) return {};
    if (t0 < 0.0 || dt <= 0.0)
        throw std::invalid_argument("tomography_channels_on_grid: need t0 >= 0, dt > 0");
    static const FullSpace fs = full_space();
    const int d2 = FullSpace::dim * FullSpace::dim;

    Eigen::MatrixXcd probes = Eigen::MatrixXcd::Zero(d2, 16);
    for (int m = 0; m < 4; ++m)
        for (int nn = 0; nn < 4; ++nn)
            probes(FullSpace::dim * atomic_vacuum_index(fs, m) + atomic_vacuum_index(fs, nn),
                   4 * m + nn) = 1.0;

    if (t0 > 0.0) probes = (li.generator * t0).exp() * probes;
    const Eigen::MatrixXcd step = (li.generator * dt).exp();

    std::vector<ChannelMatrix> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (k > 0) probes = step * probes;
        ChannelMatrix ch;
        ch.origin = ChannelMatrix::Origin::dissipative;
        ch.map = Eigen::MatrixXcd::Zero(16, 16);
        for (int m = 0; m < 4; ++m)
            for (int nn = 0; nn < 4; ++nn) {
                const Eigen::Matrix4cd at =
                    partial_trace_field(unvec_rowmajor(probes.col(4 * m + nn), FullSpace::dim));
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) ch.map(4 * r + c, 4 * m + nn) = at(r, c);
            }
        detail::check_channel(ch, t0 + k * dt);
        out.push_back(std::move(ch));
    }
    return out;
}

// <N>(t) for trajectory diagnostics
inline double excitation_expectation(const DensityMatrix& rho) {
    static const FullSpace fs = full_space();
    static const Eigen::MatrixXcd num = excitation_number_operator(fs);
    return (num * rho.matrix).trace().real();
}

}  // namespace fcqed
