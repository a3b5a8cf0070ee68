// dynamics.hpp — Closed-system propagation, Kraus extraction, decoupling search
//
// Sector dimensions are at most 13, so propagation goes through an exact
// Hermitian eigendecomposition rather than time stepping.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fcqed/basis.hpp"
#include "fcqed/model.hpp"

namespace fcqed {

// Eigendecomposition of all three sector Hamiltonians; reusable across times.
struct SectorSpectra {
    SystemParams params;
    FullSpace space;
    std::array<Eigen::VectorXd, 3> eigenvalues;
    std::array<Eigen::MatrixXcd, 3> eigenvectors;  // columns
};

inline SectorSpectra diagonalize(const SystemParams& p) {
    SectorSpectra sp;
    sp.params = p;
    sp.space = full_space();
    const Eigen::MatrixXcd H = build_hamiltonian_full(p);
    for (int n = 0; n <= 2; ++n) {
        const int off = sp.space.sector_offset(n);
        const int dim = sp.space.sectors[static_cast<std::size_t>(n)].dimension();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.block(off, off, dim, dim));
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        sp.eigenvalues[static_cast<std::size_t>(n)] = solver.eigenvalues();
        sp.eigenvectors[static_cast<std::size_t>(n)] = solver.eigenvectors();
    }
    return sp;
}

// U_n(t) = V diag(e^{-i lambda t}) V^dag for one sector
inline Eigen::MatrixXcd sector_unitary(const SectorSpectra& sp, int sector, double t) {
    const auto& w = sp.eigenvalues[static_cast<std::size_t>(sector)];
    const auto& v = sp.eigenvectors[static_cast<std::size_t>(sector)];
    Eigen::VectorXcd phase(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k)
        phase(k) = std::exp(cplx(0.0, -w(k) * t));
    return v * phase.asDiagonal() * v.adjoint();
}

struct Propagator {
    double time{0.0};
    std::array<Eigen::MatrixXcd, 3> blocks;  // 1x1, 5x5, 13x13 unitaries
};

inline Propagator propagator(const SectorSpectra& sp, double t) {
    Propagator u;
    u.time = t;
    for (int n = 0; n <= 2; ++n)
        u.blocks[static_cast<std::size_t>(n)] = sector_unitary(sp, n, t);
    return u;
}

inline Propagator propagator(const SystemParams& p, double t) {
    return propagator(diagonalize(p), t);
}

// ------------------------------- Kraus operators ------------------------------

struct FieldOutcome {
    int cav1{0}, fibre{0}, cav2{0};
    int total() const { return cav1 + fibre + cav2; }
    bool operator==(const FieldOutcome& o) const {
        return cav1 == o.cav1 && fibre == o.fibre && cav2 == o.cav2;
    }
};

// The ten field outcomes with cav1+fibre+cav2 <= 2, lexicographic order.
inline constexpr std::array<FieldOutcome, 10> field_outcomes{{
    {0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 0}, {0, 1, 1},
    {0, 2, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0},
}};

// Atomic-channel Kraus operators E_ijk(t) = <ijk| exp(-iHt) |000>, 4x4 blocks
// on the atomic basis {|00>,|01>,|10>,|11>}.  E_ijk maps atomic excitation m
// to m - (i+j+k); all other entries are structural zeros.
struct KrausSet {
    double time{0.0};
    std::array<Eigen::Matrix4cd, 10> ops;

    static int outcome_index(int i, int j, int k) {
        for (std::size_t q = 0; q < field_outcomes.size(); ++q) {
            if (field_outcomes[q] == FieldOutcome{i, j, k}) return static_cast<int>(q);
        }
        throw std::invalid_argument("KrausSet: no outcome (" + std::to_string(i) + "," +
                                    std::to_string(j) + "," + std::to_string(k) + ")");
    }

    const Eigen::Matrix4cd& at(int i, int j, int k) const {
        return ops[static_cast<std::size_t>(outcome_index(i, j, k))];
    }

    // max-norm of  sum E^dag E - I
    double completeness_defect() const {
        Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
        for (const auto& e : ops) acc += e.adjoint() * e;
        acc -= Eigen::Matrix4cd::Identity();
        return acc.cwiseAbs().maxCoeff();
    }
};

inline KrausSet kraus_set(const SectorSpectra& sp, double t) {
    const Propagator u = propagator(sp, t);
    KrausSet ks;
    ks.time = t;
    for (std::size_t q = 0; q < field_outcomes.size(); ++q) {
        const FieldOutcome& f = field_outcomes[q];
        Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
        for (int col = 0; col < 4; ++col) {
            const int n = atomic_excitations(col);
            for (int row = 0; row < 4; ++row) {
                if (atomic_excitations(row) + f.total() != n) continue;
                const auto [a1, a2] = atomic_basis[static_cast<std::size_t>(row)];
                const BasisState out{a1, a2, {f.cav1, f.fibre, f.cav2}};
                const int r = sp.space.global_index(out) - sp.space.sector_offset(n);
                const int c = atomic_vacuum_index(sp.space, col) - sp.space.sector_offset(n);
                e(row, col) = u.blocks[static_cast<std::size_t>(n)](r, c);
            }
        }
        ks.ops[q] = e;
    }
    return ks;
}

inline KrausSet kraus_set(const SystemParams& p, double t) {
    return kraus_set(diagonalize(p), t);
}

// --------------------------------- leakage -----------------------------------

// Input-averaged probability that the field is not in vacuum at time t:
// 1 - Tr[E_000^dag E_000]/4.
inline double leakage(const KrausSet& ks) {
    const Eigen::Matrix4cd& e = ks.at(0, 0, 0);
    return 1.0 - (e.adjoint() * e).trace().real() / 4.0;
}

inline double leakage(const SectorSpectra& sp, double t) { return leakage(kraus_set(sp, t)); }

inline double leakage(const SystemParams& p, double t) { return leakage(diagonalize(p), t); }

// ----------------------------- decoupling search -----------------------------

struct DecouplingPoint {
    double time{0.0};
    double leakage{0.0};
};

namespace detail {

// golden-section minimization of f on [a, b] to absolute x tolerance
template <typename F>
double golden_minimize(F&& f, double a, double b, double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Scan leakage on the grid dt, 2dt, ..., refine each interior local minimum by
// golden-section search to time resolution dt*1e-3.  Empty result means the
// leakage is monotone on the window.
inline std::vector<DecouplingPoint> find_decoupling_times(const SectorSpectra& sp,
                                                          double t_max, double dt) {
    if (!(dt > 0.0) || !(dt < t_max))
        throw std::invalid_argument("find_decoupling_times: need 0 < dt < t_max");
    std::vector<double> ts, lk;
    for (double t = dt; t <= t_max + 0.5 * dt; t += dt) {
        ts.push_back(t);
        lk.push_back(leakage(sp, t));
    }
    std::vector<DecouplingPoint> minima;
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        if (lk[i] < lk[i - 1] && lk[i] <= lk[i + 1]) {
            const double t0 = detail::golden_minimize(
                [&](double t) { return leakage(sp, t); }, ts[i] - dt, ts[i] + dt, dt * 1e-3);
            minima.push_back({t0, leakage(sp, t0)});
        }
    }
    return minima;
}

inline std::vector<DecouplingPoint> find_decoupling_times(const SystemParams& p,
                                                          double t_max, double dt) {
    return find_decoupling_times(diagonalize(p), t_max, dt);
}

}  // namespace fcqed
