// model.hpp — Physical parameters and the rotating-frame Hamiltonian
//
// All rates are expressed in units of the reference coupling g = |g1| and
// times in 1/g.  The frame rotates at the common cavity frequency, so only
// the detuning of atom 2 appears as a frequency offset.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fcqed/basis.hpp"
#include "fcqed/operators.hpp"

namespace fcqed {

using cplx = std::complex<double>;

struct SystemParams {
    cplx g1{1.0, 0.0};          // dipole coupling, atom 1 (generally complex)
    cplx g2{1.0, 0.0};          // dipole coupling, atom 2
    double nu{1.0};             // fibre-cavity coupling, >= 0
    double delta_detuning{0.0}; // detuning of atom 2
    double phi{0.0};            // fibre propagation phase
    double kappa{0.0};          // spontaneous emission rate, both atoms
    double gamma{0.0};          // cavity decay rate, both cavities
    double beta{0.0};           // fibre decay rate

    double g() const { return std::abs(g1); }
    double delta_g() const { return std::abs(g2) - std::abs(g1); }

    void validate() const {
        if (nu < 0.0) throw std::invalid_argument("SystemParams: nu must be >= 0");
        if (kappa < 0.0) throw std::invalid_argument("SystemParams: kappa must be >= 0");
        if (gamma < 0.0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
        if (beta < 0.0) throw std::invalid_argument("SystemParams: beta must be >= 0");
    }
};

struct HamiltonianBlock {
    int sector{0};
    Eigen::MatrixXcd matrix;  // dense Hermitian, sector basis, rate units
};

// Full 19x19 Hamiltonian (block diagonal in the excitation sectors):
// detuning on atom 2, dipole exchange atom<->cavity, fibre-mediated hopping
// with phase e^{i phi} on the cavity-2 leg.
inline Eigen::MatrixXcd build_hamiltonian_full(const SystemParams& p) {
    p.validate();
    const FullSpace fs = full_space();
    const Eigen::MatrixXcd a1 = lowering_operator(fs, Mode::cav1);
    const Eigen::MatrixXcd b  = lowering_operator(fs, Mode::fibre);
    const Eigen::MatrixXcd a2 = lowering_operator(fs, Mode::cav2);
    const Eigen::MatrixXcd s1 = lowering_operator(fs, Mode::atom1);
    const Eigen::MatrixXcd s2 = lowering_operator(fs, Mode::atom2);

    const cplx eph = std::exp(cplx(0.0, p.phi));
    Eigen::MatrixXcd H = p.delta_detuning * (s2.adjoint() * s2);
    H += p.g1 * (a1.adjoint() * s1) + std::conj(p.g1) * (s1.adjoint() * a1);
    H += p.g2 * (a2.adjoint() * s2) + std::conj(p.g2) * (s2.adjoint() * a2);
    H += p.nu * (a1.adjoint() * b + eph * (a2.adjoint() * b));
    H += p.nu * (b.adjoint() * a1 + std::conj(eph) * (b.adjoint() * a2));
    return H;
}

inline HamiltonianBlock build_hamiltonian(const SystemParams& p, int sector) {
    if (sector < 0 || sector > 2)
        throw std::invalid_argument("build_hamiltonian: sector must be 0, 1 or 2");
    const FullSpace fs = full_space();
    const Eigen::MatrixXcd H = build_hamiltonian_full(p);
    const int off = fs.sector_offset(sector);
    const int dim = fs.sectors[static_cast<std::size_t>(sector)].dimension();
    return HamiltonianBlock{sector, H.block(off, off, dim, dim)};
}

// ------------------------- analytic side calculations -------------------------

// Normal modes of the three coupled bosonic modes, rotating frame.
// rows of `transform` (mode order a_cav1, b_fibre, a_cav2):
//   c  = (a1 - e^{-i phi} a2)/sqrt(2)            frequency 0
//   c- = (a1 + e^{-i phi} a2 - sqrt(2) b)/2      frequency -sqrt(2) nu
//   c+ = (a1 + e^{-i phi} a2 + sqrt(2) b)/2      frequency +sqrt(2) nu
struct NormalModes {
    std::array<double, 3> frequencies;  // aligned with transform rows
    Eigen::Matrix3cd transform;         // unitary
};

inline NormalModes normal_mode_frequencies(const SystemParams& p) {
    NormalModes nm;
    const double s2 = std::numbers::sqrt2;
    nm.frequencies = {0.0, -s2 * p.nu, +s2 * p.nu};
    const cplx em = std::exp(cplx(0.0, -p.phi));
    nm.transform << 1.0 / s2, 0.0, -em / s2,
                    0.5, -s2 / 2.0, em / 2.0,
                    0.5, +s2 / 2.0, em / 2.0;
    return nm;
}

// Number of fibre modes that interact appreciably with the cavities,
// n = l*nubar / (2 pi c).  The single-mode model needs n <~ 1.
inline double short_fibre_mode_count(double length_m, double nubar, double c_light) {
    if (length_m <= 0.0 || nubar <= 0.0 || c_light <= 0.0)
        throw std::invalid_argument("short_fibre_mode_count: inputs must be > 0");
    return length_m * nubar / (2.0 * std::numbers::pi * c_light);
}

// Coupling to the resonant mode of a finite fibre, nu ~ sqrt(4 pi nubar c / l).
inline double fibre_coupling_estimate(double length_m, double nubar, double c_light) {
    if (length_m <= 0.0 || nubar <= 0.0 || c_light <= 0.0)
        throw std::invalid_argument("fibre_coupling_estimate: inputs must be > 0");
    return std::sqrt(4.0 * std::numbers::pi * nubar * c_light / length_m);
}

// Effective coupling and decay of a laser-driven lambda system whose excited
// level (decay rate xi) is adiabatically eliminated:
//   g_eff = d h^2/(d^2 + xi^2),  kappa_eff = xi h^2/(d^2 + xi^2),
// so g_eff/kappa_eff = d/xi.
struct LambdaEffectiveParams {
    double g_eff;
    double kappa_eff;
};

inline LambdaEffectiveParams lambda_effective_params(double h, double d, double xi) {
    const double denom = d * d + xi * xi;
    if (denom <= 0.0)
        throw std::invalid_argument("lambda_effective_params: d and xi cannot both be 0");
    return {d * h * h / denom, xi * h * h / denom};
}

}  // namespace fcqed
