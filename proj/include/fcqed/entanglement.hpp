// entanglement.hpp — Wootters concurrence and entanglement of formation

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fcqed {

// binary entropy in bits, h(0) = h(1) = 0
inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// C = max(0, l1 - l2 - l3 - l4), the li being the decreasing square roots of
// the eigenvalues of rho (sy⊗sy) rho* (sy⊗sy).  Computed through the Hermitian
// form sqrt(rho) (sy⊗sy) rho* (sy⊗sy) sqrt(rho), which shares the spectrum and
// avoids spurious complex parts; round-off below -1e-10 is clipped.
inline double concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd yy;
    yy << 0, 0, 0, -1,
          0, 0, 1, 0,
          0, 1, 0, 0,
          -1, 0, 0, 0;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_eig(0.5 * (rho + rho.adjoint()));
    Eigen::Vector4d vals = rho_eig.eigenvalues();
    for (int i = 0; i < 4; ++i) vals(i) = std::sqrt(std::max(0.0, vals(i)));
    const Eigen::Matrix4cd sqrt_rho =
        rho_eig.eigenvectors() * vals.asDiagonal() * rho_eig.eigenvectors().adjoint();

    const Eigen::Matrix4cd r = sqrt_rho * yy * rho.conjugate() * yy * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> r_eig(0.5 * (r + r.adjoint()));

    Eigen::Vector4d lam = r_eig.eigenvalues();  // ascending
    for (int i = 0; i < 4; ++i) lam(i) = std::sqrt(std::max(lam(i), 0.0));
    const double c = lam(3) - lam(2) - lam(1) - lam(0);
    return std::max(0.0, c);
}

// EoF in ebits, h((1 + sqrt(1 - C^2))/2); monotone in the concurrence.
inline double eof_from_concurrence(double c) {
    const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
    return binary_entropy(x);
}

inline double entanglement_of_formation(const Eigen::Matrix4cd& rho) {
    return eof_from_concurrence(concurrence(rho));
}

}  // namespace fcqed
