// linalg.hpp — small dense helpers shared across modules
//
// Vectorization convention, used everywhere: row-major stacking,
// vec(rho)[D*r + c] = rho(r, c), so vec(A rho B) = kron(A, B^T) vec(rho).

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace fcqed {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::VectorXcd vec_rowmajor(const Eigen::MatrixXcd& m) {
    Eigen::VectorXcd v(m.rows() * m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) v(m.cols() * r + c) = m(r, c);
    return v;
}

inline Eigen::MatrixXcd unvec_rowmajor(const Eigen::VectorXcd& v, Eigen::Index dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = v(dim * r + c);
    return m;
}

}  // namespace fcqed
