// operators.hpp — Ladder operators on the 19-dimensional restricted space

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "fcqed/basis.hpp"

namespace fcqed {

enum class Mode { cav1, fibre, cav2, atom1, atom2 };

// Annihilation operator for the given mode (sqrt(n) bosonic factors; sigma^- on atoms).
// Lowers the excitation sector by one; block-subdiagonal in the global index.
inline Eigen::MatrixXcd lowering_operator(const FullSpace& fs, Mode mode) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(fs.dim, fs.dim);
    for (int col = 0; col < fs.dim; ++col) {
        BasisState s = fs.state(col);
        BasisState t = s;
        double amp = 0.0;
        switch (mode) {
            case Mode::cav1:
                if (s.photons[0] > 0) { amp = std::sqrt(double(s.photons[0])); --t.photons[0]; }
                break;
            case Mode::fibre:
                if (s.photons[1] > 0) { amp = std::sqrt(double(s.photons[1])); --t.photons[1]; }
                break;
            case Mode::cav2:
                if (s.photons[2] > 0) { amp = std::sqrt(double(s.photons[2])); --t.photons[2]; }
                break;
            case Mode::atom1:
                if (s.atom1 == 1) { amp = 1.0; t.atom1 = 0; }
                break;
            case Mode::atom2:
                if (s.atom2 == 1) { amp = 1.0; t.atom2 = 0; }
                break;
        }
        if (amp != 0.0) op(fs.global_index(t), col) = amp;
    }
    return op;
}

// diag(N) with N the total excitation number
inline Eigen::MatrixXcd excitation_number_operator(const FullSpace& fs) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(fs.dim, fs.dim);
    for (int i = 0; i < fs.dim; ++i) op(i, i) = double(fs.state(i).excitations());
    return op;
}

}  // namespace fcqed
