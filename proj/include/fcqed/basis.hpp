// basis.hpp — Excitation-number-restricted basis of two atoms + three bosonic modes
//
// The composite system (atom 1, atom 2, cavity-1 mode, fibre mode, cavity-2 mode)
// is enumerated per total-excitation sector N = 0, 1, 2.  Starting from field
// vacuum the coherent dynamics conserves N and dissipation only lowers it, so
// the cutoff at N = 2 is exact, not a truncation.

#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace fcqed {

// One basis ket |atom1 atom2; n_cav1 n_fibre n_cav2>
struct BasisState {
    int atom1{0};                       // 0|1
    int atom2{0};                       // 0|1
    std::array<int, 3> photons{0, 0, 0};  // n_cav1, n_fibre, n_cav2

    int excitations() const {
        return atom1 + atom2 + photons[0] + photons[1] + photons[2];
    }

    // canonical ordering key: lexicographic on (atom1, atom2, n_cav1, n_fibre, n_cav2)
    auto key() const {
        return std::tuple(atom1, atom2, photons[0], photons[1], photons[2]);
    }

    bool operator==(const BasisState& o) const { return key() == o.key(); }
    bool operator<(const BasisState& o) const { return key() < o.key(); }

    std::string to_string() const {
        std::string s = "|";
        s += std::to_string(atom1);
        s += std::to_string(atom2);
        s += ';';
        for (int n : photons) s += std::to_string(n);
        s += '>';
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const BasisState& s) {
    return os << s.to_string();
}

// Ordered basis of one excitation sector
struct SectorBasis {
    int excitation_count{0};
    std::vector<BasisState> states;

    int dimension() const { return static_cast<int>(states.size()); }

    // position of s in the canonical order; throws if s is not in this sector
    int index_of(const BasisState& s) const {
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (states[i] == s) return static_cast<int>(i);
        }
        throw std::out_of_range("SectorBasis::index_of: state " + s.to_string() +
                                " not in sector " + std::to_string(excitation_count));
    }
};

// All states with total excitation n, in canonical lexicographic order.
// Sector dimensions are 1, 5, 13 for n = 0, 1, 2.
inline SectorBasis enumerate_sector(int n) {
    if (n < 0 || n > 2) {
        throw std::invalid_argument("enumerate_sector: unsupported sector " +
                                    std::to_string(n) + " (only 0, 1, 2 are needed)");
    }
    SectorBasis b;
    b.excitation_count = n;
    // loop nesting order generates lexicographic order directly
    for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2)
            for (int n1 = 0; n1 <= 2; ++n1)
                for (int nf = 0; nf <= 2; ++nf)
                    for (int n2 = 0; n2 <= 2; ++n2)
                        if (a1 + a2 + n1 + nf + n2 == n)
                            b.states.push_back({a1, a2, {n1, nf, n2}});
    return b;
}

// Direct sum of sectors 0, 1, 2 with a global index map.
// Global dimension 19; sector offsets 0, 1, 6.
struct FullSpace {
    std::array<SectorBasis, 3> sectors;
    static constexpr std::array<int, 3> offsets{0, 1, 6};
    static constexpr int dim = 19;

    int dimension() const { return dim; }

    int sector_offset(int n) const {
        if (n < 0 || n > 2) throw std::invalid_argument("FullSpace: bad sector");
        return offsets[static_cast<std::size_t>(n)];
    }

    int global_index(const BasisState& s) const {
        const int n = s.excitations();
        if (n < 0 || n > 2)
            throw std::out_of_range("FullSpace: state outside excitation cutoff");
        return sector_offset(n) + sectors[static_cast<std::size_t>(n)].index_of(s);
    }

    const BasisState& state(int global) const {
        if (global < 0 || global >= dim)
            throw std::out_of_range("FullSpace: global index out of range");
        for (int n = 2; n >= 0; --n) {
            if (global >= offsets[static_cast<std::size_t>(n)])
                return sectors[static_cast<std::size_t>(n)]
                    .states[static_cast<std::size_t>(global - offsets[static_cast<std::size_t>(n)])];
        }
        throw std::out_of_range("FullSpace: unreachable");
    }
};

inline FullSpace full_space() {
    FullSpace f;
    for (int n = 0; n <= 2; ++n) f.sectors[static_cast<std::size_t>(n)] = enumerate_sector(n);
    return f;
}

// Atomic computational basis {|00>, |01>, |10>, |11>}, first digit = atom 1.
inline constexpr std::array<std::pair<int, int>, 4> atomic_basis{
    {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

inline int atomic_excitations(int m) {
    return atomic_basis[static_cast<std::size_t>(m)].first +
           atomic_basis[static_cast<std::size_t>(m)].second;
}

// Global index of |atoms m> ⊗ |field vacuum>
inline int atomic_vacuum_index(const FullSpace& fs, int m) {
    const auto [a1, a2] = atomic_basis[static_cast<std::size_t>(m)];
    return fs.global_index(BasisState{a1, a2, {0, 0, 0}});
}

}  // namespace fcqed
