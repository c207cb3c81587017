#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rotoshift/basis.hpp"
#include "rotoshift/constants.hpp"
#include "rotoshift/operator.hpp"
#include "rotoshift/rotor.hpp"

// Isotropic 3D oscillator on a turntable, in the frame that co-rotates with the
// trap centre and has its origin at that centre. Matrices are built in
// oscillator units: energy hbar*omega0, length sqrt(hbar/(m omega0)),
// momentum sqrt(m hbar omega0).

namespace rotoshift::harmonic {

namespace detail {

inline void require_ho(const TruncatedBasis& basis) {
    if (basis.kind() != TruncatedBasis::Kind::HO3D)
        throw std::invalid_argument("operator requires an HO3D basis");
}

inline BasisLabel shifted(BasisLabel l, int axis, int delta) {
    l[static_cast<std::size_t>(axis)] += delta;
    return l;
}

}  // namespace detail

/// Lowering operator a_axis restricted to the basis (exact P a P).
inline ComplexMatrix lowering(const TruncatedBasis& basis, int axis) {
    detail::require_ho(basis);
    if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1 or 2");
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const int n = basis[j][static_cast<std::size_t>(axis)];
        if (n == 0) continue;
        if (auto i = basis.index_of(detail::shifted(basis[j], axis, -1)))
            a(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) = std::sqrt(double(n));
    }
    return a;
}

/// Total quantum number N = n_x + n_y + n_z (diagonal).
inline ComplexMatrix number_operator(const TruncatedBasis& basis) {
    detail::require_ho(basis);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const auto& l = basis[j];
        n(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = double(l[0] + l[1] + l[2]);
    }
    return n;
}

/// Position component in units of sqrt(hbar/(m omega0)).
inline ComplexMatrix position(const TruncatedBasis& basis, int axis) {
    const ComplexMatrix a = lowering(basis, axis);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

/// Momentum component in units of sqrt(m hbar omega0).
inline ComplexMatrix momentum(const TruncatedBasis& basis, int axis) {
    const ComplexMatrix a = lowering(basis, axis);
    return std::complex<double>(0.0, 1.0 / std::sqrt(2.0)) * (a.adjoint() - a);
}

/**
 * L_z / hbar = i (a_x a_y^dagger - a_x^dagger a_y).
 *
 * Built element by element rather than as a product of truncated ladder
 * matrices: L_z preserves N, so it is represented exactly in the basis.
 */
inline ComplexMatrix angular_momentum_z(const TruncatedBasis& basis) {
    detail::require_ho(basis);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    ComplexMatrix lz = ComplexMatrix::Zero(dim, dim);
    const std::complex<double> i_unit(0.0, 1.0);
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const auto& l = basis[j];
        const auto col = static_cast<Eigen::Index>(j);
        // a_x a_y^dagger : (nx, ny) -> (nx - 1, ny + 1)
        if (l[0] > 0) {
            if (auto i = basis.index_of({l[0] - 1, l[1] + 1, l[2]}))
                lz(static_cast<Eigen::Index>(*i), col) += i_unit * std::sqrt(double(l[0]) * (l[1] + 1));
        }
        // a_x^dagger a_y : (nx, ny) -> (nx + 1, ny - 1)
        if (l[1] > 0) {
            if (auto i = basis.index_of({l[0] + 1, l[1] - 1, l[2]}))
                lz(static_cast<Eigen::Index>(*i), col) -= i_unit * std::sqrt(double(l[0] + 1) * l[1]);
        }
    }
    return lz;
}

/**
 * p^2/2m + m omega0^2 r^2 / 2 - Omega L_z - v_c . p with v_c = Omega x R.
 *
 * Returned in units of hbar*omega0 (HermitianOperator::unit() holds the SI
 * value of that unit).
 */
inline HermitianOperator ho_rotating_hamiltonian(const TruncatedBasis& basis,
                                                 const RotorConfig& rotor,
                                                 const PhysicalConstants& pc = codata2018) {
    detail::require_ho(basis);
    if (!rotor.is_harmonic()) throw std::invalid_argument("rotor model must be harmonic");
    rotor.validate();
    const double w0 = rotor.omega0();
    const double velocity_unit = std::sqrt(pc.hbar * w0 / pc.electron_mass);
    const Vec3 vc = rotor.orbital_velocity() / velocity_unit;

    ComplexMatrix h = number_operator(basis);
    h.diagonal().array() += 1.5;
    h -= (rotor.omega / w0) * angular_momentum_z(basis);
    for (int axis = 0; axis < 3; ++axis) {
        if (vc[axis] != 0.0) h -= vc[axis] * momentum(basis, axis);
    }
    return HermitianOperator(basis, std::move(h), pc.hbar * w0);
}

struct Displacement {
    Vec3 momentum_shift;  // a, kg m/s
    Vec3 position_shift;  // b, m
};

/**
 * Momentum boost a and translation b that remove the -v_c . p term:
 * a = m omega0^2/(omega0^2 - Omega^2) Omega x R,  b = Omega^2/(omega0^2 - Omega^2) R.
 */
inline Displacement displacement_parameters(const RotorConfig& rotor,
                                            const PhysicalConstants& pc = codata2018) {
    if (!rotor.is_harmonic()) throw std::invalid_argument("rotor model must be harmonic");
    rotor.validate();
    const double w0sq = rotor.omega0() * rotor.omega0();
    const double denom = w0sq - rotor.omega * rotor.omega;
    return {pc.electron_mass * w0sq / denom * rotor.orbital_velocity(),
            rotor.omega * rotor.omega / denom * rotor.position()};
}

}  // namespace rotoshift::harmonic
