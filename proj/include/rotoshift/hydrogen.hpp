#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "rotoshift/basis.hpp"
#include "rotoshift/constants.hpp"
#include "rotoshift/operator.hpp"
#include "rotoshift/rotor.hpp"

// Hydrogenic n-manifold operators in atomic units (lengths in a0, energies in
// Hartree). Radial functions follow the convention R_nl(r) > 0 as r -> 0;
// spherical harmonics carry the Condon-Shortley phase. With these choices
//   <n, l-1 | r | n, l> = -(3n/2) sqrt(n^2 - l^2) / Z.

namespace rotoshift::hydrogen {

/// Generalized Laguerre polynomial L_k^(alpha)(x) by upward recurrence.
inline double laguerre(int k, double alpha, double x) {
    if (k < 0) throw std::invalid_argument("laguerre: negative degree");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Normalized hydrogenic radial function R_nl(r), r in units of a0.
inline double radial_function(int n, int l, double r, int Z = 1) {
    if (n < 1 || l < 0 || l >= n || Z < 1) throw std::invalid_argument("radial_function: bad quantum numbers");
    const double rho = 2.0 * Z * r / n;
    // sqrt((2Z/n)^3 (n-l-1)! / (2n (n+l)!)), via lgamma to stay finite for large n
    const double log_norm = 0.5 * (3.0 * std::log(2.0 * Z / n) + std::lgamma(n - l) -
                                   std::log(2.0 * n) - std::lgamma(n + l + 1));
    const double envelope = std::exp(log_norm - rho / 2.0);
    if (envelope == 0.0) return 0.0;
    return envelope * std::pow(rho, l) * laguerre(n - l - 1, 2.0 * l + 1.0, rho);
}

namespace detail {

inline void check_dipole_pair(int n, int l, int lp) {
    if (n < 1 || l < 0 || lp < 0 || l >= n || lp >= n)
        throw std::invalid_argument("radial dipole: l, l' must lie in [0, n-1] (n=" + std::to_string(n) + ")");
    if (std::abs(l - lp) != 1) throw SelectionRuleError("radial dipole requires |l - l'| = 1");
}

}  // namespace detail

/**
 * <n l'| r |n l> by numerical quadrature of the radial functions, in a0.
 * Throws SelectionRuleError unless |l - l'| = 1 (so n = 1 always throws).
 */
inline double radial_dipole_integral(int n, int l, int lp, int Z = 1) {
    if (n == 1) throw SelectionRuleError("n = 1 manifold has no dipole-coupled pair");
    detail::check_dipole_pair(n, l, lp);
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [=](double r) {
        const double prod = radial_function(n, lp, r, Z) * radial_function(n, l, r, Z);
        return prod == 0.0 ? 0.0 : prod * r * r * r;  // exp underflow at large r
    };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
}

/// Closed form of the same-n dipole integral, -(3n/2) sqrt(n^2 - l_>^2) / Z.
inline double radial_dipole_closed_form(int n, int l, int lp, int Z = 1) {
    if (n == 1) throw SelectionRuleError("n = 1 manifold has no dipole-coupled pair");
    detail::check_dipole_pair(n, l, lp);
    const int lg = std::max(l, lp);
    return -1.5 * n * std::sqrt(double(n * n - lg * lg)) / Z;
}

/// Wigner 3j symbol for integer arguments (Racah formula).
inline double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    auto lf = [](int k) { return std::lgamma(static_cast<double>(k) + 1.0); };
    const double log_delta = 0.5 * (lf(j1 + j2 - j3) + lf(j1 - j2 + j3) + lf(-j1 + j2 + j3) - lf(j1 + j2 + j3 + 1));
    const double log_pref = 0.5 * (lf(j1 + m1) + lf(j1 - m1) + lf(j2 + m2) + lf(j2 - m2) + lf(j3 + m3) + lf(j3 - m3));
    const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double term = std::exp(log_delta + log_pref -
                                     (lf(k) + lf(j1 + j2 - j3 - k) + lf(j1 - m1 - k) + lf(j2 + m2 - k) +
                                      lf(j3 - j2 + m1 + k) + lf(j3 - j1 - m2 + k)));
        sum += (k % 2 == 0 ? term : -term);
    }
    return ((j1 - j2 - m3) % 2 == 0 ? sum : -sum);
}

/// <l' m'| C^1_q |l m> with C^1_q = sqrt(4 pi / 3) Y_1q.
inline double rank1_angular_factor(int lp, int mp, int q, int l, int m) {
    const double phase = (mp % 2 == 0) ? 1.0 : -1.0;
    return phase * std::sqrt((2.0 * lp + 1.0) * (2.0 * l + 1.0)) * wigner3j(lp, 1, l, -mp, q, m) *
           wigner3j(lp, 1, l, 0, 0, 0);
}

/**
 * Cartesian position components (x, y, z) restricted to the n-manifold, in a0.
 * Entry (i, j) is <label_i| r_axis |label_j>.
 */
inline std::array<ComplexMatrix, 3> manifold_position(const TruncatedBasis& basis, int Z = 1) {
    if (basis.kind() != TruncatedBasis::Kind::HydrogenManifold)
        throw std::invalid_argument("manifold_position requires a hydrogen manifold basis");
    const int n = basis.size_parameter();
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    std::array<ComplexMatrix, 3> r{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim),
                                   ComplexMatrix::Zero(dim, dim)};
    if (n == 1) return r;

    // radial integrals indexed by the larger l
    std::vector<double> radial(static_cast<std::size_t>(n), 0.0);
    for (int l = 1; l < n; ++l) radial[static_cast<std::size_t>(l)] = radial_dipole_integral(n, l, l - 1, Z);

    const std::complex<double> i_unit(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t a = 0; a < basis.dimension(); ++a) {
        for (std::size_t b = 0; b < basis.dimension(); ++b) {
            const auto [na, lp, mp] = basis[a];
            const auto [nb, l, m] = basis[b];
            if (std::abs(l - lp) != 1) continue;
            const double rad = radial[static_cast<std::size_t>(std::max(l, lp))];
            const double c_minus = rank1_angular_factor(lp, mp, -1, l, m) * rad;
            const double c_zero = rank1_angular_factor(lp, mp, 0, l, m) * rad;
            const double c_plus = rank1_angular_factor(lp, mp, +1, l, m) * rad;
            const auto ia = static_cast<Eigen::Index>(a);
            const auto ib = static_cast<Eigen::Index>(b);
            // x = (r_{-1} - r_{+1}) / sqrt2,  y = i (r_{-1} + r_{+1}) / sqrt2
            r[0](ia, ib) = (c_minus - c_plus) * inv_sqrt2;
            r[1](ia, ib) = i_unit * (c_minus + c_plus) * inv_sqrt2;
            r[2](ia, ib) = c_zero;
        }
    }
    return r;
}

/// L_z / hbar in the manifold (diagonal m_l).
inline ComplexMatrix manifold_angular_momentum_z(const TruncatedBasis& basis) {
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    ComplexMatrix lz = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < basis.dimension(); ++j)
        lz(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = double(basis[j][2]);
    return lz;
}

/**
 * First-order perturbation W = -e (E + E_drive) . r - (e / 2m) B L_z on the
 * n-manifold, as an n^2 x n^2 matrix in Hartree (unit() = E_h in joules).
 *
 * The magnetic field must be along the rotation axis z.
 */
inline HermitianOperator manifold_perturbation(int n, const CrossedFields& fields,
                                               const PhysicalConstants& pc = codata2018, int Z = 1) {
    TruncatedBasis basis = hydrogen_manifold_basis(n);
    const Vec3 field = fields.stark_field();
    const Vec3 bfield = fields.pseudo_B;
    if (!field.allFinite() || !bfield.allFinite()) throw std::invalid_argument("fields must be finite");
    if (std::hypot(bfield.x(), bfield.y()) > 1e-12 * bfield.norm())
        throw std::invalid_argument("pseudo magnetic field must be parallel to the rotation axis");
    if (Z < 1) throw std::invalid_argument("Z must be >= 1");

    const UnitSystem au = UnitSystem::atomic(pc);
    const Vec3 f_au = field / au.scale(Dimension::electric_field);
    const double b_au = bfield.z() / au.scale(Dimension::magnetic_field);

    const auto r = manifold_position(basis, Z);
    ComplexMatrix w = -0.5 * b_au * manifold_angular_momentum_z(basis);
    for (int axis = 0; axis < 3; ++axis) {
        if (f_au[axis] != 0.0) w -= f_au[axis] * r[static_cast<std::size_t>(axis)];
    }
    // the two triangles are evaluated separately; remove the rounding-level defect
    w = 0.5 * (w + w.adjoint()).eval();
    return HermitianOperator(std::move(basis), std::move(w), pc.hartree());
}

}  // namespace rotoshift::hydrogen
