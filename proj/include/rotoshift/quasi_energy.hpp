#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rotoshift/constants.hpp"
#include "rotoshift/harmonic.hpp"
#include "rotoshift/hydrogen.hpp"
#include "rotoshift/operator.hpp"
#include "rotoshift/rotor.hpp"

namespace rotoshift {

/**
 * Quantum numbers of a quasi-energy level.
 *
 * q is the principal label (N for the oscillator, n for hydrogen), m_z the
 * angular-momentum label, k enumerates degenerate partners.
 */
struct StateLabel {
    int q = 0;
    int m_z = 0;
    int k = 0;
    friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

struct Level {
    std::optional<StateLabel> label;
    double quasi_energy = 0.0;  // J
};

enum class SpectrumMethod { Diagonalization, FirstOrderPT, Analytic };

inline const char* to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::Diagonalization: return "diagonalization";
        case SpectrumMethod::FirstOrderPT: return "first-order-pt";
        case SpectrumMethod::Analytic: return "analytic";
    }
    return "?";
}

struct BasisInfo {
    std::string description;
    int size_parameter = 0;
    std::size_t dimension = 0;
    double max_residual = 0.0;  // max ||H v - lambda v|| in matrix units
};

/// Levels sorted ascending; equal energies ordered by label.
struct SpectrumResult {
    std::vector<Level> levels;
    SpectrumMethod method = SpectrumMethod::Analytic;
    BasisInfo basis_info;
    std::vector<std::string> warnings;

    [[nodiscard]] std::vector<double> energies() const {
        std::vector<double> e;
        e.reserve(levels.size());
        for (const auto& l : levels) e.push_back(l.quasi_energy);
        return e;
    }

    /// Quasi-energy of the first level with principal label q and projection m_z.
    [[nodiscard]] std::optional<double> find(int q, int m_z) const {
        for (const auto& l : levels)
            if (l.label && l.label->q == q && l.label->m_z == m_z) return l.quasi_energy;
        return std::nullopt;
    }
};

namespace detail {

inline void sort_levels(std::vector<Level>& levels) {
    std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
        if (a.quasi_energy != b.quasi_energy) return a.quasi_energy < b.quasi_energy;
        return a.label < b.label;
    });
}

inline const char* kind_name(TruncatedBasis::Kind k) {
    return k == TruncatedBasis::Kind::HO3D ? "HO3D" : "HydrogenManifold";
}

}  // namespace detail

inline constexpr double eigen_residual_tolerance = 1e-10;

/// Whether eigen_spectrum also computes eigenvectors to check the residual |H v - e v|.
enum class ResidualCheck { on, off };

/// All eigenvalues of a Hermitian matrix, in joules (matrix units times `unit`).
inline SpectrumResult eigen_spectrum(const ComplexMatrix& h, double unit = 1.0,
                                     ResidualCheck check = ResidualCheck::on) {
    if (!is_hermitian(h)) throw std::invalid_argument("eigen_spectrum: matrix is not Hermitian");
    SpectrumResult out;
    out.method = SpectrumMethod::Diagonalization;
    out.basis_info.dimension = static_cast<std::size_t>(h.rows());
    if (h.rows() == 0) return out;

    if (check == ResidualCheck::off) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw std::runtime_error("eigen_spectrum: solver failed");
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
            out.levels.push_back({std::nullopt, solver.eigenvalues()[i] * unit});
        detail::sort_levels(out.levels);
        return out;
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigen_spectrum: solver failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const double norm = evals.cwiseAbs().maxCoeff();
    const ComplexMatrix residual = h * solver.eigenvectors() - solver.eigenvectors() * evals.asDiagonal();
    const double max_res = residual.colwise().norm().maxCoeff();
    if (max_res > eigen_residual_tolerance * std::max(norm, 1e-300) && max_res > 0.0)
        throw std::runtime_error("eigen_spectrum: residual above tolerance");
    out.basis_info.max_residual = max_res;
    for (Eigen::Index i = 0; i < evals.size(); ++i) out.levels.push_back({std::nullopt, evals[i] * unit});
    detail::sort_levels(out.levels);
    return out;
}

inline SpectrumResult eigen_spectrum(const HermitianOperator& h, ResidualCheck check = ResidualCheck::on) {
    SpectrumResult out = eigen_spectrum(h.matrix(), h.unit(), check);
    out.basis_info.description = detail::kind_name(h.basis().kind());
    out.basis_info.size_parameter = h.basis().size_parameter();
    return out;
}

/// E0 + eig(W): first-order levels of a degenerate manifold.
inline SpectrumResult first_order_degenerate_levels(double e0, const HermitianOperator& w) {
    SpectrumResult out = eigen_spectrum(w);
    out.method = SpectrumMethod::FirstOrderPT;
    for (auto& l : out.levels) l.quasi_energy += e0;
    return out;
}

/**
 * Diagonalize H when it commutes with L_z (and optionally with a second
 * operator Q, e.g. the oscillator number operator).
 *
 * Each level is labelled by m_z = eigenvalue of L_z and q = eigenvalue of Q;
 * without Q, q is the rank of the level inside its m_z block. Rotation of a
 * cylindrically symmetric emitter only shifts each block rigidly, so these
 * labels are stable across Omega.
 */
inline SpectrumResult cylindrical_spectrum(const HermitianOperator& h, const ComplexMatrix& lz,
                                           const ComplexMatrix* q_op = nullptr) {
    const ComplexMatrix& hm = h.matrix();
    const Eigen::Index dim = hm.rows();
    const double scale = std::max(1.0, hm.cwiseAbs().maxCoeff());
    if (commutator_norm(hm, lz) > 1e-10 * scale * std::max(1.0, lz.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("cylindrical_spectrum: H does not commute with L_z");

    // Distinct (q, m) pairs give distinct eigenvalues of L_z + lambda Q when
    // lambda * max|Q| < 1/2.
    ComplexMatrix sym = lz;
    double lambda = 0.0;
    if (q_op != nullptr) {
        if (commutator_norm(hm, *q_op) > 1e-10 * scale * std::max(1.0, q_op->cwiseAbs().maxCoeff()))
            throw std::invalid_argument("cylindrical_spectrum: H does not commute with Q");
        lambda = 1.0 / (4.0 * std::max(1.0, q_op->cwiseAbs().maxCoeff()) + 1.0);
        sym += lambda * (*q_op);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sym_solver(sym);
    const Eigen::VectorXd& s = sym_solver.eigenvalues();

    SpectrumResult out;
    out.method = SpectrumMethod::Diagonalization;
    out.basis_info.description = detail::kind_name(h.basis().kind());
    out.basis_info.size_parameter = h.basis().size_parameter();
    out.basis_info.dimension = static_cast<std::size_t>(dim);

    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index end = start + 1;
        while (end < dim && std::abs(s[end] - s[start]) < 1e-6 * std::max(lambda, 1e-2)) ++end;
        const ComplexMatrix block_vecs = sym_solver.eigenvectors().middleCols(start, end - start);
        const double m_val = std::round(s[start]);
        const int m_z = static_cast<int>(m_val);
        const int q_val = q_op ? static_cast<int>(std::lround((s[start] - m_val) / lambda)) : 0;
        const ComplexMatrix block = block_vecs.adjoint() * hm * block_vecs;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> block_solver(0.5 * (block + block.adjoint()));
        const Eigen::VectorXd& ev = block_solver.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            StateLabel label{q_op ? q_val : static_cast<int>(i), m_z, q_op ? static_cast<int>(i) : 0};
            out.levels.push_back({label, ev[i] * h.unit()});
        }
        start = end;
    }
    detail::sort_levels(out.levels);
    return out;
}

// ---------------------------------------------------------------------------
// Harmonic trap: closed-form quasi-energies.

/// hbar omega0 (N + 3/2) - hbar Omega m_z - m omega0^2 Omega^2 R^2 / (2 (omega0^2 - Omega^2)).
inline double ho_quasi_energy(int N, int m_z, const RotorConfig& rotor,
                              const PhysicalConstants& pc = codata2018) {
    if (N < 0 || std::abs(m_z) > N) throw std::invalid_argument("ho_quasi_energy: need |m_z| <= N");
    rotor.validate();
    const double w0 = rotor.omega0();
    const double om = rotor.omega;
    const double shift = pc.electron_mass * w0 * w0 * om * om * rotor.radius * rotor.radius /
                         (2.0 * (w0 * w0 - om * om));
    return pc.hbar * w0 * (N + 1.5) - pc.hbar * om * m_z - shift;
}

/// Offset of the rotating-trap level from hbar omega0 (N + 3/2) - hbar Omega m_z; the same for every level.
inline double ho_level_offset(const RotorConfig& rotor, const PhysicalConstants& pc = codata2018) {
    rotor.validate();
    const double w0 = rotor.omega0();
    const double om = rotor.omega;
    return -pc.electron_mass * w0 * w0 * om * om * rotor.radius * rotor.radius / (2.0 * (w0 * w0 - om * om));
}

/**
 * Closed-form levels of the states representable with N <= n_max, with their
 * degeneracies: for given (N, m_z) the partners differ in n_z.
 */
inline SpectrumResult ho_analytic_levels(const RotorConfig& rotor, int n_max,
                                         const PhysicalConstants& pc = codata2018) {
    if (n_max < 0) throw std::invalid_argument("ho_analytic_levels: N_max must be >= 0");
    SpectrumResult out;
    out.method = SpectrumMethod::Analytic;
    out.basis_info.description = "HO3D";
    out.basis_info.size_parameter = n_max;
    for (int N = 0; N <= n_max; ++N) {
        for (int m = -N; m <= N; ++m) {
            const double e = ho_quasi_energy(N, m, rotor, pc);
            const int partners = (N - std::abs(m)) / 2 + 1;
            for (int k = 0; k < partners; ++k) out.levels.push_back({StateLabel{N, m, k}, e});
        }
    }
    out.basis_info.dimension = out.levels.size();
    detail::sort_levels(out.levels);
    return out;
}

/**
 * Copy labels from a reference spectrum onto the lowest `count` numeric levels
 * by rank. Levels are paired in sorted order; callers check agreement of the
 * paired energies before relying on the labels.
 */
inline SpectrumResult transfer_labels(const SpectrumResult& numeric, const SpectrumResult& reference,
                                      std::size_t count) {
    if (count > numeric.levels.size() || count > reference.levels.size())
        throw std::invalid_argument("transfer_labels: count exceeds spectrum size");
    SpectrumResult out = numeric;
    out.levels.resize(count);
    for (std::size_t i = 0; i < count; ++i) out.levels[i].label = reference.levels[i].label;
    return out;
}

// ---------------------------------------------------------------------------
// Hydrogenic emitter in crossed fields.

/// -m v_a^2 / (2 n^2), the unperturbed level.
inline double bohr_level(int n, int Z = 1, const PhysicalConstants& pc = codata2018) {
    if (n < 1) throw std::invalid_argument("bohr_level: n must be >= 1");
    const double va = atomic_velocity(Z, pc);
    return -pc.electron_mass * va * va / (2.0 * n * n);
}

namespace detail {

inline void check_mz(int n, int m_z) {
    if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
    if (std::abs(m_z) > n - 1) throw std::invalid_argument("need |m_z| <= n - 1");
}

/// sqrt(1 + x2) - 1 without cancellation for small x2.
inline double sqrt1p_minus1(double x2) { return x2 / (std::sqrt(1.0 + x2) + 1.0); }

}  // namespace detail

/**
 * Signed effective precession frequency of the n-manifold in crossed fields:
 * sgn(omega_L) sqrt(omega_L^2 + omega_S^2) with omega_L = e B_z / 2m and
 * omega_S = (12 pi eps0 hbar / (2 Z e m)) n |E_stark|.
 *
 * The sign follows the Zeeman term so that m_z continues to m_l as E -> 0.
 */
inline double crossed_field_frequency(int n, const CrossedFields& fields,
                                      const PhysicalConstants& pc = codata2018, int Z = 1) {
    const double omega_l = pc.elementary_charge * fields.pseudo_B.z() / (2.0 * pc.electron_mass);
    const double omega_s = 12.0 * std::numbers::pi * pc.epsilon0 * pc.hbar /
                           (2.0 * Z * pc.elementary_charge * pc.electron_mass) * n * fields.stark_field().norm();
    const double mag = std::hypot(omega_l, omega_s);
    return omega_l < 0.0 ? -mag : mag;
}

/// Lowest-order level of the n-manifold in crossed fields.
inline double crossed_field_levels(int n, int m_z, const CrossedFields& fields,
                                   const PhysicalConstants& pc = codata2018, int Z = 1) {
    detail::check_mz(n, m_z);
    return bohr_level(n, Z, pc) - pc.hbar * m_z * crossed_field_frequency(n, fields, pc, Z);
}

/// 3 n R Omega / (2 v_a): size of the centrifugal term relative to the Coriolis term.
inline double rotation_expansion_parameter(int n, const RotorConfig& rotor,
                                           const PhysicalConstants& pc = codata2018) {
    return 3.0 * n * rotor.radius * rotor.omega / (2.0 * atomic_velocity(rotor.charge(), pc));
}

/// -m v_a^2/(2n^2) - hbar Omega m_z sqrt(1 + (3 n R Omega / 2 v_a)^2).
inline double rotating_coulomb_levels(int n, int m_z, const RotorConfig& rotor,
                                      const PhysicalConstants& pc = codata2018) {
    detail::check_mz(n, m_z);
    rotor.validate();
    const double x = rotation_expansion_parameter(n, rotor, pc);
    return bohr_level(n, rotor.charge(), pc) - pc.hbar * rotor.omega * m_z * std::sqrt(1.0 + x * x);
}

/// Expansion parameter with the drive force added to the centrifugal force:
/// 3 n |m Omega^2 R + e E| / (2 m v_a Omega).
inline double driven_expansion_parameter(int n, const RotorConfig& rotor, const Vec3& drive_E,
                                         const PhysicalConstants& pc = codata2018) {
    if (rotor.omega == 0.0) throw std::invalid_argument("driven levels require Omega != 0");
    if (!drive_E.allFinite()) throw std::invalid_argument("drive field must be finite");
    if (drive_E.z() != 0.0) throw std::invalid_argument("drive field must lie in the orbital plane");
    const Vec3 force = pc.electron_mass * rotor.omega * rotor.omega * rotor.position() +
                       pc.elementary_charge * drive_E;
    return 3.0 * n * force.norm() /
           (2.0 * pc.electron_mass * atomic_velocity(rotor.charge(), pc) * std::abs(rotor.omega));
}

/**
 * Quasi-energy with a co-rotating drive field added to the centrifugal
 * pseudo-field. The m_z term carries the same minus sign as
 * rotating_coulomb_levels.
 */
inline double driven_rotating_levels(int n, int m_z, const RotorConfig& rotor, const Vec3& drive_E,
                                     const PhysicalConstants& pc = codata2018) {
    detail::check_mz(n, m_z);
    rotor.validate();
    const double x = driven_expansion_parameter(n, rotor, drive_E, pc);
    return bohr_level(n, rotor.charge(), pc) - pc.hbar * rotor.omega * m_z * std::sqrt(1.0 + x * x);
}

/**
 * Closed-form quasi-energies of the given manifolds, labelled (n, m_z, k) with
 * the n - |m_z| degenerate partners enumerated by k. With a drive field the
 * driven formula is used.
 */
inline SpectrumResult coulomb_level_table(const RotorConfig& rotor, const std::vector<int>& manifolds,
                                          const std::optional<Vec3>& drive_E = std::nullopt,
                                          const PhysicalConstants& pc = codata2018) {
    SpectrumResult out;
    out.method = SpectrumMethod::Analytic;
    out.basis_info.description = "HydrogenManifold";
    for (int n : manifolds) {
        for (int m = -(n - 1); m <= n - 1; ++m) {
            const double e = drive_E ? driven_rotating_levels(n, m, rotor, *drive_E, pc)
                                     : rotating_coulomb_levels(n, m, rotor, pc);
            for (int k = 0; k < n - std::abs(m); ++k) out.levels.push_back({StateLabel{n, m, k}, e});
        }
    }
    out.basis_info.dimension = out.levels.size();
    detail::sort_levels(out.levels);
    return out;
}

/// Fraction of the gap to manifold n+1 above which first-order results degrade.
inline constexpr double perturbative_gap_fraction = 0.01;

/**
 * Warning text when the first-order splitting hbar (n-1) |omega_eff| of the
 * n-manifold exceeds 1% of the gap to the n+1 manifold.
 */
inline std::optional<std::string> perturbative_regime_warning(int n, double omega_eff, int Z = 1,
                                                              const PhysicalConstants& pc = codata2018) {
    const double splitting = pc.hbar * (n - 1) * std::abs(omega_eff);
    const double gap = bohr_level(n + 1, Z, pc) - bohr_level(n, Z, pc);
    if (splitting > perturbative_gap_fraction * gap)
        return "n=" + std::to_string(n) + ": first-order splitting exceeds 1% of the manifold gap";
    return std::nullopt;
}

}  // namespace rotoshift
