#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rotoshift {

/**
 * SI values of the constants entering the rotating-emitter models.
 *
 * CODATA 2018 recommended values, compiled in. The fine-structure constant and
 * the Bohr radius are stored alongside the base constants; both agree with
 * their defining combinations to better than 1e-9 relative.
 */
struct PhysicalConstants {
    double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);  // J s, exact h / 2 pi
    double electron_mass = 9.1093837015e-31;  // kg
    double elementary_charge = 1.602176634e-19;  // C
    double epsilon0 = 8.8541878128e-12;       // F/m
    double light_speed = 299792458.0;         // m/s
    double alpha = 7.2973525693e-3;
    double bohr_radius = 5.29177210903e-11;   // m

    /// e^2 / (4 pi eps0 hbar c), from the base constants.
    [[nodiscard]] double alpha_from_base() const {
        return elementary_charge * elementary_charge /
               (4.0 * std::numbers::pi * epsilon0 * hbar * light_speed);
    }

    /// 4 pi eps0 hbar^2 / (m e^2), from the base constants.
    [[nodiscard]] double bohr_radius_from_base() const {
        return 4.0 * std::numbers::pi * epsilon0 * hbar * hbar /
               (electron_mass * elementary_charge * elementary_charge);
    }

    /// Hartree energy hbar^2 / (m a0^2) in joules.
    [[nodiscard]] double hartree() const {
        return hbar * hbar / (electron_mass * bohr_radius * bohr_radius);
    }
};

inline constexpr PhysicalConstants codata2018{};

enum class Dimension { length, energy, frequency, electric_field, magnetic_field, velocity };

inline constexpr std::array<std::string_view, 6> dimension_names{
    "length", "energy", "frequency", "electric-field", "magnetic-field", "velocity"};

inline Dimension parse_dimension(std::string_view name) {
    for (std::size_t i = 0; i < dimension_names.size(); ++i) {
        if (dimension_names[i] == name) return static_cast<Dimension>(i);
    }
    throw std::invalid_argument("unknown dimension '" + std::string(name) + "'");
}

/**
 * A system of units, described by the SI value of one unit of each dimension.
 *
 * Atomic units here are Hartree atomic units: hbar = m = e = 4 pi eps0 = 1.
 * Frequencies are angular (rad/s in SI, E_h/hbar in atomic units).
 */
class UnitSystem {
public:
    enum class Mode { SI, atomic };

    static UnitSystem si() { return UnitSystem(Mode::SI, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0}); }

    static UnitSystem atomic(const PhysicalConstants& pc = codata2018) {
        const double a0 = pc.bohr_radius;
        const double eh = pc.hartree();
        const double e = pc.elementary_charge;
        return UnitSystem(Mode::atomic, {a0, eh, eh / pc.hbar, eh / (e * a0),
                                         pc.hbar / (e * a0 * a0), a0 * eh / pc.hbar});
    }

    [[nodiscard]] Mode mode() const { return mode_; }

    /// SI value of one unit of `d`.
    [[nodiscard]] double scale(Dimension d) const {
        const auto i = static_cast<std::size_t>(d);
        if (i >= scales_.size()) throw std::invalid_argument("unknown dimension");
        return scales_[i];
    }

private:
    UnitSystem(Mode m, std::array<double, 6> s) : mode_(m), scales_(s) {}

    Mode mode_;
    std::array<double, 6> scales_;
};

inline double convert(double value, Dimension d, const UnitSystem& from, const UnitSystem& to) {
    return value * (from.scale(d) / to.scale(d));
}

/// Characteristic electron velocity Z e^2 / (4 pi eps0 hbar); equals Z alpha c.
inline double atomic_velocity(int Z, const PhysicalConstants& pc = codata2018) {
    if (Z < 1) throw std::invalid_argument("atomic_velocity: Z must be >= 1");
    return Z * (pc.elementary_charge * pc.elementary_charge /
                (4.0 * std::numbers::pi * pc.epsilon0 * pc.hbar));
}

}  // namespace rotoshift
