#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotoshift/basis.hpp"
#include "rotoshift/constants.hpp"
#include "rotoshift/errors.hpp"
#include "rotoshift/harmonic.hpp"
#include "rotoshift/hydrogen.hpp"
#include "rotoshift/quasi_energy.hpp"
#include "rotoshift/report.hpp"
#include "rotoshift/rotor.hpp"
#include "rotoshift/shifts.hpp"

// Scenario configuration (strict JSON), command dispatch and report tables for
// the rotoshift command-line tool.

namespace rotoshift::scenario {

/// Malformed or inconsistent configuration. Maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Command { spectrum, drfs, doppler, compare_stark, sweep };

inline std::optional<Command> parse_command(const std::string& s) {
    if (s == "spectrum") return Command::spectrum;
    if (s == "drfs") return Command::drfs;
    if (s == "doppler") return Command::doppler;
    if (s == "compare-stark") return Command::compare_stark;
    if (s == "sweep") return Command::sweep;
    return std::nullopt;
}

inline const char* command_name(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::drfs: return "drfs";
        case Command::doppler: return "doppler";
        case Command::compare_stark: return "compare-stark";
        case Command::sweep: return "sweep";
    }
    return "?";
}

struct DriveSpec {
    double field = 0.0;  // V/m, magnitude
    bool antiparallel = false;
};

struct SweepSpec {
    enum class Axis { omega, radius, drive };
    Axis axis = Axis::omega;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    bool log_scale = false;
};

struct DopplerSpec {
    double delta_e = 0.0;  // J
    Vec3 velocity = Vec3::Zero();
    std::optional<Vec3> wavevector;
    std::optional<Vec3> direction;
};

struct ScenarioConfig {
    std::optional<RotorConfig> rotor;
    std::optional<Transition> transition;
    std::optional<DriveSpec> drive;
    std::optional<SweepSpec> sweep;
    std::optional<DopplerSpec> doppler;
    std::string format = "csv";
    std::optional<std::string> output_path;
    int n_max = 14;
};

inline constexpr int max_basis_n = 30;

namespace detail {

using json = nlohmann::json;

/// Walks one JSON object, recording consumed keys so leftovers can be rejected.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("expected an object");
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& key = "") const {
        throw ConfigError("config field '" + (key.empty() ? path_ : child(key)) + "': " + msg);
    }

    [[nodiscard]] std::string child(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        if (!j_.contains(key)) fail("missing required field", key);
        seen_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) fail("expected a number", key);
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail("must be finite", key);
        return d;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    int integer(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number_integer()) fail("expected an integer", key);
        return v.get<int>();
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) fail("expected a string", key);
        return v.get<std::string>();
    }

    Vec3 vector3(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array() || v.size() != 3) fail("expected an array of 3 numbers", key);
        Vec3 out;
        for (std::size_t i = 0; i < 3; ++i) {
            if (!v[i].is_number()) fail("expected an array of 3 numbers", key);
            out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
        }
        if (!out.allFinite()) fail("must be finite", key);
        return out;
    }

    std::pair<int, int> int_pair(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
            fail("expected [n, m_z]", key);
        return {v[0].get<int>(), v[1].get<int>()};
    }

    void reject_unknown() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail("unknown field", it.key());
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

}  // namespace detail

/**
 * Parse and validate a scenario for one command. Unknown fields anywhere are
 * rejected; which blocks are required depends on the command.
 */
inline ScenarioConfig parse_config(const std::string& text, Command cmd) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // the message carries line and column
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    detail::ObjectReader top(root, "");
    ScenarioConfig cfg;

    const bool needs_model = cmd != Command::doppler;
    std::string model;
    if (needs_model || top.has("model")) {
        model = top.string("model");
        if (model != "harmonic" && model != "coulomb") top.fail("must be 'harmonic' or 'coulomb'", "model");
    }

    if (needs_model || top.has("rotor")) {
        detail::ObjectReader r(top.raw("rotor"), "rotor");
        RotorConfig rotor;
        const bool has_rad = r.has("omega_rad_s");
        const bool has_hz = r.has("omega_over_2pi_hz");
        if (has_hz && cmd != Command::compare_stark)
            r.fail("only accepted by the compare-stark command", "omega_over_2pi_hz");
        if (has_rad == has_hz) r.fail("give exactly one of omega_rad_s, omega_over_2pi_hz");
        rotor.omega = has_rad ? r.number("omega_rad_s") : 2.0 * std::numbers::pi * r.number("omega_over_2pi_hz");
        rotor.radius = r.number("radius_m");
        if (rotor.radius < 0.0) r.fail("must be >= 0", "radius_m");
        if (model == "harmonic") {
            rotor.model = HarmonicTrap{r.number("omega0_rad_s")};
        } else {
            rotor.model = CoulombCenter{r.has("Z") ? r.integer("Z") : 1};
        }
        r.reject_unknown();
        try {
            rotor.validate();
        } catch (const ResonanceError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config field 'rotor': ") + e.what());
        }
        cfg.rotor = rotor;
    }

    const bool needs_transition = cmd == Command::drfs || cmd == Command::sweep || cmd == Command::compare_stark ||
                                  (cmd == Command::spectrum && model == "coulomb");
    if (needs_transition || top.has("transition")) {
        detail::ObjectReader t(top.raw("transition"), "transition");
        Transition tr;
        const auto [n, m] = t.int_pair("upper");
        const auto [np, mp] = t.int_pair("lower");
        tr.upper = {n, m};
        tr.lower = {np, mp};
        if (t.has("M")) {
            const json& mv = t.raw("M");
            if (mv.is_string() && mv.get<std::string>() == "auto") {
            } else if (mv.is_number_integer()) {
                tr.M_override = mv.get<int>();
            } else {
                t.fail("expected an integer or \"auto\"", "M");
            }
        }
        t.reject_unknown();
        auto check = [&](const StateRef& s, const char* which) {
            if (model == "coulomb") {
                if (s.q < 1 || s.q > max_manifold_n) t.fail("n must be in [1, 10]", which);
                if (std::abs(s.m_z) > s.q - 1) t.fail("need |m_z| <= n - 1", which);
            } else {
                if (s.q < 0 || std::abs(s.m_z) > s.q) t.fail("need N >= 0 and |m_z| <= N", which);
            }
        };
        check(tr.upper, "upper");
        check(tr.lower, "lower");
        cfg.transition = tr;
    }

    if (top.has("drive")) {
        detail::ObjectReader d(top.raw("drive"), "drive");
        DriveSpec drive;
        if (d.has("E_V_per_m")) {
            drive.field = d.number("E_V_per_m");
            if (drive.field < 0.0) d.fail("must be >= 0", "E_V_per_m");
        }
        if (d.has("orientation")) {
            const std::string o = d.string("orientation");
            if (o != "parallel" && o != "antiparallel") d.fail("must be 'parallel' or 'antiparallel'", "orientation");
            drive.antiparallel = o == "antiparallel";
        }
        d.reject_unknown();
        if (model == "harmonic") top.fail("drive fields require the coulomb model", "drive");
        cfg.drive = drive;
    }
    if (cmd == Command::compare_stark) {
        if (model != "coulomb") top.fail("compare-stark requires the coulomb model", "model");
        if (!cfg.drive || !(cfg.drive->field > 0.0)) top.fail("compare-stark requires drive.E_V_per_m > 0", "drive");
    }

    if (cmd == Command::sweep || top.has("sweep")) {
        detail::ObjectReader s(top.raw("sweep"), "sweep");
        SweepSpec sw;
        const std::string axis = s.string("axis");
        if (axis == "omega") sw.axis = SweepSpec::Axis::omega;
        else if (axis == "radius") sw.axis = SweepSpec::Axis::radius;
        else if (axis == "drive") sw.axis = SweepSpec::Axis::drive;
        else s.fail("must be 'omega', 'radius' or 'drive'", "axis");
        sw.from = s.number("from");
        sw.to = s.number("to");
        sw.points = s.integer("points");
        if (sw.points < 2) s.fail("must be >= 2", "points");
        if (s.has("scale")) {
            const std::string sc = s.string("scale");
            if (sc != "linear" && sc != "log") s.fail("must be 'linear' or 'log'", "scale");
            sw.log_scale = sc == "log";
        }
        s.reject_unknown();
        if (sw.from == sw.to) s.fail("degenerate range (from == to)");
        if (sw.log_scale && (sw.from <= 0.0 || sw.to <= 0.0)) s.fail("log scale needs positive bounds");
        if (sw.axis == SweepSpec::Axis::drive && model != "coulomb") s.fail("drive sweeps require the coulomb model", "axis");
        if (sw.axis == SweepSpec::Axis::radius && std::min(sw.from, sw.to) < 0.0) s.fail("radius must be >= 0");
        if (sw.axis == SweepSpec::Axis::drive && std::min(sw.from, sw.to) < 0.0) s.fail("drive field must be >= 0");
        if (sw.axis == SweepSpec::Axis::drive && !cfg.drive) cfg.drive = DriveSpec{};
        cfg.sweep = sw;
    }

    if (cmd == Command::doppler || top.has("doppler")) {
        detail::ObjectReader d(top.raw("doppler"), "doppler");
        DopplerSpec dop;
        dop.delta_e = d.number("delta_E_J");
        dop.velocity = d.vector3("velocity_m_s");
        if (d.has("wavevector_per_m")) dop.wavevector = d.vector3("wavevector_per_m");
        if (d.has("direction")) dop.direction = d.vector3("direction");
        d.reject_unknown();
        if (dop.wavevector.has_value() == dop.direction.has_value())
            d.fail("give exactly one of wavevector_per_m, direction");
        cfg.doppler = dop;
    }

    if (top.has("basis")) {
        detail::ObjectReader b(top.raw("basis"), "basis");
        cfg.n_max = b.integer("N_max");
        b.reject_unknown();
        if (cfg.n_max < 0 || cfg.n_max > max_basis_n) b.fail("must be in [0, 30]", "N_max");
    }

    if (top.has("output")) {
        detail::ObjectReader o(top.raw("output"), "output");
        if (o.has("format")) {
            cfg.format = o.string("format");
            if (cfg.format != "csv" && cfg.format != "json") o.fail("must be 'csv' or 'json'", "format");
        }
        if (o.has("path")) cfg.output_path = o.string("path");
        o.reject_unknown();
    }
    top.reject_unknown();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path, Command cmd) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), cmd);
}

/// Drive field vector: along +R (parallel) or -R (antiparallel).
inline Vec3 drive_vector(const RotorConfig& rotor, const DriveSpec& d) {
    const Vec3 dir(std::cos(rotor.azimuth), std::sin(rotor.azimuth), 0.0);
    return (d.antiparallel ? -d.field : d.field) * dir;
}

/// Sweep abscissae in ascending order; the endpoints are reproduced exactly.
inline std::vector<double> sweep_grid(const SweepSpec& s) {
    const double lo = std::min(s.from, s.to), hi = std::max(s.from, s.to);
    std::vector<double> g(static_cast<std::size_t>(s.points));
    const int last = s.points - 1;
    for (int i = 0; i <= last; ++i) {
        const double f = double(i) / last;
        g[static_cast<std::size_t>(i)] =
            s.log_scale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

/**
 * Worker count for sweeps: explicit request, else ROTOSHIFT_THREADS, where
 * 0 or unset means one per hardware thread.
 */
inline unsigned resolve_threads(std::optional<int> requested = std::nullopt) {
    int n = 0;
    if (requested) {
        n = *requested;
    } else if (const char* env = std::getenv("ROTOSHIFT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0) throw ConfigError("ROTOSHIFT_THREADS must be a non-negative integer");
        n = static_cast<int>(v);
    }
    if (n < 0) throw ConfigError("thread count must be >= 0");
    if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return static_cast<unsigned>(n);
}

inline const std::vector<std::string>& shift_columns() {
    static const std::vector<std::string> cols{
        "swept_value",        "omega_rad_s",          "radius_m",
        "drive_E_V_per_m",    "M",                    "quasi_energy_upper_J",
        "quasi_energy_lower_J", "omega_rest_rad_s",   "omega_rotating_rad_s",
        "drfs_exact_rad_s",   "drfs_series_rad_s",    "drfs_series_2pi_convention_rad_s",
        "kinematic_part_rad_s", "dynamic_part_rad_s", "transverse_doppler_ratio",
        "force_ratio",        "root_factor_upper",    "root_factor_lower"};
    return cols;
}

struct ShiftRow {
    std::vector<report::Cell> cells;
    std::vector<std::string> warnings;
};

/// One report row for the transition at the given rotor / drive state.
inline ShiftRow shift_row(double swept_value, const RotorConfig& rotor, const Transition& t,
                          const std::optional<DriveSpec>& drive, const PhysicalConstants& pc = codata2018) {
    std::optional<Vec3> drive_vec;
    if (drive) drive_vec = drive_vector(rotor, *drive);
    const ShiftReport r = drfs_exact(t, rotor, pc, drive_vec);
    if (!(r.omega_rotating > 0.0))
        throw UnphysicalTransitionError("transition has nonpositive photon frequency (omega = " +
                                        report::format_number(r.omega_rotating) + " rad/s)");
    ShiftRow row;
    // outside the series regime the exact columns stay valid; the series ones become nan
    std::optional<SeriesShift> s;
    try {
        s = drfs_series(t, rotor, pc, drive_vec);
    } catch (const OutOfRegimeError& e) {
        row.warnings.push_back(e.what());
    }
    const double nan = std::nan("");

    const double vc = rotor.orbital_speed();
    const double ratio = (s && r.omega_rest > 0.0 && vc != 0.0)
                             ? s->dynamic / transverse_doppler_shift(r.omega_rest, vc, pc)
                             : nan;
    const double force = (drive && drive->field > 0.0) ? force_ratio(rotor, drive->field, pc).direct : nan;

    double root_u = nan, root_l = nan;
    if (rotor.is_coulomb()) {
        auto x = [&](int n) {
            return drive_vec ? driven_expansion_parameter(n, rotor, *drive_vec, pc)
                             : rotation_expansion_parameter(n, rotor, pc);
        };
        const double xu = x(t.upper.q), xl = x(t.lower.q);
        root_u = std::sqrt(1.0 + xu * xu);
        root_l = std::sqrt(1.0 + xl * xl);
        for (const auto& [n, root] : {std::pair{t.upper.q, root_u}, std::pair{t.lower.q, root_l}}) {
            if (auto w = perturbative_regime_warning(n, rotor.omega * root, rotor.charge(), pc))
                row.warnings.push_back(*w);
        }
    }
    row.cells = {swept_value,
                 rotor.omega,
                 rotor.radius,
                 drive ? drive->field : 0.0,
                 static_cast<std::int64_t>(r.M),
                 r.quasi_energy_upper,
                 r.quasi_energy_lower,
                 r.omega_rest,
                 r.omega_rotating,
                 r.drfs,
                 s ? s->total : nan,
                 s ? s->total_2pi_convention : nan,
                 r.kinematic_part,
                 r.dynamic_part,
                 ratio,
                 force,
                 root_u,
                 root_l};
    return row;
}

namespace detail {

inline void append_unique(std::vector<std::string>& dst, const std::vector<std::string>& src) {
    for (const auto& w : src)
        if (std::find(dst.begin(), dst.end(), w) == dst.end()) dst.push_back(w);
}

inline report::Table run_drfs(const ScenarioConfig& cfg, const PhysicalConstants& pc) {
    report::Table t{"drfs", shift_columns(), {}, {}};
    ShiftRow row = shift_row(cfg.rotor->omega, *cfg.rotor, *cfg.transition, cfg.drive, pc);
    t.add_row(std::move(row.cells));
    append_unique(t.warnings, row.warnings);
    return t;
}

inline report::Table run_sweep(const ScenarioConfig& cfg, unsigned threads, const PhysicalConstants& pc) {
    const std::vector<double> grid = sweep_grid(*cfg.sweep);
    std::vector<ShiftRow> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());

    auto evaluate = [&](std::size_t i) {
        try {
            RotorConfig rotor = *cfg.rotor;
            std::optional<DriveSpec> drive = cfg.drive;
            switch (cfg.sweep->axis) {
                case SweepSpec::Axis::omega: rotor.omega = grid[i]; break;
                case SweepSpec::Axis::radius: rotor.radius = grid[i]; break;
                case SweepSpec::Axis::drive: drive->field = grid[i]; break;
            }
            rows[i] = shift_row(grid[i], rotor, *cfg.transition, drive, pc);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), grid.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < grid.size(); i += workers) evaluate(i);
            });
        for (auto& th : pool) th.join();
    }
    // report the failure of the lowest grid point, independent of scheduling
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    report::Table t{"sweep", shift_columns(), {}, {}};
    for (auto& r : rows) {
        t.add_row(std::move(r.cells));
        append_unique(t.warnings, r.warnings);
    }
    return t;
}

inline report::Table run_spectrum(const ScenarioConfig& cfg, const PhysicalConstants& pc) {
    const RotorConfig& rotor = *cfg.rotor;
    if (rotor.is_harmonic()) {
        report::Table t{"spectrum",
                        {"rank", "N", "m_z", "k", "quasi_energy_numeric_J", "quasi_energy_analytic_J",
                         "relative_difference", "in_lowest_half"},
                        {},
                        {}};
        const TruncatedBasis basis = build_ho_basis(cfg.n_max);
        const SpectrumResult numeric = eigen_spectrum(harmonic::ho_rotating_hamiltonian(basis, rotor, pc));
        const SpectrumResult analytic = ho_analytic_levels(rotor, cfg.n_max, pc);
        const SpectrumResult labelled = transfer_labels(numeric, analytic, numeric.levels.size());
        const std::size_t half = numeric.levels.size() / 2;
        for (std::size_t i = 0; i < labelled.levels.size(); ++i) {
            const auto& lv = labelled.levels[i];
            const double ref = analytic.levels[i].quasi_energy;
            t.add_row({static_cast<std::int64_t>(i), static_cast<std::int64_t>(lv.label->q),
                       static_cast<std::int64_t>(lv.label->m_z), static_cast<std::int64_t>(lv.label->k),
                       lv.quasi_energy, ref, (lv.quasi_energy - ref) / std::abs(ref),
                       static_cast<std::int64_t>(i < half ? 1 : 0)});
        }
        t.warnings.push_back("levels at ranks >= " + std::to_string(half) +
                             " are affected by basis truncation (N_max=" + std::to_string(cfg.n_max) + ")");
        return t;
    }

    report::Table t{"spectrum",
                    {"n", "rank", "m_z", "k", "quasi_energy_first_order_J", "quasi_energy_analytic_J", "difference_J"},
                    {},
                    {}};
    CrossedFields fields = fictitious_fields(rotor, pc);
    if (cfg.drive) fields.drive_E = drive_vector(rotor, *cfg.drive);
    std::vector<int> manifolds{cfg.transition->upper.q, cfg.transition->lower.q};
    std::sort(manifolds.begin(), manifolds.end());
    manifolds.erase(std::unique(manifolds.begin(), manifolds.end()), manifolds.end());
    const int Z = rotor.charge();
    for (int n : manifolds) {
        const SpectrumResult pt =
            first_order_degenerate_levels(bohr_level(n, Z, pc), hydrogen::manifold_perturbation(n, fields, pc, Z));
        SpectrumResult analytic;
        for (int m = -(n - 1); m <= n - 1; ++m)
            for (int k = 0; k < n - std::abs(m); ++k)
                analytic.levels.push_back({StateLabel{n, m, k}, crossed_field_levels(n, m, fields, pc, Z)});
        rotoshift::detail::sort_levels(analytic.levels);
        for (std::size_t i = 0; i < pt.levels.size(); ++i) {
            const auto& a = analytic.levels[i];
            t.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(a.label->m_z), static_cast<std::int64_t>(a.label->k),
                       pt.levels[i].quasi_energy, a.quasi_energy, pt.levels[i].quasi_energy - a.quasi_energy});
        }
        if (auto w = perturbative_regime_warning(n, crossed_field_frequency(n, fields, pc, Z), Z, pc))
            t.warnings.push_back(*w);
    }
    return t;
}

inline report::Table run_compare_stark(const ScenarioConfig& cfg, const PhysicalConstants& pc) {
    const RotorConfig& rotor = *cfg.rotor;
    report::Table t{"compare-stark",
                    {"orientation", "n", "m_z", "quasi_energy_J", "expansion_parameter", "force_ratio_direct",
                     "force_ratio_engineering"},
                    {},
                    {}};
    const ForceRatio fr = force_ratio(rotor, cfg.drive->field, pc);
    std::vector<int> manifolds{cfg.transition->upper.q, cfg.transition->lower.q};
    std::sort(manifolds.begin(), manifolds.end(), std::greater<>());
    manifolds.erase(std::unique(manifolds.begin(), manifolds.end()), manifolds.end());
    for (const bool anti : {false, true}) {
        const Vec3 e = drive_vector(rotor, DriveSpec{cfg.drive->field, anti});
        for (int n : manifolds) {
            const double x = driven_expansion_parameter(n, rotor, e, pc);
            for (int m = -(n - 1); m <= n - 1; ++m) {
                t.add_row({std::string(anti ? "reduced" : "enhanced"), static_cast<std::int64_t>(n),
                           static_cast<std::int64_t>(m), driven_rotating_levels(n, m, rotor, e, pc), x, fr.direct,
                           fr.engineering});
            }
        }
    }
    return t;
}

inline report::Table run_doppler(const ScenarioConfig& cfg, const PhysicalConstants& pc) {
    const DopplerSpec& d = *cfg.doppler;
    report::Table t{"doppler", {"delta_E_J", "omega_rest_rad_s", "v_dot_k_rad_s", "omega_rad_s", "shift_rad_s"}, {}, {}};
    const double rest = d.delta_e / pc.hbar;
    const double w = d.wavevector ? doppler_frequency(d.delta_e, d.velocity, *d.wavevector, pc)
                                  : doppler_frequency_along(d.delta_e, d.velocity, *d.direction, pc);
    const double vk = d.wavevector ? d.velocity.dot(*d.wavevector) : w - rest;
    t.add_row({d.delta_e, rest, vk, w, w - rest});
    return t;
}

}  // namespace detail

/// Evaluate one command on a validated configuration.
inline report::Table run(Command cmd, const ScenarioConfig& cfg, unsigned threads = 1,
                         const PhysicalConstants& pc = codata2018) {
    switch (cmd) {
        case Command::spectrum: return detail::run_spectrum(cfg, pc);
        case Command::drfs: return detail::run_drfs(cfg, pc);
        case Command::doppler: return detail::run_doppler(cfg, pc);
        case Command::compare_stark: return detail::run_compare_stark(cfg, pc);
        case Command::sweep: return detail::run_sweep(cfg, threads, pc);
    }
    throw std::logic_error("unhandled command");
}

inline std::string render(const report::Table& t, const std::string& format) {
    return format == "json" ? report::to_json(t) : report::to_csv(t);
}

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_validation = 2, exit_out_of_regime = 3 };

/// Classify an exception thrown while loading or running a scenario.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const OutOfRegimeError*>(&e) || dynamic_cast<const UnphysicalTransitionError*>(&e))
        return exit_out_of_regime;
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e))
        return exit_validation;
    return exit_failure;
}

}  // namespace rotoshift::scenario
