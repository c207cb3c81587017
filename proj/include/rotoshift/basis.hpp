#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotoshift {

using BasisLabel = std::array<int, 3>;

/**
 * Labelled, finite orthonormal basis.
 *
 * HO3D labels are Cartesian occupations (n_x, n_y, n_z) with total <= N_max.
 * HydrogenManifold labels are (n, l, m_l) for one principal number n.
 * Labels are unique and sorted lexicographically.
 */
class TruncatedBasis {
public:
    enum class Kind { HO3D, HydrogenManifold };

    TruncatedBasis(Kind kind, std::vector<BasisLabel> labels, int size_parameter)
        : kind_(kind), labels_(std::move(labels)), size_parameter_(size_parameter) {
        if (!std::is_sorted(labels_.begin(), labels_.end()) ||
            std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw std::invalid_argument("basis labels must be unique and sorted");
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::vector<BasisLabel>& labels() const { return labels_; }
    [[nodiscard]] std::size_t dimension() const { return labels_.size(); }
    [[nodiscard]] const BasisLabel& operator[](std::size_t i) const { return labels_[i]; }

    /// N_max for HO3D, n for a hydrogen manifold.
    [[nodiscard]] int size_parameter() const { return size_parameter_; }

    [[nodiscard]] std::optional<std::size_t> index_of(const BasisLabel& label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    friend bool operator==(const TruncatedBasis&, const TruncatedBasis&) = default;

private:
    Kind kind_;
    std::vector<BasisLabel> labels_;
    int size_parameter_;
};

/// All (n_x, n_y, n_z) with n_x + n_y + n_z <= n_max; dimension C(n_max + 3, 3).
inline TruncatedBasis build_ho_basis(int n_max) {
    if (n_max < 0) throw std::invalid_argument("build_ho_basis: N_max must be >= 0");
    std::vector<BasisLabel> labels;
    for (int nx = 0; nx <= n_max; ++nx)
        for (int ny = 0; nx + ny <= n_max; ++ny)
            for (int nz = 0; nx + ny + nz <= n_max; ++nz) labels.push_back({nx, ny, nz});
    return TruncatedBasis(TruncatedBasis::Kind::HO3D, std::move(labels), n_max);
}

inline constexpr int max_manifold_n = 10;

/// All (n, l, m_l) of one hydrogenic shell; dimension n^2.
inline TruncatedBasis hydrogen_manifold_basis(int n) {
    if (n < 1 || n > max_manifold_n)
        throw std::invalid_argument("hydrogen_manifold_basis: n must be in [1, " +
                                    std::to_string(max_manifold_n) + "]");
    std::vector<BasisLabel> labels;
    for (int l = 0; l < n; ++l)
        for (int m = -l; m <= l; ++m) labels.push_back({n, l, m});
    return TruncatedBasis(TruncatedBasis::Kind::HydrogenManifold, std::move(labels), n);
}

}  // namespace rotoshift
