#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "rotoshift/basis.hpp"

namespace rotoshift {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double hermiticity_tolerance = 1e-12;

/// max |A - A^dagger| over all entries.
inline double hermiticity_defect(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return false;
    const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    return hermiticity_defect(a) <= hermiticity_tolerance * scale;
}

/**
 * Dense Hermitian matrix over a labelled basis.
 *
 * `unit` is the SI value of one matrix unit (joules for Hamiltonians, 1 for
 * dimensionless operators such as L_z / hbar).
 */
class HermitianOperator {
public:
    HermitianOperator(TruncatedBasis basis, ComplexMatrix matrix, double unit = 1.0)
        : basis_(std::move(basis)), matrix_(std::move(matrix)), unit_(unit) {
        const auto dim = static_cast<Eigen::Index>(basis_.dimension());
        if (matrix_.rows() != dim || matrix_.cols() != dim)
            throw std::invalid_argument("operator matrix does not match basis dimension");
        if (!is_hermitian(matrix_)) throw std::invalid_argument("operator matrix is not Hermitian");
    }

    [[nodiscard]] const TruncatedBasis& basis() const { return basis_; }
    [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
    [[nodiscard]] double unit() const { return unit_; }
    [[nodiscard]] double hermiticity_defect() const { return rotoshift::hermiticity_defect(matrix_); }

private:
    TruncatedBasis basis_;
    ComplexMatrix matrix_;
    double unit_;
};

/// max |[A, B]| entry, in matrix units of A times B.
inline double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace rotoshift
