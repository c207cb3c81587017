#pragma once

#include <stdexcept>
#include <string>

namespace rotoshift {

// Failure classes. Precondition violations use std::invalid_argument directly.

/// A parameter lies outside the regime where the requested formula is valid
/// (series expansion, nonrelativistic Doppler, ...).
class OutOfRegimeError : public std::domain_error {
public:
    explicit OutOfRegimeError(const std::string& what) : std::domain_error(what) {}
};

/// Rotation frequency too close to the harmonic trap frequency.
class ResonanceError : public OutOfRegimeError {
public:
    explicit ResonanceError(const std::string& what) : OutOfRegimeError(what) {}
};

/// Dipole integral requested between orbitals that are not coupled (|l - l'| != 1).
class SelectionRuleError : public std::invalid_argument {
public:
    explicit SelectionRuleError(const std::string& what) : std::invalid_argument(what) {}
};

/// A transition state is absent from a level table.
class NotFoundError : public std::out_of_range {
public:
    explicit NotFoundError(const std::string& what) : std::out_of_range(what) {}
};

/// The emitted photon frequency comes out nonpositive.
class UnphysicalTransitionError : public std::domain_error {
public:
    explicit UnphysicalTransitionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rotoshift
