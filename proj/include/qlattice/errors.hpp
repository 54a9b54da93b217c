#ifndef QLATTICE_ERRORS_HPP
#define QLATTICE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlattice {

/// Parameters outside the family's validity range, or malformed input.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An infinite sum/product failed to reach the requested tolerance
/// within the iteration cap.
struct NonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A lower q-Pochhammer factor vanished before the series terminated.
struct PoleInLowerParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// R0 evaluated on the truncated spectrum is numerically singular.
struct SingularRZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// R1(z)^2 + 4 R0(z) < 0: z is off the admissible spectral set.
struct NegativeDiscriminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedFamily : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A parameter shift left the family's validity range where the formula
/// genuinely requires it (most shifted evaluations are meromorphic and
/// proceed unchecked).
struct ShiftedParameterInvalid : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

} // namespace qlattice

#endif
