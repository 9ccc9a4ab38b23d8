#pragma once

#include <stdexcept>

namespace polcat {

// A conditioning branch (or requested superposition) with vanishing norm.
struct DegenerateState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock truncation cannot hold the requested state at the demanded tail mass.
struct CutoffTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evolution requested in a basis for which the preparation has no closed form.
struct UnsupportedBasisCombination : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrator step size above the stability bound.
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A population left its physical range during integration.
struct NonPhysical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trajectory did not settle (or is too short to judge).
struct NotStationary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal numeric consistency failure (corrupted state).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polcat
