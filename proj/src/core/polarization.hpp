#pragma once

#include "core/states.hpp"

namespace polcat {

/// Exact frame change between the linear (x, y) and circular (+, -) mode pairs.
/// Acts on coherent amplitudes the way the passive transform acts on the
/// annihilation operators; coefficients are untouched. Same-basis call is the
/// identity.
///
///   circular -> linear:  a_x = (a+ + a-)/sqrt2,   a_y = i(a+ - a-)/sqrt2
///   linear -> circular:  a+ = (a_x - i a_y)/sqrt2, a- = (a_x + i a_y)/sqrt2
CoherentSuperposition change_basis(const CoherentSuperposition& s, Basis target);

}  // namespace polcat
