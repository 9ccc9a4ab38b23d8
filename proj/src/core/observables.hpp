#pragma once

#include "core/states.hpp"

namespace polcat {

enum class Axis { X, Y };

/// Quadratures X = (a + a^+)/2, Y = (a^+ - a)/2i; vacuum variance 1/4.
struct Quadrature {
    int mode;
    Axis axis;
};

double quadrature_variance(const CoherentSuperposition& s, const Quadrature& q);

/// Inseparability sum I = Var(X_a + X_b) + Var(Y_a - Y_b) over the state's own
/// mode pair, in the 1/4-vacuum convention. Separable coherent products give
/// exactly 1; I < 1 certifies entanglement, I >= 1 is inconclusive for
/// non-Gaussian states.
double inseparability(const CoherentSuperposition& s);

/// One-mode reduced linear entropy S = 1 - Tr(rho_mode^2), from the analytic
/// quadruple overlap sum. Zero for products, in [0, 1) generally.
double linear_entropy(const CoherentSuperposition& s, int mode);

/// Squeezed vacuum |xi|, theta. Fock expansion over even number states with
/// c_{2n} proportional to (sqrt((2n)!)/n!) (-e^{i theta} tanh|xi| / 2)^n,
/// normalized to unit norm.
struct SqueezedVacuum {
    double magnitude;
    double theta;

    SqueezedVacuum(double magnitude_, double theta_);
};

/// Fidelity sqrt(<xi| rho_mode |xi>) between the squeezed vacuum and the
/// reduction of s to `mode`. For product states this collapses to the
/// amplitude-overlap form |sum_k c_k <xi|amp_k>|.
double squeezed_vacuum_fidelity(const CoherentSuperposition& s, int mode,
                                const SqueezedVacuum& sv);

}  // namespace polcat
