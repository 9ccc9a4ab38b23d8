#pragma once

#include <utility>
#include <vector>

#include "core/dynamics.hpp"
#include "core/observables.hpp"
#include "core/states.hpp"

namespace polcat {

/// Truncated number-basis vector, one or two modes. Two-mode data is row-major
/// with index n0*(cutoff+1) + n1, mode order matching the basis tag.
struct FockVector {
    int cutoff;  // highest kept occupation per mode; dimension D = cutoff + 1
    int modes;   // 1 or 2
    Basis basis;
    std::vector<Cplx> data;

    int dim() const { return cutoff + 1; }
    std::size_t at(int n0, int n1) const {
        return static_cast<std::size_t>(n0) * (cutoff + 1) + n1;
    }
};

/// Cutoff adequate for |amplitude| <= mu: ceil(mu^2 + 8 mu + 20).
int suggested_cutoff(double max_abs_amp);

/// Expands a coherent superposition in the truncated number basis, checks the
/// raw norm against the Gram norm (1e-10) and the top-two-level tail mass
/// (1e-10), then normalizes. Throws CutoffTooSmall on either check failing;
/// pick the cutoff with suggested_cutoff().
FockVector to_fock(const CoherentSuperposition& s, int cutoff);

/// Single-mode squeezed vacuum in the number basis, normalized.
FockVector squeezed_vacuum_fock(const SqueezedVacuum& sv, int cutoff);

/// Brute-force joint evolution for the macro preparation: applies the branch
/// generator exponential (diagonal in the circular frame, a hyperbolic beam
/// splitter in the linear frame) and renormalizes each branch, matching the
/// equal-weight convention of evolve_joint. Returns (atom_label, branch) pairs.
std::vector<std::pair<int, FockVector>> evolve_fock(const FockVector& initial,
                                                    const AtomPreparation& prep,
                                                    const CouplingFrame& frame);

Cplx fock_overlap(const FockVector& lhs, const FockVector& rhs);

double fock_quadrature_variance(const FockVector& v, const Quadrature& q);
double fock_inseparability(const FockVector& v);
double fock_linear_entropy(const FockVector& v, int mode);
double fock_squeezed_vacuum_fidelity(const FockVector& v, int mode, const SqueezedVacuum& sv);

}  // namespace polcat
