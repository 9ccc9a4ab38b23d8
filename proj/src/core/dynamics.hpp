#pragma once

#include <utility>
#include <vector>

#include "core/states.hpp"

namespace polcat {

/// Dimensionless evolution parameters: tau = |lambda2| t, ratio = lambda1/|lambda2|
/// (valid regime ratio < 1), and the sign of lambda2. The complex exponent
/// driving both frames is lambda*t = (ratio + i*sign) * tau.
struct CouplingFrame {
    double tau;
    double ratio;
    int lambda2_sign;

    CouplingFrame(double tau_, double ratio_, int lambda2_sign_ = -1);
    Cplx lambda_tau() const { return Cplx(ratio, static_cast<double>(lambda2_sign)) * tau; }
};

/// Collective preparation of the atomic register.
///   Macro:   (|1..1> + sign |2..2>)/sqrt2 conditioning outcome
///   Product: each atom in (|1> + |2>)/sqrt2, N atoms
struct AtomPreparation {
    enum class Kind { Macro, Product };
    static constexpr int kMaxAtoms = 50;

    Kind kind;
    int sign;     // Macro only: conditioning outcome sign
    int n_atoms;  // Product only

    static AtomPreparation macro(int sign);
    static AtomPreparation product(int n_atoms);
};

/// One field branch entangled with a collective atomic label.
struct JointBranch {
    int atom_label;  // Macro: 1 or 2; Product: number of atoms in |2>
    Cplx weight;     // Macro: 1/sqrt2; Product: C(N,j)/2^(N/2) (x growth factor if weighted)
    CoherentTerm field;
};

/// Field superposition labeled by collective atomic state, pre-conditioning.
struct JointBranchSet {
    Basis basis;
    AtomPreparation prep;
    bool weighted;
    std::vector<JointBranch> branches;
};

/// Joint evolution of a single coherent product with the prepared register.
///
/// Circular basis, label 1 (all atoms in |1>): (a, b) -> (a e^{L}, b e^{-L})
/// with L = lambda_tau(); label 2 gets the inverse map. The linear-frame map
/// for the same labels is the hyperbolic beam splitter
///   y' = cosh(L) y + i sinh(L) x,   x' = cosh(L) x - i sinh(L) y    (label 1)
/// with the sinh signs flipped for label 2, so both frames generate identical
/// physics branch by branch. Product preparation (circular only) yields N+1
/// branches with exponents scaled by (N-2j)/N.
///
/// By default branches carry no non-unitary growth factor; `weighted` retains
/// the exp((|out|^2-|in|^2)/2) factors for sensitivity studies.
JointBranchSet evolve_joint(const CoherentSuperposition& initial, const AtomPreparation& prep,
                            const CouplingFrame& frame, bool weighted = false);

struct Conditioned {
    CoherentSuperposition state;
    double probability;
};

/// Projects the atomic register onto the prepared superposition and collapses
/// the field. For the macro preparation the probability of outcome +/- is
/// N_pm/4. Throws DegenerateState when the projected branch vanishes
/// (probability <= 1e-14), e.g. the "-" outcome at tau = 0.
Conditioned condition_atoms(const JointBranchSet& joint, const AtomPreparation& prep);

/// Closed-form conditioning norms (N+, N-) for a coherent product (alpha, beta):
///   N_pm = 2{1 pm e^{-S cosh(2 r tau)} e^{S cos(2 tau)} cos[D sin(2 lambda2 t)]}
/// with S = |alpha|^2+|beta|^2, D = |alpha|^2-|beta|^2. N+ + N- = 4 exactly.
std::pair<double, double> norm_factors(Cplx alpha, Cplx beta, const CouplingFrame& frame);

enum class Parity { Even, Odd };

/// Normalized (|sqrt2 alpha>_y pm |-sqrt2 alpha>_y)|0>_x in the linear basis.
CoherentSuperposition make_cat_y(Cplx alpha, Parity parity);

/// Normalized (|i alpha>_+ |-i alpha>_- pm |-i alpha>_+ |i alpha>_-)/sqrt(N_pm),
/// circular basis.
CoherentSuperposition make_entangled_coherent(Cplx alpha, int sign);

}  // namespace polcat
