#pragma once

#include <array>
#include <complex>
#include <vector>

namespace polcat {

using Cplx = std::complex<double>;

/// Mode frame of a two-mode state. Mode order is (+, -) for Circular and
/// (x, y) for Linear.
enum class Basis { Circular, Linear };

const char* mode_name(Basis basis, int mode);

/// One term of a superposition: coeff * |amp[0]> x |amp[1]>.
struct CoherentTerm {
    Cplx coeff;
    std::array<Cplx, 2> amp;
};

/// Finite superposition of two-mode coherent products.
///
/// Terms whose amplitudes coincide within kMergeTol (per mode) are merged on
/// construction, so exact cancellations show up as a vanishing norm instead of
/// an ill-conditioned Gram matrix. Values are immutable after construction.
class CoherentSuperposition {
public:
    static constexpr double kMergeTol = 1e-12;       // amplitude merge radius
    static constexpr double kDegenerateTol = 1e-14;  // norm^2 below this is degenerate
    static constexpr double kNormFlagTol = 1e-12;    // |norm^2 - 1| bound when flagged

    CoherentSuperposition(Basis basis, std::vector<CoherentTerm> terms,
                          bool normalized = false);

    Basis basis() const { return basis_; }
    const std::vector<CoherentTerm>& terms() const { return terms_; }
    bool normalized() const { return normalized_; }
    std::size_t size() const { return terms_.size(); }

private:
    Basis basis_;
    std::vector<CoherentTerm> terms_;
    bool normalized_;
};

/// Single-mode overlap <mu|nu> = exp(-|mu|^2/2 - |nu|^2/2 + conj(mu) nu).
Cplx coherent_overlap(Cplx mu, Cplx nu);

/// Two-mode overlap of terms k,l: product of per-mode overlaps.
Cplx term_overlap(const CoherentTerm& k, const CoherentTerm& l);

/// Gram-weighted squared norm sum_{kl} conj(c_k) c_l <k|l>. Throws NumericError
/// if the (mathematically real, nonnegative) result dips below -1e-12.
double state_norm2(const CoherentSuperposition& s);

/// <lhs|rhs>, both in the same basis.
Cplx state_overlap(const CoherentSuperposition& lhs, const CoherentSuperposition& rhs);

/// Returns the unit-norm copy. Throws DegenerateState when norm^2 <= 1e-14.
CoherentSuperposition normalize(const CoherentSuperposition& s);

enum class MomentKind { A, AA, AdagA };

/// First/second field moments: A -> <a_m>, AA -> <a_m a_n>, AdagA -> <a_m^+ a_n>.
struct MomentSpec {
    MomentKind kind;
    int m = 0;
    int n = 0;
};

/// Exact moment of a normalized superposition via the Gram double sum.
Cplx moment(const CoherentSuperposition& s, const MomentSpec& spec);

}  // namespace polcat
