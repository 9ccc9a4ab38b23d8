#include "core/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "core/errors.hpp"

namespace polcat {

namespace {

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

const char* mode_name(Basis basis, int mode) {
    if (basis == Basis::Circular) return mode == 0 ? "plus" : "minus";
    return mode == 0 ? "x" : "y";
}

CoherentSuperposition::CoherentSuperposition(Basis basis, std::vector<CoherentTerm> terms,
                                             bool normalized)
    : basis_(basis), normalized_(normalized) {
    if (terms.empty()) throw std::invalid_argument("superposition needs at least one term");
    for (const auto& t : terms) {
        if (!finite(t.coeff) || !finite(t.amp[0]) || !finite(t.amp[1]))
            throw std::invalid_argument("non-finite term in superposition");
    }
    // Merge terms with indistinguishable amplitudes (coefficients add).
    terms_.reserve(terms.size());
    for (const auto& t : terms) {
        bool merged = false;
        for (auto& kept : terms_) {
            if (std::abs(kept.amp[0] - t.amp[0]) < kMergeTol &&
                std::abs(kept.amp[1] - t.amp[1]) < kMergeTol) {
                kept.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) terms_.push_back(t);
    }
    if (normalized_) {
        double n2 = state_norm2(*this);
        if (std::abs(n2 - 1.0) > kNormFlagTol)
            throw std::invalid_argument("state flagged normalized but norm^2 = " +
                                        std::to_string(n2));
    }
}

Cplx coherent_overlap(Cplx mu, Cplx nu) {
    if (!finite(mu) || !finite(nu)) throw std::invalid_argument("non-finite amplitude");
    return std::exp(-0.5 * std::norm(mu) - 0.5 * std::norm(nu) + std::conj(mu) * nu);
}

Cplx term_overlap(const CoherentTerm& k, const CoherentTerm& l) {
    return coherent_overlap(k.amp[0], l.amp[0]) * coherent_overlap(k.amp[1], l.amp[1]);
}

double state_norm2(const CoherentSuperposition& s) {
    const auto& t = s.terms();
    double sum = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        sum += std::norm(t[k].coeff);
        for (std::size_t l = k + 1; l < t.size(); ++l) {
            // conj(c_k) c_l G_kl + conj(c_l) c_k G_lk = 2 Re[...], G_lk = conj(G_kl)
            sum += 2.0 * (std::conj(t[k].coeff) * t[l].coeff * term_overlap(t[k], t[l])).real();
        }
    }
    if (sum < -1e-12) throw NumericError("negative norm^2: " + std::to_string(sum));
    return sum;
}

Cplx state_overlap(const CoherentSuperposition& lhs, const CoherentSuperposition& rhs) {
    if (lhs.basis() != rhs.basis())
        throw std::invalid_argument("state_overlap requires a common basis");
    Cplx sum = 0.0;
    for (const auto& a : lhs.terms())
        for (const auto& b : rhs.terms())
            sum += std::conj(a.coeff) * b.coeff * term_overlap(a, b);
    return sum;
}

CoherentSuperposition normalize(const CoherentSuperposition& s) {
    double n2 = state_norm2(s);
    if (n2 <= CoherentSuperposition::kDegenerateTol)
        throw DegenerateState("vanishing norm, nothing to normalize");
    double scale = 1.0 / std::sqrt(n2);
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) t.coeff *= scale;
    return CoherentSuperposition(s.basis(), std::move(terms), true);
}

Cplx moment(const CoherentSuperposition& s, const MomentSpec& spec) {
    if (!s.normalized()) throw std::invalid_argument("moment requires a normalized state");
    if (spec.m < 0 || spec.m > 1 || spec.n < 0 || spec.n > 1)
        throw std::invalid_argument("mode index out of range");
    const auto& t = s.terms();
    Cplx sum = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        for (std::size_t l = 0; l < t.size(); ++l) {
            Cplx g = std::conj(t[k].coeff) * t[l].coeff * term_overlap(t[k], t[l]);
            switch (spec.kind) {
                case MomentKind::A:
                    sum += g * t[l].amp[spec.m];
                    break;
                case MomentKind::AA:
                    sum += g * t[l].amp[spec.m] * t[l].amp[spec.n];
                    break;
                case MomentKind::AdagA:
                    sum += g * std::conj(t[k].amp[spec.m]) * t[l].amp[spec.n];
                    break;
            }
        }
    }
    return sum;
}

}  // namespace polcat
