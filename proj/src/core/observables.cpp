#include "core/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polcat {

namespace {

void check_mode(int mode) {
    if (mode < 0 || mode > 1) throw std::invalid_argument("mode index out of range");
}

// Per-mode overlap matrix O[k*K + l] = <amp_k,m | amp_l,m>.
std::vector<Cplx> overlap_matrix(const CoherentSuperposition& s, int mode) {
    const auto& t = s.terms();
    const std::size_t K = t.size();
    std::vector<Cplx> o(K * K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            o[k * K + l] = coherent_overlap(t[k].amp[mode], t[l].amp[mode]);
    return o;
}

}  // namespace

double quadrature_variance(const CoherentSuperposition& s, const Quadrature& q) {
    check_mode(q.mode);
    Cplx a = moment(s, {MomentKind::A, q.mode});
    Cplx aa = moment(s, {MomentKind::AA, q.mode, q.mode});
    double n = moment(s, {MomentKind::AdagA, q.mode, q.mode}).real();
    if (q.axis == Axis::X)
        return 0.25 * (1.0 + 2.0 * n + 2.0 * aa.real()) - a.real() * a.real();
    return 0.25 * (1.0 + 2.0 * n - 2.0 * aa.real()) - a.imag() * a.imag();
}

double inseparability(const CoherentSuperposition& s) {
    double vxa = quadrature_variance(s, {0, Axis::X});
    double vxb = quadrature_variance(s, {1, Axis::X});
    double vya = quadrature_variance(s, {0, Axis::Y});
    double vyb = quadrature_variance(s, {1, Axis::Y});
    Cplx a = moment(s, {MomentKind::A, 0});
    Cplx b = moment(s, {MomentKind::A, 1});
    Cplx ab = moment(s, {MomentKind::AA, 0, 1});
    Cplx adb = moment(s, {MomentKind::AdagA, 0, 1});
    double cov_x = 0.5 * (ab + adb).real() - a.real() * b.real();
    double cov_y = 0.5 * (adb - ab).real() - a.imag() * b.imag();
    return vxa + vxb + 2.0 * cov_x + vya + vyb - 2.0 * cov_y;
}

double linear_entropy(const CoherentSuperposition& s, int mode) {
    check_mode(mode);
    if (!s.normalized()) throw std::invalid_argument("linear_entropy requires a normalized state");
    const auto& t = s.terms();
    const std::size_t K = t.size();
    const int other = 1 - mode;
    std::vector<Cplx> okept = overlap_matrix(s, mode);
    std::vector<Cplx> otr = overlap_matrix(s, other);
    // Tr rho_m^2 = sum_{klmn} c_k cc_l c_m cc_n <b_l|b_k><b_n|b_m><a_l|a_m><a_n|a_k>
    Cplx purity = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            for (std::size_t m = 0; m < K; ++m)
                for (std::size_t n = 0; n < K; ++n)
                    purity += t[k].coeff * std::conj(t[l].coeff) * t[m].coeff *
                              std::conj(t[n].coeff) * otr[l * K + k] * otr[n * K + m] *
                              okept[l * K + m] * okept[n * K + k];
    return 1.0 - purity.real();
}

SqueezedVacuum::SqueezedVacuum(double magnitude_, double theta_)
    : magnitude(magnitude_), theta(theta_) {
    if (!std::isfinite(magnitude) || magnitude < 0.0 || magnitude >= 5.0)
        throw std::invalid_argument("squeezing magnitude must lie in [0, 5)");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
}

double squeezed_vacuum_fidelity(const CoherentSuperposition& s, int mode,
                                const SqueezedVacuum& sv) {
    check_mode(mode);
    if (!s.normalized()) throw std::invalid_argument("fidelity requires a normalized state");
    const auto& t = s.terms();
    const std::size_t K = t.size();
    const int other = 1 - mode;
    // <xi|mu> = cosh^{-1/2} exp(-|mu|^2/2 - e^{-i theta} tanh|xi| mu^2 / 2)
    const double th = std::tanh(sv.magnitude);
    const Cplx phase = std::exp(Cplx(0.0, -sv.theta));
    const double root_cosh = 1.0 / std::sqrt(std::cosh(sv.magnitude));
    std::vector<Cplx> kernel(K);
    for (std::size_t k = 0; k < K; ++k) {
        Cplx mu = t[k].amp[mode];
        kernel[k] = root_cosh * std::exp(-0.5 * std::norm(mu) - 0.5 * phase * th * mu * mu);
    }
    std::vector<Cplx> otr = overlap_matrix(s, other);
    Cplx f2 = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            f2 += t[k].coeff * std::conj(t[l].coeff) * otr[l * K + k] * kernel[k] *
                  std::conj(kernel[l]);
    return std::sqrt(std::max(0.0, f2.real()));
}

}  // namespace polcat
