#include "core/fock.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"

namespace polcat {

namespace {

constexpr double kTailTol = 1e-10;

// Coefficients of |mu> up to cutoff: c_0 = e^{-|mu|^2/2}, c_{n+1} = c_n mu/sqrt(n+1).
std::vector<Cplx> coherent_column(Cplx mu, int cutoff) {
    std::vector<Cplx> c(cutoff + 1);
    c[0] = std::exp(-0.5 * std::norm(mu));
    for (int n = 0; n < cutoff; ++n) c[n + 1] = c[n] * mu / std::sqrt(n + 1.0);
    return c;
}

double norm2(const FockVector& v) {
    double s = 0.0;
    for (const Cplx& z : v.data) s += std::norm(z);
    return s;
}

void scale(FockVector& v, double f) {
    for (Cplx& z : v.data) z *= f;
}

// Mass sitting in the top two occupation levels of any mode's marginal.
double top_tail_mass(const FockVector& v) {
    const int d = v.dim();
    double mass = 0.0;
    if (v.modes == 1) {
        for (int n = d - 2; n < d; ++n)
            if (n >= 0) mass += std::norm(v.data[n]);
        return mass;
    }
    for (int n0 = 0; n0 < d; ++n0)
        for (int n1 = 0; n1 < d; ++n1)
            if (n0 >= d - 2 || n1 >= d - 2) mass += std::norm(v.data[v.at(n0, n1)]);
    return mass;
}

void check_tail(const FockVector& v, const char* what) {
    double mass = top_tail_mass(v) / std::max(norm2(v), 1e-300);
    if (!(mass < kTailTol))
        throw CutoffTooSmall(std::string(what) + ": top-level tail mass " +
                             std::to_string(mass) + " exceeds 1e-10");
}

// (a_mode v): result[n] = sqrt(n+1) v[n+1].
FockVector apply_a(const FockVector& v, int mode) {
    FockVector r = v;
    std::fill(r.data.begin(), r.data.end(), Cplx(0.0));
    const int d = v.dim();
    for (int n0 = 0; n0 < d; ++n0)
        for (int n1 = 0; n1 < d; ++n1) {
            if (mode == 0 && n0 + 1 < d)
                r.data[v.at(n0, n1)] = std::sqrt(n0 + 1.0) * v.data[v.at(n0 + 1, n1)];
            if (mode == 1 && n1 + 1 < d)
                r.data[v.at(n0, n1)] = std::sqrt(n1 + 1.0) * v.data[v.at(n0, n1 + 1)];
        }
    return r;
}

// (a_mode^+ v): result[n] = sqrt(n) v[n-1].
FockVector apply_adag(const FockVector& v, int mode) {
    FockVector r = v;
    std::fill(r.data.begin(), r.data.end(), Cplx(0.0));
    const int d = v.dim();
    for (int n0 = 0; n0 < d; ++n0)
        for (int n1 = 0; n1 < d; ++n1) {
            if (mode == 0 && n0 > 0)
                r.data[v.at(n0, n1)] = std::sqrt(static_cast<double>(n0)) * v.data[v.at(n0 - 1, n1)];
            if (mode == 1 && n1 > 0)
                r.data[v.at(n0, n1)] = std::sqrt(static_cast<double>(n1)) * v.data[v.at(n0, n1 - 1)];
        }
    return r;
}

FockVector quadrature_apply(const FockVector& v, const Quadrature& q) {
    FockVector lower = apply_a(v, q.mode);
    FockVector raise = apply_adag(v, q.mode);
    FockVector r = v;
    const Cplx half_over_i(0.0, -0.5);
    for (std::size_t k = 0; k < r.data.size(); ++k)
        r.data[k] = q.axis == Axis::X ? 0.5 * (lower.data[k] + raise.data[k])
                                      : half_over_i * (raise.data[k] - lower.data[k]);
    return r;
}

Cplx dot(const FockVector& u, const FockVector& v) {
    Cplx s = 0.0;
    for (std::size_t k = 0; k < u.data.size(); ++k) s += std::conj(u.data[k]) * v.data[k];
    return s;
}

double variance_of(const FockVector& v, const FockVector& hv) {
    // Hermitian operator: <H^2> = |Hv|^2, <H> = <v|Hv>.
    double mean = dot(v, hv).real();
    return norm2(hv) - mean * mean;
}

void require_two_modes(const FockVector& v) {
    if (v.modes != 2) throw std::invalid_argument("two-mode Fock vector required");
}

Eigen::MatrixXcd reduced_density(const FockVector& v, int mode) {
    require_two_modes(v);
    const int d = v.dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cplx s = 0.0;
            for (int t = 0; t < d; ++t) {
                Cplx vi = mode == 0 ? v.data[v.at(i, t)] : v.data[v.at(t, i)];
                Cplx vj = mode == 0 ? v.data[v.at(j, t)] : v.data[v.at(t, j)];
                s += vi * std::conj(vj);
            }
            rho(i, j) = s;
        }
    return rho;
}

}  // namespace

int suggested_cutoff(double max_abs_amp) {
    return static_cast<int>(std::ceil(max_abs_amp * max_abs_amp + 8.0 * max_abs_amp + 20.0));
}

FockVector to_fock(const CoherentSuperposition& s, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    const int d = cutoff + 1;
    FockVector v{cutoff, 2, s.basis(), std::vector<Cplx>(static_cast<std::size_t>(d) * d, 0.0)};
    for (const auto& t : s.terms()) {
        std::vector<Cplx> c0 = coherent_column(t.amp[0], cutoff);
        std::vector<Cplx> c1 = coherent_column(t.amp[1], cutoff);
        for (int n0 = 0; n0 < d; ++n0) {
            Cplx left = t.coeff * c0[n0];
            for (int n1 = 0; n1 < d; ++n1) v.data[v.at(n0, n1)] += left * c1[n1];
        }
    }
    double raw = norm2(v);
    double gram = state_norm2(s);
    if (std::abs(raw - gram) > 1e-10 * std::max(1.0, gram))
        throw CutoffTooSmall("truncated norm " + std::to_string(raw) +
                             " inconsistent with Gram norm " + std::to_string(gram));
    check_tail(v, "to_fock");
    scale(v, 1.0 / std::sqrt(raw));
    return v;
}

FockVector squeezed_vacuum_fock(const SqueezedVacuum& sv, int cutoff) {
    if (cutoff < 20) throw CutoffTooSmall("squeezed vacuum needs cutoff >= 20");
    const int d = cutoff + 1;
    FockVector v{cutoff, 1, Basis::Linear, std::vector<Cplx>(d, 0.0)};
    const Cplx q = -0.5 * std::exp(Cplx(0.0, sv.theta)) * std::tanh(sv.magnitude);
    Cplx c = 1.0;  // unnormalized c_0
    v.data[0] = c;
    for (int n = 0; 2 * (n + 1) <= cutoff; ++n) {
        // c_{2n+2}/c_{2n} = q sqrt((2n+1)(2n+2))/(n+1)
        c *= q * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (n + 1.0);
        v.data[2 * (n + 1)] = c;
    }
    check_tail(v, "squeezed_vacuum_fock");
    scale(v, 1.0 / std::sqrt(norm2(v)));
    return v;
}

std::vector<std::pair<int, FockVector>> evolve_fock(const FockVector& initial,
                                                    const AtomPreparation& prep,
                                                    const CouplingFrame& frame) {
    require_two_modes(initial);
    if (prep.kind != AtomPreparation::Kind::Macro)
        throw std::invalid_argument("evolve_fock covers the macro preparation only");
    const Cplx L = frame.lambda_tau();
    const int d = initial.dim();
    std::vector<std::pair<int, FockVector>> out;

    if (initial.basis == Basis::Circular) {
        // Branch generator is diagonal: factor exp(sz L (n0 - n1)).
        for (int label = 1; label <= 2; ++label) {
            double sz = label == 1 ? 1.0 : -1.0;
            FockVector b = initial;
            for (int n0 = 0; n0 < d; ++n0)
                for (int n1 = 0; n1 < d; ++n1)
                    b.data[b.at(n0, n1)] *= std::exp(sz * L * static_cast<double>(n0 - n1));
            scale(b, 1.0 / std::sqrt(norm2(b)));
            check_tail(b, "evolve_fock");
            out.emplace_back(label, std::move(b));
        }
        return out;
    }

    // Linear frame: exp(sz L M) with Hermitian M = i(a_y^+ a_x - a_x^+ a_y),
    // block diagonal over total photon number. Sector-wise eigendecomposition.
    for (int label = 1; label <= 2; ++label) {
        Cplx zl = (label == 1 ? 1.0 : -1.0) * L;
        FockVector b = initial;
        for (int total = 0; total <= 2 * (d - 1); ++total) {
            const int lo = std::max(0, total - (d - 1));
            const int hi = std::min(total, d - 1);
            const int m = hi - lo + 1;
            if (m == 1) continue;  // 1x1 sector of M is zero: identity factor
            Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(m, m);
            for (int k = 0; k < m - 1; ++k) {
                // row index k holds n0 = lo + k, n1 = total - n0
                double n0 = lo + k;
                double n1 = total - n0;
                // <n0, n1| M |n0+1, n1-1> = i sqrt((n0+1) n1)
                Cplx elem = Cplx(0.0, 1.0) * std::sqrt((n0 + 1.0) * n1);
                gen(k, k + 1) = elem;
                gen(k + 1, k) = std::conj(elem);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
            Eigen::VectorXcd seg(m);
            for (int k = 0; k < m; ++k) seg(k) = b.data[b.at(lo + k, total - (lo + k))];
            Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * seg;
            for (int k = 0; k < m; ++k) rotated(k) *= std::exp(zl * es.eigenvalues()(k));
            seg = es.eigenvectors() * rotated;
            for (int k = 0; k < m; ++k) b.data[b.at(lo + k, total - (lo + k))] = seg(k);
        }
        scale(b, 1.0 / std::sqrt(norm2(b)));
        check_tail(b, "evolve_fock");
        out.emplace_back(label, std::move(b));
    }
    return out;
}

Cplx fock_overlap(const FockVector& lhs, const FockVector& rhs) {
    if (lhs.cutoff != rhs.cutoff || lhs.modes != rhs.modes)
        throw std::invalid_argument("fock_overlap requires matching shapes");
    return dot(lhs, rhs);
}

double fock_quadrature_variance(const FockVector& v, const Quadrature& q) {
    require_two_modes(v);
    return variance_of(v, quadrature_apply(v, q));
}

double fock_inseparability(const FockVector& v) {
    require_two_modes(v);
    FockVector x0 = quadrature_apply(v, {0, Axis::X});
    FockVector x1 = quadrature_apply(v, {1, Axis::X});
    FockVector y0 = quadrature_apply(v, {0, Axis::Y});
    FockVector y1 = quadrature_apply(v, {1, Axis::Y});
    FockVector sum = v, diff = v;
    for (std::size_t k = 0; k < v.data.size(); ++k) {
        sum.data[k] = x0.data[k] + x1.data[k];
        diff.data[k] = y0.data[k] - y1.data[k];
    }
    return variance_of(v, sum) + variance_of(v, diff);
}

double fock_linear_entropy(const FockVector& v, int mode) {
    Eigen::MatrixXcd rho = reduced_density(v, mode);
    return 1.0 - rho.squaredNorm();  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho
}

double fock_squeezed_vacuum_fidelity(const FockVector& v, int mode, const SqueezedVacuum& sv) {
    Eigen::MatrixXcd rho = reduced_density(v, mode);
    FockVector xi = squeezed_vacuum_fock(sv, v.cutoff);
    Eigen::Map<const Eigen::VectorXcd> x(xi.data.data(), xi.data.size());
    return std::sqrt(std::max(0.0, (x.adjoint() * rho * x)(0).real()));
}

}  // namespace polcat
