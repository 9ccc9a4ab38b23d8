#include "core/mean_field.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"

namespace polcat {

namespace {

// Real 8-vector layout: s11 s22 s33 s44 Re(s14) Im(s14) Re(s23) Im(s23).
using Vec8 = std::array<double, 8>;

struct ScaledSystem {
    double g, gamma_par, gamma_perp, delta;  // units of gamma
    Cplx a_plus, a_minus;
    double vac;  // symmetric-ordering exchange rate

    Vec8 deriv(const Vec8& y) const {
        const Cplx i(0.0, 1.0);
        const Cplx s14(y[4], y[5]);
        const Cplx s23(y[6], y[7]);
        const Cplx d14 = -(1.0 + i * delta) * s14 - i * g * a_plus * (y[0] - y[3]);
        const Cplx d23 = -(1.0 + i * delta) * s23 - i * g * a_minus * (y[1] - y[2]);
        const double pump14 = 2.0 * g * (std::conj(a_plus) * s14).imag();
        const double pump23 = 2.0 * g * (std::conj(a_minus) * s23).imag();
        const double ex14 = vac * (y[0] - y[3]);
        const double ex23 = vac * (y[1] - y[2]);
        return Vec8{2.0 * gamma_perp * y[2] + 2.0 * gamma_par * y[3] + pump14 - ex14,
                    2.0 * gamma_par * y[2] + 2.0 * gamma_perp * y[3] + pump23 - ex23,
                    -2.0 * y[2] - pump23 + ex23,
                    -2.0 * y[3] - pump14 + ex14,
                    d14.real(), d14.imag(), d23.real(), d23.imag()};
    }
};

Vec8 axpy(const Vec8& base, double h, const Vec8& d) {
    Vec8 r;
    for (int i = 0; i < 8; ++i) r[i] = base[i] + h * d[i];
    return r;
}

MeanFieldState unpack(const Vec8& y, const MeanFieldState& fields) {
    MeanFieldState s = fields;
    s.s11 = y[0];
    s.s22 = y[1];
    s.s33 = y[2];
    s.s44 = y[3];
    s.s14 = Cplx(y[4], y[5]);
    s.s23 = Cplx(y[6], y[7]);
    return s;
}

}  // namespace

PhysicalParams::PhysicalParams(double g_, double gamma_, double gamma_par_, double gamma_perp_,
                               double delta_)
    : g(g_), gamma(gamma_), gamma_par(gamma_par_), gamma_perp(gamma_perp_), delta(delta_) {
    if (!(std::isfinite(g) && std::isfinite(gamma) && std::isfinite(gamma_par) &&
          std::isfinite(gamma_perp) && std::isfinite(delta)))
        throw std::invalid_argument("non-finite physical parameter");
    if (g < 0.0 || gamma <= 0.0 || gamma_par < 0.0 || gamma_perp < 0.0)
        throw std::invalid_argument("rates must be nonnegative, gamma positive");
    if (std::abs(gamma - (gamma_par + gamma_perp)) > 1e-12 * gamma)
        throw std::invalid_argument("gamma must equal gamma_par + gamma_perp");
}

std::vector<std::string> PhysicalParams::regime_warnings() const {
    std::vector<std::string> w;
    if (std::abs(delta) < 10.0 * gamma)
        w.push_back("delta/gamma = " + std::to_string(std::abs(delta) / gamma) +
                    " < 10: dispersive regime assumption weak");
    if (g > 0.0 && gamma < 10.0 * g)
        w.push_back("gamma/g = " + std::to_string(gamma / g) +
                    " < 10: weak-coupling assumption weak");
    return w;
}

std::pair<double, double> derived_coupling(double g, double gamma, double delta) {
    double denom = 2.0 * (gamma * gamma + delta * delta);
    return {g * g * gamma / denom, -g * g * delta / denom};
}

std::vector<TrajectoryPoint> integrate_mean_field(const PhysicalParams& p,
                                                  const MeanFieldState& init, double t_end,
                                                  double dt, bool vacuum_term) {
    if (!(t_end > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t_end and dt must be > 0");
    if (dt > 0.05 / std::max(p.gamma, std::abs(p.delta)))
        throw StepTooLarge("dt " + std::to_string(dt) + " above 0.05/max(gamma, |delta|)");

    // gamma = 1 units.
    ScaledSystem sys{p.g / p.gamma, p.gamma_par / p.gamma, p.gamma_perp / p.gamma,
                     p.delta / p.gamma, init.a_plus, init.a_minus, 0.0};
    if (vacuum_term)
        sys.vac = sys.g * sys.g / (1.0 + sys.delta * sys.delta);
    const double h = dt * p.gamma;
    const long long n_steps = std::llround(t_end / dt);

    Vec8 y{init.s11, init.s22, init.s33, init.s44,
           init.s14.real(), init.s14.imag(), init.s23.real(), init.s23.imag()};
    std::vector<TrajectoryPoint> traj;
    traj.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.push_back({0.0, unpack(y, init)});
    for (long long step = 1; step <= n_steps; ++step) {
        Vec8 k1 = sys.deriv(y);
        Vec8 k2 = sys.deriv(axpy(y, 0.5 * h, k1));
        Vec8 k3 = sys.deriv(axpy(y, 0.5 * h, k2));
        Vec8 k4 = sys.deriv(axpy(y, h, k3));
        for (int i = 0; i < 8; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (int i = 0; i < 4; ++i)
            if (y[i] < -1e-6 || y[i] > 1.0 + 1e-6)
                throw NonPhysical("population " + std::to_string(i + 1) + " left [0,1] at t = " +
                                  std::to_string(step * dt));
        traj.push_back({static_cast<double>(step) * dt, unpack(y, init)});
    }
    return traj;
}

StationaryReport stationary_check(const std::vector<TrajectoryPoint>& traj,
                                  const PhysicalParams& p) {
    if (traj.size() < 2) throw NotStationary("trajectory has fewer than two points");
    const double t_end = traj.back().t;
    if (t_end < 20.0 / p.gamma - 1e-9)
        throw NotStationary("trajectory too short: t_end < 20/gamma");

    // Drift over the last decade.
    std::size_t mark = 0;
    while (mark < traj.size() && traj[mark].t < 0.9 * t_end) ++mark;
    auto tracked = [](const MeanFieldState& s) {
        return std::array<double, 6>{s.s11, s.s22, s.s33, s.s44, std::abs(s.s14),
                                     std::abs(s.s23)};
    };
    auto q0 = tracked(traj[mark].s);
    auto q1 = tracked(traj.back().s);
    StationaryReport rep;
    for (int i = 0; i < 6; ++i) {
        double drift = std::abs(q1[i] - q0[i]) / std::max(std::abs(q1[i]), 1e-12);
        rep.max_relative_drift = std::max(rep.max_relative_drift, drift);
    }
    if (rep.max_relative_drift > 1e-6)
        throw NotStationary("last-decade relative drift " +
                            std::to_string(rep.max_relative_drift) + " above 1e-6");

    const MeanFieldState& s = traj.back().s;
    const Cplx i(0.0, 1.0);
    const double gt = p.g / p.gamma;
    const double dt_ = p.delta / p.gamma;
    const Cplx denom = 1.0 + i * dt_;
    const double kappa = gt * gt / (1.0 + dt_ * dt_);

    Cplx exp14 = -i * gt * s.a_plus * (s.s11 - s.s44) / denom;
    if (std::abs(s.s14) > 1e-14 && std::abs(exp14) > 0.0) {
        rep.coherence14_applicable = true;
        rep.coherence14_residual = std::abs(s.s14 - exp14) / std::abs(s.s14);
        double want = std::arg(-i * s.a_plus / denom);
        double err = std::abs(std::arg(s.s14) - want);
        rep.phase14_error = std::min(err, 2.0 * M_PI - err);
    }
    Cplx exp23 = -i * gt * s.a_minus * (s.s22 - s.s33) / denom;
    if (std::abs(s.s23) > 1e-14 && std::abs(exp23) > 0.0) {
        rep.coherence23_applicable = true;
        rep.coherence23_residual = std::abs(s.s23 - exp23) / std::abs(s.s23);
    }
    double want44 = kappa * (std::norm(s.a_plus) + 0.5) * s.s11;
    double want33 = kappa * (std::norm(s.a_minus) + 0.5) * s.s22;
    rep.population44_residual =
        want44 > 0.0 ? std::abs(s.s44 - want44) / want44 : std::abs(s.s44);
    rep.population33_residual =
        want33 > 0.0 ? std::abs(s.s33 - want33) / want33 : std::abs(s.s33);
    return rep;
}

}  // namespace polcat
