#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/states.hpp"

namespace polcat {

/// Physical couplings and rates (rad/s). The dipole decay splits as
/// gamma = gamma_par + gamma_perp (enforced to 1e-12 relative).
struct PhysicalParams {
    double g;
    double gamma;
    double gamma_par;
    double gamma_perp;
    double delta;

    PhysicalParams(double g_, double gamma_, double gamma_par_, double gamma_perp_,
                   double delta_);

    /// Non-fatal diagnostics when outside delta/gamma >= 10, gamma/g >= 10.
    std::vector<std::string> regime_warnings() const;
};

/// Effective couplings lambda1 = g^2 gamma / 2(gamma^2+delta^2),
/// lambda2 = -g^2 delta / 2(gamma^2+delta^2); lambda1/|lambda2| = gamma/delta.
std::pair<double, double> derived_coupling(double g, double gamma, double delta);

/// c-number atomic variables plus the classical drive amplitudes (held fixed).
struct MeanFieldState {
    double s11 = 0.0, s22 = 0.0, s33 = 0.0, s44 = 0.0;
    Cplx s14 = 0.0, s23 = 0.0;
    Cplx a_plus = 0.0, a_minus = 0.0;
};

struct TrajectoryPoint {
    double t;
    MeanFieldState s;
};

/// Fixed-step classical RK4 integration of the closed mean-field system
/// (Langevin terms dropped, fields classical, gamma = 1 internally):
///
///   d s14 = -(gamma + i delta) s14 - i g a+ (s11 - s44)
///   d s23 = -(gamma + i delta) s23 - i g a- (s22 - s33)
///   d s11 = 2 gamma_perp s33 + 2 gamma_par s44 + 2 g Im(conj(a+) s14) - v (s11 - s44)
///   d s22 = 2 gamma_par s33 + 2 gamma_perp s44 + 2 g Im(conj(a-) s23) - v (s22 - s33)
///   d s33 = -2 gamma s33 - 2 g Im(conj(a-) s23) + v (s22 - s33)
///   d s44 = -2 gamma s44 - 2 g Im(conj(a+) s14) + v (s11 - s44)
///
/// v = gamma g^2/(gamma^2+delta^2) is the symmetric-ordering vacuum exchange
/// rate (the half-photon term of the eliminated populations); passing
/// vacuum_term = false drops it, leaving the bare bilinear closure. Population
/// trace is conserved either way. t_end is rounded to a whole number of steps.
///
/// Throws StepTooLarge when dt > 0.05/max(gamma, |delta|) and NonPhysical when
/// a population leaves [-1e-6, 1+1e-6].
std::vector<TrajectoryPoint> integrate_mean_field(const PhysicalParams& p,
                                                  const MeanFieldState& init, double t_end,
                                                  double dt, bool vacuum_term = true);

/// Residuals of the trajectory tail against the eliminated stationary forms.
struct StationaryReport {
    bool coherence14_applicable = false;
    bool coherence23_applicable = false;
    double coherence14_residual = 0.0;  // |s14 - (-i g a+ (s11-s44)/(gamma+i delta))| / |s14|
    double coherence23_residual = 0.0;
    double population44_residual = 0.0;  // vs kappa (|a+|^2 + 1/2) s11
    double population33_residual = 0.0;  // vs kappa (|a-|^2 + 1/2) s22
    double phase14_error = 0.0;          // rad, vs arg(-i a+ / (gamma + i delta))
    double max_relative_drift = 0.0;     // over the last decade of the trajectory
};

/// Requires t_end >= 20/gamma and a settled tail (last-decade relative drift
/// of every tracked quantity <= 1e-6), otherwise throws NotStationary.
StationaryReport stationary_check(const std::vector<TrajectoryPoint>& traj,
                                  const PhysicalParams& p);

}  // namespace polcat
