#include "polcat/polcat.h"

#include <cstring>
#include <new>
#include <string>

#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/fock.hpp"
#include "core/mean_field.hpp"
#include "core/observables.hpp"
#include "core/polarization.hpp"
#include "core/states.hpp"

using namespace polcat;

struct polcat_state_t {
    CoherentSuperposition s;
};
struct polcat_branches_t {
    JointBranchSet b;
};
struct polcat_mf_traj_t {
    std::vector<TrajectoryPoint> traj;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return POLCAT_OK;
    } catch (const DegenerateState& e) {
        set_error(e.what());
        return POLCAT_ERR_DEGENERATE_STATE;
    } catch (const CutoffTooSmall& e) {
        set_error(e.what());
        return POLCAT_ERR_CUTOFF_TOO_SMALL;
    } catch (const UnsupportedBasisCombination& e) {
        set_error(e.what());
        return POLCAT_ERR_UNSUPPORTED_BASIS;
    } catch (const StepTooLarge& e) {
        set_error(e.what());
        return POLCAT_ERR_STEP_TOO_LARGE;
    } catch (const NonPhysical& e) {
        set_error(e.what());
        return POLCAT_ERR_NON_PHYSICAL;
    } catch (const NotStationary& e) {
        set_error(e.what());
        return POLCAT_ERR_NOT_STATIONARY;
    } catch (const NumericError& e) {
        set_error(e.what());
        return POLCAT_ERR_NUMERIC;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return POLCAT_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return POLCAT_ERR_INTERNAL;
    }
}

int require(bool ok, const char* msg) {
    if (ok) return POLCAT_OK;
    set_error(msg);
    return POLCAT_ERR_INVALID_ARGUMENT;
}

Basis to_basis(int basis) {
    if (basis != POLCAT_BASIS_CIRCULAR && basis != POLCAT_BASIS_LINEAR)
        throw std::invalid_argument("bad basis tag");
    return basis == POLCAT_BASIS_CIRCULAR ? Basis::Circular : Basis::Linear;
}

CouplingFrame to_frame(const polcat_frame& f) {
    return CouplingFrame(f.tau, f.ratio, f.lambda2_sign);
}

AtomPreparation to_prep(const polcat_prep& p) {
    if (p.kind == POLCAT_PREP_MACRO) return AtomPreparation::macro(p.sign);
    if (p.kind == POLCAT_PREP_PRODUCT) return AtomPreparation::product(p.n_atoms);
    throw std::invalid_argument("bad preparation kind");
}

PhysicalParams to_params(const polcat_mf_params& p) {
    return PhysicalParams(p.g, p.gamma, p.gamma_par, p.gamma_perp, p.delta);
}

}  // namespace

extern "C" {

const char* polcat_version(void) { return "0.1.0"; }

const char* polcat_status_name(int status) {
    switch (status) {
        case POLCAT_OK: return "ok";
        case POLCAT_ERR_INVALID_ARGUMENT: return "invalid argument";
        case POLCAT_ERR_DEGENERATE_STATE: return "degenerate state";
        case POLCAT_ERR_CUTOFF_TOO_SMALL: return "cutoff too small";
        case POLCAT_ERR_UNSUPPORTED_BASIS: return "unsupported basis combination";
        case POLCAT_ERR_STEP_TOO_LARGE: return "step too large";
        case POLCAT_ERR_NON_PHYSICAL: return "non-physical value";
        case POLCAT_ERR_NOT_STATIONARY: return "not stationary";
        case POLCAT_ERR_NUMERIC: return "numeric failure";
        default: return "internal error";
    }
}

const char* polcat_last_error(void) { return g_last_error.c_str(); }

int polcat_state_coherent(int basis, double a0_re, double a0_im, double a1_re, double a1_im,
                          polcat_state_t** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        CoherentSuperposition s(to_basis(basis),
                                {{1.0, {Cplx(a0_re, a0_im), Cplx(a1_re, a1_im)}}}, true);
        *out = new polcat_state_t{std::move(s)};
    });
}

int polcat_state_cat_y(double alpha_re, double alpha_im, int parity, polcat_state_t** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        if (parity != POLCAT_PARITY_EVEN && parity != POLCAT_PARITY_ODD)
            throw std::invalid_argument("bad parity tag");
        *out = new polcat_state_t{make_cat_y(
            Cplx(alpha_re, alpha_im), parity == POLCAT_PARITY_EVEN ? Parity::Even : Parity::Odd)};
    });
}

int polcat_state_entangled_coherent(double alpha_re, double alpha_im, int sign,
                                    polcat_state_t** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded(
        [&] { *out = new polcat_state_t{make_entangled_coherent(Cplx(alpha_re, alpha_im), sign)}; });
}

void polcat_state_free(polcat_state_t* s) { delete s; }

int polcat_state_basis(const polcat_state_t* s, int* basis) {
    if (int rc = require(s && basis, "null argument")) return rc;
    *basis = s->s.basis() == Basis::Circular ? POLCAT_BASIS_CIRCULAR : POLCAT_BASIS_LINEAR;
    return POLCAT_OK;
}

int polcat_state_term_count(const polcat_state_t* s, int* count) {
    if (int rc = require(s && count, "null argument")) return rc;
    *count = static_cast<int>(s->s.size());
    return POLCAT_OK;
}

int polcat_state_term(const polcat_state_t* s, int index, double* coeff_re, double* coeff_im,
                      double* a0_re, double* a0_im, double* a1_re, double* a1_im) {
    if (int rc = require(s != nullptr, "null state")) return rc;
    if (int rc = require(index >= 0 && index < static_cast<int>(s->s.size()),
                         "term index out of range"))
        return rc;
    const CoherentTerm& t = s->s.terms()[index];
    if (coeff_re) *coeff_re = t.coeff.real();
    if (coeff_im) *coeff_im = t.coeff.imag();
    if (a0_re) *a0_re = t.amp[0].real();
    if (a0_im) *a0_im = t.amp[0].imag();
    if (a1_re) *a1_re = t.amp[1].real();
    if (a1_im) *a1_im = t.amp[1].imag();
    return POLCAT_OK;
}

int polcat_state_is_normalized(const polcat_state_t* s, int* flag) {
    if (int rc = require(s && flag, "null argument")) return rc;
    *flag = s->s.normalized() ? 1 : 0;
    return POLCAT_OK;
}

int polcat_state_norm2(const polcat_state_t* s, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = state_norm2(s->s); });
}

int polcat_state_normalize(const polcat_state_t* s, polcat_state_t** out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = new polcat_state_t{normalize(s->s)}; });
}

int polcat_state_change_basis(const polcat_state_t* s, int target_basis, polcat_state_t** out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = new polcat_state_t{change_basis(s->s, to_basis(target_basis))}; });
}

int polcat_state_overlap(const polcat_state_t* lhs, const polcat_state_t* rhs, double* re,
                         double* im) {
    if (int rc = require(lhs && rhs && re && im, "null argument")) return rc;
    return guarded([&] {
        Cplx z = state_overlap(lhs->s, rhs->s);
        *re = z.real();
        *im = z.imag();
    });
}

int polcat_state_moment(const polcat_state_t* s, int kind, int m, int n, double* re, double* im) {
    if (int rc = require(s && re && im, "null argument")) return rc;
    return guarded([&] {
        MomentKind mk;
        switch (kind) {
            case POLCAT_MOMENT_A: mk = MomentKind::A; break;
            case POLCAT_MOMENT_AA: mk = MomentKind::AA; break;
            case POLCAT_MOMENT_ADAG_A: mk = MomentKind::AdagA; break;
            default: throw std::invalid_argument("bad moment kind");
        }
        Cplx z = moment(s->s, {mk, m, n});
        *re = z.real();
        *im = z.imag();
    });
}

int polcat_evolve_joint(const polcat_state_t* initial, polcat_prep prep, polcat_frame frame,
                        int weighted, polcat_branches_t** out) {
    if (int rc = require(initial && out, "null argument")) return rc;
    return guarded([&] {
        *out = new polcat_branches_t{
            evolve_joint(initial->s, to_prep(prep), to_frame(frame), weighted != 0)};
    });
}

void polcat_branches_free(polcat_branches_t* b) { delete b; }

int polcat_branches_count(const polcat_branches_t* b, int* count) {
    if (int rc = require(b && count, "null argument")) return rc;
    *count = static_cast<int>(b->b.branches.size());
    return POLCAT_OK;
}

int polcat_branches_get(const polcat_branches_t* b, int index, int* atom_label, double* w_re,
                        double* w_im, double* a0_re, double* a0_im, double* a1_re,
                        double* a1_im) {
    if (int rc = require(b != nullptr, "null branches")) return rc;
    if (int rc = require(index >= 0 && index < static_cast<int>(b->b.branches.size()),
                         "branch index out of range"))
        return rc;
    const JointBranch& br = b->b.branches[index];
    if (atom_label) *atom_label = br.atom_label;
    if (w_re) *w_re = br.weight.real();
    if (w_im) *w_im = br.weight.imag();
    if (a0_re) *a0_re = br.field.amp[0].real();
    if (a0_im) *a0_im = br.field.amp[0].imag();
    if (a1_re) *a1_re = br.field.amp[1].real();
    if (a1_im) *a1_im = br.field.amp[1].imag();
    return POLCAT_OK;
}

int polcat_condition(const polcat_branches_t* b, polcat_prep prep, polcat_state_t** out,
                     double* probability) {
    if (int rc = require(b && out && probability, "null argument")) return rc;
    return guarded([&] {
        Conditioned c = condition_atoms(b->b, to_prep(prep));
        *out = new polcat_state_t{std::move(c.state)};
        *probability = c.probability;
    });
}

int polcat_norm_factors(double alpha_re, double alpha_im, double beta_re, double beta_im,
                        polcat_frame frame, double* n_plus, double* n_minus) {
    if (int rc = require(n_plus && n_minus, "null argument")) return rc;
    return guarded([&] {
        auto [np, nm] =
            norm_factors(Cplx(alpha_re, alpha_im), Cplx(beta_re, beta_im), to_frame(frame));
        *n_plus = np;
        *n_minus = nm;
    });
}

int polcat_quadrature_variance(const polcat_state_t* s, int mode, int axis, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] {
        if (axis != POLCAT_AXIS_X && axis != POLCAT_AXIS_Y)
            throw std::invalid_argument("bad axis tag");
        *out = quadrature_variance(s->s, {mode, axis == POLCAT_AXIS_X ? Axis::X : Axis::Y});
    });
}

int polcat_inseparability(const polcat_state_t* s, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = inseparability(s->s); });
}

int polcat_linear_entropy(const polcat_state_t* s, int mode, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = linear_entropy(s->s, mode); });
}

int polcat_squeezed_vacuum_fidelity(const polcat_state_t* s, int mode, double magnitude,
                                    double theta, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded(
        [&] { *out = squeezed_vacuum_fidelity(s->s, mode, SqueezedVacuum(magnitude, theta)); });
}

int polcat_oracle_variance(const polcat_state_t* s, int mode, int axis, int cutoff, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] {
        if (axis != POLCAT_AXIS_X && axis != POLCAT_AXIS_Y)
            throw std::invalid_argument("bad axis tag");
        FockVector v = to_fock(s->s, cutoff);
        *out = fock_quadrature_variance(v, {mode, axis == POLCAT_AXIS_X ? Axis::X : Axis::Y});
    });
}

int polcat_oracle_inseparability(const polcat_state_t* s, int cutoff, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = fock_inseparability(to_fock(s->s, cutoff)); });
}

int polcat_oracle_linear_entropy(const polcat_state_t* s, int mode, int cutoff, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] { *out = fock_linear_entropy(to_fock(s->s, cutoff), mode); });
}

int polcat_oracle_fidelity(const polcat_state_t* s, int mode, double magnitude, double theta,
                           int cutoff, double* out) {
    if (int rc = require(s && out, "null argument")) return rc;
    return guarded([&] {
        *out = fock_squeezed_vacuum_fidelity(to_fock(s->s, cutoff), mode,
                                             SqueezedVacuum(magnitude, theta));
    });
}

int polcat_derived_coupling(double g, double gamma, double delta, double* lambda1,
                            double* lambda2) {
    if (int rc = require(lambda1 && lambda2, "null argument")) return rc;
    return guarded([&] {
        auto [l1, l2] = derived_coupling(g, gamma, delta);
        *lambda1 = l1;
        *lambda2 = l2;
    });
}

int polcat_mf_integrate(polcat_mf_params params, const double init[8], double t_end, double dt,
                        polcat_mf_traj_t** out) {
    if (int rc = require(init && out, "null argument")) return rc;
    return guarded([&] {
        MeanFieldState s;
        s.s11 = init[0];
        s.s22 = init[1];
        s.s33 = init[2];
        s.s44 = init[3];
        s.s14 = Cplx(init[4], init[5]);
        s.s23 = Cplx(init[6], init[7]);
        s.a_plus = Cplx(params.aplus_re, params.aplus_im);
        s.a_minus = Cplx(params.aminus_re, params.aminus_im);
        *out = new polcat_mf_traj_t{
            integrate_mean_field(to_params(params), s, t_end, dt, params.vacuum_term != 0)};
    });
}

void polcat_mf_traj_free(polcat_mf_traj_t* traj) { delete traj; }

int polcat_mf_traj_rows(const polcat_mf_traj_t* traj, int* rows) {
    if (int rc = require(traj && rows, "null argument")) return rc;
    *rows = static_cast<int>(traj->traj.size());
    return POLCAT_OK;
}

int polcat_mf_traj_row(const polcat_mf_traj_t* traj, int index, double row[9]) {
    if (int rc = require(traj && row, "null argument")) return rc;
    if (int rc = require(index >= 0 && index < static_cast<int>(traj->traj.size()),
                         "row index out of range"))
        return rc;
    const TrajectoryPoint& p = traj->traj[index];
    row[0] = p.t;
    row[1] = p.s.s11;
    row[2] = p.s.s22;
    row[3] = p.s.s33;
    row[4] = p.s.s44;
    row[5] = p.s.s14.real();
    row[6] = p.s.s14.imag();
    row[7] = p.s.s23.real();
    row[8] = p.s.s23.imag();
    return POLCAT_OK;
}

int polcat_mf_stationary_check(const polcat_mf_traj_t* traj, polcat_mf_params params,
                               polcat_mf_report* out) {
    if (int rc = require(traj && out, "null argument")) return rc;
    return guarded([&] {
        StationaryReport r = stationary_check(traj->traj, to_params(params));
        out->coherence14_applicable = r.coherence14_applicable ? 1 : 0;
        out->coherence23_applicable = r.coherence23_applicable ? 1 : 0;
        out->coherence14_residual = r.coherence14_residual;
        out->coherence23_residual = r.coherence23_residual;
        out->population44_residual = r.population44_residual;
        out->population33_residual = r.population33_residual;
        out->phase14_error = r.phase14_error;
        out->max_relative_drift = r.max_relative_drift;
    });
}

}  // extern "C"
