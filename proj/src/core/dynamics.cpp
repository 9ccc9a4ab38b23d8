#include "core/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "core/errors.hpp"

namespace polcat {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double binomial(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * static_cast<double>(n - j + 1) / static_cast<double>(j);
    return c;
}

double growth_factor(const CoherentTerm& in, const CoherentTerm& out) {
    double d = std::norm(out.amp[0]) + std::norm(out.amp[1]) - std::norm(in.amp[0]) -
               std::norm(in.amp[1]);
    return std::exp(0.5 * d);
}

}  // namespace

CouplingFrame::CouplingFrame(double tau_, double ratio_, int lambda2_sign_)
    : tau(tau_), ratio(ratio_), lambda2_sign(lambda2_sign_) {
    if (!std::isfinite(tau) || tau < 0.0) throw std::invalid_argument("tau must be finite, >= 0");
    if (!std::isfinite(ratio) || ratio < 0.0 || ratio >= 1.0)
        throw std::invalid_argument("ratio must lie in [0, 1)");
    if (lambda2_sign != 1 && lambda2_sign != -1)
        throw std::invalid_argument("lambda2_sign must be +1 or -1");
}

AtomPreparation AtomPreparation::macro(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("macro sign must be +1 or -1");
    return AtomPreparation{Kind::Macro, sign, 0};
}

AtomPreparation AtomPreparation::product(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms)
        throw std::invalid_argument("n_atoms must lie in [1, " + std::to_string(kMaxAtoms) + "]");
    return AtomPreparation{Kind::Product, +1, n_atoms};
}

JointBranchSet evolve_joint(const CoherentSuperposition& initial, const AtomPreparation& prep,
                            const CouplingFrame& frame, bool weighted) {
    if (initial.size() != 1 || !initial.normalized())
        throw std::invalid_argument("evolve_joint takes a normalized single coherent product");
    const CoherentTerm in = initial.terms().front();
    const Cplx L = frame.lambda_tau();
    const Cplx i(0.0, 1.0);

    JointBranchSet out{initial.basis(), prep, weighted, {}};

    auto circular_branch = [&](Cplx exponent) {
        return CoherentTerm{in.coeff, {in.amp[0] * std::exp(exponent), in.amp[1] * std::exp(-exponent)}};
    };
    auto linear_branch = [&](double sz) {
        // sz = +1 for label 1, -1 for label 2
        Cplx ch = std::cosh(L), sh = std::sinh(L);
        Cplx x = in.amp[0], y = in.amp[1];
        return CoherentTerm{in.coeff, {ch * x - sz * i * sh * y, ch * y + sz * i * sh * x}};
    };

    if (prep.kind == AtomPreparation::Kind::Macro) {
        CoherentTerm b1 = initial.basis() == Basis::Circular ? circular_branch(L) : linear_branch(+1.0);
        CoherentTerm b2 = initial.basis() == Basis::Circular ? circular_branch(-L) : linear_branch(-1.0);
        double w = 1.0 / kSqrt2;
        out.branches.push_back({1, w * (weighted ? growth_factor(in, b1) : 1.0), b1});
        out.branches.push_back({2, w * (weighted ? growth_factor(in, b2) : 1.0), b2});
        return out;
    }

    if (initial.basis() != Basis::Circular)
        throw UnsupportedBasisCombination(
            "product preparation is only defined in the circular basis");
    const int n = prep.n_atoms;
    const double half_pow = std::pow(2.0, -0.5 * n);
    for (int j = 0; j <= n; ++j) {
        Cplx exponent = L * (static_cast<double>(n - 2 * j) / n);
        CoherentTerm b = circular_branch(exponent);
        double w = binomial(n, j) * half_pow * (weighted ? growth_factor(in, b) : 1.0);
        out.branches.push_back({j, w, b});
    }
    return out;
}

Conditioned condition_atoms(const JointBranchSet& joint, const AtomPreparation& prep) {
    if (prep.kind != joint.prep.kind ||
        (prep.kind == AtomPreparation::Kind::Product && prep.n_atoms != joint.prep.n_atoms))
        throw std::invalid_argument("conditioning preparation does not match the evolved one");

    std::vector<CoherentTerm> terms;
    terms.reserve(joint.branches.size());
    double joint_norm2 = 0.0;
    if (prep.kind == AtomPreparation::Kind::Macro) {
        for (const auto& b : joint.branches) {
            double proj = (b.atom_label == 1 ? 1.0 : static_cast<double>(prep.sign)) / kSqrt2;
            terms.push_back({b.weight * proj * b.field.coeff, b.field.amp});
            joint_norm2 += std::norm(b.weight);
        }
    } else {
        const double half_pow = std::pow(2.0, -0.5 * prep.n_atoms);
        for (const auto& b : joint.branches) {
            terms.push_back({b.weight * half_pow * b.field.coeff, b.field.amp});
            joint_norm2 += std::norm(b.weight) / binomial(prep.n_atoms, b.atom_label);
        }
    }

    CoherentSuperposition projected(joint.basis, std::move(terms));
    double pre_norm2 = state_norm2(projected);
    double probability = pre_norm2 / joint_norm2;
    if (probability <= CoherentSuperposition::kDegenerateTol)
        throw DegenerateState("conditioning branch vanishes (probability " +
                              std::to_string(probability) + ")");
    return Conditioned{normalize(projected), probability};
}

std::pair<double, double> norm_factors(Cplx alpha, Cplx beta, const CouplingFrame& frame) {
    double s = std::norm(alpha) + std::norm(beta);
    double d = std::norm(alpha) - std::norm(beta);
    double l1t = frame.ratio * frame.tau;
    double l2t = static_cast<double>(frame.lambda2_sign) * frame.tau;
    double x = std::exp(-s * std::cosh(2.0 * l1t) + s * std::cos(2.0 * l2t)) *
               std::cos(d * std::sin(2.0 * l2t));
    return {2.0 * (1.0 + x), 2.0 * (1.0 - x)};
}

CoherentSuperposition make_cat_y(Cplx alpha, Parity parity) {
    if (std::abs(alpha) >= 10.0) throw std::invalid_argument("|alpha| must be < 10");
    Cplx mu = kSqrt2 * alpha;
    Cplx sign = parity == Parity::Even ? 1.0 : -1.0;
    CoherentSuperposition cat(Basis::Linear, {{1.0, {0.0, mu}}, {sign, {0.0, -mu}}});
    return normalize(cat);
}

CoherentSuperposition make_entangled_coherent(Cplx alpha, int sign) {
    if (std::abs(alpha) >= 10.0) throw std::invalid_argument("|alpha| must be < 10");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const Cplx i(0.0, 1.0);
    CoherentSuperposition ecs(
        Basis::Circular,
        {{1.0, {i * alpha, -i * alpha}}, {static_cast<double>(sign), {-i * alpha, i * alpha}}});
    return normalize(ecs);
}

}  // namespace polcat
