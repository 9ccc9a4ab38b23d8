#include <cmath>
#include <numbers>
#include <random>

#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/observables.hpp"
#include "core/polarization.hpp"
#include "core/states.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace polcat;
using polcat::testing::random_cplx;

namespace {

constexpr double kPi = std::numbers::pi;

CoherentSuperposition coherent(Basis basis, Cplx a, Cplx b) {
    return CoherentSuperposition(basis, {{1.0, {a, b}}}, true);
}

Conditioned conditioned_state(Cplx a, Cplx b, double tau, double r, int sign,
                              const AtomPreparation& prep, bool weighted = false) {
    auto joint = evolve_joint(coherent(Basis::Circular, a, b), prep, CouplingFrame(tau, r, sign),
                              weighted);
    return condition_atoms(joint, prep);
}

}  // namespace

TEST_CASE("frame and preparation validation") {
    CHECK_THROWS_AS(CouplingFrame(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CouplingFrame(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CouplingFrame(1.0, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(AtomPreparation::product(0), std::invalid_argument);
    CHECK_THROWS_AS(AtomPreparation::product(51), std::invalid_argument);
    CHECK_THROWS_AS(AtomPreparation::macro(2), std::invalid_argument);
}

TEST_CASE("zero time evolution is the identity on every branch") {
    auto prep = AtomPreparation::macro(+1);
    auto joint = evolve_joint(coherent(Basis::Circular, Cplx(0.1, 0.2), Cplx(-0.3, 0.0)), prep,
                              CouplingFrame(0.0, 0.1));
    for (const auto& b : joint.branches) {
        CHECK(std::abs(b.field.amp[0] - Cplx(0.1, 0.2)) < 1e-15);
        CHECK(std::abs(b.field.amp[1] - Cplx(-0.3, 0.0)) < 1e-15);
    }
    auto jp = evolve_joint(coherent(Basis::Circular, Cplx(0.1, 0.2), Cplx(-0.3, 0.0)),
                           AtomPreparation::product(4), CouplingFrame(0.0, 0.1));
    CHECK(jp.branches.size() == 5);
    for (const auto& b : jp.branches) CHECK(std::abs(b.field.amp[0] - Cplx(0.1, 0.2)) < 1e-15);
}

TEST_CASE("quarter-period circular branches at zero ratio") {
    // lambda2_sign = +1, tau = pi/2: branch 1 -> (i a, -i b), branch 2 -> (-i a, i b)
    Cplx a(0, 0.3), b(0, 0.3);
    auto joint = evolve_joint(coherent(Basis::Circular, a, b), AtomPreparation::macro(+1),
                              CouplingFrame(kPi / 2.0, 0.0, +1));
    REQUIRE(joint.branches.size() == 2);
    CHECK(joint.branches[0].atom_label == 1);
    CHECK(std::abs(joint.branches[0].field.amp[0] - Cplx(-0.3, 0.0)) < 1e-15);
    CHECK(std::abs(joint.branches[0].field.amp[1] - Cplx(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(joint.branches[1].field.amp[0] - Cplx(0.3, 0.0)) < 1e-15);
    CHECK(std::abs(joint.branches[1].field.amp[1] - Cplx(-0.3, 0.0)) < 1e-15);
    CHECK(std::abs(joint.branches[0].weight - Cplx(1.0 / std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("single-atom product preparation reduces to two equal branches") {
    Cplx a(0.2, 0.1), b(0.0, -0.4);
    CouplingFrame f(0.8, 0.1);
    auto joint = evolve_joint(coherent(Basis::Circular, a, b), AtomPreparation::product(1), f);
    REQUIRE(joint.branches.size() == 2);
    Cplx L = f.lambda_tau();
    CHECK(std::abs(joint.branches[0].field.amp[0] - a * std::exp(L)) < 1e-14);
    CHECK(std::abs(joint.branches[0].field.amp[1] - b * std::exp(-L)) < 1e-14);
    CHECK(std::abs(joint.branches[1].field.amp[0] - a * std::exp(-L)) < 1e-14);
    CHECK(std::abs(joint.branches[0].weight - joint.branches[1].weight) < 1e-15);
}

TEST_CASE("evolve_joint rejects multi-term input and linear product preparation") {
    auto cat = make_cat_y(Cplx(0, 0.3), Parity::Even);
    CHECK_THROWS_AS(evolve_joint(cat, AtomPreparation::macro(+1), CouplingFrame(0.1, 0.0)),
                    std::invalid_argument);
    auto lin = coherent(Basis::Linear, Cplx(0.3, 0.0), 0.0);
    CHECK_THROWS_AS(evolve_joint(lin, AtomPreparation::product(2), CouplingFrame(0.1, 0.0)),
                    UnsupportedBasisCombination);
}

TEST_CASE("conditioning at zero time") {
    auto plus = conditioned_state(Cplx(0, 0.3), Cplx(0, 0.3), 0.0, 0.0, -1,
                                  AtomPreparation::macro(+1));
    CHECK(plus.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plus.state.size() == 1);
    CHECK(std::abs(plus.state.terms()[0].amp[0] - Cplx(0, 0.3)) < 1e-15);

    CHECK_THROWS_AS(
        conditioned_state(Cplx(0, 0.3), Cplx(0, 0.3), 0.0, 0.0, -1, AtomPreparation::macro(-1)),
        DegenerateState);
}

TEST_CASE("conditioning probability matches the closed-form norm") {
    auto got = conditioned_state(Cplx(0, 0.3), Cplx(0, 0.3), kPi / 2.0, 0.0, -1,
                                 AtomPreparation::macro(+1));
    CHECK(std::abs(got.probability - 0.8488381630355155) < 1e-13);
    auto [np, nm] = norm_factors(Cplx(0, 0.3), Cplx(0, 0.3), CouplingFrame(kPi / 2.0, 0.0, -1));
    CHECK(std::abs(got.probability - np / 4.0) < 1e-14);
}

TEST_CASE("norm factors") {
    auto [np0, nm0] = norm_factors(Cplx(0, 0.3), Cplx(0, 0.7), CouplingFrame(0.0, 0.1));
    CHECK(np0 == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::abs(nm0) < 1e-14);

    auto [np, nm] = norm_factors(Cplx(0, 0.3), Cplx(0, 0.3), CouplingFrame(kPi / 2.0, 0.0, -1));
    CHECK(std::abs(np - 3.395352652142062) < 1e-13);
    CHECK(std::abs(nm - 0.604647347857938) < 1e-13);

    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        std::uniform_real_distribution<double> tau(0.0, kPi), ratio(0.0, 0.5);
        auto [a, b] = std::pair{random_cplx(rng, 2.0), random_cplx(rng, 2.0)};
        auto [p, m] = norm_factors(a, b, CouplingFrame(tau(rng), ratio(rng)));
        CHECK(std::abs(p + m - 4.0) < 1e-12);
    }
}

TEST_CASE("norm factors agree with the Gram norm of the branch pair") {
    for (double im : {0.3, 0.7, 1.5}) {
        for (double r : {0.0, 0.1}) {
            for (int i = 0; i <= 20; ++i) {
                double tau = kPi * i / 20.0;
                CouplingFrame f(tau, r, -1);
                Cplx a(0, im);
                auto joint = evolve_joint(coherent(Basis::Circular, a, a),
                                          AtomPreparation::macro(+1), f);
                const auto& b1 = joint.branches[0].field;
                const auto& b2 = joint.branches[1].field;
                CoherentSuperposition sum(Basis::Circular, {{1.0, b1.amp}, {1.0, b2.amp}});
                CoherentSuperposition diff(Basis::Circular, {{1.0, b1.amp}, {-1.0, b2.amp}});
                auto [np, nm] = norm_factors(a, a, f);
                CHECK(std::abs(state_norm2(sum) - np) < 1e-12);
                CHECK(std::abs(state_norm2(diff) - nm) < 1e-12);
            }
        }
    }
}

TEST_CASE("conditioning outcomes are exhaustive") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> tau(0.05, kPi), ratio(0.0, 0.3);
    for (int i = 0; i < 30; ++i) {
        Cplx a = random_cplx(rng, 1.5), b = random_cplx(rng, 1.5);
        auto joint = evolve_joint(coherent(Basis::Circular, a, b), AtomPreparation::macro(+1),
                                  CouplingFrame(tau(rng), ratio(rng)));
        double p_plus = condition_atoms(joint, AtomPreparation::macro(+1)).probability;
        double p_minus = condition_atoms(joint, AtomPreparation::macro(-1)).probability;
        CHECK(std::abs(p_plus + p_minus - 1.0) < 1e-12);
    }
}

TEST_CASE("cat state constructor") {
    auto vac = make_cat_y(0.0, Parity::Even);
    CHECK(vac.size() == 1);
    CHECK(std::abs(vac.terms()[0].amp[0]) < 1e-15);
    CHECK(std::abs(vac.terms()[0].amp[1]) < 1e-15);

    auto cat = make_cat_y(Cplx(0, 0.3), Parity::Even);
    REQUIRE(cat.size() == 2);
    CHECK(cat.basis() == Basis::Linear);
    CHECK(std::abs(cat.terms()[0].amp[1] - Cplx(0, 0.3 * std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(cat.terms()[0].coeff - Cplx(0.5426971688053408)) < 1e-13);

    CHECK_THROWS_AS(make_cat_y(0.0, Parity::Odd), DegenerateState);
    CHECK_THROWS_AS(make_cat_y(Cplx(11.0, 0.0), Parity::Even), std::invalid_argument);
}

TEST_CASE("entangled coherent state constructor") {
    auto vac = make_entangled_coherent(0.0, +1);
    CHECK(vac.size() == 1);

    // the + state viewed in the linear frame is the even cat
    auto ecs = make_entangled_coherent(Cplx(0, 0.3), +1);
    auto cat = make_cat_y(Cplx(0, 0.3), Parity::Even);
    Cplx ov = state_overlap(change_basis(ecs, Basis::Linear), cat);
    CHECK(std::abs(std::abs(ov) - 1.0) < 1e-12);

    // norm^2 of the unnormalized "-" combination, alpha = 0.7i
    Cplx i(0, 1), al(0, 0.7);
    CoherentSuperposition raw(Basis::Circular,
                              {{1.0, {i * al, -i * al}}, {-1.0, {-i * al, i * al}}});
    CHECK(std::abs(state_norm2(raw) - 1.7182831581579099) < 1e-13);
    auto [np, nm] = norm_factors(al, al, CouplingFrame(kPi / 2.0, 0.0, +1));
    CHECK(std::abs(state_norm2(raw) - nm) < 1e-13);
}

TEST_CASE("circular and linear evolutions commute with the frame change") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> tau(0.0, kPi), ratio(0.0, 0.4);
    for (int i = 0; i < 40; ++i) {
        Cplx a = random_cplx(rng, 1.5), b = random_cplx(rng, 1.5);
        int sign = i % 2 == 0 ? +1 : -1;
        CouplingFrame f(tau(rng), ratio(rng), sign);
        auto prep = AtomPreparation::macro(i % 3 == 0 ? -1 : +1);
        if (f.tau < 0.05 && prep.sign < 0) continue;  // near degenerate

        auto circ = condition_atoms(
            evolve_joint(coherent(Basis::Circular, a, b), prep, f), prep);
        auto a_path = change_basis(circ.state, Basis::Linear);

        auto lin_initial = change_basis(coherent(Basis::Circular, a, b), Basis::Linear);
        auto b_path = condition_atoms(evolve_joint(lin_initial, prep, f), prep);

        REQUIRE(a_path.size() == b_path.state.size());
        for (std::size_t k = 0; k < a_path.size(); ++k) {
            CHECK(std::abs(a_path.terms()[k].coeff - b_path.state.terms()[k].coeff) < 1e-12);
            CHECK(std::abs(a_path.terms()[k].amp[0] - b_path.state.terms()[k].amp[0]) < 1e-12);
            CHECK(std::abs(a_path.terms()[k].amp[1] - b_path.state.terms()[k].amp[1]) < 1e-12);
        }
        CHECK(std::abs(circ.probability - b_path.probability) < 1e-12);
    }
}

TEST_CASE("single-atom product conditioning equals the macro plus outcome") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> tau(0.1, kPi);
    for (int i = 0; i < 20; ++i) {
        Cplx a = random_cplx(rng, 1.5), b = random_cplx(rng, 1.5);
        CouplingFrame f(tau(rng), 0.05);
        auto macro = conditioned_state(a, b, f.tau, f.ratio, f.lambda2_sign,
                                       AtomPreparation::macro(+1));
        auto prod = conditioned_state(a, b, f.tau, f.ratio, f.lambda2_sign,
                                      AtomPreparation::product(1));
        Cplx ov = state_overlap(macro.state, prod.state);
        CHECK(std::abs(std::norm(ov) - 1.0) < 1e-12);
        CHECK(std::abs(macro.probability - prod.probability) < 1e-12);
    }
}

TEST_CASE("observables are pi-periodic at zero ratio") {
    Cplx a(0, 0.7);
    for (double tau : {0.3, 1.1, 2.0}) {
        auto s1 = conditioned_state(a, a, tau, 0.0, -1, AtomPreparation::macro(+1));
        auto s2 = conditioned_state(a, a, tau + kPi, 0.0, -1, AtomPreparation::macro(+1));
        CHECK(std::abs(quadrature_variance(s1.state, {0, Axis::X}) -
                       quadrature_variance(s2.state, {0, Axis::X})) < 1e-12);
        CHECK(std::abs(inseparability(s1.state) - inseparability(s2.state)) < 1e-12);
        CHECK(std::abs(linear_entropy(s1.state, 0) - linear_entropy(s2.state, 0)) < 1e-12);
    }
}

TEST_CASE("lambda2 sign flip leaves imaginary-alpha observables unchanged") {
    Cplx a(0, 0.7);
    for (double tau : {0.4, 1.3}) {
        for (double r : {0.0, 0.1}) {
            auto sp = conditioned_state(a, a, tau, r, +1, AtomPreparation::macro(+1));
            auto sm = conditioned_state(a, a, tau, r, -1, AtomPreparation::macro(+1));
            CHECK(std::abs(sp.probability - sm.probability) < 1e-12);
            CHECK(std::abs(inseparability(sp.state) - inseparability(sm.state)) < 1e-12);
            CHECK(std::abs(quadrature_variance(sp.state, {0, Axis::Y}) -
                           quadrature_variance(sm.state, {0, Axis::Y})) < 1e-12);
            CHECK(std::abs(linear_entropy(sp.state, 1) - linear_entropy(sm.state, 1)) < 1e-12);
        }
    }
}

TEST_CASE("weighted mode keeps the non-unitary growth factors") {
    Cplx a(0.4, 0.1), b(0.2, -0.3);
    CouplingFrame f(0.9, 0.2);
    auto plain = evolve_joint(coherent(Basis::Circular, a, b), AtomPreparation::macro(+1), f);
    auto weighted =
        evolve_joint(coherent(Basis::Circular, a, b), AtomPreparation::macro(+1), f, true);
    for (int k = 0; k < 2; ++k) {
        const auto& p = plain.branches[k];
        const auto& w = weighted.branches[k];
        double growth = std::exp(0.5 * (std::norm(w.field.amp[0]) + std::norm(w.field.amp[1]) -
                                        std::norm(a) - std::norm(b)));
        CHECK(std::abs(w.weight - p.weight * growth) < 1e-13);
    }
    // outcome probabilities stay exhaustive
    double pp = condition_atoms(weighted, AtomPreparation::macro(+1)).probability;
    double pm = condition_atoms(weighted, AtomPreparation::macro(-1)).probability;
    CHECK(std::abs(pp + pm - 1.0) < 1e-12);
}

TEST_CASE("conditioning preparation must match the evolved one") {
    auto joint = evolve_joint(coherent(Basis::Circular, Cplx(0, 0.3), Cplx(0, 0.3)),
                              AtomPreparation::product(3), CouplingFrame(0.5, 0.0));
    CHECK_THROWS_AS(condition_atoms(joint, AtomPreparation::macro(+1)), std::invalid_argument);
    CHECK_THROWS_AS(condition_atoms(joint, AtomPreparation::product(4)), std::invalid_argument);
}

TEST_CASE("many-atom product preparation stays well conditioned") {
    Cplx a(0, 0.5);
    auto got = conditioned_state(a, a, 1.1, 0.05, -1, AtomPreparation::product(50));
    CHECK(got.probability > 0.0);
    CHECK(got.probability <= 1.0 + 1e-12);
    CHECK(std::abs(state_norm2(got.state) - 1.0) < 1e-10);
}
