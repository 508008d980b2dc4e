#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "ncg/chern.hpp"
#include "ncg/quadrature.hpp"
#include "test_util.hpp"

using namespace ncg;
using ncgtest::random_idempotent;
using ncgtest::random_invertible;
using ncgtest::random_matrix;
using ncgtest::random_selfadjoint;

namespace {

double mixed_diff(const MixedChain& a, const MixedChain& b, int max_degree) {
    return mixed_norm(mixed_add(a, mixed_scale(b, -1.0)), max_degree);
}

MixedChain partial_trace_mixed(const MixedChain& m, int blocks) {
    MixedChain out;
    out.parity = m.parity;
    out.cutoff = m.cutoff;
    for (const auto& [deg, c] : m.components) out.insert(deg, partial_trace(c, blocks));
    return out;
}

}  // namespace

TEST_CASE("ch of an idempotent: explicit degree-2 component") {
    Op E = Op::Zero(2, 2);
    E(0, 0) = 1.0;
    MixedChain m = ch_idempotent(E, 2);
    Op half = E - 0.5 * Op::Identity(2, 2);
    Chain expect0 = make_chain(0, {{cd(1.0), {E}}});
    Chain expect2 = make_chain(2, {{cd(-2.0), {half, E, E}}});
    CHECK(chain_norm(chain_add(m.components.at(0), chain_scale(expect0, -1.0))) <
          1e-14);
    CHECK(chain_norm(chain_add(m.components.at(2), chain_scale(expect2, -1.0))) <
          1e-14);
    CHECK_THROWS(ch_idempotent(E, 3));  // odd cutoff
    std::mt19937_64 rng(1);
    CHECK_THROWS_WITH_AS(ch_idempotent(random_matrix(rng, 2), 2),
                         doctest::Contains("not idempotent"),
                         std::runtime_error);
}

TEST_CASE("ch of an idempotent is a (b+B)-cocycle") {
    std::mt19937_64 rng(2);
    for (int dim = 2; dim <= 3; ++dim) {
        Op E = random_idempotent(rng, dim);
        MixedChain m = ch_idempotent(E, 4);
        CHECK(cocycle_residual(m) < 1e-10 * (1.0 + mixed_norm(m)));
    }
}

TEST_CASE("ch of an invertible: unit collapses, degree-1 term, cocycle") {
    MixedChain trivial = ch_invertible(Op::Identity(3, 3), 3);
    CHECK(mixed_norm(trivial) == 0.0);
    std::mt19937_64 rng(3);
    Op U = random_invertible(rng, 2);
    MixedChain m = ch_invertible(U, 3);
    Chain expect1 = make_chain(1, {{cd(1.0), {U.inverse(), U}}});
    CHECK(chain_norm(chain_add(m.components.at(1), chain_scale(expect1, -1.0))) <
          1e-12);
    CHECK(cocycle_residual(m) < 1e-10 * (1.0 + mixed_norm(m)));
}

TEST_CASE("slant chain of an idempotent path differentiates ch") {
    std::mt19937_64 rng(4);
    Op D = random_invertible(rng, 2);
    LiftData L = lift_symbol(D, D.inverse());
    PathSpec path = idempotent_path(L.V, L.Vinv);
    const double t = 0.7, h = 1e-5;
    Op E, Edot;
    path.evaluator(t, E, Edot);
    MixedChain lhs = mixed_bB(slant_idempotent(E, Edot, 3));
    Op Ep, Em, ignore;
    path.evaluator(t + h, Ep, ignore);
    path.evaluator(t - h, Em, ignore);
    MixedChain diff = mixed_scale(
        mixed_add(ch_idempotent(Ep, 4), mixed_scale(ch_idempotent(Em, 4), -1.0)),
        1.0 / (2.0 * h));
    CHECK(mixed_diff(lhs, diff, 2) < 1e-6 * (1.0 + mixed_norm(diff, 2)));
}

TEST_CASE("slant chain of an invertible path differentiates ch") {
    std::mt19937_64 rng(5);
    Op P = random_selfadjoint(rng, 2);
    auto U_at = [&](double t) {
        return Op((cd(0.0, 2.0 * PI * t) * P).exp());
    };
    const double t = 0.4, h = 1e-5;
    Op U = U_at(t);
    Op Udot = TWO_PI_I * P * U;
    MixedChain lhs = mixed_bB(slant_invertible(U, Udot, 2));
    MixedChain diff = mixed_scale(
        mixed_add(ch_invertible(U_at(t + h), 3),
                  mixed_scale(ch_invertible(U_at(t - h), 3), -1.0)),
        1.0 / (2.0 * h));
    CHECK(mixed_diff(lhs, diff, 1) < 1e-6 * (1.0 + mixed_norm(diff, 1)));
}

TEST_CASE("slant chains vanish for stationary points") {
    std::mt19937_64 rng(6);
    Op E = random_idempotent(rng, 2);
    CHECK(mixed_norm(slant_idempotent(E, Op::Zero(2, 2), 3)) == 0.0);
    Op U = random_invertible(rng, 2);
    CHECK(mixed_norm(slant_invertible(U, Op::Zero(2, 2), 2)) == 0.0);
    PathSpec constant = make_path(0.0, 1.0, 8, [E](double, Op& p, Op& v) {
        p = E;
        v = Op::Zero(2, 2);
    });
    CHECK(mixed_norm(transgress(constant, PathKind::Idempotent, 3)) == 0.0);
}

TEST_CASE("quadrature reproduces the Beta constants of the transgression") {
    auto nodes = gauss_legendre(32, 0.0, 1.0);
    for (int q = 0; q <= 5; ++q) {
        double val = 0.0;
        for (const auto& nd : nodes)
            val += nd.w * std::pow(nd.t * (1.0 - nd.t), q);
        double fq = 1.0;
        for (int i = 2; i <= q; ++i) fq *= i;
        double f2q1 = 1.0;
        for (int i = 2; i <= 2 * q + 1; ++i) f2q1 *= i;
        CHECK(std::abs(0.5 * val - 0.5 * fq * fq / f2q1) < 1e-12);
    }
}

TEST_CASE("idempotent path: endpoints, idempotency, velocity") {
    std::mt19937_64 rng(7);
    Op D = random_invertible(rng, 2);
    LiftData L = lift_symbol(D, D.inverse());
    PathSpec path = idempotent_path(L.V, L.Vinv);
    Op E0, E1, v;
    path.evaluator(0.0, E0, v);
    path.evaluator(PI / 2.0, E1, v);
    CHECK((E0 - diag_embed(L.EV, 8)).norm() < 1e-12);
    Op e = Op::Zero(8, 8);
    e.block(4, 4, 2, 2) = Op::Identity(2, 2);
    // Endpoint is diag(0, e) with e = diag(I, 0) in the doubled algebra.
    CHECK((E1 - e).norm() < 1e-12);
    for (double t : {0.3, PI / 4.0, 1.2}) {
        Op E, Edot, Ep, Em, ig;
        path.evaluator(t, E, Edot);
        CHECK((E * E - E).norm() < 1e-10);
        const double h = 1e-6;
        path.evaluator(t + h, Ep, ig);
        path.evaluator(t - h, Em, ig);
        CHECK((Edot - (Ep - Em) / (2.0 * h)).norm() < 1e-7);
    }
}

TEST_CASE("odd relative character: cone identity and the endpoint lemma") {
    std::mt19937_64 rng(8);
    Op D = random_invertible(rng, 2);
    ConeCocycle cone = chr_odd(D, D.inverse(), 3);
    CHECK(cone.residual() < 1e-8 * (1.0 + mixed_norm(cone.relative, 1)));
    // Partial-tracing the transgression recovers the odd character of the
    // symbol: tr Tch = (1/2)(ch D - ch D^{-1}) degree by degree.
    MixedChain traced = partial_trace_mixed(cone.relative, 4);
    MixedChain lemma = mixed_scale(
        mixed_add(ch_invertible(D, 3),
                  mixed_scale(ch_invertible(D.inverse(), 3), -1.0)),
        0.5);
    CHECK(mixed_diff(traced, lemma, 3) < 1e-8 * (1.0 + mixed_norm(lemma)));
}

TEST_CASE("odd relative character: scalar unit symbol is null") {
    Op one = Op::Identity(1, 1);
    ConeCocycle cone = chr_odd(one, one, 3);
    CHECK(cone.residual() < 1e-10);
    MixedChain traced = partial_trace_mixed(cone.relative, 4);
    CHECK(mixed_norm(traced) < 1e-10);
}

TEST_CASE("even relative character of an exact projection") {
    std::mt19937_64 rng(9);
    Op P = random_idempotent(rng, 3);
    P = positive_spectral_projection(0.5 * (P + P.adjoint()).eval() +
                                     2.0 * (P * P.adjoint()).eval() -
                                     Op::Identity(3, 3));
    ConeCocycle cone = chr_even(P, 2);
    CHECK(cone.residual() < 1e-8 * (1.0 + mixed_norm(cone.relative)));
    // For an exact projection the loop closes: U(1) = I, the absolute part
    // vanishes, and the transgression is the Chern character of P itself.
    CHECK(mixed_norm(cone.absolute) < 1e-10);
    MixedChain chp = ch_idempotent(P, 2);
    CHECK(mixed_diff(cone.relative, chp, 2) < 1e-8 * (1.0 + mixed_norm(chp)));
}

TEST_CASE("even relative character: cone identity for generic selfadjoint P") {
    std::mt19937_64 rng(10);
    Op P = random_selfadjoint(rng, 2);
    ConeCocycle cone = chr_even(P, 2);
    CHECK(cone.residual() < 1e-8 * (1.0 + mixed_norm(cone.relative)));
}

TEST_CASE("suspension loop data") {
    std::mt19937_64 rng(11);
    Op F = random_selfadjoint(rng, 3);
    for (double theta : {0.4, 1.1, 2.7}) {
        Op E, Edot, Ep, Em, ig;
        suspension_loop(F, theta, E, Edot);
        CHECK((E * E - E).norm() < 1e-10 * (1.0 + E.squaredNorm()));
        const double h = 1e-6;
        suspension_loop(F, theta + h, Ep, ig);
        suspension_loop(F, theta - h, Em, ig);
        CHECK((Edot - (Ep - Em) / (2.0 * h)).norm() < 1e-6);
    }
    Op E0, E2pi, v;
    suspension_loop(F, 0.0, E0, v);
    suspension_loop(F, 2.0 * PI, E2pi, v);
    Op expect = Op::Zero(6, 6);
    expect.bottomRightCorner(3, 3) = Op::Identity(3, 3);
    CHECK((E0 - expect).norm() < 1e-13);
    CHECK((E2pi - expect).norm() < 1e-13);
}

TEST_CASE("suspended character: symmetry F = I gives zero") {
    MixedChain sch = suspended_chern(Op::Identity(2, 2), 3);
    CHECK(mixed_norm(sch) < 1e-12);
}

TEST_CASE("suspended character is a cycle (closed loop)") {
    std::mt19937_64 rng(12);
    Op F = random_selfadjoint(rng, 2);
    MixedChain sch = suspended_chern(F, 3);
    CHECK(mixed_norm(sch) > 1e-6);  // nontrivial for generic F
    CHECK(cocycle_residual(sch) < 1e-8 * (1.0 + mixed_norm(sch)));
    CHECK_THROWS_WITH_AS(suspended_chern(random_matrix(rng, 2), 3),
                         doctest::Contains("selfadjoint"), std::invalid_argument);
}
