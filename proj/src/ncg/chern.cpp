#include "ncg/chern.hpp"

#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace ncg {

namespace {

double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void check_idempotent(const Op& E, const char* who) {
    const double dev = (E * E - E).norm();
    if (dev > 1e-10 * (1.0 + E.squaredNorm()))
        throw std::runtime_error(std::string(who) +
                                 ": input not idempotent, |E^2 - E| = " +
                                 std::to_string(dev));
}

Op checked_inverse(const Op& U, const char* who) {
    Eigen::JacobiSVD<Op> svd(U);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 1e-14 * smax)
        throw std::runtime_error(std::string(who) +
                                 ": singular input (condition number " +
                                 std::to_string(smax / std::max(smin, 1e-300)) +
                                 ")");
    return U.inverse();
}

}  // namespace

PathSpec make_path(double t0, double t1, int nnodes,
                   std::function<void(double, Op&, Op&)> evaluator) {
    PathSpec p;
    p.t0 = t0;
    p.t1 = t1;
    p.nodes = gauss_legendre(nnodes, t0, t1);
    p.evaluator = std::move(evaluator);
    return p;
}

MixedChain ch_idempotent(const Op& E, int cutoff) {
    require(cutoff >= 0 && cutoff % 2 == 0, "ch_idempotent: cutoff must be even");
    check_idempotent(E, "ch_idempotent");
    const int n = static_cast<int>(E.rows());
    const Op half = E - 0.5 * Op::Identity(n, n);
    MixedChain m;
    m.parity = MixedChain::Parity::Even;
    m.insert(0, make_chain(0, {{cd(1.0), {E}}}));
    for (int q = 1; 2 * q <= cutoff; ++q) {
        ChainTerm t;
        t.coeff = sign_pow(q) * factorial_d(2 * q) / factorial_d(q);
        t.factors.push_back(half);
        for (int p = 0; p < 2 * q; ++p) t.factors.push_back(E);
        m.insert(2 * q, make_chain(2 * q, {std::move(t)}));
    }
    m.cutoff = cutoff;
    return m;
}

MixedChain ch_invertible(const Op& U, int cutoff) {
    require(cutoff >= 1 && cutoff % 2 == 1, "ch_invertible: cutoff must be odd");
    const Op Ui = checked_inverse(U, "ch_invertible");
    MixedChain m;
    m.parity = MixedChain::Parity::Odd;
    for (int q = 0; 2 * q + 1 <= cutoff; ++q) {
        ChainTerm t;
        t.coeff = sign_pow(q) * factorial_d(q);
        for (int p = 0; p <= q; ++p) {
            t.factors.push_back(Ui);
            t.factors.push_back(U);
        }
        m.insert(2 * q + 1, make_chain(2 * q + 1, {std::move(t)}));
    }
    m.cutoff = cutoff;
    return m;
}

MixedChain slant_idempotent(const Op& E, const Op& Edot, int cutoff) {
    require(cutoff >= 1 && cutoff % 2 == 1,
            "slant_idempotent: cutoff must be odd");
    require(E.rows() == Edot.rows() && E.cols() == Edot.cols(),
            "slant_idempotent: dimension mismatch");
    const int n = static_cast<int>(E.rows());
    const Op G = (2.0 * E - Op::Identity(n, n)) * Edot;
    const Op half = E - 0.5 * Op::Identity(n, n);
    MixedChain m;
    m.parity = MixedChain::Parity::Odd;
    for (int q = 0; 2 * q + 1 <= cutoff; ++q) {
        // ch component factors in degree 2q.
        std::vector<Op> base;
        cd coeff;
        if (q == 0) {
            base = {E};
            coeff = 1.0;
        } else {
            base.push_back(half);
            for (int p = 0; p < 2 * q; ++p) base.push_back(E);
            coeff = sign_pow(q) * factorial_d(2 * q) / factorial_d(q);
        }
        std::vector<ChainTerm> terms;
        for (int j = 0; j < static_cast<int>(base.size()); ++j) {
            ChainTerm t;
            t.coeff = coeff * sign_pow(j);
            for (int p = 0; p <= j; ++p) t.factors.push_back(base[p]);
            t.factors.push_back(G);
            for (int p = j + 1; p < static_cast<int>(base.size()); ++p)
                t.factors.push_back(base[p]);
            terms.push_back(std::move(t));
        }
        m.insert(2 * q + 1, make_chain(2 * q + 1, std::move(terms)));
    }
    m.cutoff = cutoff;
    return m;
}

MixedChain slant_invertible(const Op& U, const Op& Udot, int cutoff) {
    require(cutoff >= 0 && cutoff % 2 == 0,
            "slant_invertible: cutoff must be even");
    const Op Ui = checked_inverse(U, "slant_invertible");
    const Op W = Ui * Udot;
    MixedChain m;
    m.parity = MixedChain::Parity::Even;
    m.insert(0, make_chain(0, {{cd(1.0), {W}}}));
    for (int q = 0; 2 * q + 2 <= cutoff; ++q) {
        std::vector<ChainTerm> terms;
        for (int j = 0; j <= q; ++j) {
            ChainTerm t;
            t.coeff = sign_pow(q + 1) * factorial_d(q);
            for (int p = 0; p <= j; ++p) {
                t.factors.push_back(Ui);
                t.factors.push_back(U);
            }
            t.factors.push_back(W);
            for (int p = 0; p < q - j; ++p) {
                t.factors.push_back(Ui);
                t.factors.push_back(U);
            }
            terms.push_back(std::move(t));
        }
        m.insert(2 * q + 2, make_chain(2 * q + 2, std::move(terms)));
    }
    m.cutoff = cutoff;
    return m;
}

MixedChain transgress(const PathSpec& path, PathKind kind, int cutoff) {
    require(static_cast<bool>(path.evaluator), "transgress: empty path");
    MixedChain acc;
    acc.parity = kind == PathKind::Idempotent ? MixedChain::Parity::Odd
                                              : MixedChain::Parity::Even;
    acc.cutoff = cutoff;
    for (const auto& node : path.nodes) {
        Op point, velocity;
        path.evaluator(node.t, point, velocity);
        MixedChain slice = kind == PathKind::Idempotent
                               ? slant_idempotent(point, velocity, cutoff)
                               : slant_invertible(point, velocity, cutoff);
        acc = mixed_add(acc, mixed_scale(slice, node.w));
    }
    acc.cutoff = cutoff;
    return acc;
}

PathSpec idempotent_path(const Op& V, const Op& Vinv, int nnodes) {
    const auto n2 = V.rows();
    require(n2 % 2 == 0, "idempotent_path: V must be an even-size block matrix");
    require((V * Vinv - Op::Identity(n2, n2)).norm() <= 1e-10 * (1.0 + V.norm()),
            "idempotent_path: Vinv is not an inverse of V");
    const auto n = n2 / 2;
    Op e = Op::Zero(n2, n2);
    e.topLeftCorner(n, n) = Op::Identity(n, n);
    const Op VeVi = V * e * Vinv;
    const Op Ve = V * e;
    const Op eVi = e * Vinv;
    return make_path(0.0, PI / 2.0, nnodes,
                     [VeVi, Ve, eVi, e](double t, Op& E, Op& Edot) {
                         const double c = std::cos(t), s = std::sin(t);
                         E = block2(VeVi * (c * c), Ve * (s * c),
                                    eVi * (s * c), e * (s * s));
                         const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
                         Edot = block2(VeVi * (-s2), Ve * c2, eVi * c2, e * s2);
                     });
}

ConeCocycle chr_odd(const Op& D, const Op& Q, int cutoff, int nnodes) {
    require(cutoff >= 1 && cutoff % 2 == 1, "chr_odd: cutoff must be odd");
    const LiftData L = lift_symbol(D, Q);
    const auto n = D.rows();
    PathSpec path = idempotent_path(L.V, L.Vinv, nnodes);
    ConeCocycle cone;
    cone.relative = transgress(path, PathKind::Idempotent, cutoff);
    // Endpoint idempotents at the doubled size.
    const Op Etilde = diag_embed(L.EV, 4 * static_cast<int>(n));
    Op etilde = Op::Zero(4 * n, 4 * n);
    etilde.block(2 * n, 2 * n, n, n) = Op::Identity(n, n);
    MixedChain start = ch_idempotent(Etilde, cutoff + 1);
    MixedChain end = ch_idempotent(etilde, cutoff + 1);
    cone.absolute = mixed_add(start, mixed_scale(end, -1.0));
    return cone;
}

ConeCocycle chr_even(const Op& P, int cutoff, int nnodes) {
    require(cutoff >= 0 && cutoff % 2 == 0, "chr_even: cutoff must be even");
    const auto n = P.rows();
    require(n == P.cols(), "chr_even: P must be square");
    PathSpec path = make_path(
        0.0, 1.0, nnodes, [P](double t, Op& U, Op& Udot) {
            U = (cd(0.0, 2.0 * PI * t) * P).exp();
            Udot = TWO_PI_I * P * U;
        });
    const cd inv2pii = 1.0 / TWO_PI_I;
    ConeCocycle cone;
    cone.relative =
        mixed_scale(transgress(path, PathKind::Invertible, cutoff), inv2pii);
    const Op U1 = (cd(0.0, 2.0 * PI) * P).exp();
    cone.absolute = mixed_scale(ch_invertible(U1, cutoff + 1), -inv2pii);
    return cone;
}

void suspension_loop(const Op& F, double theta, Op& E, Op& Edot) {
    const auto n = F.rows();
    const Op I = Op::Identity(n, n);
    if (theta >= PI) {
        E = block2(Op::Zero(n, n), Op::Zero(n, n), Op::Zero(n, n), I);
        Edot = Op::Zero(2 * n, 2 * n);
        return;
    }
    const double c = std::cos(theta), s = std::sin(theta);
    const Op Phi = c * I + cd(0.0, s) * F;
    const Op Phid = -s * I + cd(0.0, c) * F;
    const Op Psi = c * I - cd(0.0, s) * F;
    const Op Psid = -s * I - cd(0.0, c) * F;
    const Op S = I - Phi * Psi;
    const Op Sd = -(Phid * Psi + Phi * Psid);
    E = block2(S * S, S * (I + S) * Psi, S * Phi, I - S * S);
    Edot = block2(Sd * S + S * Sd,
                  Sd * (I + S) * Psi + S * Sd * Psi + S * (I + S) * Psid,
                  Sd * Phi + S * Phid, -(Sd * S + S * Sd));
}

MixedChain suspended_chern(const Op& F, int cutoff, int nnodes) {
    require((F - F.adjoint()).norm() <= 1e-10 * (1.0 + F.norm()),
            "suspended_chern: F must be selfadjoint");
    auto eval = [F](double theta, Op& E, Op& Edot) {
        suspension_loop(F, theta, E, Edot);
    };
    // The loop has a corner at theta = pi; quadrature the two smooth pieces
    // separately (the second piece has constant E and contributes 0).
    MixedChain first =
        transgress(make_path(0.0, PI, nnodes, eval), PathKind::Idempotent,
                   cutoff);
    MixedChain second =
        transgress(make_path(PI, 2.0 * PI, nnodes, eval), PathKind::Idempotent,
                   cutoff);
    return mixed_add(first, second);
}

}  // namespace ncg
