#include "ncg/lift.hpp"

namespace ncg {

Op block2(const Op& a, const Op& b, const Op& c, const Op& d) {
    const auto n = a.rows();
    require(b.rows() == n && c.rows() == n && d.rows() == n &&
                a.cols() == n && b.cols() == n && c.cols() == n && d.cols() == n,
            "block2: blocks must be square of equal size");
    Op out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = a;
    out.topRightCorner(n, n) = b;
    out.bottomLeftCorner(n, n) = c;
    out.bottomRightCorner(n, n) = d;
    return out;
}

Op diag_embed(const Op& top, int total_dim) {
    require(top.rows() <= total_dim, "diag_embed: block larger than target");
    Op out = Op::Zero(total_dim, total_dim);
    out.topLeftCorner(top.rows(), top.cols()) = top;
    return out;
}

LiftData lift_symbol(const Op& D, const Op& Q) {
    require(D.rows() == D.cols() && Q.rows() == Q.cols() && D.rows() == Q.rows(),
            "lift_symbol: D and Q must be square of equal size");
    const auto n = D.rows();
    const Op I = Op::Identity(n, n);
    LiftData L;
    L.D = D;
    L.Q = Q;
    L.S0 = I - Q * D;
    L.S1 = I - D * Q;
    L.V = block2(L.S0, -(I + L.S0) * Q, D, L.S1);
    L.Vinv = block2(L.S0, (I + L.S0) * Q, -D, L.S1);
    L.EV = block2(L.S0 * L.S0, L.S0 * (I + L.S0) * Q, L.S1 * D, I - L.S1 * L.S1);
    return L;
}

}  // namespace ncg
