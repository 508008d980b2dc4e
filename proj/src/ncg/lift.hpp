#ifndef NCG_LIFT_HPP
#define NCG_LIFT_HPP

#include "ncg/common.hpp"

namespace ncg {

// The invertible lift of a symbol with parametrix: V = [[S0, -(1+S0)Q],[D, S1]]
// with S0 = I - QD, S1 = I - DQ, and the associated idempotent EV = V e V^{-1}
// where e = diag(I, 0).
struct LiftData {
    Op D, Q, S0, S1, V, Vinv, EV;
};

LiftData lift_symbol(const Op& D, const Op& Q);

// Block helpers used throughout.
Op block2(const Op& a, const Op& b, const Op& c, const Op& d);
Op diag_embed(const Op& top, int total_dim);  // diag(top, 0)

}  // namespace ncg

#endif
