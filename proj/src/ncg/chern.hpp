#ifndef NCG_CHERN_HPP
#define NCG_CHERN_HPP

#include <functional>

#include "ncg/cyclic.hpp"
#include "ncg/lift.hpp"
#include "ncg/quadrature.hpp"

namespace ncg {

enum class PathKind { Idempotent, Invertible };

// A C^1 path of idempotents or invertibles with analytic velocity.
struct PathSpec {
    double t0 = 0.0, t1 = 1.0;
    std::vector<QuadNode> nodes;
    // t -> (point, velocity)
    std::function<void(double, Op&, Op&)> evaluator;
};

PathSpec make_path(double t0, double t1, int nnodes,
                   std::function<void(double, Op&, Op&)> evaluator);

// Chern character of an idempotent: degree 0 component E, degree 2q component
// (-1)^q (2q)!/q! (E - 1/2) (x) E^{(x)2q}.
MixedChain ch_idempotent(const Op& E, int cutoff);

// Chern character of an invertible: degree 2q+1 component
// (-1)^q q! (U^{-1} (x) U)^{(x)(q+1)}.
MixedChain ch_invertible(const Op& U, int cutoff);

// Slant chain /ch(E, Edot): inserts G = (2E - 1) Edot after each slot of
// ch(E) with alternating sign; satisfies d/dt ch E(t) = (b+B) /ch(E, Edot).
MixedChain slant_idempotent(const Op& E, const Op& Edot, int cutoff);

// Slant chain /ch(U, Udot): degree 0 component U^{-1} Udot, degree 2q+2
// component (-1)^{q+1} q! sum_j (U^{-1}(x)U)^{(x)(j+1)} (x) U^{-1}Udot (x)
// (U^{-1}(x)U)^{(x)(q-j)}.
MixedChain slant_invertible(const Op& U, const Op& Udot, int cutoff);

// Gauss-Legendre quadrature of the slant chain along the path.
MixedChain transgress(const PathSpec& path, PathKind kind, int cutoff);

// Path E(t) = [[VeV^{-1}cos^2 t, Ve sin t cos t],[eV^{-1} sin t cos t,
// e sin^2 t]] on [0, pi/2], from diag(VeV^{-1}, 0) to diag(0, e).
PathSpec idempotent_path(const Op& V, const Op& Vinv, int nnodes = 32);

// Relative Chern character, odd input: (ch E(V) - ch e, Tch(E, Edot)).
// `absolute` holds the endpoint difference (even), `relative` the transgression
// (odd); (b+B)(relative) + absolute = 0 up to quadrature tolerance.
ConeCocycle chr_odd(const Op& D, const Op& Q, int cutoff, int nnodes = 32);

// Relative Chern character, even input: U(t) = exp(2 pi i t P) on [0,1];
// returns (1/2 pi i)(-ch U(1), Tch(U, Udot)).
ConeCocycle chr_even(const Op& P, int cutoff, int nnodes = 32);

// Suspended Chern character of the theta-loop attached to a selfadjoint F;
// integrates /ch(E_theta, dE/dtheta) over [0, pi] and [pi, 2 pi].
MixedChain suspended_chern(const Op& F, int cutoff, int nnodes = 32);

// Loop data at a fixed theta (exposed for tests).
void suspension_loop(const Op& F, double theta, Op& E, Op& Edot);

}  // namespace ncg

#endif
