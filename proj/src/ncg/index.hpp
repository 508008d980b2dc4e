#ifndef NCG_INDEX_HPP
#define NCG_INDEX_HPP

#include <optional>
#include <string>

#include "ncg/chern.hpp"
#include "ncg/cyclic.hpp"

namespace ncg {

// All sign/prefactor conventions in one place.  Each entry is pinned by a
// dedicated unit test against a hand-computable case.
namespace prefactor {

// Chern character of an idempotent, degree 2q: (-1)^q (2q)!/q!.
double ch_even(int q);
// Chern character of an invertible, degree 2q+1: (-1)^q q!.
double ch_odd(int q);
// Odd higher index via Toeplitz compressions, degree 2q-1: (-1)^q (2q)!/q!.
double odd_toeplitz(int q);
// Even higher index via S_f products, degree 2q: (-1)^q q!.
double even_invertible(int q);
// Cochain-level trace-formula constants: the raw interior trace of the
// antisymmetrized operator product equals constant * lambda_integral(phi).
cd hh_odd_cochain(int q, cd kappa);   // kappa * q! / ((2 pi i)^q (2q)!)
cd hh_even_cochain(int q, cd kappa);  // kappa * (2q+1)! / ((2 pi i)^q q!)

}  // namespace prefactor

struct IndexReport {
    cd value = 0.0;
    std::optional<cd> oracle;
    double residual = 0.0;
    std::string method;
    Model model;
    std::optional<cd> companion;  // secondary evaluation when available

    void set_oracle(cd o) {
        oracle = o;
        residual = std::abs(value - o);
    }
};

// Winding number of an S1 symbol (argument sum over 4096 samples).
int winding_number(const FunctionRep& f);

// interior_trace((I - QD) - (I - DQ)); oracle = -winding(symbol) when the
// symbol is supplied.
IndexReport fredholm_index(const Op& D, const Op& Q, const Model& model);
IndexReport fredholm_index(const Op& D, const Op& Q, const Model& model,
                           const FunctionRep& symbol);

// Higher analytic index from the lift: Tr_phi(ch E(V) - ch e) +
// Tr_{delta phi}(Tch(E, Edot)).
IndexReport ind_even(const Op& D, const Op& Q, const ASCochain& phi,
                     const Model& model, int cutoff);

// Invertible-D evaluation: (-1)^q q! Tr_int(sum_i S_{f0} ... S_{f2q}) with
// S_f = T_f - D^{-1} T_f D; companion via the phase operator F:
// (-1)^q q! Tr_int(sum_i F [F, T_{f0}] ... [F, T_{f2q}]).
IndexReport ind_even_invertible(const Op& D, const ASCochain& phi,
                                const Model& model);

// Odd higher index via Toeplitz compressions T_f = P (compressed f) P:
// (-1)^q (2q)!/q! Tr_int(sum_i T_{f0} ... T_{f_{2q-1}}); oracle from the
// cohomological formula at top degree.
IndexReport ind_odd_toeplitz(const Op& P, const ASCochain& phi,
                             const Model& model);

// Relative evaluation through chr_even: (1/2 pi i)(Tr_phi(ch U(0)) -
// Tr_phi(ch U(1)) + Tr_{delta phi}(Tch(U, Udot))).
IndexReport ind_odd_relative(const Op& P, const ASCochain& phi,
                             const Model& model, int cutoff);

// Suspended index (1/2 pi i) Tr_phi(Sch(E)) with F = phase_operator(D);
// oracle = ind_odd_toeplitz(P_+, phi).
IndexReport suspended_index(const Op& D, const ASCochain& phi,
                            const Model& model, int cutoff);
// Same, with a caller-supplied approximate phase F.
IndexReport suspended_index_with_phase(const Op& D, const Op& F,
                                       const ASCochain& phi,
                                       const Model& model, int cutoff);

// [A1,...,Ak] = (1/k!) sum_tau sgn(tau) A_tau(1) ... A_tau(k); k <= 8.
Op multicommutator(const std::vector<Op>& ops);

// Right-hand side of the top-degree trace formulas (value the interior trace
// of the antisymmetrized product should take).
cd cohomological_oracle(bool odd, const ASCochain& phi, const Model& model);

}  // namespace ncg

#endif
