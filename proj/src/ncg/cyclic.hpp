#ifndef NCG_CYCLIC_HPP
#define NCG_CYCLIC_HPP

#include <map>
#include <vector>

#include "ncg/aspanier.hpp"
#include "ncg/common.hpp"
#include "ncg/models.hpp"

namespace ncg {

struct ChainTerm {
    cd coeff;
    std::vector<Op> factors;  // degree + 1 factors of common dimension
};

// Formal linear combination of elementary tensors A0 (x) ... (x) Aq over a
// matrix algebra, in the normalized complex: every factor in a tail slot
// (position >= 1) is kept traceless (the A/C quotient); terms whose tail
// factor projects to zero are dropped.
struct Chain {
    int degree = 0;
    std::vector<ChainTerm> terms;

    int op_dim() const;  // 0 if empty
};

Chain make_chain(int degree, std::vector<ChainTerm> terms);  // normalizes
Chain normalize(const Chain& c);
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_scale(const Chain& c, cd s);

Chain chain_b(const Chain& c);
Chain chain_B(const Chain& c);

// Test/diagnostic helpers -----------------------------------------------

// Coordinates of the chain in the Kronecker tensor basis; dimension
// (d^2)^(degree+1).  Guarded against blow-up.
Eigen::VectorXcd flatten(const Chain& c);
double chain_norm(const Chain& c);  // Euclidean norm of flatten(c)

// Generalized trace M_k(A)-chain -> A-chain: sums matrix blocks over all
// cyclic index paths.  blocks = k; the factor dimension must be k * base.
Chain partial_trace(const Chain& c, int blocks);

// (b + B)-total-complex element of fixed parity.
struct MixedChain {
    enum class Parity { Even, Odd };
    Parity parity = Parity::Even;
    std::map<int, Chain> components;
    int cutoff = 0;

    void insert(int degree, Chain c);
};

MixedChain mixed_add(const MixedChain& a, const MixedChain& b);
MixedChain mixed_scale(const MixedChain& m, cd s);
MixedChain mixed_bB(const MixedChain& m);  // b + B applied componentwise
double mixed_norm(const MixedChain& m, int max_degree = -1);

// Norm of (b+B)m over degrees <= m.cutoff - 1 (the degrees unaffected by the
// cutoff truncation).
double cocycle_residual(const MixedChain& m);

// Cone-complex element: relative has opposite parity (degree shifted by one);
// the cone differential residual is |(b+B)(relative) + absolute|.
struct ConeCocycle {
    MixedChain relative;
    MixedChain absolute;

    double residual() const;
};

// Pairings --------------------------------------------------------------

// Tr_phi paired against a chain of matching degree: each chain factor is
// followed by the compressed multiplication operator of the corresponding
// cochain slot, traced over the model's interior window.
cd trace_pair(const ASCochain& phi, const Chain& c, const Model& model);

// Degreewise application of trace_pair to a mixed chain; cochains are matched
// to components by degree, absent degrees contribute 0.
cd pair_mixed(const std::vector<ASCochain>& phis, const MixedChain& m,
              const Model& model);

}  // namespace ncg

#endif
