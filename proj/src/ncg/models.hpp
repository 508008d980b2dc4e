#ifndef NCG_MODELS_HPP
#define NCG_MODELS_HPP

#include <array>
#include <vector>

#include "ncg/aspanier.hpp"
#include "ncg/common.hpp"
#include "ncg/lift.hpp"

namespace ncg {

// Truncated Hardy-space model.
//   S1: modes 0..N-1.
//   S3: orthonormalized holomorphic monomials z1^a z2^b of total degree < N,
//       ordered by total degree then by a descending.
// pad: number of top modes (S1) / top degree shells (S3) excluded from traces.
// kappa: rational constant multiplying the volume integral in the top-degree
// trace formulas (default 1 for the Hardy projection models).
struct Model {
    Manifold manifold = Manifold::S1;
    int N = 32;
    int pad = 8;
    long kappa_num = 1;
    long kappa_den = 1;

    cd kappa() const { return cd(double(kappa_num) / double(kappa_den), 0.0); }
};

int model_dim(const Model& model);
int manifold_dim(Manifold m);  // S1 -> 1, S3 -> 3

// S3 monomial basis (a, b) with a + b < N, plus squared norms
// |z1^a z2^b|^2 = a! b! / (a+b+1)! under the normalized surface measure.
struct S3Basis {
    std::vector<std::array<int, 2>> monomials;
    std::vector<double> norms;  // sqrt of squared norms
};
const S3Basis& s3_basis(int N);

// Gram data for monomials z^alpha zbar^beta up to total degree d (size guard
// d <= 12): closed-form moments of the normalized surface measure.
double s3_moment(int p, int pp, int r, int rr);

// Compression P M_f P of multiplication by f to the truncated Hardy space.
Op toeplitz(const FunctionRep& f, const Model& model);

// Trace over interior modes.  Ops whose dimension is a multiple m of the
// model dimension are treated as M_m amplifications: the interior window is
// applied inside each diagonal block.
cd interior_trace(const Op& A, const Model& model);
// Interior diagonal indices within one model-dimensional block.
const std::vector<int>& interior_indices(const Model& model);

Op selfadjoint_toeplitz(const FunctionRep& f, const Model& model, double shift);

Op positive_spectral_projection(const Op& D);
Op phase_operator(const Op& D);

// Heat parametrix Q(tD) with S0 = exp(-t^2 D*D/2), S1 = exp(-t^2 DD*/2),
// via the spectral calculus; QD = I - S0 and DQ = I - S1 hold exactly.
LiftData heat_parametrix(const Op& D, double t);

// Limit idempotent diag(I - H1, H0) with H0/H1 the orthogonal projections
// onto ker D / ker D* (SVD, kernel threshold 1e-10).
Op limit_idempotent(const Op& D);

}  // namespace ncg

#endif
