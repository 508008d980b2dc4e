#ifndef NCG_ASPANIER_HPP
#define NCG_ASPANIER_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncg/common.hpp"

namespace ncg {

// A smooth function on the model manifold, stored by coefficients.
//   S1: finite Fourier series, modes k -> c_k, f(theta) = sum c_k e^{ik theta}.
//   S3: finite sum of monomials z1^a1 z2^a2 zbar1^b1 zbar2^b2 with exponent
//       key {a1, a2, b1, b2}.
struct FunctionRep {
    Manifold model_id = Manifold::S1;
    std::map<int, cd> s1_modes;
    std::map<std::array<int, 4>, cd> s3_monos;

    int bandwidth() const;
    bool is_zero(double tol = 0.0) const;
    bool is_real(double tol = 1e-12) const;
    cd eval(const Point& p) const;

    FunctionRep& operator*=(cd s);
    FunctionRep& operator+=(const FunctionRep& other);
};

FunctionRep s1_mode(int k, cd coeff = 1.0);
FunctionRep s3_monomial(int a1, int a2, int b1, int b2, cd coeff = 1.0);
FunctionRep unit_function(Manifold m);

struct ASTerm {
    cd coeff;
    std::vector<FunctionRep> tuple;
};

// Finite sum of decomposable (q+1)-tuples of functions; the antisymmetrized
// representatives produced by antisymmetrize() are totally antisymmetric.
struct ASCochain {
    Manifold model_id = Manifold::S1;
    int degree = 0;
    std::vector<ASTerm> terms;

    cd eval(const std::vector<Point>& pts) const;
    int max_bandwidth() const;
};

// (1/(q+1)!) sum over permutations with sign.  Caps at q+1 <= 8.
ASCochain antisymmetrize(Manifold m, int degree,
                         const std::vector<ASTerm>& raw);

// Alexander-Spanier coboundary: inserts the unit function at each slot with
// alternating sign.
ASCochain coboundary(const ASCochain& phi);

struct Model;  // models.hpp

// integral over M of sum_i f0 df1 ^ ... ^ dfq (de Rham pairing of the
// associated form); exact quadrature for trigonometric/monomial data.
cd lambda_integral(const ASCochain& phi, const Model& model);

// Top-degree cochains are always cocycles; below top degree, tests delta(phi)
// at 200 seeded sample tuples.
bool is_top_cocycle(const ASCochain& phi, const Model& model);

std::string cochain_to_json(const ASCochain& phi);
ASCochain cochain_from_json(const std::string& text);

}  // namespace ncg

#endif
