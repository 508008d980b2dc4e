#ifndef NCG_QUADRATURE_HPP
#define NCG_QUADRATURE_HPP

#include <vector>

namespace ncg {

struct QuadNode {
    double t;
    double w;
};

// Gauss-Legendre nodes/weights on [a, b].
std::vector<QuadNode> gauss_legendre(int n, double a, double b);

}  // namespace ncg

#endif
