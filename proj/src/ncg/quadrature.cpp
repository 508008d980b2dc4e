#include "ncg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ncg {

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<QuadNode> nodes(n);
    const double eps = 1e-15;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, refined by Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < eps) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        nodes[i] = {mid - half * x, half * w};
        nodes[n - 1 - i] = {mid + half * x, half * w};
    }
    return nodes;
}

}  // namespace ncg
