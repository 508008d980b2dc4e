#ifndef NCG_TEST_UTIL_HPP
#define NCG_TEST_UTIL_HPP

#include <random>

#include "ncg/common.hpp"

namespace ncgtest {

using ncg::cd;
using ncg::Op;

inline Op random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    Op A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = scale * cd(g(rng), g(rng));
    return A;
}

inline Op random_selfadjoint(std::mt19937_64& rng, int n) {
    Op A = random_matrix(rng, n);
    return 0.5 * (A + A.adjoint()).eval();
}

// Random idempotent: conjugate of a 0/1 diagonal by a well-conditioned matrix.
inline Op random_idempotent(std::mt19937_64& rng, int n) {
    Op S = random_matrix(rng, n, 0.5) + 2.0 * Op::Identity(n, n);
    Op Dg = Op::Zero(n, n);
    std::uniform_int_distribution<int> bit(0, 1);
    bool any = false;
    for (int i = 0; i < n; ++i) {
        if (bit(rng)) {
            Dg(i, i) = 1.0;
            any = true;
        }
    }
    if (!any) Dg(0, 0) = 1.0;
    return S * Dg * S.inverse();
}

inline Op random_invertible(std::mt19937_64& rng, int n) {
    return random_matrix(rng, n, 0.5) + 3.0 * Op::Identity(n, n);
}

}  // namespace ncgtest

#endif
