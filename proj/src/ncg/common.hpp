#ifndef NCG_COMMON_HPP
#define NCG_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncg {

using cd = std::complex<double>;
using Op = Eigen::MatrixXcd;

inline constexpr double PI = 3.14159265358979323846;
inline const cd TWO_PI_I = cd(0.0, 2.0 * PI);

enum class Manifold { S1, S3 };

inline std::string manifold_name(Manifold m) {
    return m == Manifold::S1 ? "S1" : "S3";
}

inline Manifold manifold_from_name(const std::string& s) {
    if (s == "S1") return Manifold::S1;
    if (s == "S3") return Manifold::S3;
    throw std::invalid_argument("unknown manifold: " + s);
}

// A point on the model manifold.  S1: x[0] = theta.  S3: Hopf coordinates
// (eta, xi1, xi2) with z1 = cos(eta) e^{i xi1}, z2 = sin(eta) e^{i xi2}.
struct Point {
    double x[3] = {0.0, 0.0, 0.0};
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace ncg

#endif
