#include "ncg/aspanier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ncg/models.hpp"
#include "ncg/quadrature.hpp"

namespace ncg {

int FunctionRep::bandwidth() const {
    int bw = 0;
    if (model_id == Manifold::S1) {
        for (const auto& [k, c] : s1_modes)
            if (c != cd(0.0)) bw = std::max(bw, std::abs(k));
    } else {
        for (const auto& [e, c] : s3_monos)
            if (c != cd(0.0)) bw = std::max(bw, e[0] + e[1] + e[2] + e[3]);
    }
    return bw;
}

bool FunctionRep::is_zero(double tol) const {
    if (model_id == Manifold::S1) {
        for (const auto& [k, c] : s1_modes)
            if (std::abs(c) > tol) return false;
    } else {
        for (const auto& [e, c] : s3_monos)
            if (std::abs(c) > tol) return false;
    }
    return true;
}

bool FunctionRep::is_real(double tol) const {
    if (model_id == Manifold::S1) {
        for (const auto& [k, c] : s1_modes) {
            cd other = 0.0;
            auto it = s1_modes.find(-k);
            if (it != s1_modes.end()) other = it->second;
            if (std::abs(c - std::conj(other)) > tol) return false;
        }
        return true;
    }
    for (const auto& [e, c] : s3_monos) {
        std::array<int, 4> swapped = {e[2], e[3], e[0], e[1]};
        cd other = 0.0;
        auto it = s3_monos.find(swapped);
        if (it != s3_monos.end()) other = it->second;
        if (std::abs(c - std::conj(other)) > tol) return false;
    }
    return true;
}

cd FunctionRep::eval(const Point& p) const {
    cd v = 0.0;
    if (model_id == Manifold::S1) {
        for (const auto& [k, c] : s1_modes)
            v += c * std::exp(cd(0.0, k * p.x[0]));
    } else {
        const double eta = p.x[0], xi1 = p.x[1], xi2 = p.x[2];
        const double co = std::cos(eta), si = std::sin(eta);
        for (const auto& [e, c] : s3_monos) {
            double mag = std::pow(co, e[0] + e[2]) * std::pow(si, e[1] + e[3]);
            double ph = (e[0] - e[2]) * xi1 + (e[1] - e[3]) * xi2;
            v += c * mag * std::exp(cd(0.0, ph));
        }
    }
    return v;
}

FunctionRep& FunctionRep::operator*=(cd s) {
    for (auto& [k, c] : s1_modes) c *= s;
    for (auto& [e, c] : s3_monos) c *= s;
    return *this;
}

FunctionRep& FunctionRep::operator+=(const FunctionRep& other) {
    require(model_id == other.model_id, "FunctionRep: model mismatch in +=");
    for (const auto& [k, c] : other.s1_modes) s1_modes[k] += c;
    for (const auto& [e, c] : other.s3_monos) s3_monos[e] += c;
    return *this;
}

FunctionRep s1_mode(int k, cd coeff) {
    FunctionRep f;
    f.model_id = Manifold::S1;
    f.s1_modes[k] = coeff;
    return f;
}

FunctionRep s3_monomial(int a1, int a2, int b1, int b2, cd coeff) {
    FunctionRep f;
    f.model_id = Manifold::S3;
    f.s3_monos[{a1, a2, b1, b2}] = coeff;
    return f;
}

FunctionRep unit_function(Manifold m) {
    return m == Manifold::S1 ? s1_mode(0) : s3_monomial(0, 0, 0, 0);
}

cd ASCochain::eval(const std::vector<Point>& pts) const {
    require(static_cast<int>(pts.size()) == degree + 1,
            "ASCochain::eval: wrong number of points");
    cd total = 0.0;
    for (const auto& term : terms) {
        cd prod = term.coeff;
        for (int i = 0; i <= degree; ++i) prod *= term.tuple[i].eval(pts[i]);
        total += prod;
    }
    return total;
}

int ASCochain::max_bandwidth() const {
    int bw = 0;
    for (const auto& term : terms)
        for (const auto& f : term.tuple) bw = std::max(bw, f.bandwidth());
    return bw;
}

namespace {

int permutation_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

ASCochain antisymmetrize(Manifold m, int degree,
                         const std::vector<ASTerm>& raw) {
    require(degree + 1 <= 8, "antisymmetrization size cap: q+1 > 8");
    ASCochain out;
    out.model_id = m;
    out.degree = degree;
    const int n = degree + 1;
    std::vector<int> perm(n);
    for (const auto& term : raw) {
        require(static_cast<int>(term.tuple.size()) == n,
                "antisymmetrize: tuple size != degree+1");
        for (int i = 0; i < n; ++i) perm[i] = i;
        const cd scale = term.coeff / factorial_d(n);
        do {
            ASTerm t;
            t.coeff = scale * static_cast<double>(permutation_sign(perm));
            t.tuple.reserve(n);
            for (int i = 0; i < n; ++i) t.tuple.push_back(term.tuple[perm[i]]);
            out.terms.push_back(std::move(t));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

ASCochain coboundary(const ASCochain& phi) {
    ASCochain out;
    out.model_id = phi.model_id;
    out.degree = phi.degree + 1;
    const FunctionRep one = unit_function(phi.model_id);
    for (const auto& term : phi.terms) {
        for (int i = 0; i <= phi.degree + 1; ++i) {
            ASTerm t;
            t.coeff = term.coeff * ((i % 2 == 0) ? 1.0 : -1.0);
            t.tuple.reserve(phi.degree + 2);
            for (int j = 0; j < i; ++j) t.tuple.push_back(term.tuple[j]);
            t.tuple.push_back(one);
            for (int j = i; j <= phi.degree; ++j) t.tuple.push_back(term.tuple[j]);
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

// S1: trapezoid, exact for trigonometric polynomials.
cd lambda_s1(const ASCochain& phi) {
    int bw = 0;
    for (const auto& term : phi.terms)
        bw = std::max(bw, term.tuple[0].bandwidth() + term.tuple[1].bandwidth());
    const int P = 2 * bw + 5;
    cd total = 0.0;
    for (const auto& term : phi.terms) {
        // f1' by differentiating the Fourier series.
        FunctionRep d1 = term.tuple[1];
        for (auto& [k, c] : d1.s1_modes) c *= cd(0.0, k);
        cd acc = 0.0;
        for (int j = 0; j < P; ++j) {
            Point p;
            p.x[0] = 2.0 * PI * j / P;
            acc += term.tuple[0].eval(p) * d1.eval(p);
        }
        total += term.coeff * acc * (2.0 * PI / P);
    }
    return total;
}

// Monomial value and partial derivatives in Hopf coordinates.
struct MonoEval {
    cd value;
    cd d_eta, d_xi1, d_xi2;
};

MonoEval eval_mono(const std::array<int, 4>& e, double eta, double xi1,
                   double xi2) {
    const double co = std::cos(eta), si = std::sin(eta);
    const int h = e[0] + e[2], s = e[1] + e[3];
    double mag = std::pow(co, h) * std::pow(si, s);
    cd v = mag * std::exp(cd(0.0, (e[0] - e[2]) * xi1 + (e[1] - e[3]) * xi2));
    MonoEval out;
    out.value = v;
    // d/d eta of cos^h sin^s = (-h tan + s cot) * (cos^h sin^s); the tan/cot
    // coefficients only appear with h >= 1 / s >= 1, so no singularity.
    double deta = 0.0;
    if (h > 0) deta -= h * si / co;
    if (s > 0) deta += s * co / si;
    out.d_eta = deta * v;
    out.d_xi1 = cd(0.0, e[0] - e[2]) * v;
    out.d_xi2 = cd(0.0, e[1] - e[3]) * v;
    return out;
}

struct FuncEval {
    cd value;
    cd d[3];
};

FuncEval eval_s3(const FunctionRep& f, double eta, double xi1, double xi2) {
    FuncEval out{0.0, {0.0, 0.0, 0.0}};
    for (const auto& [e, c] : f.s3_monos) {
        MonoEval m = eval_mono(e, eta, xi1, xi2);
        out.value += c * m.value;
        out.d[0] += c * m.d_eta;
        out.d[1] += c * m.d_xi1;
        out.d[2] += c * m.d_xi2;
    }
    return out;
}

cd det3(const cd J[3][3]) {
    return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
           J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
           J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

// S3: Gauss-Legendre in eta, trapezoid in the two circle angles.  The chart
// order (eta, xi1, xi2) carries the opposite orientation to the boundary
// orientation of the unit ball in C^2 (checked against the Stokes value of
// int zbar1 dz1 ^ dzbar2 ^ dz2 = -2 pi^2), hence the overall minus sign.
cd lambda_s3(const ASCochain& phi) {
    int bw = phi.max_bandwidth();
    const int D = 4 * bw;
    const int nq = 24 + D;
    const int P = 2 * bw + 3;
    auto eta_nodes = gauss_legendre(nq, 0.0, PI / 2.0);
    cd total = 0.0;
    for (const auto& nd : eta_nodes) {
        for (int j1 = 0; j1 < P; ++j1) {
            const double xi1 = 2.0 * PI * j1 / P;
            for (int j2 = 0; j2 < P; ++j2) {
                const double xi2 = 2.0 * PI * j2 / P;
                cd cell = 0.0;
                for (const auto& term : phi.terms) {
                    FuncEval f0 =
                        eval_s3(term.tuple[0], nd.t, xi1, xi2);
                    cd J[3][3];
                    for (int r = 0; r < 3; ++r) {
                        FuncEval fr =
                            eval_s3(term.tuple[r + 1], nd.t, xi1, xi2);
                        J[r][0] = fr.d[0];
                        J[r][1] = fr.d[1];
                        J[r][2] = fr.d[2];
                    }
                    cell += term.coeff * f0.value * det3(J);
                }
                total += cell * nd.w * (2.0 * PI / P) * (2.0 * PI / P);
            }
        }
    }
    return -total;
}

}  // namespace

cd lambda_integral(const ASCochain& phi, const Model& model) {
    require(phi.model_id == model.manifold, "lambda_integral: model mismatch");
    const int top = model.manifold == Manifold::S1 ? 1 : 3;
    if (phi.degree != top) return 0.0;
    return model.manifold == Manifold::S1 ? lambda_s1(phi) : lambda_s3(phi);
}

bool is_top_cocycle(const ASCochain& phi, const Model& model) {
    require(phi.model_id == model.manifold, "is_top_cocycle: model mismatch");
    const int top = model.manifold == Manifold::S1 ? 1 : 3;
    if (phi.degree >= top) return true;
    ASCochain d = coboundary(phi);
    std::mt19937_64 rng(0xA5A5A5ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double maxd = 0.0, scale = 1.0;
    for (int s = 0; s < 200; ++s) {
        std::vector<Point> pts(d.degree + 1);
        for (auto& p : pts) {
            if (model.manifold == Manifold::S1) {
                p.x[0] = 2.0 * PI * u(rng);
            } else {
                p.x[0] = (PI / 2.0) * u(rng);
                p.x[1] = 2.0 * PI * u(rng);
                p.x[2] = 2.0 * PI * u(rng);
            }
        }
        maxd = std::max(maxd, std::abs(d.eval(pts)));
        std::vector<Point> sub(pts.begin(), pts.begin() + phi.degree + 1);
        scale = std::max(scale, std::abs(phi.eval(sub)));
    }
    return maxd <= 1e-10 * scale;
}

namespace {

using nlohmann::json;

json function_to_json(const FunctionRep& f) {
    json modes = json::object();
    if (f.model_id == Manifold::S1) {
        for (const auto& [k, c] : f.s1_modes)
            modes[std::to_string(k)] = {c.real(), c.imag()};
    } else {
        for (const auto& [e, c] : f.s3_monos) {
            std::ostringstream key;
            key << e[0] << ',' << e[1] << ',' << e[2] << ',' << e[3];
            modes[key.str()] = {c.real(), c.imag()};
        }
    }
    return json{{"modes", modes}};
}

FunctionRep function_from_json(const json& j, Manifold m) {
    FunctionRep f;
    f.model_id = m;
    for (const auto& [key, val] : j.at("modes").items()) {
        cd c(val.at(0).get<double>(), val.at(1).get<double>());
        if (m == Manifold::S1) {
            f.s1_modes[std::stoi(key)] = c;
        } else {
            std::array<int, 4> e{};
            std::istringstream ss(key);
            char comma;
            ss >> e[0] >> comma >> e[1] >> comma >> e[2] >> comma >> e[3];
            f.s3_monos[e] = c;
        }
    }
    return f;
}

}  // namespace

std::string cochain_to_json(const ASCochain& phi) {
    json terms = json::array();
    for (const auto& term : phi.terms) {
        json tuple = json::array();
        for (const auto& f : term.tuple) tuple.push_back(function_to_json(f));
        terms.push_back(json{{"coeff", {term.coeff.real(), term.coeff.imag()}},
                             {"tuple", tuple}});
    }
    json j{{"model", manifold_name(phi.model_id)},
           {"degree", phi.degree},
           {"terms", terms}};
    return j.dump();
}

ASCochain cochain_from_json(const std::string& text) {
    json j = json::parse(text);
    ASCochain phi;
    phi.model_id = manifold_from_name(j.at("model").get<std::string>());
    phi.degree = j.at("degree").get<int>();
    for (const auto& jt : j.at("terms")) {
        ASTerm term;
        term.coeff = cd(jt.at("coeff").at(0).get<double>(),
                        jt.at("coeff").at(1).get<double>());
        for (const auto& jf : jt.at("tuple"))
            term.tuple.push_back(function_from_json(jf, phi.model_id));
        require(static_cast<int>(term.tuple.size()) == phi.degree + 1,
                "cochain_from_json: tuple size != degree+1");
        phi.terms.push_back(std::move(term));
    }
    return phi;
}

}  // namespace ncg
