#include "ncg/models.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ncg {

int manifold_dim(Manifold m) { return m == Manifold::S1 ? 1 : 3; }

int model_dim(const Model& model) {
    require(model.N >= 1, "Model: N must be positive");
    require(model.pad >= 0 && model.N - model.pad >= 1,
            "Model: need N - pad >= 1");
    if (model.manifold == Manifold::S1) return model.N;
    return static_cast<int>(s3_basis(model.N).monomials.size());
}

namespace {
double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
}  // namespace

double s3_moment(int p, int pp, int r, int rr) {
    if (p != pp || r != rr) return 0.0;
    return factorial_d(p) * factorial_d(r) / factorial_d(p + r + 1);
}

const S3Basis& s3_basis(int N) {
    static std::map<int, S3Basis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    S3Basis b;
    for (int s = 0; s < N; ++s) {
        for (int a = 0; a <= s; ++a) {
            b.monomials.push_back({a, s - a});
            b.norms.push_back(std::sqrt(s3_moment(a, a, s - a, s - a)));
        }
    }
    return cache.emplace(N, std::move(b)).first->second;
}

Op toeplitz(const FunctionRep& f, const Model& model) {
    require(f.model_id == model.manifold, "toeplitz: function/model mismatch");
    require(f.bandwidth() <= model.N, "toeplitz: bandwidth exceeds truncation");
    const int dim = model_dim(model);
    Op T = Op::Zero(dim, dim);
    if (model.manifold == Manifold::S1) {
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) {
                auto it = f.s1_modes.find(m - n);
                if (it != f.s1_modes.end()) T(m, n) = it->second;
            }
        return T;
    }
    const S3Basis& basis = s3_basis(model.N);
    for (int i = 0; i < dim; ++i) {
        const auto [a, bb] = basis.monomials[i];
        for (int j = 0; j < dim; ++j) {
            const auto [ap, bp] = basis.monomials[j];
            cd entry = 0.0;
            for (const auto& [e, c] : f.s3_monos) {
                // <e_i, (z1^e0 z2^e1 zbar1^e2 zbar2^e3) e_j>
                entry += c * s3_moment(e[0] + ap, e[2] + a, e[1] + bp, e[3] + bb);
            }
            if (entry != cd(0.0))
                T(i, j) = entry / (basis.norms[i] * basis.norms[j]);
        }
    }
    return T;
}

const std::vector<int>& interior_indices(const Model& model) {
    static std::map<std::tuple<int, int, int>, std::vector<int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(static_cast<int>(model.manifold), model.N,
                               model.pad);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<int> idx;
    if (model.manifold == Manifold::S1) {
        for (int i = 0; i < model.N - model.pad; ++i) idx.push_back(i);
    } else {
        const S3Basis& basis = s3_basis(model.N);
        for (size_t i = 0; i < basis.monomials.size(); ++i) {
            const auto [a, b] = basis.monomials[i];
            if (a + b <= model.N - 1 - model.pad)
                idx.push_back(static_cast<int>(i));
        }
    }
    return cache.emplace(key, std::move(idx)).first->second;
}

cd interior_trace(const Op& A, const Model& model) {
    const int dim = model_dim(model);
    require(A.rows() == A.cols() && A.rows() % dim == 0,
            "interior_trace: dimension is not a multiple of the model dimension");
    const int blocks = static_cast<int>(A.rows()) / dim;
    const auto& idx = interior_indices(model);
    cd tr = 0.0;
    for (int b = 0; b < blocks; ++b)
        for (int i : idx) tr += A(b * dim + i, b * dim + i);
    return tr;
}

Op selfadjoint_toeplitz(const FunctionRep& f, const Model& model,
                        double shift) {
    require(f.is_real(), "selfadjoint_toeplitz: symbol must be real-valued");
    const int dim = model_dim(model);
    Op D = toeplitz(f, model) + shift * Op::Identity(dim, dim);
    Eigen::SelfAdjointEigenSolver<Op> es(D);
    const double gap = es.eigenvalues().cwiseAbs().minCoeff();
    if (gap < 1e-8)
        throw std::runtime_error(
            "selfadjoint_toeplitz: spectrally degenerate; adjust shift (gap " +
            std::to_string(gap) + ")");
    return D;
}

Op positive_spectral_projection(const Op& D) {
    require((D - D.adjoint()).norm() <= 1e-10 * (1.0 + D.norm()),
            "positive_spectral_projection: D not selfadjoint");
    Eigen::SelfAdjointEigenSolver<Op> es(D);
    const double gap = es.eigenvalues().cwiseAbs().minCoeff();
    if (gap < 1e-8)
        throw std::runtime_error(
            "positive_spectral_projection: spectral gap at 0 below 1e-8");
    Op P = Op::Zero(D.rows(), D.cols());
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.0)
            P += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    return P;
}

Op phase_operator(const Op& D) {
    Eigen::JacobiSVD<Op> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() < 1e-12)
        throw std::runtime_error("phase_operator: D is singular");
    return svd.matrixU() * svd.matrixV().adjoint();
}

LiftData heat_parametrix(const Op& D, double t) {
    require(t > 0.0, "heat_parametrix: t must be positive");
    Eigen::JacobiSVD<Op> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const int n = static_cast<int>(sigma.size());
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        const double x = t * t * sigma(i) * sigma(i);
        // (1 - e^{-x/2})/x with the removable singularity filled at x = 0.
        g(i) = x < 1e-8 ? 0.5 - x / 8.0 : (1.0 - std::exp(-0.5 * x)) / x;
    }
    const Op Q = t * svd.matrixV() * (g.array() * sigma.array()).matrix().asDiagonal() *
                 svd.matrixU().adjoint();
    return lift_symbol(t * D, Q);
}

Op limit_idempotent(const Op& D) {
    Eigen::JacobiSVD<Op> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const auto n = D.rows();
    Op H0 = Op::Zero(n, n), H1 = Op::Zero(n, n);
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma(i) <= 1e-10) {
            H0 += svd.matrixV().col(i) * svd.matrixV().col(i).adjoint();
            H1 += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
        }
    }
    const Op Z = Op::Zero(n, n);
    return block2(Op::Identity(n, n) - H1, Z, Z, H0);
}

}  // namespace ncg
