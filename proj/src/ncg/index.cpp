#include "ncg/index.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace prefactor {

namespace {
double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }
}  // namespace

double ch_even(int q) { return sign_pow(q) * factorial_d(2 * q) / factorial_d(q); }
double ch_odd(int q) { return sign_pow(q) * factorial_d(q); }
double odd_toeplitz(int q) { return ch_even(q); }
double even_invertible(int q) { return ch_odd(q); }

cd hh_odd_cochain(int q, cd kappa) {
    return kappa * factorial_d(q) / (std::pow(TWO_PI_I, q) * factorial_d(2 * q));
}

cd hh_even_cochain(int q, cd kappa) {
    return kappa * factorial_d(2 * q + 1) / (std::pow(TWO_PI_I, q) * factorial_d(q));
}

}  // namespace prefactor

int winding_number(const FunctionRep& f) {
    require(f.model_id == Manifold::S1, "winding_number: S1 symbols only");
    const int samples = 4096;
    double total = 0.0;
    Point p;
    p.x[0] = 0.0;
    cd prev = f.eval(p);
    for (int j = 1; j <= samples; ++j) {
        p.x[0] = 2.0 * PI * j / samples;
        cd cur = f.eval(p);
        require(std::abs(cur) > 1e-12, "winding_number: symbol vanishes on S1");
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * PI)));
}

IndexReport fredholm_index(const Op& D, const Op& Q, const Model& model) {
    const int dim = model_dim(model);
    require(D.rows() == dim && Q.rows() == dim,
            "fredholm_index: operators must match the model dimension");
    const Op I = Op::Identity(dim, dim);
    const Op S0 = I - Q * D;
    const Op S1 = I - D * Q;
    IndexReport rep;
    rep.method = "chi1";
    rep.model = model;
    rep.value = interior_trace(S0, model) - interior_trace(S1, model);
    // The defects must be localized away from the interior cut: the value has
    // to be stable when the window shrinks.
    Model wider = model;
    wider.pad = std::min(model.pad + 2, model.N - 1);
    const cd check =
        interior_trace(S0, wider) - interior_trace(S1, wider);
    if (std::abs(check - rep.value) > 1e-10)
        throw std::runtime_error(
            "fredholm_index: parametrix defects straddle the interior window "
            "(bandwidth too large for pad)");
    return rep;
}

IndexReport fredholm_index(const Op& D, const Op& Q, const Model& model,
                           const FunctionRep& symbol) {
    IndexReport rep = fredholm_index(D, Q, model);
    rep.set_oracle(cd(-winding_number(symbol), 0.0));
    return rep;
}

namespace {

// Tr_phi against the cone's absolute part plus Tr_{delta phi} against its
// relative (transgression) part.
cd pair_cone(const ConeCocycle& cone, const ASCochain& phi,
             const Model& model) {
    cd value = 0.0;
    auto abs_it = cone.absolute.components.find(phi.degree);
    if (abs_it != cone.absolute.components.end())
        value += trace_pair(phi, abs_it->second, model);
    const ASCochain dphi = coboundary(phi);
    auto rel_it = cone.relative.components.find(dphi.degree);
    if (rel_it != cone.relative.components.end())
        value += trace_pair(dphi, rel_it->second, model);
    return value;
}

}  // namespace

IndexReport ind_even(const Op& D, const Op& Q, const ASCochain& phi,
                     const Model& model, int cutoff) {
    require(phi.degree % 2 == 0, "ind_even: cochain degree must be even");
    IndexReport rep;
    rep.method = "hii";
    rep.model = model;
    const ConeCocycle cone = chr_odd(D, Q, cutoff);
    rep.value = pair_cone(cone, phi, model);
    if (phi.degree == 0) {
        // Degree-0 consistency with the Fredholm specialization.
        rep.companion = fredholm_index(D, Q, model).value;
    }
    return rep;
}

IndexReport ind_even_invertible(const Op& D, const ASCochain& phi,
                                const Model& model) {
    require(phi.degree % 2 == 0, "ind_even_invertible: even degree required");
    const int q = phi.degree / 2;
    const int dim = model_dim(model);
    require(D.rows() == dim, "ind_even_invertible: dimension mismatch");
    const Op Dinv = D.inverse();
    require((D * Dinv - Op::Identity(dim, dim)).norm() < 1e-8 * (1.0 + D.norm()),
            "ind_even_invertible: D is singular");
    const Op F = phase_operator(D);
    cd raw = 0.0, raw_phase = 0.0;
    for (const auto& term : phi.terms) {
        Op prod = Op::Identity(dim, dim);
        Op prod_phase = F;
        for (const auto& f : term.tuple) {
            const Op T = toeplitz(f, model);
            prod = prod * (T - Dinv * T * D);
            prod_phase = prod_phase * (F * T - T * F);
        }
        raw += term.coeff * interior_trace(prod, model);
        raw_phase += term.coeff * interior_trace(prod_phase, model);
    }
    IndexReport rep;
    rep.method = "hii2";
    rep.model = model;
    rep.value = prefactor::even_invertible(q) * raw;
    rep.companion = prefactor::even_invertible(q) * raw_phase;
    return rep;
}

IndexReport ind_odd_toeplitz(const Op& P, const ASCochain& phi,
                             const Model& model) {
    require(phi.degree % 2 == 1, "ind_odd_toeplitz: odd degree required");
    const int q = (phi.degree + 1) / 2;
    const int dim = model_dim(model);
    require(P.rows() == dim, "ind_odd_toeplitz: dimension mismatch");
    require((P * P - P).norm() <= 1e-10 * (1.0 + P.squaredNorm()) &&
                (P - P.adjoint()).norm() <= 1e-10 * (1.0 + P.norm()),
            "ind_odd_toeplitz: P is not an orthogonal projection");
    cd raw = 0.0;
    for (const auto& term : phi.terms) {
        Op prod = Op::Identity(dim, dim);
        for (const auto& f : term.tuple) prod = prod * (P * toeplitz(f, model) * P);
        raw += term.coeff * interior_trace(prod, model);
    }
    IndexReport rep;
    rep.method = "hiidem2";
    rep.model = model;
    rep.value = prefactor::odd_toeplitz(q) * raw;
    const bool full_hardy =
        (P - Op::Identity(dim, dim)).norm() <= 1e-12 * dim;
    if (full_hardy && phi.degree == manifold_dim(model.manifold)) {
        rep.set_oracle(prefactor::odd_toeplitz(q) *
                       cohomological_oracle(true, phi, model));
    }
    return rep;
}

IndexReport ind_odd_relative(const Op& P, const ASCochain& phi,
                             const Model& model, int cutoff) {
    require(phi.degree % 2 == 1, "ind_odd_relative: odd degree required");
    IndexReport rep;
    rep.method = "hiidem";
    rep.model = model;
    const ConeCocycle cone = chr_even(P, cutoff);
    rep.value = pair_cone(cone, phi, model);
    return rep;
}

IndexReport suspended_index_with_phase(const Op& D, const Op& F,
                                       const ASCochain& phi,
                                       const Model& model, int cutoff) {
    require(phi.degree % 2 == 1, "suspended_index: odd degree required");
    IndexReport rep;
    rep.method = "sind";
    rep.model = model;
    const MixedChain sch = suspended_chern(F, cutoff);
    auto it = sch.components.find(phi.degree);
    rep.value = it == sch.components.end()
                    ? cd(0.0)
                    : trace_pair(phi, it->second, model) / TWO_PI_I;
    const Op Pplus = positive_spectral_projection(D);
    rep.set_oracle(ind_odd_toeplitz(Pplus, phi, model).value);
    return rep;
}

IndexReport suspended_index(const Op& D, const ASCochain& phi,
                            const Model& model, int cutoff) {
    return suspended_index_with_phase(D, phase_operator(D), phi, model, cutoff);
}

Op multicommutator(const std::vector<Op>& ops) {
    const int k = static_cast<int>(ops.size());
    require(k >= 1 && k <= 8, "multicommutator: need 1 <= k <= 8");
    const auto n = ops[0].rows();
    for (const auto& A : ops)
        require(A.rows() == n && A.cols() == n,
                "multicommutator: dimension mismatch");
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    Op out = Op::Zero(n, n);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    do {
        int sign = 1;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Op prod = ops[perm[0]];
        for (int i = 1; i < k; ++i) prod = prod * ops[perm[i]];
        out += double(sign) * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out / kfact;
}

cd cohomological_oracle(bool odd, const ASCochain& phi, const Model& model) {
    const int top = manifold_dim(model.manifold);
    require(phi.degree == top, "oracle defined at top degree only");
    const cd lam = lambda_integral(phi, model);
    if (odd) {
        const int q = (phi.degree + 1) / 2;
        return prefactor::hh_odd_cochain(q, model.kappa()) * lam;
    }
    const int q = phi.degree / 2;
    return prefactor::hh_even_cochain(q, model.kappa()) * lam;
}

}  // namespace ncg
