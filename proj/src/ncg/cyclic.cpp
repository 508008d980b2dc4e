#include "ncg/cyclic.hpp"

#include <cmath>
#include <functional>

namespace ncg {

namespace {
constexpr double kScalarTol = 1e-13;
constexpr long long kFlattenGuard = 40'000'000;  // entries
}  // namespace

int Chain::op_dim() const {
    return terms.empty() ? 0 : static_cast<int>(terms[0].factors[0].rows());
}

Chain normalize(const Chain& c) {
    Chain out;
    out.degree = c.degree;
    int dim = 0;
    for (const auto& term : c.terms) {
        require(static_cast<int>(term.factors.size()) == c.degree + 1,
                "Chain: term with wrong number of factors");
        if (term.coeff == cd(0.0)) continue;
        ChainTerm t;
        t.coeff = term.coeff;
        t.factors.reserve(term.factors.size());
        bool dead = false;
        for (size_t j = 0; j < term.factors.size(); ++j) {
            const Op& A = term.factors[j];
            require(A.rows() == A.cols(), "Chain: non-square factor");
            if (dim == 0) dim = static_cast<int>(A.rows());
            require(A.rows() == dim, "Chain: mixed factor dimensions");
            require(A.allFinite(), "Chain: non-finite factor entries");
            if (j == 0) {
                t.factors.push_back(A);
                continue;
            }
            // Quotient A/C: tail factors are projected to their traceless
            // part; a vanishing projection kills the term.
            Op traceless =
                A - (A.trace() / double(dim)) * Op::Identity(dim, dim);
            if (traceless.norm() <= kScalarTol * (1.0 + A.norm())) {
                dead = true;
                break;
            }
            t.factors.push_back(std::move(traceless));
        }
        if (!dead) out.terms.push_back(std::move(t));
    }
    return out;
}

Chain make_chain(int degree, std::vector<ChainTerm> terms) {
    Chain c;
    c.degree = degree;
    c.terms = std::move(terms);
    return normalize(c);
}

Chain chain_add(const Chain& a, const Chain& b) {
    if (a.terms.empty()) return b;
    if (b.terms.empty()) return a;
    require(a.degree == b.degree, "chain_add: degree mismatch");
    require(a.op_dim() == b.op_dim(), "chain_add: dimension mismatch");
    Chain out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

Chain chain_scale(const Chain& c, cd s) {
    Chain out = c;
    if (s == cd(0.0)) {
        out.terms.clear();
        return out;
    }
    for (auto& t : out.terms) t.coeff *= s;
    return out;
}

Chain chain_b(const Chain& c) {
    require(c.degree >= 1, "no boundary in degree 0");
    std::vector<ChainTerm> out;
    const int q = c.degree - 1;  // output degree
    for (const auto& term : c.terms) {
        const auto& A = term.factors;
        for (int j = 0; j <= q; ++j) {
            ChainTerm t;
            t.coeff = term.coeff * ((j % 2 == 0) ? 1.0 : -1.0);
            for (int p = 0; p < j; ++p) t.factors.push_back(A[p]);
            t.factors.push_back(A[j] * A[j + 1]);
            for (int p = j + 2; p <= c.degree; ++p) t.factors.push_back(A[p]);
            out.push_back(std::move(t));
        }
        ChainTerm last;
        last.coeff = term.coeff * ((c.degree % 2 == 0) ? 1.0 : -1.0);
        last.factors.push_back(A[c.degree] * A[0]);
        for (int p = 1; p < c.degree; ++p) last.factors.push_back(A[p]);
        out.push_back(std::move(last));
    }
    return make_chain(q, std::move(out));
}

Chain chain_B(const Chain& c) {
    std::vector<ChainTerm> out;
    const int n = c.degree + 1;  // input factor count
    for (const auto& term : c.terms) {
        const int dim = static_cast<int>(term.factors[0].rows());
        const Op I = Op::Identity(dim, dim);
        for (int j = 0; j < n; ++j) {
            ChainTerm t;
            t.coeff = term.coeff * ((((n - 1) * j) % 2 == 0) ? 1.0 : -1.0);
            t.factors.push_back(I);
            for (int p = 0; p < n; ++p)
                t.factors.push_back(term.factors[(j + p) % n]);
            out.push_back(std::move(t));
        }
    }
    return make_chain(c.degree + 1, std::move(out));
}

Eigen::VectorXcd flatten(const Chain& c) {
    const int dim = c.op_dim();
    if (dim == 0) return Eigen::VectorXcd::Zero(1);
    long long size = 1;
    for (int p = 0; p <= c.degree; ++p) {
        size *= static_cast<long long>(dim) * dim;
        require(size <= kFlattenGuard, "flatten: tensor dimension guard exceeded");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
    for (const auto& term : c.terms) {
        Eigen::VectorXcd v(1);
        v(0) = term.coeff;
        for (const auto& A : term.factors) {
            Eigen::VectorXcd f =
                Eigen::Map<const Eigen::VectorXcd>(A.data(), A.size());
            Eigen::VectorXcd next(v.size() * f.size());
            for (Eigen::Index i = 0; i < v.size(); ++i)
                next.segment(i * f.size(), f.size()) = v(i) * f;
            v.swap(next);
        }
        out += v;
    }
    return out;
}

double chain_norm(const Chain& c) {
    if (c.terms.empty()) return 0.0;
    return flatten(c).norm();
}

Chain partial_trace(const Chain& c, int blocks) {
    require(blocks >= 1, "partial_trace: blocks must be >= 1");
    const int dim = c.op_dim();
    if (dim == 0) return c;
    require(dim % blocks == 0, "partial_trace: dimension not divisible");
    const int base = dim / blocks;
    std::vector<ChainTerm> out;
    const int n = c.degree + 1;
    for (const auto& term : c.terms) {
        // Nonzero-block masks let us skip index paths through zero blocks.
        std::vector<std::vector<bool>> live(n);
        for (int p = 0; p < n; ++p) {
            live[p].resize(blocks * blocks);
            for (int i = 0; i < blocks; ++i)
                for (int j = 0; j < blocks; ++j)
                    live[p][i * blocks + j] =
                        term.factors[p]
                            .block(i * base, j * base, base, base)
                            .norm() > 0.0;
        }
        std::vector<int> idx(n, 0);
        std::vector<Op> partial;
        // Depth-first over block index paths i0 -> i1 -> ... -> i0.
        std::function<void(int)> walk = [&](int p) {
            if (p == n) {
                if (!live[n - 1][idx[n - 1] * blocks + idx[0]]) return;
                ChainTerm t;
                t.coeff = term.coeff;
                t.factors = partial;
                t.factors.push_back(
                    term.factors[n - 1].block(idx[n - 1] * base, idx[0] * base,
                                              base, base));
                out.push_back(std::move(t));
                return;
            }
            for (int next = 0; next < blocks; ++next) {
                if (p > 0 && !live[p - 1][idx[p - 1] * blocks + next]) continue;
                idx[p] = next;
                if (p > 0)
                    partial.push_back(term.factors[p - 1].block(
                        idx[p - 1] * base, next * base, base, base));
                walk(p + 1);
                if (p > 0) partial.pop_back();
            }
        };
        walk(0);
    }
    return make_chain(c.degree, std::move(out));
}

void MixedChain::insert(int degree, Chain c) {
    require(c.degree == degree, "MixedChain::insert: degree mismatch");
    require((degree % 2 == 0) == (parity == Parity::Even),
            "MixedChain::insert: parity mismatch");
    auto it = components.find(degree);
    if (it == components.end())
        components.emplace(degree, std::move(c));
    else
        it->second = chain_add(it->second, c);
    cutoff = std::max(cutoff, degree);
}

MixedChain mixed_add(const MixedChain& a, const MixedChain& b) {
    require(a.parity == b.parity, "mixed_add: parity mismatch");
    MixedChain out = a;
    for (const auto& [d, c] : b.components) out.insert(d, c);
    out.cutoff = std::max(a.cutoff, b.cutoff);
    return out;
}

MixedChain mixed_scale(const MixedChain& m, cd s) {
    MixedChain out = m;
    for (auto& [d, c] : out.components) c = chain_scale(c, s);
    return out;
}

MixedChain mixed_bB(const MixedChain& m) {
    MixedChain out;
    out.parity = m.parity == MixedChain::Parity::Even
                     ? MixedChain::Parity::Odd
                     : MixedChain::Parity::Even;
    out.cutoff = m.cutoff + 1;
    for (const auto& [d, c] : m.components) {
        if (c.terms.empty()) continue;
        if (d >= 1) out.insert(d - 1, chain_b(c));
        out.insert(d + 1, chain_B(c));
    }
    return out;
}

double mixed_norm(const MixedChain& m, int max_degree) {
    double s = 0.0;
    for (const auto& [d, c] : m.components) {
        if (max_degree >= 0 && d > max_degree) continue;
        double nrm = chain_norm(c);
        s += nrm * nrm;
    }
    return std::sqrt(s);
}

double cocycle_residual(const MixedChain& m) {
    return mixed_norm(mixed_bB(m), m.cutoff - 1);
}

double ConeCocycle::residual() const {
    MixedChain d = mixed_bB(relative);
    MixedChain sum = mixed_add(d, absolute);
    return mixed_norm(sum, relative.cutoff - 1);
}

namespace {

// A * (I_m (x) T), blockwise.
Op amp_mult(const Op& A, const Op& T, int m) {
    if (m == 1) return A * T;
    const auto base = T.rows();
    Op out(A.rows(), A.cols());
    for (int bi = 0; bi < m; ++bi)
        for (int bj = 0; bj < m; ++bj)
            out.block(bi * base, bj * base, base, base) =
                A.block(bi * base, bj * base, base, base) * T;
    return out;
}

}  // namespace

cd trace_pair(const ASCochain& phi, const Chain& c, const Model& model) {
    require(phi.model_id == model.manifold, "trace_pair: model mismatch");
    require(phi.degree == c.degree, "trace_pair: degree mismatch");
    if (c.terms.empty() || phi.terms.empty()) return 0.0;
    const int dim = model_dim(model);
    require(c.op_dim() % dim == 0,
            "trace_pair: chain dimension is not a model multiple");
    const int m = c.op_dim() / dim;

    // Compression cache keyed by coefficient data.
    std::vector<std::pair<const FunctionRep*, Op>> cache;
    auto compress = [&](const FunctionRep& f) -> const Op& {
        for (auto& [g, T] : cache) {
            if (g->s1_modes == f.s1_modes && g->s3_monos == f.s3_monos)
                return T;
        }
        cache.emplace_back(&f, toeplitz(f, model));
        return cache.back().second;
    };

    cd total = 0.0;
    for (const auto& pt : phi.terms) {
        for (const auto& ct : c.terms) {
            Op P = ct.factors[0];
            P = amp_mult(P, compress(pt.tuple[0]), m);
            for (int j = 1; j <= c.degree; ++j) {
                P = P * ct.factors[j];
                P = amp_mult(P, compress(pt.tuple[j]), m);
            }
            total += pt.coeff * ct.coeff * interior_trace(P, model);
        }
    }
    return total;
}

cd pair_mixed(const std::vector<ASCochain>& phis, const MixedChain& m,
              const Model& model) {
    cd total = 0.0;
    for (const auto& phi : phis) {
        require((phi.degree % 2 == 0) ==
                    (m.parity == MixedChain::Parity::Even),
                "pair_mixed: cochain parity mismatch");
        auto it = m.components.find(phi.degree);
        if (it == m.components.end()) continue;
        total += trace_pair(phi, it->second, model);
    }
    return total;
}

}  // namespace ncg
