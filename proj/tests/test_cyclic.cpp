#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/cyclic.hpp"
#include "test_util.hpp"

using namespace ncg;
using ncgtest::random_matrix;

namespace {

Chain random_chain(std::mt19937_64& rng, int degree, int dim, int nterms = 2) {
    std::vector<ChainTerm> terms;
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < nterms; ++t) {
        ChainTerm term;
        term.coeff = cd(g(rng), g(rng));
        for (int p = 0; p <= degree; ++p)
            term.factors.push_back(random_matrix(rng, dim));
        terms.push_back(std::move(term));
    }
    return make_chain(degree, std::move(terms));
}

double diff_norm(const Chain& a, const Chain& b) {
    return chain_norm(chain_add(a, chain_scale(b, -1.0)));
}

}  // namespace

TEST_CASE("b on a degree-1 elementary tensor is the commutator") {
    std::mt19937_64 rng(1);
    Op A = random_matrix(rng, 2), B = random_matrix(rng, 2);
    Chain c = make_chain(1, {{cd(1.0), {A, B}}});
    Chain expect = make_chain(0, {{cd(1.0), {A * B}}, {cd(-1.0), {B * A}}});
    CHECK(diff_norm(chain_b(c), expect) < 1e-12);
}

TEST_CASE("b of degree 0 is an error") {
    std::mt19937_64 rng(2);
    Chain c = make_chain(0, {{cd(1.0), {random_matrix(rng, 2)}}});
    CHECK_THROWS_WITH_AS(chain_b(c), "no boundary in degree 0",
                         std::invalid_argument);
}

TEST_CASE("mixed factor dimensions are rejected") {
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(make_chain(1, {{cd(1.0), {random_matrix(rng, 2),
                                              random_matrix(rng, 3)}}}),
                    std::invalid_argument);
}

TEST_CASE("b squared vanishes on random degree-3 chains") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 5; ++rep) {
        Chain c = random_chain(rng, 3, 2);
        CHECK(chain_norm(chain_b(chain_b(c))) < 1e-12 * (1.0 + chain_norm(c)));
    }
}

TEST_CASE("b(E (x) E (x) E) matches the brute-force four-term expansion") {
    std::mt19937_64 rng(5);
    Op E = ncgtest::random_idempotent(rng, 2);
    Chain c = make_chain(2, {{cd(1.0), {E, E, E}}});
    // Independent oracle: expand the signed terms with explicit matrices.
    Op EE = E * E;
    Chain expect = make_chain(
        1, {{cd(1.0), {EE, E}}, {cd(-1.0), {E, EE}}, {cd(1.0), {EE, E}}});
    CHECK(diff_norm(chain_b(c), expect) < 1e-12);
}

TEST_CASE("B of a degree-0 chain inserts the unit") {
    std::mt19937_64 rng(6);
    Op A = random_matrix(rng, 3);
    Chain c = make_chain(0, {{cd(1.0), {A}}});
    Chain expect = make_chain(1, {{cd(1.0), {Op::Identity(3, 3), A}}});
    CHECK(diff_norm(chain_B(c), expect) < 1e-12);
}

TEST_CASE("B squared vanishes after normalization") {
    std::mt19937_64 rng(7);
    for (int deg = 0; deg <= 2; ++deg) {
        Chain c = random_chain(rng, deg, 2);
        Chain bb = chain_B(chain_B(c));
        CHECK(bb.terms.empty());
    }
}

TEST_CASE("bB + Bb vanishes on random degree-2 chains") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 5; ++rep) {
        Chain c = random_chain(rng, 2, 2);
        Chain anti = chain_add(chain_b(chain_B(c)), chain_B(chain_b(c)));
        CHECK(chain_norm(anti) < 1e-12 * (1.0 + chain_norm(c)));
    }
}

TEST_CASE("normalization is idempotent and kills scalar tails") {
    std::mt19937_64 rng(9);
    Op A = random_matrix(rng, 2);
    Chain c = make_chain(
        1, {{cd(1.0), {A, 2.5 * Op::Identity(2, 2)}}, {cd(1.0), {A, A}}});
    CHECK(c.terms.size() == 1);
    CHECK(diff_norm(c, normalize(c)) < 1e-14);
}

TEST_CASE("partial trace of a block-diagonal tensor sums the blocks") {
    std::mt19937_64 rng(10);
    Op A = random_matrix(rng, 2), B = random_matrix(rng, 2);
    Op big = Op::Zero(4, 4);
    big.topLeftCorner(2, 2) = A;
    big.bottomRightCorner(2, 2) = B;
    Chain c = make_chain(0, {{cd(1.0), {big}}});
    Chain expect = make_chain(0, {{cd(1.0), {A}}, {cd(1.0), {B}}});
    CHECK(diff_norm(partial_trace(c, 2), expect) < 1e-14);
}

TEST_CASE("flatten guard rejects huge tensors") {
    std::mt19937_64 rng(11);
    Chain c = random_chain(rng, 4, 8, 1);
    CHECK_THROWS_AS(flatten(c), std::invalid_argument);
}

TEST_CASE("trace_pair degree 0 with the unit cochain is the interior trace") {
    Model model{Manifold::S1, 8, 2};
    std::mt19937_64 rng(12);
    Op A = random_matrix(rng, 8);
    ASCochain one;
    one.model_id = Manifold::S1;
    one.degree = 0;
    one.terms = {{cd(1.0), {unit_function(Manifold::S1)}}};
    Chain c = make_chain(0, {{cd(1.0), {A}}});
    CHECK(std::abs(trace_pair(one, c, model) - interior_trace(A, model)) <
          1e-13);
}

TEST_CASE("trace_pair of commuting multiplications against I (x) I vanishes") {
    Model model{Manifold::S1, 16, 4};
    ASCochain phi = antisymmetrize(
        Manifold::S1, 1, {{cd(1.0), {s1_mode(1), s1_mode(2)}}});
    // I (x) I normalizes to the empty chain, and the pairing of the
    // antisymmetrized cochain with any scalar-tail chain vanishes anyway.
    Chain c = make_chain(
        1, {{cd(1.0), {Op::Identity(16, 16), Op::Identity(16, 16)}}});
    CHECK(c.terms.empty());
    CHECK(std::abs(trace_pair(phi, c, model)) == 0.0);
}

TEST_CASE("trace_pair matches direct matrix assembly on Toeplitz shifts") {
    Model model{Manifold::S1, 16, 4};
    ASCochain phi =
        antisymmetrize(Manifold::S1, 1, {{cd(1.0), {s1_mode(-1), s1_mode(1)}}});
    Op Tz = toeplitz(s1_mode(1), model);
    Op Tzb = toeplitz(s1_mode(-1), model);
    Chain c = make_chain(1, {{cd(1.0), {Tz, Tzb}}});
    // Direct assembly of the two antisymmetrized products.
    cd direct = 0.5 * (interior_trace(Tz * Tzb * Tzb * Tz, model) -
                       interior_trace(Tz * Tz * Tzb * Tzb, model));
    CHECK(std::abs(trace_pair(phi, c, model) - direct) < 1e-12);
}

TEST_CASE("trace_pair is linear in chain and cochain") {
    Model model{Manifold::S1, 12, 3};
    std::mt19937_64 rng(13);
    Chain c1 = random_chain(rng, 1, 12, 1), c2 = random_chain(rng, 1, 12, 1);
    ASCochain p1 =
        antisymmetrize(Manifold::S1, 1, {{cd(1.0), {s1_mode(-1), s1_mode(1)}}});
    ASCochain p2 =
        antisymmetrize(Manifold::S1, 1, {{cd(1.0), {s1_mode(0), s1_mode(2)}}});
    const cd a(0.7, -0.3), b(1.1, 0.4);
    Chain combo = chain_add(chain_scale(c1, a), chain_scale(c2, b));
    cd lhs = trace_pair(p1, combo, model);
    cd rhs = a * trace_pair(p1, c1, model) + b * trace_pair(p1, c2, model);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    ASCochain pc = p1;
    for (auto& t : pc.terms) t.coeff *= a;
    for (auto t : p2.terms) {
        t.coeff *= b;
        pc.terms.push_back(t);
    }
    cd lhs2 = trace_pair(pc, c1, model);
    cd rhs2 = a * trace_pair(p1, c1, model) + b * trace_pair(p2, c1, model);
    CHECK(std::abs(lhs2 - rhs2) < 1e-12 * (1.0 + std::abs(rhs2)));
}

TEST_CASE("coboundary compatibility: Tr_phi(b c) = Tr_{delta phi}(c)") {
    // Ops supported deep inside the interior window make the interior trace a
    // genuine trace on every participating product.
    Model model{Manifold::S1, 32, 8};
    std::mt19937_64 rng(14);
    ASCochain phi = antisymmetrize(
        Manifold::S1, 1,
        {{cd(1.0), {s1_mode(-2), s1_mode(2)}},
         {cd(0.5, 0.5), {s1_mode(1), s1_mode(-1)}}});
    ASCochain dphi = coboundary(phi);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<ChainTerm> terms;
        for (int t = 0; t < 2; ++t) {
            ChainTerm term;
            term.coeff = cd(1.0, 0.3 * t);
            for (int p = 0; p < 3; ++p) {
                Op A = Op::Zero(32, 32);
                A.block(4, 4, 8, 8) = random_matrix(rng, 8);
                term.factors.push_back(A);
            }
            terms.push_back(std::move(term));
        }
        Chain c = make_chain(2, std::move(terms));
        cd lhs = trace_pair(phi, chain_b(c), model);
        cd rhs = trace_pair(dphi, c, model);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("pair_mixed: empty family, unit against ch-degree-0, shift lift") {
    Model model{Manifold::S1, 8, 2};
    MixedChain m;
    m.parity = MixedChain::Parity::Even;
    Op E = Op::Zero(8, 8);
    E(0, 0) = 1.0;  // rank-1 projection
    m.insert(0, make_chain(0, {{cd(1.0), {E}}}));
    CHECK(std::abs(pair_mixed({}, m, model)) == 0.0);
    ASCochain one;
    one.model_id = Manifold::S1;
    one.degree = 0;
    one.terms = {{cd(1.0), {unit_function(Manifold::S1)}}};
    CHECK(std::abs(pair_mixed({one}, m, model) - cd(1.0)) < 1e-13);
}
