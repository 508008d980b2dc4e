// ncgrun: run a verification suite and emit report.json / report.csv.
//
// Exit codes: 0 all checks pass, 1 configuration error, 2 at least one
// check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <semaphore>
#include <string>
#include <vector>

#include "ncg/chern.hpp"
#include "ncg/index.hpp"

using namespace ncg;
using nlohmann::json;

namespace {

struct Row {
    std::string suite, check;
    cd value = 0.0, oracle = 0.0;
    double residual = 0.0, tolerance = 0.0;
    bool pass = false;

    void finish() {
        residual = std::abs(value - oracle);
        pass = residual <= tolerance;
    }
};

struct RunConfig {
    std::string name;
    std::string suite;
    Model model{Manifold::S1, 64, 16};
    uint64_t seed = 1;
    int jobs = 1;
    json params = json::object();
    json tolerances = json::object();

    double tol(const std::string& check, double fallback) const {
        if (tolerances.contains(check)) return tolerances.at(check).get<double>();
        if (tolerances.contains("default"))
            return tolerances.at("default").get<double>();
        return fallback;
    }
    int param(const std::string& key, int fallback) const {
        return params.contains(key) ? params.at(key).get<int>() : fallback;
    }
};

const std::vector<std::string> kSuites = {"identities", "fredholm",
                                          "helton-howe", "suspension",
                                          "heat", "sweep"};

using CheckFn = std::function<Row()>;

std::vector<Row> run_checks(const std::vector<std::pair<std::string, CheckFn>>& checks,
                            const std::string& suite, int jobs) {
    std::counting_semaphore<64> gate(std::max(1, std::min(jobs, 64)));
    std::vector<std::future<Row>> futures;
    futures.reserve(checks.size());
    for (const auto& [name, fn] : checks) {
        futures.push_back(std::async(std::launch::async,
                                     [&gate, name = name, fn = fn, suite]() {
                                         gate.acquire();
                                         Row r = fn();
                                         r.suite = suite;
                                         r.check = name;
                                         gate.release();
                                         return r;
                                     }));
    }
    std::vector<Row> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.check < b.check; });
    return rows;
}

Op random_matrix(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Op A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = cd(g(rng), g(rng));
    return A;
}

// Random real trigonometric polynomial of the given bandwidth.
FunctionRep random_real_symbol(std::mt19937_64& rng, int bandwidth) {
    std::normal_distribution<double> g(0.0, 1.0);
    FunctionRep f = s1_mode(0, cd(g(rng), 0.0));
    for (int k = 1; k <= bandwidth; ++k) {
        cd a(g(rng), g(rng));
        f += s1_mode(k, a);
        f += s1_mode(-k, std::conj(a));
    }
    return f;
}

// ---------------------------------------------------------------- suites

std::vector<Row> suite_identities(const RunConfig& cfg) {
    std::vector<std::pair<std::string, CheckFn>> checks;
    const uint64_t seed = cfg.seed;
    auto residual_row = [&cfg](double res, const std::string& check,
                               double fallback) {
        Row r;
        r.value = res;
        r.oracle = 0.0;
        r.tolerance = cfg.tol(check, fallback);
        r.finish();
        return r;
    };
    checks.emplace_back("b-squared", [seed, residual_row] {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<ChainTerm> terms(2);
            for (auto& t : terms) {
                t.coeff = cd(1.0, 0.5);
                for (int p = 0; p < 4; ++p)
                    t.factors.push_back(random_matrix(rng, 3));
            }
            Chain c = make_chain(3, std::move(terms));
            worst = std::max(worst, chain_norm(chain_b(chain_b(c))) /
                                        (1.0 + chain_norm(c)));
        }
        return residual_row(worst, "b-squared", 1e-12);
    });
    checks.emplace_back("B-squared", [seed, residual_row] {
        std::mt19937_64 rng(seed + 1);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<ChainTerm> terms(1);
            terms[0].coeff = 1.0;
            for (int p = 0; p < 3; ++p)
                terms[0].factors.push_back(random_matrix(rng, 2));
            Chain c = make_chain(2, std::move(terms));
            worst = std::max(worst, chain_norm(chain_B(chain_B(c))));
        }
        return residual_row(worst, "B-squared", 1e-12);
    });
    checks.emplace_back("anticommutator", [seed, residual_row] {
        std::mt19937_64 rng(seed + 2);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<ChainTerm> terms(2);
            for (auto& t : terms) {
                t.coeff = cd(0.3, -1.0);
                for (int p = 0; p < 3; ++p)
                    t.factors.push_back(random_matrix(rng, 2));
            }
            Chain c = make_chain(2, std::move(terms));
            Chain anti = chain_add(chain_b(chain_B(c)), chain_B(chain_b(c)));
            worst = std::max(worst,
                             chain_norm(anti) / (1.0 + chain_norm(c)));
        }
        return residual_row(worst, "anticommutator", 1e-12);
    });
    checks.emplace_back("ch-idempotent-cocycle", [seed, residual_row] {
        std::mt19937_64 rng(seed + 3);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            Op S = random_matrix(rng, 3) * 0.4 + 2.0 * Op::Identity(3, 3);
            Op Dg = Op::Zero(3, 3);
            Dg(0, 0) = 1.0;
            if (rep % 2) Dg(2, 2) = 1.0;
            Op E = S * Dg * S.inverse();
            MixedChain m = ch_idempotent(E, 4);
            worst = std::max(worst,
                             cocycle_residual(m) / (1.0 + mixed_norm(m)));
        }
        return residual_row(worst, "ch-idempotent-cocycle", 1e-10);
    });
    checks.emplace_back("ch-invertible-cocycle", [seed, residual_row] {
        std::mt19937_64 rng(seed + 4);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            Op U = random_matrix(rng, 3) * 0.4 + 3.0 * Op::Identity(3, 3);
            MixedChain m = ch_invertible(U, 3);
            worst = std::max(worst,
                             cocycle_residual(m) / (1.0 + mixed_norm(m)));
        }
        return residual_row(worst, "ch-invertible-cocycle", 1e-10);
    });
    checks.emplace_back("transgression-cone", [seed, residual_row] {
        std::mt19937_64 rng(seed + 5);
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            Op D = random_matrix(rng, 2) * 0.4 + 3.0 * Op::Identity(2, 2);
            ConeCocycle cone = chr_odd(D, D.inverse(), 3);
            worst = std::max(worst, cone.residual() /
                                        (1.0 + mixed_norm(cone.relative, 1)));
        }
        return residual_row(worst, "transgression-cone", 1e-7);
    });
    return run_checks(checks, "identities", cfg.jobs);
}

std::vector<Row> suite_fredholm(const RunConfig& cfg) {
    Model model = cfg.model;
    std::vector<std::pair<std::string, CheckFn>> checks;
    const int kmax = cfg.param("kmax", 3);
    for (int k = -kmax; k <= kmax; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "index-z%+d", k);
        checks.emplace_back(name, [k, model, &cfg, name = std::string(name)] {
            Row r;
            if (k == 0) {
                FunctionRep f = s1_mode(0, cd(2.0));
                f += s1_mode(1);
                Op D = toeplitz(f, model);
                IndexReport rep = fredholm_index(D, Op(D.inverse()), model, f);
                r.value = rep.value;
                r.oracle = *rep.oracle;
            } else {
                Op D = toeplitz(s1_mode(k), model);
                IndexReport rep =
                    fredholm_index(D, Op(D.adjoint()), model, s1_mode(k));
                r.value = rep.value;
                r.oracle = *rep.oracle;
            }
            r.tolerance = cfg.tol(name, 1e-10);
            r.finish();
            return r;
        });
    }
    return run_checks(checks, "fredholm", cfg.jobs);
}

std::vector<Row> suite_helton_howe(const RunConfig& cfg) {
    Model model = cfg.model;
    std::vector<std::pair<std::string, CheckFn>> checks;
    if (model.manifold == Manifold::S1) {
        const int pairs = cfg.param("pairs", 5);
        const int bandwidth = cfg.param("bandwidth", 4);
        for (int i = 0; i < pairs; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "commutator-trace-%02d", i);
            checks.emplace_back(
                name, [i, bandwidth, model, &cfg, name = std::string(name)] {
                    std::mt19937_64 rng(cfg.seed + 100 + i);
                    FunctionRep f0 = random_real_symbol(rng, bandwidth);
                    FunctionRep f1 = random_real_symbol(rng, bandwidth);
                    Op T0 = toeplitz(f0, model), T1 = toeplitz(f1, model);
                    Row r;
                    r.value = interior_trace(T0 * T1 - T1 * T0, model);
                    ASCochain raw;
                    raw.model_id = Manifold::S1;
                    raw.degree = 1;
                    raw.terms = {{cd(1.0), {f0, f1}}};
                    r.oracle = model.kappa() / TWO_PI_I *
                               lambda_integral(raw, model);
                    r.tolerance = cfg.tol(name, 1e-9);
                    r.finish();
                    return r;
                });
        }
        checks.emplace_back("odd-index-q1", [model, &cfg] {
            ASCochain phi = antisymmetrize(
                Manifold::S1, 1, {{cd(1.0), {s1_mode(-1), s1_mode(1)}}});
            const int dim = model_dim(model);
            IndexReport rep =
                ind_odd_toeplitz(Op(Op::Identity(dim, dim)), phi, model);
            Row r;
            r.value = rep.value;
            r.oracle = *rep.oracle;
            r.tolerance = cfg.tol("odd-index-q1", 1e-9);
            r.finish();
            return r;
        });
    } else {
        checks.emplace_back("odd-index-q2", [model, &cfg] {
            ASCochain phi = antisymmetrize(
                Manifold::S3, 3,
                {{cd(1.0),
                  {s3_monomial(0, 0, 1, 0), s3_monomial(1, 0, 0, 0),
                   s3_monomial(0, 0, 0, 1), s3_monomial(0, 1, 0, 0)}}});
            const int dim = model_dim(model);
            IndexReport rep =
                ind_odd_toeplitz(Op(Op::Identity(dim, dim)), phi, model);
            // Report the cochain-level trace identity (both sides of the
            // trace formula, before the index prefactor).
            Row r;
            r.value = rep.value / prefactor::odd_toeplitz(2);
            r.oracle = *rep.oracle / prefactor::odd_toeplitz(2);
            r.tolerance = cfg.tol("odd-index-q2", 1e-2);
            r.finish();
            return r;
        });
    }
    return run_checks(checks, "helton-howe", cfg.jobs);
}

std::vector<Row> suite_suspension(const RunConfig& cfg) {
    Model model = cfg.model;
    std::vector<std::pair<std::string, CheckFn>> checks;
    const int cases = cfg.param("cases", 3);
    for (int i = 0; i < cases; ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "suspended-vs-compressed-%02d", i);
        checks.emplace_back(name, [i, model, &cfg, name = std::string(name)] {
            std::mt19937_64 rng(cfg.seed + 200 + i);
            FunctionRep sym = random_real_symbol(rng, 2);
            Op D = selfadjoint_toeplitz(sym, model, 0.0);
            ASCochain g;
            g.model_id = Manifold::S1;
            g.degree = 0;
            g.terms = {{cd(1.0), {random_real_symbol(rng, 2)}}};
            IndexReport rep = suspended_index(D, coboundary(g), model, 3);
            Row r;
            r.value = rep.value;
            r.oracle = *rep.oracle;
            r.tolerance = cfg.tol(name, 1e-6);
            r.finish();
            return r;
        });
    }
    checks.emplace_back("sch-cocycle-residual", [model, &cfg] {
        std::mt19937_64 rng(cfg.seed + 250);
        Op S = random_matrix(rng, 3);
        Op F = 0.5 * (S + S.adjoint());
        MixedChain sch = suspended_chern(F, 3);
        Row r;
        r.value = cocycle_residual(sch) / (1.0 + mixed_norm(sch));
        r.oracle = 0.0;
        r.tolerance = cfg.tol("sch-cocycle-residual", 1e-8);
        r.finish();
        return r;
    });
    return run_checks(checks, "suspension", cfg.jobs);
}

std::vector<Row> suite_heat(const RunConfig& cfg) {
    Model model = cfg.model;
    std::vector<std::pair<std::string, CheckFn>> checks;
    const int dim = model_dim(model);
    for (int k = 1; k <= 3; ++k) {
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            char name[40];
            std::snprintf(name, sizeof name, "heat-index-k%d-t%.1f", k, t);
            checks.emplace_back(
                name, [k, t, dim, model, &cfg, name = std::string(name)] {
                    Op D = Op::Zero(dim, dim);
                    for (int i = 0; i + k < dim; ++i) D(i + k, i) = 1.0 + i;
                    LiftData L = heat_parametrix(D, t);
                    Row r;
                    r.value = fredholm_index(L.D, L.Q, model).value;
                    r.oracle = cd(-double(k));
                    r.tolerance = cfg.tol(name, 1e-8);
                    r.finish();
                    return r;
                });
        }
        char name[40];
        std::snprintf(name, sizeof name, "heat-limit-k%d", k);
        checks.emplace_back(name,
                            [k, dim, model, &cfg, name = std::string(name)] {
                                Op D = Op::Zero(dim, dim);
                                for (int i = 0; i + k < dim; ++i)
                                    D(i + k, i) = 1.0 + i;
                                Op E = limit_idempotent(D);
                                Op H1 = Op::Identity(dim, dim) -
                                        E.topLeftCorner(dim, dim);
                                Op H0 = E.bottomRightCorner(dim, dim);
                                Row r;
                                r.value = interior_trace(H0, model) -
                                          interior_trace(H1, model);
                                r.oracle = cd(-double(k));
                                r.tolerance = cfg.tol(name, 1e-6);
                                r.finish();
                                return r;
                            });
    }
    return run_checks(checks, "heat", cfg.jobs);
}

std::vector<Row> suite_sweep(const RunConfig& cfg) {
    std::vector<std::pair<std::string, CheckFn>> checks;
    for (int N : {16, 32, 64}) {
        Model model{Manifold::S1, N, N / 4, cfg.model.kappa_num,
                    cfg.model.kappa_den};
        char name[40];
        std::snprintf(name, sizeof name, "fredholm-N%03d", N);
        checks.emplace_back(name, [model, &cfg, name = std::string(name)] {
            Op D = toeplitz(s1_mode(1), model);
            IndexReport rep =
                fredholm_index(D, Op(D.adjoint()), model, s1_mode(1));
            Row r;
            r.value = rep.value;
            r.oracle = *rep.oracle;
            r.tolerance = cfg.tol(name, 1e-10);
            r.finish();
            return r;
        });
        std::snprintf(name, sizeof name, "odd-index-N%03d", N);
        checks.emplace_back(name, [model, &cfg, name = std::string(name)] {
            ASCochain phi = antisymmetrize(
                Manifold::S1, 1, {{cd(1.0), {s1_mode(-1), s1_mode(1)}}});
            IndexReport rep = ind_odd_toeplitz(
                Op(Op::Identity(model.N, model.N)), phi, model);
            Row r;
            r.value = rep.value;
            r.oracle = *rep.oracle;
            r.tolerance = cfg.tol(name, 1e-9);
            r.finish();
            return r;
        });
        std::snprintf(name, sizeof name, "suspended-N%03d", N);
        checks.emplace_back(name, [model, &cfg, name = std::string(name)] {
            std::mt19937_64 rng(cfg.seed + 300 + model.N);
            FunctionRep sym = random_real_symbol(rng, 2);
            Op D = selfadjoint_toeplitz(sym, model, 0.0);
            ASCochain g;
            g.model_id = Manifold::S1;
            g.degree = 0;
            g.terms = {{cd(1.0), {random_real_symbol(rng, 2)}}};
            IndexReport rep = suspended_index(D, coboundary(g), model, 3);
            Row r;
            r.value = rep.value;
            r.oracle = *rep.oracle;
            r.tolerance = cfg.tol(name, 1e-6);
            r.finish();
            return r;
        });
    }
    return run_checks(checks, "sweep", cfg.jobs);
}

// ---------------------------------------------------------------- report

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_reports(const RunConfig& cfg, const std::vector<Row>& rows,
                   const std::string& out_dir, bool to_stdout) {
    std::filesystem::create_directories(out_dir);
    // CSV
    std::ofstream csv(out_dir + "/report.csv");
    csv << "suite,check,value_re,value_im,oracle_re,oracle_im,residual,"
           "tolerance,pass\n";
    for (const auto& r : rows) {
        csv << r.suite << ',' << r.check << ',' << fmt17(r.value.real()) << ','
            << fmt17(r.value.imag()) << ',' << fmt17(r.oracle.real()) << ','
            << fmt17(r.oracle.imag()) << ',' << fmt17(r.residual) << ','
            << fmt17(r.tolerance) << ',' << (r.pass ? "true" : "false")
            << '\n';
    }
    // JSON
    json jrows = json::array();
    bool all_pass = true;
    for (const auto& r : rows) {
        all_pass = all_pass && r.pass;
        jrows.push_back({{"suite", r.suite},
                         {"check", r.check},
                         {"value", {r.value.real(), r.value.imag()}},
                         {"oracle", {r.oracle.real(), r.oracle.imag()}},
                         {"residual", r.residual},
                         {"tolerance", r.tolerance},
                         {"pass", r.pass}});
    }
    json report = {
        {"name", cfg.name},
        {"suite", cfg.suite},
        {"model",
         {{"manifold", manifold_name(cfg.model.manifold)},
          {"N", cfg.model.N},
          {"pad", cfg.model.pad},
          {"kappa", {cfg.model.kappa_num, cfg.model.kappa_den}}}},
        {"seed", cfg.seed},
        {"rows", jrows},
        {"all_pass", all_pass}};
    std::ofstream js(out_dir + "/report.json");
    js << report.dump(2) << '\n';
    if (to_stdout) std::printf("%s\n", report.dump(2).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-rank verification suites for Toeplitz index models"};
    std::string config_path, out_dir = ".", suite;
    bool list_suites = false, json_stdout = false;
    int64_t seed = -1;
    int jobs = 0;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--suite", suite, "suite to run (overrides config)");
    app.add_option("--out", out_dir, "output directory for reports");
    app.add_option("--seed", seed, "RNG seed (overrides config)");
    app.add_option("--jobs", jobs, "parallel checks (default: NCG_JOBS or 1)");
    app.add_flag("--json", json_stdout, "print the JSON report to stdout");
    app.add_flag("--list-suites", list_suites, "list suite names and exit");
    CLI11_PARSE(app, argc, argv);

    if (list_suites) {
        if (json_stdout) {
            std::printf("%s\n", json(kSuites).dump().c_str());
        } else {
            for (const auto& s : kSuites) std::printf("%s\n", s.c_str());
        }
        return 0;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open " + config_path);
            json j = json::parse(in);
            if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
            if (j.contains("suite"))
                cfg.suite = j.at("suite").get<std::string>();
            if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
            if (j.contains("params")) cfg.params = j.at("params");
            if (j.contains("tolerances")) cfg.tolerances = j.at("tolerances");
            if (j.contains("model")) {
                const json& m = j.at("model");
                if (m.contains("manifold"))
                    cfg.model.manifold =
                        manifold_from_name(m.at("manifold").get<std::string>());
                if (m.contains("N")) cfg.model.N = m.at("N").get<int>();
                if (m.contains("pad")) cfg.model.pad = m.at("pad").get<int>();
                if (m.contains("kappa")) {
                    cfg.model.kappa_num = m.at("kappa").at(0).get<int>();
                    cfg.model.kappa_den = m.at("kappa").at(1).get<int>();
                }
            }
        }
        if (!suite.empty()) cfg.suite = suite;
        if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
        if (jobs > 0) {
            cfg.jobs = jobs;
        } else if (const char* env = std::getenv("NCG_JOBS")) {
            cfg.jobs = std::max(1, std::atoi(env));
        }
        if (cfg.name.empty()) cfg.name = cfg.suite;
        if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) ==
            kSuites.end())
            throw std::runtime_error("unknown suite: '" + cfg.suite + "'");
        if (cfg.model.N < 2 || cfg.model.pad < 1 || cfg.model.pad >= cfg.model.N)
            throw std::runtime_error("invalid model geometry");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ncgrun: configuration error: %s\n", e.what());
        return 1;
    }

    std::vector<Row> rows;
    try {
        if (cfg.suite == "identities") rows = suite_identities(cfg);
        else if (cfg.suite == "fredholm") rows = suite_fredholm(cfg);
        else if (cfg.suite == "helton-howe") rows = suite_helton_howe(cfg);
        else if (cfg.suite == "suspension") rows = suite_suspension(cfg);
        else if (cfg.suite == "heat") rows = suite_heat(cfg);
        else rows = suite_sweep(cfg);
        write_reports(cfg, rows, out_dir, json_stdout);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ncgrun: %s\n", e.what());
        return 1;
    }
    for (const auto& r : rows)
        if (!r.pass) return 2;
    return 0;
}
