#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mq/numerics.hpp"
#include "mq/oracle.hpp"
#include "mq/parity.hpp"
#include "mq/solver.hpp"
#include "mq/system.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOracleMismatch = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// shortest round-trip representation, locale-independent
std::string num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += "\"";
    return out;
}

std::string bitstring(std::uint64_t x, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i)
        if ((x >> i) & 1u)
            s[i] = '1';
    return s;
}

std::optional<std::uint64_t> parse_bitstring(const std::string& s, unsigned n) {
    if (s.size() != n)
        return std::nullopt;
    std::uint64_t x = 0;
    for (unsigned i = 0; i < n; ++i) {
        if (s[i] == '1')
            x |= 1ull << i;
        else if (s[i] != '0')
            return std::nullopt;
    }
    return x;
}

struct SolveConfig {
    std::string input;
    std::string mode;
    std::uint64_t seed = 0;
    double lambda = -1.0;
    double kappa0 = -1.0;
    std::uint64_t t = 0;
    unsigned r = 0;
    unsigned vv_c = 4;
    unsigned threads = 1;
    bool oracle_check = false;
    std::string format = "text";
    unsigned oracle_cap = mq::oracle::kDefaultCap;
};

mq::SolverParams make_params(const SolveConfig& cfg, unsigned n, unsigned d) {
    mq::SolverParams p = mq::SolverParams::defaults(n, d);
    if (cfg.lambda >= 0.0) {
        if (cfg.lambda <= 0.0 || cfg.lambda > 1.0)
            throw CLI::ValidationError("--lambda must lie in (0, 1]");
        p.lambda = cfg.lambda;
    }
    if (cfg.kappa0 >= 0.0) {
        if (cfg.kappa0 <= 0.0 || (d >= 2 && cfg.kappa0 > 1.0 / (2.0 * d - 1.0) + 1e-12))
            throw CLI::ValidationError("--kappa0 must lie in (0, 1/(2d-1)]");
        p.kappa0 = cfg.kappa0;
    }
    if (cfg.t) {
        if (cfg.t % 2 == 0 || cfg.t > 0xffff)
            throw CLI::ValidationError("--t must be odd and at most 65535");
        p.trials = static_cast<std::uint32_t>(cfg.t);
    }
    if (cfg.r)
        p.r = cfg.r;
    p.vv_c = cfg.vv_c;
    p.threads = std::max(1u, cfg.threads);
    return p;
}

std::string param_echo(const SolveConfig& cfg, const mq::PolySystem& sys,
                       const mq::SolverParams& p) {
    std::ostringstream ss;
    ss << "seed=" << cfg.seed << " n=" << sys.n() << " d=" << sys.d() << " m=" << sys.m()
       << " lambda=" << num(p.lambda) << " kappa0=" << num(p.kappa0)
       << " t=" << (p.trials ? p.trials : mq::default_trials(sys.n()))
       << " r=" << (p.r ? p.r : 2 * sys.n()) << " vv_c=" << p.vv_c;
    return ss.str();
}

std::string param_json(const SolveConfig& cfg, const mq::PolySystem& sys,
                       const mq::SolverParams& p) {
    std::ostringstream ss;
    ss << "\"input\":" << jstr(cfg.input) << ",\"n\":" << sys.n() << ",\"d\":" << sys.d()
       << ",\"m\":" << sys.m() << ",\"seed\":" << cfg.seed << ",\"lambda\":" << num(p.lambda)
       << ",\"kappa0\":" << num(p.kappa0)
       << ",\"t\":" << (p.trials ? p.trials : mq::default_trials(sys.n()))
       << ",\"r\":" << (p.r ? p.r : 2 * sys.n()) << ",\"vv_c\":" << p.vv_c;
    return ss.str();
}

int run_solve(const SolveConfig& cfg) {
    const std::string text = read_input(cfg.input);
    const mq::PolySystem sys = mq::parse_system(text);
    const mq::SolverParams params = make_params(cfg, sys.n(), sys.d());
    if (cfg.oracle_check && sys.n() > cfg.oracle_cap) {
        std::cerr << "error: --oracle-check requires n <= " << cfg.oracle_cap << "\n";
        return kExitUsage;
    }
    mq::Rng rng(cfg.seed);
    const bool ndjson = cfg.format == "ndjson";

    std::string result_text;
    std::string result_json;
    bool oracle_match = true;

    if (cfg.mode == "parity") {
        const bool p = mq::parity(sys, params, rng);
        result_text = "parity=" + std::string(p ? "1" : "0");
        result_json = "\"parity\":" + std::string(p ? "1" : "0");
        if (cfg.oracle_check)
            oracle_match = (p == mq::oracle::parity(sys, cfg.oracle_cap));
    } else if (cfg.mode == "decide") {
        const bool sat = mq::decide(sys, params, rng);
        result_text = sat ? "satisfiable" : "unsatisfiable";
        result_json = "\"satisfiable\":" + std::string(sat ? "true" : "false");
        if (cfg.oracle_check)
            oracle_match = (sat == !mq::oracle::solutions(sys, cfg.oracle_cap).empty());
    } else if (cfg.mode == "search") {
        const mq::SearchResult res = mq::search(sys, params, rng);
        const bool sat_oracle =
            cfg.oracle_check && !mq::oracle::solutions(sys, cfg.oracle_cap).empty();
        switch (res.status) {
        case mq::SearchResult::Status::found:
            result_text = "solution=" + bitstring(res.assignment, sys.n());
            result_json = "\"solution\":" + jstr(bitstring(res.assignment, sys.n()));
            if (cfg.oracle_check)
                oracle_match = sat_oracle && sys.is_solution(res.assignment);
            break;
        case mq::SearchResult::Status::no_solution:
            result_text = "no solution";
            result_json = "\"solution\":null";
            if (cfg.oracle_check)
                oracle_match = !sat_oracle;
            break;
        case mq::SearchResult::Status::retry_exhausted:
            result_text = "retry budget exhausted";
            result_json = "\"solution\":null,\"retry_exhausted\":true";
            if (cfg.oracle_check)
                oracle_match = false;
            break;
        }
    } else if (cfg.mode == "exhaust") {
        const std::vector<std::uint64_t> sols = mq::exhaust(sys, params, rng);
        result_text = "solutions=" + std::to_string(sols.size());
        for (std::uint64_t s : sols)
            result_text += "\n" + bitstring(s, sys.n());
        result_json = "\"solutions\":[";
        for (std::size_t i = 0; i < sols.size(); ++i) {
            if (i)
                result_json += ",";
            result_json += jstr(bitstring(sols[i], sys.n()));
        }
        result_json += "]";
        if (cfg.oracle_check)
            oracle_match = (sols == mq::oracle::solutions(sys, cfg.oracle_cap));
    } else {
        std::cerr << "error: unknown mode " << cfg.mode << "\n";
        return kExitUsage;
    }

    if (ndjson) {
        std::string line = "{\"cmd\":\"solve\",\"mode\":" + jstr(cfg.mode) + "," +
                           param_json(cfg, sys, params) + "," + result_json;
        if (cfg.oracle_check)
            line += std::string(",\"oracle\":") + (oracle_match ? "\"match\"" : "\"mismatch\"");
        line += "}";
        std::cout << line << "\n";
    } else {
        std::cout << "# " << param_echo(cfg, sys, params) << " mode=" << cfg.mode << "\n";
        std::cout << result_text << "\n";
        if (cfg.oracle_check)
            std::cout << (oracle_match ? "oracle=MATCH" : "oracle=MISMATCH") << "\n";
    }
    return oracle_match ? kExitOk : kExitOracleMismatch;
}

int run_gen(unsigned n, unsigned d, unsigned m, bool planted, std::uint64_t seed,
            const std::string& out_path) {
    if (d > n) {
        std::cerr << "error: d must not exceed n\n";
        return kExitUsage;
    }
    if (m > mq::wset_size(n, d)) {
        std::cerr << "error: m exceeds the number of degree-<=d monomials\n";
        return kExitUsage;
    }
    mq::Rng rng(seed);
    std::uint64_t planted_x = 0;
    mq::PolySystem sys =
        mq::random_system(n, d, m, rng, planted ? &planted_x : nullptr);
    std::string text = "# gen seed=" + std::to_string(seed) + " n=" + std::to_string(n) +
                       " d=" + std::to_string(d) + " m=" + std::to_string(m) +
                       " planted=" + (planted ? std::string("1") : std::string("0")) + "\n";
    text += mq::serialize_system(sys);
    if (out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        f << text;
    }
    return kExitOk;
}

int run_verify(const std::string& input, const std::string& assignment,
               const std::string& format) {
    const mq::PolySystem sys = mq::parse_system(read_input(input));
    const auto x = parse_bitstring(assignment, sys.n());
    if (!x) {
        std::cerr << "error: assignment must be a bitstring of length " << sys.n() << "\n";
        return kExitUsage;
    }
    const auto ev = sys.evaluate(*x);
    unsigned violated = 0;
    for (bool r : ev.residuals)
        violated += r ? 1 : 0;
    if (format == "ndjson") {
        std::cout << "{\"cmd\":\"verify\",\"input\":" << jstr(input)
                  << ",\"assignment\":" << jstr(assignment)
                  << ",\"solution\":" << (ev.is_solution ? "true" : "false")
                  << ",\"violated\":" << violated << "}\n";
    } else {
        if (ev.is_solution)
            std::cout << "solution\n";
        else
            std::cout << "not a solution (" << violated << " of " << sys.m()
                      << " equations violated)\n";
    }
    return kExitOk;
}

std::string plan_json(const std::vector<mq::LevelPlan>& plan) {
    std::string s = "[";
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const auto& lp = plan[i];
        if (i)
            s += ",";
        s += "{\"level\":" + std::to_string(lp.level) + ",\"n1\":" + std::to_string(lp.n1) +
             ",\"n2\":" + std::to_string(lp.n2) + ",\"ell\":" + std::to_string(lp.ell) +
             ",\"w\":" + std::to_string(lp.w) +
             ",\"brute\":" + (lp.brute ? "true" : "false") +
             ",\"nodes\":" + std::to_string(lp.nodes) +
             ",\"log2_wset\":" + num(lp.log2_outer_wset) + "}";
    }
    return s + "]";
}

std::string levels_json(const std::vector<mq::LevelStats>& levels) {
    std::string s = "[";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& ls = levels[i];
        if (i)
            s += ",";
        s += "{\"level\":" + std::to_string(ls.level) + ",\"nodes\":" + std::to_string(ls.nodes) +
             ",\"brute_nodes\":" + std::to_string(ls.brute_nodes) +
             ",\"wset_bits\":" + std::to_string(ls.outer_wset_bits) +
             ",\"sb_entries\":" + std::to_string(ls.scoreboard_entries) +
             ",\"xor_word_ops\":" + std::to_string(ls.transform_word_ops) +
             ",\"scatter_ops\":" + std::to_string(ls.scatter_ops) + "}";
    }
    return s + "]";
}

struct BenchConfig {
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::vector<double> lambdas;
    double kappa0 = -1.0;
    std::vector<std::uint64_t> ts;
    unsigned threads = 1;
    bool profile_only = false;
    bool timing = false;
    unsigned plan_n = 0;
    unsigned plan_d = 2;
};

int run_bench(const BenchConfig& cfg) {
    struct Item {
        std::string name;
        std::optional<mq::PolySystem> sys;
        unsigned n, d, m;
    };
    std::vector<Item> items;
    for (const auto& path : cfg.inputs) {
        mq::PolySystem sys = mq::parse_system(read_input(path));
        const unsigned n = sys.n(), d = sys.d(), m = sys.m();
        items.push_back(Item{path, std::move(sys), n, d, m});
    }
    if (cfg.plan_n) {
        items.push_back(Item{"plan:n=" + std::to_string(cfg.plan_n) +
                                 ",d=" + std::to_string(cfg.plan_d),
                             std::nullopt, cfg.plan_n, cfg.plan_d, 0});
    }
    if (items.empty()) {
        std::cerr << "error: bench needs at least one input file or --plan-n\n";
        return kExitUsage;
    }

    std::vector<double> lambdas = cfg.lambdas;
    std::vector<std::uint64_t> ts = cfg.ts.empty() ? std::vector<std::uint64_t>{0} : cfg.ts;
    for (const auto& item : items) {
        std::vector<double> ls =
            lambdas.empty() ? std::vector<double>{mq::SolverParams::defaults(item.n, item.d).lambda}
                            : lambdas;
        for (double lambda : ls) {
            for (std::uint64_t t : ts) {
                if (t && (t % 2 == 0 || t > 0xffff)) {
                    std::cerr << "error: --t must be odd and at most 65535\n";
                    return kExitUsage;
                }
                const double kappa0 =
                    cfg.kappa0 >= 0.0
                        ? cfg.kappa0
                        : (item.d >= 2 ? std::min(1.0 - mq::tau(item.d),
                                                  1.0 / (2.0 * item.d - 1.0))
                                       : 0.25);
                const unsigned n1 = static_cast<unsigned>(kappa0 * item.n);
                mq::EngineParams ep{lambda, static_cast<std::uint32_t>(t), cfg.threads};
                const auto plan = mq::plan_recursion(item.n, item.d, n1, item.n - n1, ep);

                std::string line = "{\"cmd\":\"bench\",\"instance\":" + jstr(item.name) +
                                   ",\"n\":" + std::to_string(item.n) +
                                   ",\"d\":" + std::to_string(item.d) +
                                   ",\"m\":" + std::to_string(item.m) +
                                   ",\"seed\":" + std::to_string(cfg.seed) +
                                   ",\"lambda\":" + num(lambda) +
                                   ",\"kappa0\":" + num(kappa0) + ",\"t\":" +
                                   std::to_string(t ? t : mq::default_trials(item.n)) +
                                   ",\"plan\":" + plan_json(plan);
                if (!cfg.profile_only && item.sys) {
                    mq::RecursionProfile profile;
                    const auto t0 = std::chrono::steady_clock::now();
                    const bool parity_bit =
                        mq::parity_count(*item.sys, kappa0, ep, mq::Rng(cfg.seed), &profile);
                    const auto t1 = std::chrono::steady_clock::now();
                    line += ",\"levels\":" + levels_json(profile.levels());
                    line += ",\"parity\":" + std::string(parity_bit ? "1" : "0");
                    if (cfg.timing) {
                        const double ms =
                            std::chrono::duration<double, std::milli>(t1 - t0).count();
                        line += ",\"wall_ms\":" + num(ms);
                    }
                }
                line += "}";
                std::cout << line << "\n";
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mq: solve, count and enumerate solutions of low-degree polynomial systems "
                 "over F2 via multiple parity-counting"};
    app.require_subcommand(1);

    // gen
    unsigned gen_n = 8, gen_d = 2, gen_m = 8;
    bool gen_planted = false;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "-";
    auto* gen = app.add_subcommand("gen", "generate a random .mq instance");
    gen->add_option("--n", gen_n, "variable count")->required();
    gen->add_option("--d", gen_d, "degree bound")->required();
    gen->add_option("--m", gen_m, "equation count")->required();
    gen->add_flag("--planted", gen_planted, "adjust constants so a planted assignment solves");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out,-o", gen_out, "output path (- for stdout)");

    // solve
    SolveConfig scfg;
    auto* solve = app.add_subcommand("solve", "solve an .mq instance");
    solve->add_option("input", scfg.input, "input .mq file (- for stdin)")->required();
    solve->add_option("--mode", scfg.mode, "parity|decide|search|exhaust")->required();
    solve->add_option("--seed", scfg.seed, "rng seed");
    solve->add_option("--lambda", scfg.lambda, "per-level shrink fraction");
    solve->add_option("--kappa0", scfg.kappa0, "top-level partition fraction");
    solve->add_option("--t", scfg.t, "odd scoreboard trial count (default 48n+1)");
    solve->add_option("--r", scfg.r, "exhaust iteration count (default 2n)");
    solve->add_option("--vv-c", scfg.vv_c, "decide trials per k = c*n");
    solve->add_option("--threads", scfg.threads, "worker cap (results are thread-invariant)");
    solve->add_flag("--oracle-check", scfg.oracle_check, "cross-check against the oracle");
    solve->add_option("--oracle-cap", scfg.oracle_cap, "oracle enumeration cap");
    solve->add_option("--format", scfg.format, "text|ndjson")
        ->check(CLI::IsMember({"text", "ndjson"}));

    // verify
    std::string verify_input, verify_assignment, verify_format = "text";
    auto* verify = app.add_subcommand("verify", "check an assignment against an instance");
    verify->add_option("input", verify_input, "input .mq file")->required();
    verify->add_option("assignment", verify_assignment, "bitstring, x1 first")->required();
    verify->add_option("--format", verify_format, "text|ndjson")
        ->check(CLI::IsMember({"text", "ndjson"}));

    // bench
    BenchConfig bcfg;
    auto* bench = app.add_subcommand("bench", "profile recursion level-by-level (ndjson)");
    bench->add_option("inputs", bcfg.inputs, "input .mq files");
    bench->add_option("--seed", bcfg.seed, "rng seed");
    bench->add_option("--lambda", bcfg.lambdas, "shrink fractions to sweep");
    bench->add_option("--kappa0", bcfg.kappa0, "top-level partition fraction");
    bench->add_option("--t", bcfg.ts, "trial counts to sweep (0 = default)");
    bench->add_option("--threads", bcfg.threads, "worker cap");
    bench->add_flag("--profile-only", bcfg.profile_only, "plan the schedule without running");
    bench->add_flag("--timing", bcfg.timing, "include wall_ms (breaks byte determinism)");
    bench->add_option("--plan-n", bcfg.plan_n, "plan for n variables without an instance");
    bench->add_option("--plan-d", bcfg.plan_d, "degree bound for --plan-n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_n, gen_d, gen_m, gen_planted, gen_seed, gen_out);
        if (solve->parsed())
            return run_solve(scfg);
        if (verify->parsed())
            return run_verify(verify_input, verify_assignment, verify_format);
        if (bench->parsed())
            return run_bench(bcfg);
    } catch (const mq::ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
