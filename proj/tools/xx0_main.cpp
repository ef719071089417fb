// Command-line surface: phase diagrams, Tracy-Widom evaluation, convergence
// tables, Monte Carlo width statistics, and the validation suites, emitted
// as deterministic CSV or JSON.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xx0/chainoracle.hpp"
#include "xx0/nibmsim.hpp"
#include "xx0/partition.hpp"
#include "xx0/phase.hpp"
#include "xx0/tracywidom.hpp"
#include "xx0/validation.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace xx0;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel lvl = [] {
        const char* e = std::getenv("XX0_LOG");
        if (!e) return LogLevel::Quiet;
        const std::string s(e);
        if (s == "debug") return LogLevel::Debug;
        if (s == "info") return LogLevel::Info;
        return LogLevel::Quiet;
    }();
    return lvl;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[xx0] " << msg << "\n";
}

// round-trip-safe formatting: 17 significant digits
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Table {
    std::string units_comment;               // CSV '#' line describing axes
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // already formatted cells
};

void emit(const Table& t, const std::string& format,
          const std::string& out_path) {
    std::ostringstream os;
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : t.rows) {
            json obj;
            for (size_t c = 0; c < t.columns.size(); ++c) {
                const std::string& cell = row[c];
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                if (end && *end == '\0' && !cell.empty()) {
                    obj[t.columns[c]] = v;
                } else {
                    obj[t.columns[c]] = cell;
                }
            }
            arr.push_back(obj);
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "# " << t.units_comment << "\n";
        for (size_t c = 0; c < t.columns.size(); ++c)
            os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
        for (const auto& row : t.rows)
            for (size_t c = 0; c < row.size(); ++c)
                os << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << os.str();
    }
}

// order-preserving fan-out: rows are computed by a worker pool but stored at
// their own index, so output never depends on completion order
template <typename Fn>
std::vector<std::vector<std::string>> parallel_rows(std::int64_t n, int threads,
                                                    Fn&& fn) {
    std::vector<std::vector<std::string>> rows(n);
    const int requested =
        threads > 0 ? threads
                    : std::max(1u, std::thread::hardware_concurrency());
    const int nw = static_cast<int>(
        std::max<std::int64_t>(1, std::min<std::int64_t>(requested, n)));
    if (nw == 1) {
        for (std::int64_t i = 0; i < n; ++i) rows[i] = fn(i);
        return rows;
    }
    std::atomic<std::int64_t> next(0);
    std::vector<std::thread> pool;
    std::atomic<bool> failed(false);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    rows[i] = fn(i);
                } catch (...) {
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load())
        throw std::runtime_error("worker failure during grid evaluation");
    return rows;
}

const TWEvaluator& shared_ev() {
    static TWEvaluator ev;
    return ev;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// flat key=value config file ('#' comments, UTF-8); entries become
// "--key=value" tokens inserted right after the subcommand name, before the
// user's own flags, so explicit flags win under the take-last policy
std::vector<std::string> rebuild_args_with_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cfg_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            cfg_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (cfg_path.empty()) return args;
    std::ifstream f(cfg_path);
    if (!f) throw std::invalid_argument("cannot open config file " + cfg_path);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line has empty key: " + line);
        injected.push_back("--" + key + "=" + val);
    }
    // insert after the subcommand name (first non-flag token) when present,
    // otherwise at the front
    size_t at = 0;
    for (size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            at = i + 1;
            break;
        }
    }
    args.insert(args.begin() + at, injected.begin(), injected.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XX0 spin-chain partition functions, Tracy-Widom asymptotics, "
                 "and phase diagrams"};
    app.require_subcommand(1);
    app.fallthrough();  // common flags may follow the subcommand name
    // config entries are injected before user flags; last occurrence wins
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string out_path, format = "csv";
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", seed, "64-bit RNG seed (default 0)");
    app.add_option("--threads", threads,
                   "worker threads for grid commands (default: all cores)");

    // tw
    auto* c_tw = app.add_subcommand("tw", "Tracy-Widom CDF at a point");
    double tw_x = 0.0;
    std::string tw_method = "painleve";
    c_tw->add_option("--x", tw_x, "evaluation point")->required();
    c_tw->add_option("--method", tw_method, "painleve, fredholm, or tails")
        ->check(CLI::IsMember({"painleve", "fredholm", "tails"}));

    // phase-diagram
    auto* c_pd = app.add_subcommand("phase-diagram",
                                    "region/free-energy grid (gw or qp)");
    std::string pd_model = "gw";
    double pd_tau_min = 0.1, pd_tau_max = 3.0;
    double pd_n_min = 0.1, pd_n_max = 4.0;
    double pd_l_min = 0.5, pd_l_max = 3.5;
    int pd_tau_steps = 30, pd_n_steps = 30, pd_l_steps = 61, pd_nf_ref = 32;
    c_pd->add_option("--model", pd_model)->check(CLI::IsMember({"gw", "qp"}));
    c_pd->add_option("--tau-min", pd_tau_min);
    c_pd->add_option("--tau-max", pd_tau_max);
    c_pd->add_option("--tau-steps", pd_tau_steps);
    c_pd->add_option("--ninv-min", pd_n_min);
    c_pd->add_option("--ninv-max", pd_n_max);
    c_pd->add_option("--ninv-steps", pd_n_steps);
    c_pd->add_option("--lambda-min", pd_l_min);
    c_pd->add_option("--lambda-max", pd_l_max);
    c_pd->add_option("--lambda-steps", pd_l_steps);
    c_pd->add_option("--nf-ref", pd_nf_ref, "reference size for the QP scale");

    // ratio-convergence
    auto* c_rc = app.add_subcommand(
        "ratio-convergence", "constrained/unconstrained ratio vs Tracy-Widom");
    std::string rc_model = "gw", rc_sizes = "8,16,32";
    double rc_tau = 2.0, rc_x = 0.0;
    c_rc->add_option("--model", rc_model)->check(CLI::IsMember({"gw", "qp"}));
    c_rc->add_option("--tau", rc_tau, "tau = t/N_f (gw only)");
    c_rc->add_option("--x-target", rc_x, "target Tracy-Widom argument");
    c_rc->add_option("--sizes", rc_sizes, "comma-separated increasing N_f list");

    // mc-width
    auto* c_mc = app.add_subcommand("mc-width",
                                    "Monte Carlo width CDF vs exact formula");
    int mc_nf = 3;
    double mc_t = 3.0;
    std::int64_t mc_samples = 10000;
    std::string mc_ns = "3,4,5,6,7";
    c_mc->add_option("--nf", mc_nf, "number of walkers");
    c_mc->add_option("--t", mc_t, "bridge time span");
    c_mc->add_option("--samples", mc_samples, "accepted samples (>= 1000)");
    c_mc->add_option("--n-values", mc_ns, "comma-separated width thresholds");

    // oracle-check
    auto* c_oc = app.add_subcommand(
        "oracle-check", "determinant vs exact chain evolution table");
    int oc_n = 24;
    std::string oc_nfs = "1,2,3", oc_ts = "0.5,1,2";
    c_oc->add_option("--n", oc_n, "chain length (periodic)");
    c_oc->add_option("--nf-list", oc_nfs);
    c_oc->add_option("--t-list", oc_ts);

    // free-energy
    auto* c_fe = app.add_subcommand("free-energy",
                                    "closed-form free energies at a point");
    std::string fe_model = "gw";
    double fe_tau = 0.5, fe_ninv = 1.0, fe_lambda = 2.0;
    int fe_nf_ref = 32;
    c_fe->add_option("--model", fe_model)->check(CLI::IsMember({"gw", "qp"}));
    c_fe->add_option("--tau", fe_tau);
    c_fe->add_option("--n-inv", fe_ninv);
    c_fe->add_option("--lambda", fe_lambda);
    c_fe->add_option("--nf-ref", fe_nf_ref);

    // validate
    auto* c_va = app.add_subcommand("validate", "run a validation suite");
    std::string va_suite = "all";
    c_va->add_option("--suite", va_suite)
        ->check(CLI::IsMember({"oracle", "mc", "tw", "all"}));

    try {
        std::vector<std::string> args = rebuild_args_with_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes a stack
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_tw) {
            log_info("tw x=" + fmt(tw_x) + " method=" + tw_method);
            double f, acc;
            if (tw_method == "fredholm") {
                f = tw_cdf_fredholm(tw_x);
                acc = 1e-8;
            } else if (tw_method == "tails") {
                f = tw_x >= 0 ? tw_right_tail(tw_x)
                              : tw_left_tail(tw_x, shared_ev().tails());
                acc = 1e-2;
            } else {
                f = shared_ev().cdf(tw_x);
                acc = 1e-8;
            }
            Table t;
            t.units_comment = "x dimensionless; F cumulative probability";
            t.columns = {"x", "F", "method", "accuracy_estimate"};
            t.rows = {{fmt(tw_x), fmt(f), tw_method, fmt(acc)}};
            emit(t, format, out_path);
        } else if (*c_pd) {
            Table t;
            if (pd_model == "gw") {
                if (pd_tau_steps < 1 || pd_n_steps < 1 ||
                    pd_tau_max < pd_tau_min || pd_n_max < pd_n_min) {
                    std::cerr << "phase-diagram: empty grid\n";
                    return 2;
                }
                t.units_comment =
                    "tau = t/N_f; n_inv = N/N_f; free_energy per N_f^2; "
                    "wall_distance in (tau, n_inv) plane";
                t.columns = {"tau", "n_inv", "region", "free_energy",
                             "wall_distance"};
                const std::int64_t n =
                    static_cast<std::int64_t>(pd_tau_steps) * pd_n_steps;
                t.rows = parallel_rows(n, threads, [&](std::int64_t i) {
                    const int it = static_cast<int>(i / pd_n_steps);
                    const int in = static_cast<int>(i % pd_n_steps);
                    const double tau =
                        pd_tau_steps == 1
                            ? pd_tau_min
                            : pd_tau_min + (pd_tau_max - pd_tau_min) * it /
                                               (pd_tau_steps - 1);
                    const double ninv =
                        pd_n_steps == 1
                            ? pd_n_min
                            : pd_n_min +
                                  (pd_n_max - pd_n_min) * in / (pd_n_steps - 1);
                    const PhasePoint p = classify(tau, ninv);
                    return std::vector<std::string>{
                        fmt(tau), fmt(ninv), region_name(p.region),
                        fmt(p.free_energy), fmt(p.wall_distance)};
                });
            } else {
                if (pd_l_steps < 1 || pd_l_max < pd_l_min) {
                    std::cerr << "phase-diagram: empty grid\n";
                    return 2;
                }
                t.units_comment =
                    "lambda = N/sqrt(N_f); free_energy per N_f^2 at the "
                    "reference size; wall at lambda = 2";
                t.columns = {"lambda", "region", "free_energy",
                             "wall_distance"};
                t.rows = parallel_rows(pd_l_steps, threads, [&](std::int64_t i) {
                    const double lam =
                        pd_l_steps == 1
                            ? pd_l_min
                            : pd_l_min +
                                  (pd_l_max - pd_l_min) * i / (pd_l_steps - 1);
                    const PhasePoint p = classify_qp(lam, pd_nf_ref);
                    return std::vector<std::string>{
                        fmt(lam), region_name(p.region), fmt(p.free_energy),
                        fmt(p.wall_distance)};
                });
            }
            emit(t, format, out_path);
        } else if (*c_rc) {
            const std::vector<int> sizes = parse_int_list(rc_sizes);
            for (size_t i = 1; i < sizes.size(); ++i)
                if (sizes[i] <= sizes[i - 1]) {
                    std::cerr << "ratio-convergence: sizes must increase\n";
                    return 2;
                }
            Table t;
            t.units_comment =
                "per size: chain cutoff N realizing x_target; ratio = "
                "c Z_N / Z; F evaluated at the realized x";
            t.columns = {"n_f", "t", "N", "x", "ratio", "F_of_x", "abs_gap"};
            t.rows = parallel_rows(
                static_cast<std::int64_t>(sizes.size()), threads,
                [&](std::int64_t i) {
                    ModelParams p;
                    p.n_f = sizes[i];
                    if (rc_model == "gw") {
                        p.t = rc_tau * p.n_f;
                        const ScalingPair ms = mu_sigma(p.n_f, p.t);
                        p.N = static_cast<int>(
                            std::lround(ms.mu + rc_x * ms.sigma));
                    } else {
                        p.t = 0.0;
                        const double rnf = p.n_f;
                        p.N = static_cast<int>(std::lround(
                            2 * std::sqrt(rnf) +
                            rc_x / (std::pow(2.0, 2.0 / 3.0) *
                                    std::pow(rnf, 1.0 / 6.0))));
                    }
                    const RatioReport r = ratio_to_tw(
                        p, rc_model == "gw" ? Model::GW : Model::QP,
                        shared_ev());
                    return std::vector<std::string>{
                        fmt(p.n_f), fmt(p.t),      fmt(p.N),       fmt(r.x),
                        fmt(r.ratio), fmt(r.f_of_x), fmt(r.abs_gap)};
                });
            emit(t, format, out_path);
        } else if (*c_mc) {
            const std::vector<int> ns = parse_int_list(mc_ns);
            log_info("mc-width sampling " + std::to_string(mc_samples) +
                     " ensembles");
            Rng rng(seed);
            const auto est = empirical_width_cdf(mc_nf, mc_t, ns, mc_samples, rng);
            Table t;
            t.units_comment =
                "p_hat = empirical P(width < N); se binomial; p_exact from "
                "the contour determinant formula";
            t.columns = {"N", "p_hat", "se", "p_exact", "deviation"};
            for (const WidthEstimate& e : est) {
                const double exact = width_probability_exact(mc_nf, mc_t, e.N);
                t.rows.push_back({fmt(e.N), fmt(e.p_hat), fmt(e.se), fmt(exact),
                                  fmt(std::abs(e.p_hat - exact))});
            }
            emit(t, format, out_path);
        } else if (*c_oc) {
            const std::vector<int> nfs = parse_int_list(oc_nfs);
            const std::vector<double> ts = parse_double_list(oc_ts);
            Table t;
            t.units_comment =
                "chain = exact sector evolution on the periodic ring; det = "
                "Toeplitz determinant (infinite-chain formula)";
            t.columns = {"N", "n_f", "t", "chain", "det", "gap"};
            const std::int64_t n =
                static_cast<std::int64_t>(nfs.size()) * ts.size();
            t.rows = parallel_rows(n, threads, [&](std::int64_t i) {
                ModelParams p;
                p.N = oc_n;
                p.n_f = nfs[i / ts.size()];
                p.t = ts[i % ts.size()];
                const double chain = evolve_partition_exact(p, true);
                const double det = std::exp(partition_gw_infinite(p).log_abs);
                return std::vector<std::string>{
                    fmt(p.N), fmt(p.n_f), fmt(p.t), fmt(chain), fmt(det),
                    fmt(std::abs(chain - det))};
            });
            emit(t, format, out_path);
        } else if (*c_fe) {
            Table t;
            if (fe_model == "gw") {
                t.units_comment =
                    "free energies per N_f^2; infinite = unconstrained, "
                    "finite = with the N/N_f wall correction";
                t.columns = {"tau", "n_inv", "region", "f_infinite",
                             "f_finite"};
                const PhasePoint p = classify(fe_tau, fe_ninv);
                t.rows = {{fmt(fe_tau), fmt(fe_ninv), region_name(p.region),
                           fmt(free_energy_gw_infinite(fe_tau)),
                           fmt(free_energy_gw_finite(fe_tau, fe_ninv))}};
            } else {
                t.units_comment =
                    "free energy per N_f^2 at the reference size; wall at "
                    "lambda = 2";
                t.columns = {"lambda", "region", "f_finite"};
                const PhasePoint p = classify_qp(fe_lambda, fe_nf_ref);
                t.rows = {{fmt(fe_lambda), region_name(p.region),
                           fmt(free_energy_qp_finite(fe_lambda, fe_nf_ref))}};
            }
            emit(t, format, out_path);
        } else if (*c_va) {
            log_info("validate suite=" + va_suite);
            const json rep = validation_report(va_suite, seed);
            std::ostringstream os;
            os << rep.dump(2) << "\n";
            if (out_path.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + out_path);
                f << os.str();
            }
            return rep["all_passed"].get<bool>() ? 0 : 1;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
