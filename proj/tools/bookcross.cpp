// bookcross: command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 budget exhausted (partial
// results are still written, flagged per cell).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bookcross/bookcross.hpp"
#include "bookcross/cache.hpp"

namespace bc = bookcross;
using bc::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Config {
    std::string cache_dir = ".bookcross-cache";
    std::string format = "pretty";
    std::string out;
    double time_budget = 600.0;
    std::int64_t node_budget = 0;  // 0 = unlimited
    double solver_tol = 1e-8;
    int threads = 1;
    bool no_timing = false;
};

// One table cell. `n` is a vertex count or a symbolic label
// ("limit", "quotient") for asymptotic quantities.
struct Cell {
    int k = 0;
    std::string n;
    std::optional<double> value;
    bool integral = false;
    std::string provenance;
    double runtime_s = 0.0;
    json extra = json::object();
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_value(const Cell& c, bool pretty) {
    if (!c.value) return "";
    char buf[64];
    if (c.integral)
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(*c.value)));
    else
        std::snprintf(buf, sizeof buf, pretty ? "%.4e" : "%.10g", *c.value);
    return buf;
}

class Output {
public:
    explicit Output(const Config& cfg) : cfg_(cfg) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out);
            if (!file_) throw bc::InputError("cannot open --out file " + cfg.out);
        }
    }
    std::ostream& os() { return cfg_.out.empty() ? std::cout : file_; }

    void table(const std::string& name, std::vector<Cell> cells) {
        std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.k < b.k; });
        if (cfg_.no_timing)
            for (auto& c : cells) c.runtime_s = 0.0;
        if (cfg_.format == "csv") {
            os() << "k,n,value,provenance,runtime_s\n";
            for (const auto& c : cells) {
                char rt[32];
                std::snprintf(rt, sizeof rt, "%.3f", c.runtime_s);
                os() << c.k << ',' << c.n << ',' << format_value(c, false) << ',' << c.provenance << ',' << rt << '\n';
            }
        } else if (cfg_.format == "json") {
            json arr = json::array();
            for (const auto& c : cells) {
                json j = {{"k", c.k}, {"n", c.n}, {"provenance", c.provenance}, {"runtime_s", c.runtime_s}};
                if (c.value)
                    j["value"] = c.integral ? json(std::llround(*c.value)) : json(*c.value);
                else
                    j["value"] = nullptr;
                for (auto it = c.extra.begin(); it != c.extra.end(); ++it) j[it.key()] = it.value();
                arr.push_back(j);
            }
            json doc = {{"table", name}, {"cells", arr}, {"metadata", {{"generated", bc::utc_timestamp()}}}};
            if (cfg_.no_timing) doc["metadata"]["generated"] = nullptr;
            os() << doc.dump(2) << '\n';
        } else {
            os() << name << '\n';
            char line[160];
            std::snprintf(line, sizeof line, "%4s  %-9s  %-14s  %-15s  %9s\n", "k", "n", "value", "provenance", "time[s]");
            os() << line;
            for (const auto& c : cells) {
                std::snprintf(line, sizeof line, "%4d  %-9s  %-14s  %-15s  %9.3f\n", c.k, c.n.c_str(),
                              format_value(c, true).c_str(), c.provenance.c_str(), c.runtime_s);
                os() << line;
            }
        }
    }

    void document(const json& j, const std::string& pretty) {
        if (cfg_.format == "json")
            os() << j.dump(2) << '\n';
        else
            os() << pretty;
    }

private:
    const Config& cfg_;
    std::ofstream file_;
};

bc::SearchBudget budget_of(const Config& cfg) {
    bc::SearchBudget b;
    if (cfg.time_budget > 0) b.max_seconds = cfg.time_budget;
    if (cfg.node_budget > 0) b.max_nodes = cfg.node_budget;
    return b;
}

// Runs independent work items on up to `threads` workers; results come
// back in input order.
template <class T>
std::vector<T> fan_out(int threads, std::vector<std::function<T()>> jobs) {
    std::vector<T> out;
    out.reserve(jobs.size());
    if (threads <= 1) {
        for (auto& j : jobs) out.push_back(j());
        return out;
    }
    std::size_t next = 0;
    while (next < jobs.size()) {
        std::vector<std::future<T>> batch;
        for (int t = 0; t < threads && next < jobs.size(); ++t, ++next)
            batch.push_back(std::async(std::launch::async, jobs[next]));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_graph(const Config& cfg, int n, bool edges) {
    const bc::ChordGraph g(n);
    Output out(cfg);
    json j = {{"n", n}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"orbits", g.num_orbits()}};
    std::ostringstream pretty;
    pretty << "G_" << n << ": " << g.num_vertices() << " vertices, " << g.num_edges() << " edges, "
           << g.num_orbits() << " chord-length classes\n";
    if (edges) {
        std::ostringstream el;
        bc::write_edge_list(g, el);
        pretty << el.str();
        json list = json::array();
        for (auto [u, v] : g.edges()) list.push_back({u, v});
        j["edge_list"] = list;
    }
    out.document(j, pretty.str());
    return 0;
}

int cmd_dds(const Config& cfg, int n, int k) {
    const auto dr = bc::dds_drawing(n, k);
    const auto crossings = bc::count_crossings(dr);
    const auto formula = bc::z_k(n, k);
    if (crossings != formula)
        throw bc::InvariantError("dds: drawing has " + std::to_string(crossings) + " crossings, formula gives " +
                                 std::to_string(formula));
    Output out(cfg);
    json j = {{"n", n}, {"k", k}, {"crossings", crossings}, {"drawing", bc::drawing_to_string(dr)}};
    out.document(j, bc::drawing_to_string(dr) + "crossings: " + std::to_string(crossings) + "\n");
    return 0;
}

int cmd_zk(const Config& cfg, int k, int n_max) {
    if (n_max < 1) throw bc::InputError("zk: --n-max must be >= 1");
    std::vector<Cell> cells;
    for (int n = 1; n <= n_max; ++n) {
        Cell c;
        c.k = k;
        c.n = std::to_string(n);
        c.value = static_cast<double>(bc::z_k(n, k));
        c.integral = true;
        c.provenance = "formula";
        cells.push_back(c);
    }
    Output(cfg).table("Z_" + std::to_string(k) + "(n)", cells);
    return 0;
}

int cmd_exact(const Config& cfg, int n, int k, const std::string& wcnf_out, const std::string& wcnf_mode) {
    if (!wcnf_out.empty()) {
        const bc::ChordGraph g(n);
        std::ofstream f(wcnf_out);
        if (!f) throw bc::InputError("cannot open " + wcnf_out);
        bc::emit_dimacs_wcnf(bc::encode_wcnf(g, k), f,
                             wcnf_mode == "literal" ? bc::WcnfMode::PaperLiteral : bc::WcnfMode::StrictTop);
    }
    const auto r = bc::nu_exact(n, k, budget_of(cfg));
    Output out(cfg);
    json j = bc::to_json(r);
    if (cfg.no_timing) j["seconds"] = 0.0;
    std::ostringstream pretty;
    pretty << "nu_" << k << "(K_" << n << ") " << (r.proved_optimal ? "= " : "<= ") << r.nu
           << (r.proved_optimal ? "" : "  (budget exhausted; upper bound only)") << "\n"
           << "max-" << k << "-cut(G_" << n << ") " << (r.proved_optimal ? "= " : ">= ") << r.cut_size << "\n"
           << "nodes: " << r.nodes_explored << "\n";
    if (cfg.format == "csv") {
        Cell c{k, std::to_string(n), static_cast<double>(r.nu), true, r.proved_optimal ? "exact" : "budget-exceeded",
               r.wall_seconds};
        out.table("exact", {c});
    } else {
        out.document(j, pretty.str());
    }
    return r.proved_optimal ? 0 : kExitBudget;
}

struct SdpOutcome {
    bc::CertifiedBound bound;
    bool from_cache = false;
    bool stored = false;
    double seconds = 0.0;
};

SdpOutcome certified_fj(const Config& cfg, int n, int k, bool dense, bool use_cache) {
    bc::BoundCache cache(bc::resolve_cache_dir(cfg.cache_dir));
    if (use_cache)
        if (auto hit = cache.find(n, k); hit && (!dense || hit->bound.method == "dense")) return {hit->bound, true, false, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    auto res = dense ? bc::fj_dense(bc::ChordGraph(n), k, cfg.solver_tol) : bc::fj_auto(n, k, cfg.solver_tol);
    SdpOutcome o;
    o.bound = bc::certify_bound(res);
    o.seconds = seconds_since(t0);
    o.stored = cache.store({o.bound, cfg.solver_tol, bc::utc_timestamp()});
    return o;
}

int cmd_sdp(const Config& cfg, int n, int k, bool dense) {
    const auto o = certified_fj(cfg, n, k, dense, false);
    const auto& b = o.bound;
    json j = bc::to_json(b);
    j["ratio"] = bc::fj_ratio(n, b.fj_value);
    j["cached"] = o.stored;
    j["seconds"] = cfg.no_timing ? 0.0 : o.seconds;
    std::ostringstream pretty;
    char line[256];
    std::snprintf(line, sizeof line,
                  "FJ_%d(G_%d) <= %.6f (%s, certified, margin %.2e)\nnu_%d(K_%d) >= %lld\nratio lower bound "
                  "%.5e\n%s\n",
                  k, n, b.fj_value, b.method.c_str(), b.certificate_feasibility_margin, k, n,
                  static_cast<long long>(b.nu_lower), bc::fj_ratio(n, b.fj_value),
                  o.stored ? "cache: stored" : "cache: kept existing (at least as strong)");
    pretty << line;
    Output(cfg).document(j, pretty.str());
    return 0;
}

int cmd_table1(const Config& cfg, int k_min, int k_max, int n_min, int n_max) {
    std::vector<std::function<Cell()>> jobs;
    for (int k = k_min; k <= k_max; ++k) {
        for (int n = n_min; n <= n_max; ++n) {
            jobs.push_back([=, &cfg] {
                const auto r = bc::nu_exact(n, k, budget_of(cfg));
                Cell c;
                c.k = k;
                c.n = std::to_string(n);
                c.integral = true;
                c.runtime_s = r.wall_seconds;
                if (r.proved_optimal) {
                    c.value = static_cast<double>(r.nu);
                    c.provenance = "exact";
                } else {
                    c.provenance = "budget-exceeded";
                    c.extra["upper_bound"] = r.nu;
                }
                return c;
            });
        }
    }
    const auto cells = fan_out<Cell>(cfg.threads, std::move(jobs));
    Output(cfg).table("Table 1: exact nu_k(K_n)", cells);
    for (const auto& c : cells)
        if (c.provenance == "budget-exceeded") return kExitBudget;
    return 0;
}

int cmd_table2(const Config& cfg, int k_min, int k_max, const std::vector<int>& ms) {
    std::vector<std::function<std::vector<Cell>()>> jobs;
    for (int k = k_min; k <= k_max; ++k) {
        jobs.push_back([=, &cfg] {
            std::vector<Cell> row;
            for (int m : ms) {
                const auto o = certified_fj(cfg, m, k, false, true);
                Cell c;
                c.k = k;
                c.n = std::to_string(m);
                c.value = bc::fj_ratio(m, o.bound.fj_value);
                c.provenance = "sdp-certified";
                c.runtime_s = o.seconds;
                c.extra["fj"] = o.bound.fj_value;
                c.extra["nu_lower"] = o.bound.nu_lower;
                c.extra["cached"] = o.from_cache;
                row.push_back(c);
            }
            Cell prior;
            prior.k = k;
            prior.n = "limit";
            prior.value = bc::to_double(bc::prior_lower_bound(k, 1).coefficient);
            prior.provenance = "prior-bound";
            row.push_back(prior);
            return row;
        });
    }
    std::vector<Cell> cells;
    for (auto& row : fan_out<std::vector<Cell>>(cfg.threads, std::move(jobs)))
        cells.insert(cells.end(), row.begin(), row.end());
    Output(cfg).table("Table 2: lower bounds on nu_k(K_n)/C(n,4) for n > m", cells);
    return 0;
}

int cmd_table3(const Config& cfg, int k_min, int k_max, int m, bool solve) {
    std::map<int, double> fj;
    std::map<int, double> secs;
    bc::BoundCache cache(bc::resolve_cache_dir(cfg.cache_dir));
    for (int k = k_min; k <= k_max; ++k) {
        if (auto hit = cache.find(m, k)) {
            fj[k] = hit->bound.fj_value;
        } else if (solve) {
            const auto o = certified_fj(cfg, m, k, false, true);
            fj[k] = o.bound.fj_value;
            secs[k] = o.seconds;
        }
    }
    const auto rows = bc::limit_table(k_min, k_max, m, fj);
    std::vector<Cell> cells;
    bool gaps = false;
    for (const auto& r : rows) {
        cells.push_back({r.k, "limit", r.prior_lower, false, "prior-bound", 0.0, json::object()});
        Cell lo{r.k, "limit", r.fj_lower, false, "lifted", secs.count(r.k) ? secs[r.k] : 0.0, {{"m", m}}};
        if (!r.fj_lower) {
            lo.extra["missing"] = "no certified FJ value at m; rerun with --solve";
            gaps = true;
        }
        cells.push_back(lo);
        cells.push_back({r.k, "limit", r.dds_upper, false, "formula", 0.0, json::object()});
        cells.push_back({r.k, "quotient", r.quotient, false, "formula", 0.0, json::object()});
    }
    Output(cfg).table("Table 3: bounds on lim nu_k(K_n)/C(n,4) (prior lower, lifted lower at m=" +
                          std::to_string(m) + ", DDS upper, quotient)",
                      cells);
    if (gaps) std::cerr << "note: some FJ values at m=" << m << " are missing (gaps flagged)\n";
    return 0;
}

int cmd_cache_list(const Config& cfg) {
    bc::BoundCache cache(bc::resolve_cache_dir(cfg.cache_dir));
    std::vector<Cell> cells;
    for (const auto& r : cache.records()) {
        Cell c{r.bound.k, std::to_string(r.bound.n), static_cast<double>(r.bound.nu_lower), true, "sdp-certified", 0.0,
               bc::to_json(r)};
        cells.push_back(c);
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.k != b.k ? a.k < b.k : std::stoi(a.n) < std::stoi(b.n);
    });
    Output(cfg).table("bound cache " + cache.file().string(), cells);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bookcross: exact values and bounds for the k-page book crossing number of K_n"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--cache-dir", cfg.cache_dir, "bound cache directory (env BOOKCROSS_CACHE_DIR overrides)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json", "pretty"}));
    app.add_option("--out", cfg.out, "write output to a file instead of stdout");
    app.add_option("--time-budget", cfg.time_budget, "seconds per exact instance")->check(CLI::PositiveNumber);
    app.add_option("--node-budget", cfg.node_budget, "search nodes per exact instance (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tol", cfg.solver_tol, "SDP solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "independent work items run in parallel")->check(CLI::PositiveNumber);
    app.add_flag("--no-timing", cfg.no_timing, "zero all timing fields (byte-stable output)");

    int n = 0;
    int k = 0;
    auto* graph = app.add_subcommand("graph", "G_n statistics and edge list");
    bool edges = false;
    graph->add_option("--n", n, "number of vertices of K_n")->required();
    graph->add_flag("--edges", edges, "also print the edge list");

    auto* dds = app.add_subcommand("dds", "DDS drawing and its crossing count");
    dds->add_option("--n", n)->required();
    dds->add_option("--k", k)->required();

    auto* zk = app.add_subcommand("zk", "table of Z_k(n)");
    int n_max = 30;
    zk->add_option("--k", k)->required();
    zk->add_option("--n-max", n_max);

    auto* exact = app.add_subcommand("exact", "exact nu_k(K_n) by branch-and-bound");
    std::string wcnf_out;
    std::string wcnf_mode = "strict";
    exact->add_option("--n", n)->required();
    exact->add_option("--k", k)->required();
    exact->add_option("--wcnf-out", wcnf_out, "also write the weighted Max-SAT instance (DIMACS WCNF)");
    exact->add_option("--wcnf-mode", wcnf_mode, "strict: vertex clauses hard; literal: all clauses soft")
        ->check(CLI::IsMember({"strict", "literal"}));

    auto* sdp = app.add_subcommand("sdp", "certified Frieze-Jerrum lower bound on nu_k(K_n)");
    bool dense = false;
    sdp->add_option("--n", n)->required();
    sdp->add_option("--k", k)->required();
    sdp->add_flag("--dense", dense, "solve the unreduced program");

    auto* table = app.add_subcommand("table", "reproduce table 1, 2 or 3");
    int which = 1;
    int k_min = 3;
    int k_max = 5;
    int n_min = 7;
    int t_n_max = 11;
    std::vector<int> ms;
    bool solve = false;
    table->add_option("which", which)->required()->check(CLI::IsMember({1, 2, 3}));
    table->add_option("--k-min", k_min);
    table->add_option("--k-max", k_max);
    table->add_option("--n-min", n_min, "table 1");
    table->add_option("--n-max", t_n_max, "table 1");
    table->add_option("--m", ms, "tables 2 and 3: order of the solved instance (default 39; table 3 uses the first)");
    table->add_flag("--solve", solve, "table 3: solve missing FJ values instead of leaving gaps");

    auto* cache = app.add_subcommand("cache", "list cached certified bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (*graph) return cmd_graph(cfg, n, edges);
        if (*dds) return cmd_dds(cfg, n, k);
        if (*zk) return cmd_zk(cfg, k, n_max);
        if (*exact) return cmd_exact(cfg, n, k, wcnf_out, wcnf_mode);
        if (*sdp) return cmd_sdp(cfg, n, k, dense);
        if (*cache) return cmd_cache_list(cfg);
        if (*table) {
            if (k_min > k_max) throw bc::InputError("table: --k-min > --k-max");
            if (ms.empty()) ms.push_back(39);
            if (which == 1) return cmd_table1(cfg, k_min, k_max, n_min, t_n_max);
            if (which == 2) return cmd_table2(cfg, k_min, k_max, ms);
            return cmd_table3(cfg, k_min, k_max, ms.front(), solve);
        }
    } catch (const bc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const bc::UnsupportedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const bc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
