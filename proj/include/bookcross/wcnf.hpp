#ifndef BOOKCROSS_WCNF_HPP
#define BOOKCROSS_WCNF_HPP

// Weighted Max-SAT form of max-k-cut on G_n, for cross-checking with
// external solvers. Variable x_i^p (vertex i has colour p) is DIMACS
// variable i*k + p + 1.
//
//   soft, weight 1:     (-x_i^p v -x_j^p)     for every edge ij, colour p
//   hard, weight k|E|:  (x_i^1 v ... v x_i^k)  for every vertex i
//
// The minimum unsatisfied weight equals nu_k(K_n).

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bookcross/chordgraph.hpp"
#include "bookcross/error.hpp"
#include "bookcross/exact.hpp"

namespace bookcross {

struct WcnfClause {
    std::int64_t weight = 1;
    std::vector<int> lits;
};

struct WcnfInstance {
    int graph_n = 0;
    int k = 0;
    int num_vertices = 0;
    int num_vars = 0;
    std::int64_t hard_weight = 0;  ///< k |E_n|
    std::vector<WcnfClause> hard_clauses;
    std::vector<WcnfClause> soft_clauses;

    int var(int vertex, int colour) const { return vertex * k + colour + 1; }
};

enum class WcnfMode {
    /// Vertex clauses carry top = k|E| + 1 and are hard for the solver.
    StrictTop,
    /// Vertex clauses carry exactly k|E|; top exceeds the total weight so
    /// every clause is soft.
    PaperLiteral,
};

inline WcnfInstance encode_wcnf(const ChordGraph& g, int k) {
    detail::require(k >= 1, "encode_wcnf: k must be >= 1");
    WcnfInstance w;
    w.graph_n = g.n();
    w.k = k;
    w.num_vertices = g.num_vertices();
    w.num_vars = g.num_vertices() * k;
    w.hard_weight = static_cast<std::int64_t>(k) * g.num_edges();
    for (int v = 0; v < g.num_vertices(); ++v) {
        WcnfClause c{w.hard_weight, {}};
        for (int p = 0; p < k; ++p) c.lits.push_back(w.var(v, p));
        w.hard_clauses.push_back(std::move(c));
    }
    for (auto [u, v] : g.edges())
        for (int p = 0; p < k; ++p) w.soft_clauses.push_back({1, {-w.var(u, p), -w.var(v, p)}});
    return w;
}

/// Weight written in the "p wcnf" header.
inline std::int64_t wcnf_top(const WcnfInstance& w, WcnfMode mode) {
    if (mode == WcnfMode::StrictTop) return w.hard_weight + 1;
    const auto soft = static_cast<std::int64_t>(w.soft_clauses.size());
    return soft + w.hard_weight * static_cast<std::int64_t>(w.hard_clauses.size()) + 1;
}

/// DIMACS WCNF: header, vertex clauses (ids 1..|V|), then edge clauses.
inline void emit_dimacs_wcnf(const WcnfInstance& w, std::ostream& out, WcnfMode mode = WcnfMode::StrictTop) {
    const std::int64_t top = wcnf_top(w, mode);
    const std::int64_t hard = mode == WcnfMode::StrictTop ? top : w.hard_weight;
    out << "c nu_" << w.k << "(K_" << w.graph_n << ") as weighted max-sat; x(i,p) = i*" << w.k << "+p+1\n";
    out << "p wcnf " << w.num_vars << ' ' << (w.hard_clauses.size() + w.soft_clauses.size()) << ' ' << top
        << '\n';
    for (const auto& c : w.hard_clauses) {
        out << hard;
        for (int l : c.lits) out << ' ' << l;
        out << " 0\n";
    }
    for (const auto& c : w.soft_clauses) {
        out << c.weight;
        for (int l : c.lits) out << ' ' << l;
        out << " 0\n";
    }
}

/// A generic parsed WCNF file (no structural assumptions).
struct WcnfFile {
    int num_vars = 0;
    std::int64_t top = 0;
    std::vector<WcnfClause> clauses;
};

inline WcnfFile read_dimacs_wcnf(std::istream& in) {
    WcnfFile f;
    std::string line;
    bool header = false;
    std::size_t declared = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p;
            std::string fmt;
            if (!(ls >> p >> fmt >> f.num_vars >> declared >> f.top) || fmt != "wcnf")
                throw ParseError("wcnf: bad header '" + line + "'");
            header = true;
            continue;
        }
        if (!header) throw ParseError("wcnf: clause before header");
        WcnfClause c;
        if (!(ls >> c.weight) || c.weight <= 0) throw ParseError("wcnf: bad weight in '" + line + "'");
        int lit = 0;
        bool closed = false;
        while (ls >> lit) {
            if (lit == 0) {
                closed = true;
                break;
            }
            if (std::abs(lit) > f.num_vars) throw ParseError("wcnf: literal out of range in '" + line + "'");
            c.lits.push_back(lit);
        }
        if (!closed) throw ParseError("wcnf: clause not terminated by 0: '" + line + "'");
        f.clauses.push_back(std::move(c));
    }
    if (!header) throw ParseError("wcnf: missing header");
    if (f.clauses.size() != declared) throw ParseError("wcnf: clause count does not match header");
    return f;
}

/// Weight of clauses falsified by `value` (value[v] for DIMACS var v, index 0 unused).
inline std::int64_t unsat_weight(const WcnfFile& f, const std::vector<bool>& value) {
    std::int64_t total = 0;
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c.lits) {
            const bool x = value.at(static_cast<std::size_t>(std::abs(l)));
            if ((l > 0) == x) {
                sat = true;
                break;
            }
        }
        if (!sat) total += c.weight;
    }
    return total;
}

/// Reads solver output ("v" lines holding either signed literals or a
/// 0/1 string; "s", "o" and "c" lines are ignored) into a truth vector
/// indexed 1..num_vars. Unmentioned variables are false.
inline std::vector<bool> parse_wcnf_values(const std::string& text, int num_vars) {
    std::vector<bool> value(static_cast<std::size_t>(num_vars) + 1, false);
    std::istringstream in(text);
    std::string line;
    bool any = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != 'v') continue;
        any = true;
        std::istringstream ls(line.substr(1));
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        // A lone 0/1 token of length > 1 is the binary-string form; "10" inside a
        // literal list is variable 10.
        const bool binary = toks.size() == 1 && toks[0].size() > 1 &&
                            toks[0].find_first_not_of("01") == std::string::npos;
        for (const auto& tok : toks) {
            if (binary) {
                if (static_cast<int>(tok.size()) != num_vars)
                    throw ParseError("wcnf model: binary string has " + std::to_string(tok.size()) +
                                     " entries, expected " + std::to_string(num_vars));
                for (int v = 1; v <= num_vars; ++v) value[v] = tok[v - 1] == '1';
                continue;
            }
            int lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw ParseError("");
            } catch (const std::exception&) {
                throw ParseError("wcnf model: bad token '" + tok + "'");
            }
            if (lit == 0) continue;
            if (std::abs(lit) > num_vars) throw ParseError("wcnf model: literal " + tok + " out of range");
            value[std::abs(lit)] = lit > 0;
        }
    }
    if (!any) throw ParseError("wcnf model: no 'v' line");
    return value;
}

/// Maps a model back to a colouring: each vertex takes its lowest true
/// colour. A vertex with no true colour violates its hard clause.
inline CutAssignment parse_wcnf_model(const std::string& text, const WcnfInstance& w) {
    const auto value = parse_wcnf_values(text, w.num_vars);
    CutAssignment a{w.graph_n, w.k, std::vector<int>(w.num_vertices, -1)};
    for (int v = 0; v < w.num_vertices; ++v) {
        for (int p = 0; p < w.k; ++p) {
            if (value[w.var(v, p)]) {
                a.color_of[v] = p;
                break;
            }
        }
        if (a.color_of[v] < 0)
            throw ParseError("wcnf model: hard clause " + std::to_string(v + 1) + " (vertex " + std::to_string(v) +
                             ") is falsified");
    }
    return a;
}

/// "v" line with signed literals encoding a colouring (one true colour per vertex).
inline std::string model_from_cut(const CutAssignment& a) {
    std::ostringstream os;
    os << "v";
    const int nv = static_cast<int>(a.color_of.size());
    for (int v = 0; v < nv; ++v)
        for (int p = 0; p < a.k; ++p) {
            const int var = v * a.k + p + 1;
            os << ' ' << (a.color_of[v] == p ? var : -var);
        }
    os << '\n';
    return os.str();
}

}  // namespace bookcross

#endif  // BOOKCROSS_WCNF_HPP
