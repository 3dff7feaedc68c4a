#ifndef BOOKCROSS_EXACT_HPP
#define BOOKCROSS_EXACT_HPP

// Exact nu_k(K_n) as C(n,4) minus a maximum k-cut of G_n.
//
// The solver minimises the number of monochromatic edges of G_n (the
// crossings of the corresponding drawing). It is a depth-first
// branch-and-bound over a fixed descending-degree vertex order with a
// Russian-doll outer loop: the suffix problems order[i..N) are solved from
// the back, and their optima serve as an additive bound for the edges
// among still-unassigned vertices. The bound at a node is
//
//   mono(assigned) + sum_{u unassigned} min_c conflicts(u, c) + doll[next]
//
// where the three terms count disjoint edge sets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "bookcross/chordgraph.hpp"
#include "bookcross/drawings.hpp"
#include "bookcross/error.hpp"

namespace bookcross {

/// A k-colouring of the vertices of G_n, one colour per chord.
struct CutAssignment {
    int graph_n = 0;
    int k = 0;
    std::vector<int> color_of;

    void validate(const ChordGraph& g) const {
        detail::require(graph_n == g.n(), "cut assignment: built for a different n");
        detail::require(static_cast<int>(color_of.size()) == g.num_vertices(),
                        "cut assignment: length does not match |V_n|");
        for (int c : color_of) detail::require(c >= 0 && c < k, "cut assignment: colour out of range");
    }
};

struct SearchBudget {
    std::int64_t max_nodes = std::numeric_limits<std::int64_t>::max();
    double max_seconds = std::numeric_limits<double>::infinity();
};

struct ExactResult {
    int n = 0;
    int k = 0;
    std::int64_t nu = 0;        ///< crossings of the best drawing found
    std::int64_t cut_size = 0;  ///< C(n,4) - nu
    CutAssignment assignment;
    bool proved_optimal = false;
    std::int64_t nodes_explored = 0;
    double wall_seconds = 0.0;
};

/// Number of edges of g whose endpoints get different colours.
inline std::int64_t cut_value(const ChordGraph& g, const CutAssignment& a) {
    a.validate(g);
    std::int64_t cut = 0;
    for (auto [u, v] : g.edges())
        if (a.color_of[u] != a.color_of[v]) ++cut;
    return cut;
}

/// Colouring induced by a drawing: chord {a, b} gets the page of edge {a, b}.
inline CutAssignment cut_from_drawing(const ChordGraph& g, const Drawing& dr) {
    detail::require(dr.n() == g.n(), "cut_from_drawing: n mismatch");
    CutAssignment a{g.n(), dr.k(), std::vector<int>(g.num_vertices())};
    for (int v = 0; v < g.num_vertices(); ++v) a.color_of[v] = dr.page(g.chord(v).a, g.chord(v).b);
    return a;
}

/// Drawing induced by a colouring. Cycle edges {i, i+1} are not vertices of
/// G_n and never cross anything; they go on page 0.
inline Drawing drawing_from_cut(const ChordGraph& g, const CutAssignment& a) {
    a.validate(g);
    const int n = g.n();
    Drawing dr(n, a.k);
    for (int x = 0; x < n; ++x) dr.set_page(x, (x + 1) % n, 0);
    for (int v = 0; v < g.num_vertices(); ++v) dr.set_page(g.chord(v).a, g.chord(v).b, a.color_of[v]);
    return dr;
}

namespace detail {

class CutSearch {
public:
    CutSearch(const ChordGraph& g, int k, const SearchBudget& budget)
        : g_(g), k_(k), nv_(g.num_vertices()), budget_(budget), start_(Clock::now()) {
        order_.resize(nv_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return g.degree(a) > g.degree(b); });
        pos_.assign(nv_, 0);
        for (int p = 0; p < nv_; ++p) pos_[order_[p]] = p;
        later_.assign(nv_, {});
        for (int p = 0; p < nv_; ++p)
            for (int u : g.neighbours(order_[p]))
                if (pos_[u] > p) later_[p].push_back(pos_[u]);
        for (auto& l : later_) std::sort(l.begin(), l.end());
        color_.assign(nv_, -1);
        conf_.assign(static_cast<std::size_t>(nv_) * k_, 0);
        doll_.assign(nv_ + 1, 0);
    }

    /// Solves all suffix problems; returns false if the budget ran out.
    /// `warm` (indexed by vertex) seeds the incumbent of the full problem.
    bool run(const std::vector<int>& warm, std::int64_t warm_value) {
        std::vector<int> suffix_best;  // by position, for order[i+1..N)
        for (int i = nv_ - 1; i >= 0; --i) {
            first_ = i;
            // Incumbent: extend the previous suffix optimum greedily.
            std::vector<int> ext(nv_, -1);
            for (int p = i + 1; p < nv_; ++p) ext[p] = suffix_best[p];
            int best_c = 0;
            std::int64_t best_conf = std::numeric_limits<std::int64_t>::max();
            for (int c = 0; c < k_; ++c) {
                std::int64_t cnt = 0;
                for (int q : later_[i])
                    if (ext[q] == c) ++cnt;
                if (cnt < best_conf) {
                    best_conf = cnt;
                    best_c = c;
                }
            }
            ext[i] = best_c;
            best_ = doll_[i + 1] + best_conf;
            best_assign_ = ext;
            if (i == 0 && warm_value < best_) {
                best_ = warm_value;
                for (int p = 0; p < nv_; ++p) best_assign_[p] = warm[order_[p]];
            }
            if (best_ > doll_[i + 1]) {
                mono_ = 0;
                sum_min_ = 0;
                if (!branch(i, 0)) return false;
            }
            doll_[i] = best_;
            suffix_best = best_assign_;
        }
        return true;
    }

    std::int64_t optimum() const { return doll_[0]; }
    std::int64_t incumbent() const { return best_; }
    std::int64_t nodes() const { return nodes_; }

    /// Best colouring of the last problem touched, indexed by vertex.
    std::vector<int> best_by_vertex() const {
        std::vector<int> out(nv_, 0);
        for (int p = 0; p < nv_; ++p) out[order_[p]] = best_assign_[p] < 0 ? 0 : best_assign_[p];
        return out;
    }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    using Clock = std::chrono::steady_clock;

    int& conf(int p, int c) { return conf_[static_cast<std::size_t>(p) * k_ + c]; }

    int min_conf(int p) {
        int m = conf(p, 0);
        for (int c = 1; c < k_; ++c) m = std::min(m, conf(p, c));
        return m;
    }

    bool out_of_budget() {
        if (nodes_ >= budget_.max_nodes) return true;
        if ((nodes_ & 0xfff) == 0 && elapsed() > budget_.max_seconds) return true;
        return false;
    }

    // Assigns position p; `used` = number of colours opened so far.
    bool branch(int p, int used) {
        if (p == nv_) {
            if (mono_ < best_) {
                best_ = mono_;
                best_assign_ = color_;
            }
            return true;
        }
        const int limit = std::min(used + 1, k_);
        // Least-conflict colour first, ties by colour index.
        int cand[16];
        int nc = 0;
        for (int c = 0; c < limit; ++c) cand[nc++] = c;
        std::stable_sort(cand, cand + nc, [&](int a, int b) { return conf(p, a) < conf(p, b); });

        const int own_min = min_conf(p);
        for (int idx = 0; idx < nc; ++idx) {
            const int c = cand[idx];
            ++nodes_;
            if (out_of_budget()) return false;
            const std::int64_t mono_add = conf(p, c);
            std::int64_t sum_delta = -own_min;
            for (int q : later_[p]) {
                const int before = min_conf(q);
                ++conf(q, c);
                sum_delta += min_conf(q) - before;
            }
            mono_ += mono_add;
            sum_min_ += sum_delta;
            color_[p] = c;
            const std::int64_t bound = mono_ + sum_min_ + doll_[p + 1];
            bool ok = true;
            if (bound < best_) ok = branch(p + 1, std::max(used, c + 1));
            color_[p] = -1;
            mono_ -= mono_add;
            sum_min_ -= sum_delta;
            for (int q : later_[p]) --conf(q, c);
            if (!ok) return false;
            if (best_ <= doll_[first_ + 1]) return true;  // matches the suffix lower bound
        }
        return true;
    }

    const ChordGraph& g_;
    int k_;
    int nv_;
    SearchBudget budget_;
    Clock::time_point start_;
    std::vector<int> order_;
    std::vector<int> pos_;
    std::vector<std::vector<int>> later_;  // later neighbours, by position
    std::vector<int> color_;               // by position
    std::vector<int> conf_;                // [position][colour]
    std::vector<std::int64_t> doll_;       // optimum of suffix order[i..N)
    std::vector<int> best_assign_;
    std::int64_t best_ = 0;
    std::int64_t mono_ = 0;
    std::int64_t sum_min_ = 0;
    std::int64_t nodes_ = 0;
    int first_ = 0;
};

}  // namespace detail

/// Maximum k-cut of G_n by branch-and-bound, warm-started from the DDS
/// drawing. On budget exhaustion the DDS (or better) incumbent is returned
/// with proved_optimal = false; nu is then only an upper bound.
inline ExactResult max_k_cut_bnb(const ChordGraph& g, int k, const SearchBudget& budget = {}) {
    detail::require(k >= 1, "max_k_cut_bnb: k must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t total = g.num_edges();
    ExactResult r;
    r.n = g.n();
    r.k = k;

    const CutAssignment warm = cut_from_drawing(g, dds_drawing(g.n(), k));
    const std::int64_t warm_mono = total - cut_value(g, warm);

    detail::CutSearch search(g, k, budget);
    const bool done = search.run(warm.color_of, warm_mono);
    r.nodes_explored = search.nodes();
    if (done) {
        r.proved_optimal = true;
        r.assignment = CutAssignment{g.n(), k, search.best_by_vertex()};
    } else {
        r.proved_optimal = false;
        r.assignment = warm;
    }
    r.cut_size = cut_value(g, r.assignment);
    r.nu = total - r.cut_size;
    if (r.proved_optimal && r.nu != search.optimum())
        throw InvariantError("max_k_cut_bnb: reported optimum disagrees with its colouring");
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// nu_k(K_n) via max_k_cut_bnb; k >= ceil(n/2) short-circuits to 0.
inline ExactResult nu_exact(int n, int k, const SearchBudget& budget = {}) {
    detail::require(n >= 5, "nu_exact: n must be >= 5");
    detail::require(k >= 1, "nu_exact: k must be >= 1");
    const ChordGraph g(n);
    if (2 * k >= n) {
        ExactResult r;
        r.n = n;
        r.k = k;
        r.assignment = cut_from_drawing(g, dds_drawing(n, k));
        r.cut_size = cut_value(g, r.assignment);
        r.nu = g.num_edges() - r.cut_size;
        if (r.nu != 0) throw InvariantError("nu_exact: DDS drawing is not crossing-free for k >= n/2");
        r.proved_optimal = true;
        return r;
    }
    return max_k_cut_bnb(g, k, budget);
}

/// Exhaustive oracle: every colouring with vertex 0 fixed to colour 0.
/// Refuses instances with more than `cap` colourings.
inline std::int64_t brute_force_nu(int n, int k, double cap = 2.0e8) {
    detail::require(n >= 5 && k >= 1, "brute_force_nu: need n >= 5, k >= 1");
    const ChordGraph g(n);
    const int nv = g.num_vertices();
    const double size = std::pow(static_cast<double>(k), nv - 1);
    if (size > cap)
        throw InputError("brute_force_nu: " + std::to_string(k) + "^" + std::to_string(nv - 1) + " ~ " +
                         std::to_string(size) + " colourings exceeds the cap");
    std::vector<std::vector<int>> earlier(nv);
    for (auto [u, v] : g.edges()) earlier[std::max(u, v)].push_back(std::min(u, v));

    std::vector<int> color(nv, 0);
    std::vector<std::int64_t> mono(nv + 1, 0);  // mono[v] = monochromatic edges among vertices < v
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    // Odometer over colours of vertices 1..nv-1.
    int v = 1;
    color.assign(nv, -1);
    color[0] = 0;
    mono[1] = 0;
    while (v >= 1) {
        if (v == nv) {
            best = std::min(best, mono[nv]);
            --v;
            continue;
        }
        if (++color[v] >= k) {
            color[v] = -1;
            --v;
            continue;
        }
        std::int64_t add = 0;
        for (int u : earlier[v])
            if (color[u] == color[v]) ++add;
        mono[v + 1] = mono[v] + add;
        ++v;
    }
    return best;
}

}  // namespace bookcross

#endif  // BOOKCROSS_EXACT_HPP
