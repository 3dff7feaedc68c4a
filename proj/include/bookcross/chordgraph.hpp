#ifndef BOOKCROSS_CHORDGRAPH_HPP
#define BOOKCROSS_CHORDGRAPH_HPP

// The chord-overlap graph G_n: one vertex per chord of the n-cycle
// (cyclic distance >= 2), two chords adjacent iff their endpoints
// interleave. A k-page drawing of K_n is a k-colouring of G_n and its
// crossings are exactly the monochromatic edges.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bookcross/error.hpp"

namespace bookcross {

inline std::int64_t choose(std::int64_t n, std::int64_t r) {
    if (r < 0 || n < r) return 0;
    r = std::min(r, n - r);
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

inline int cyclic_distance(int a, int b, int n) {
    int diff = a > b ? a - b : b - a;
    return std::min(diff, n - diff);
}

/// A chord {a, b} of the n-cycle, stored with a < b.
struct Chord {
    int a = 0;
    int b = 0;

    /// Canonicalises the endpoint order; throws InputError for cycle
    /// edges, loops and out-of-range endpoints.
    static Chord make(int x, int y, int n) {
        detail::require(n >= 1, "chord: n must be positive");
        detail::require(x >= 0 && x < n && y >= 0 && y < n, "chord: endpoint out of range");
        detail::require(cyclic_distance(x, y, n) >= 2,
                        "chord: endpoints " + std::to_string(x) + "," + std::to_string(y) +
                            " are at cyclic distance < 2");
        return x < y ? Chord{x, y} : Chord{y, x};
    }

    int length(int n) const { return cyclic_distance(a, b, n); }

    friend bool operator==(const Chord&, const Chord&) = default;
    friend auto operator<=>(const Chord&, const Chord&) = default;
};

namespace detail {

inline bool strictly_between(int x, int lo, int hi) { return lo < x && x < hi; }

// Interleaving test for canonical pairs, no validation.
inline bool interleave(int a1, int b1, int a2, int b2) {
    if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
    return strictly_between(a2, a1, b1) != strictly_between(b2, a1, b1);
}

}  // namespace detail

/// True iff the endpoints of the two chords strictly alternate around the
/// cycle. Shared endpoints, nested and disjoint chords do not overlap.
inline bool chords_overlap(const Chord& c1, const Chord& c2, int n) {
    Chord::make(c1.a, c1.b, n);
    Chord::make(c2.a, c2.b, n);
    return detail::interleave(c1.a, c1.b, c2.a, c2.b);
}

/// Symmetric n x n circulant block (i, j) of the adjacency matrix of G_n
/// under the canonical vertex order. Row t, column s holds
/// first_row[(s - t) mod n].
struct CirculantBlockSpec {
    int i = 0;
    int j = 0;
    int ell = 0;
    std::vector<int> first_row;
};

/// Offset ell_ij locating the ones in the first row of block (i, j).
inline int ell(int i, int j, int n) {
    detail::require(n >= 5, "ell: n must be >= 5");
    const int d = n / 2;
    detail::require(2 <= i && i <= j && j <= d, "ell: need 2 <= i <= j <= floor(n/2)");
    long long v = static_cast<long long>(d) * (i - j);
    if ((i - j) % 2 != 0) v -= j;
    v %= n;
    if (v < 0) v += n;
    return static_cast<int>(v);
}

/// First row of circulant block (i, j): ones at +-(ell + s) mod n for
/// s = 1..i-1, zeros elsewhere. Odd n only.
inline CirculantBlockSpec block_first_row(int i, int j, int n) {
    if (n % 2 == 0) throw UnsupportedError("block_first_row: circulant block structure needs odd n");
    CirculantBlockSpec spec{i, j, ell(i, j, n), std::vector<int>(n, 0)};
    for (int s = 1; s <= i - 1; ++s) {
        const int t = (spec.ell + s) % n;
        spec.first_row[t] = 1;
        spec.first_row[(n - t) % n] = 1;
    }
    return spec;
}

class ChordGraph {
public:
    /// Builds G_n. Vertices are grouped by chord length i = 2..floor(n/2);
    /// orbit i starts at {d*i mod n, (d+1)*i mod n} and continues by
    /// cyclic shifts +1, skipping repeats (only the diameters of even n
    /// repeat).
    explicit ChordGraph(int n) : n_(n), d_(n / 2) {
        detail::require(n >= 5, "build_chord_graph: n must be >= 5");
        index_.assign(static_cast<std::size_t>(n) * n, -1);
        orbit_start_.assign(d_ + 2, 0);
        for (int i = 2; i <= d_; ++i) {
            orbit_start_[i] = static_cast<int>(vertices_.size());
            const int a0 = static_cast<int>((static_cast<long long>(d_) * i) % n);
            const int b0 = static_cast<int>((static_cast<long long>(d_ + 1) * i) % n);
            for (int t = 0; t < n; ++t) {
                const Chord c = Chord::make((a0 + t) % n, (b0 + t) % n, n);
                int& slot = index_[static_cast<std::size_t>(c.a) * n + c.b];
                if (slot >= 0) continue;
                slot = static_cast<int>(vertices_.size());
                vertices_.push_back(c);
                orbit_of_.push_back(i);
            }
        }
        orbit_start_[d_ + 1] = static_cast<int>(vertices_.size());

        const int nv = num_vertices();
        adjacency_.assign(nv, {});
        dense_.assign(static_cast<std::size_t>(nv) * nv, 0);
        for (int u = 0; u < nv; ++u) {
            for (int v = u + 1; v < nv; ++v) {
                const Chord& cu = vertices_[u];
                const Chord& cv = vertices_[v];
                if (!detail::interleave(cu.a, cu.b, cv.a, cv.b)) continue;
                edges_.emplace_back(u, v);
                adjacency_[u].push_back(v);
                adjacency_[v].push_back(u);
                dense_[static_cast<std::size_t>(u) * nv + v] = 1;
                dense_[static_cast<std::size_t>(v) * nv + u] = 1;
            }
        }
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }

    const std::vector<Chord>& vertices() const { return vertices_; }
    const Chord& chord(int v) const { return vertices_.at(v); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adjacency_.at(v); }
    int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

    bool adjacent(int u, int v) const {
        return dense_[static_cast<std::size_t>(u) * num_vertices() + v] != 0;
    }

    /// Chord length (orbit label) of vertex v, in 2..d.
    int orbit_of(int v) const { return orbit_of_.at(v); }
    int num_orbits() const { return d_ - 1; }
    /// First vertex index of orbit i.
    int orbit_begin(int i) const { return orbit_start_.at(i); }
    int orbit_end(int i) const { return orbit_start_.at(i + 1); }

    /// Vertex index of chord {x, y}, or -1 if {x, y} is not a chord.
    int index_of(int x, int y) const {
        if (x < 0 || y < 0 || x >= n_ || y >= n_ || x == y) return -1;
        if (x > y) std::swap(x, y);
        return index_[static_cast<std::size_t>(x) * n_ + y];
    }

    Eigen::MatrixXi adjacency_matrix() const {
        const int nv = num_vertices();
        Eigen::MatrixXi a = Eigen::MatrixXi::Zero(nv, nv);
        for (auto [u, v] : edges_) {
            a(u, v) = 1;
            a(v, u) = 1;
        }
        return a;
    }

private:
    int n_;
    int d_;
    std::vector<Chord> vertices_;
    std::vector<int> orbit_of_;
    std::vector<int> orbit_start_;
    std::vector<int> index_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::uint8_t> dense_;
};

inline ChordGraph build_chord_graph(int n) { return ChordGraph(n); }

/// Laplacian D - A of the graph.
inline Eigen::MatrixXi laplacian(const ChordGraph& g) {
    Eigen::MatrixXi l = -g.adjacency_matrix();
    for (int v = 0; v < g.num_vertices(); ++v) l(v, v) = g.degree(v);
    return l;
}

/// Adjacency matrix assembled purely from block_first_row; must agree with
/// g.adjacency_matrix() for odd n.
inline Eigen::MatrixXi assemble_block_circulant(int n) {
    if (n % 2 == 0) throw UnsupportedError("assemble_block_circulant: odd n only");
    const int d = n / 2;
    const int nv = n * (d - 1);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(nv, nv);
    for (int i = 2; i <= d; ++i) {
        for (int j = i; j <= d; ++j) {
            const auto spec = block_first_row(i, j, n);
            const int r0 = (i - 2) * n;
            const int c0 = (j - 2) * n;
            for (int t = 0; t < n; ++t) {
                for (int s = 0; s < n; ++s) {
                    const int v = spec.first_row[((s - t) % n + n) % n];
                    a(r0 + t, c0 + s) = v;
                    a(c0 + s, r0 + t) = v;
                }
            }
        }
    }
    return a;
}

/// Edge-list export: "p <|V|> <|E|>" then one "u v" line per edge.
inline void write_edge_list(const ChordGraph& g, std::ostream& out) {
    out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace bookcross

#endif  // BOOKCROSS_CHORDGRAPH_HPP
