#ifndef BOOKCROSS_DRAWINGS_HPP
#define BOOKCROSS_DRAWINGS_HPP

// k-page drawings of K_n in the circular model: the DDS construction, a
// direct crossing counter, and the closed forms for its crossing count
// Z_k(n) together with the reference bounds they are compared against.

#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bookcross/chordgraph.hpp"
#include "bookcross/error.hpp"
#include "bookcross/rational.hpp"

namespace bookcross {

using Edge = std::pair<int, int>;

/// Index of edge {a, b}, a < b, in the lexicographic order of K_n's edges.
inline std::size_t edge_index(int a, int b, int n) {
    if (a > b) std::swap(a, b);
    const auto aa = static_cast<std::size_t>(a);
    return aa * static_cast<std::size_t>(n) - aa * (aa + 1) / 2 + static_cast<std::size_t>(b - a - 1);
}

/// A k-page drawing of K_n: every edge {a, b} sits on exactly one page.
class Drawing {
public:
    Drawing(int n, int k) : n_(n), k_(k) {
        detail::require(n >= 1, "drawing: n must be >= 1");
        detail::require(k >= 1, "drawing: k must be >= 1");
        page_of_.assign(static_cast<std::size_t>(choose(n, 2)), -1);
    }

    int n() const { return n_; }
    int k() const { return k_; }

    int page(int a, int b) const { return page_of_.at(edge_index(a, b, n_)); }

    void set_page(int a, int b, int page) {
        detail::require(a != b && a >= 0 && b >= 0 && a < n_ && b < n_, "drawing: bad edge");
        detail::require(page >= 0 && page < k_, "drawing: page index out of range");
        page_of_[edge_index(a, b, n_)] = page;
    }

    bool is_total() const {
        for (int p : page_of_)
            if (p < 0) return false;
        return true;
    }

    /// Edges on page p in lexicographic order.
    std::vector<Edge> page_edges(int p) const {
        std::vector<Edge> out;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (page(a, b) == p) out.emplace_back(a, b);
        return out;
    }

    friend bool operator==(const Drawing&, const Drawing&) = default;

private:
    int n_;
    int k_;
    std::vector<int> page_of_;
};

/// M_i: edges {a, b} of K_n with a + b = i (mod n).
inline std::vector<Edge> matching(int i, int n) {
    detail::require(n >= 1 && i >= 0 && i < n, "matching: need 0 <= i < n");
    std::vector<Edge> out;
    for (int a = 0; a < n; ++a) {
        const int b = ((i - a) % n + n) % n;
        if (a < b) out.emplace_back(a, b);
    }
    return out;
}

/// First and last matching index held by each page of the DDS drawing.
/// Pages with no matchings (k > n) get first > last.
inline std::vector<std::pair<int, int>> dds_page_intervals(int n, int k) {
    detail::require(n >= 1 && k >= 1, "dds: need n >= 1, k >= 1");
    const int p = n / k;
    const int q = n % k;
    std::vector<std::pair<int, int>> out;
    out.reserve(k);
    for (int l = 0; l < k; ++l) {
        if (l < q)
            out.emplace_back(l * (p + 1), l * (p + 1) + p);
        else
            out.emplace_back(l * p + q, l * p + q + p - 1);
    }
    return out;
}

/// The DDS drawing: page l carries a block of consecutive matchings, the
/// first n mod k pages one matching more than the rest. For k > n the
/// trailing pages stay empty.
inline Drawing dds_drawing(int n, int k) {
    Drawing dr(n, k);
    const auto intervals = dds_page_intervals(n, k);
    std::vector<int> page_of_matching(n, -1);
    for (int l = 0; l < k; ++l)
        for (int m = intervals[l].first; m <= intervals[l].second; ++m) page_of_matching[m] = l;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) dr.set_page(a, b, page_of_matching[(a + b) % n]);
    return dr;
}

/// Same-page pairs of edges whose endpoints interleave on the circle.
inline std::int64_t count_crossings(const Drawing& dr) {
    detail::require(dr.is_total(), "count_crossings: drawing is not total");
    std::int64_t total = 0;
    for (int p = 0; p < dr.k(); ++p) {
        const auto es = dr.page_edges(p);
        for (std::size_t x = 0; x < es.size(); ++x)
            for (std::size_t y = x + 1; y < es.size(); ++y)
                if (detail::interleave(es[x].first, es[x].second, es[y].first, es[y].second)) ++total;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Closed forms

/// f(r) = rn/2 - r^2/2 - n/2 + 1/2.
inline Rational f(std::int64_t r, std::int64_t n) {
    detail::require(r >= 0, "f: r must be >= 0");
    return rat(r * n - r * r - n + 1, 2);
}

/// F(r, n) = -r^4/24 + n r^3/12 - n r^2/4 + 7 r^2/24 + n r/6 - r/4.
/// Equals sum_{l=1}^{r-1} (r - l) f(l).
inline Rational F(std::int64_t r, std::int64_t n) {
    detail::require(r >= 0, "F: r must be >= 0");
    const Integer R(r);
    const Integer N(n);
    const Integer r2 = R * R;
    const Integer r3 = r2 * R;
    const Integer r4 = r3 * R;
    // common denominator 24
    const Integer num = -r4 + 2 * N * r3 - 6 * N * r2 + 7 * r2 + 4 * N * R - 6 * R;
    return Rational(num, Integer(24));
}

/// Crossings between M_i and M_j drawn on one page, 0 <= i < j < n,
/// j - i <= n/2.
inline Rational cr_matchings(int i, int j, int n) {
    detail::require(n >= 1 && 0 <= i && i < j && j <= n - 1, "cr_matchings: need 0 <= i < j <= n-1");
    detail::require(2 * (j - i) <= n, "cr_matchings: need j - i <= n/2");
    Rational v = f(j - i, n);
    if (n % 2 == 1) return v;
    const bool i_odd = i % 2 != 0;
    const bool j_odd = j % 2 != 0;
    if (i_odd && j_odd) return v - rat(1, 2);
    if (!i_odd && !j_odd) return v + rat(1, 2);
    return v;
}

/// Crossings among all edges of M_s u ... u M_t drawn on one page.
inline Rational cr_collection(int s, int t, int n) {
    detail::require(n >= 1 && 0 <= s && s < t && t <= n - 1, "cr_collection: need 0 <= s < t <= n-1");
    detail::require(2 * (t - s) <= n, "cr_collection: need t - s <= n/2");
    Rational v = F(t - s + 1, n);
    if (n % 2 == 1) return v;
    const bool s_odd = s % 2 != 0;
    const bool t_odd = t % 2 != 0;
    if (!s_odd && !t_odd) return v + rat(t - s, 4);
    if (s_odd && t_odd) return v - rat(t - s, 4);
    return v;
}

/// Z_k(n) = (n mod k) F(floor(n/k) + 1, n) + (k - n mod k) F(floor(n/k), n),
/// the crossing count of the DDS drawing.
inline std::int64_t z_k(std::int64_t n, std::int64_t k) {
    detail::require(n >= 0, "z_k: n must be >= 0");
    detail::require(k >= 1, "z_k: k must be >= 1");
    if (k == 1) return to_int64(F(n, n), "z_k");
    const std::int64_t p = n / k;
    const std::int64_t q = n % k;
    const Rational z = Rational(q) * F(p + 1, n) + Rational(k - q) * F(p, n);
    const std::int64_t out = to_int64(z, "z_k");
    if (out < 0) throw InvariantError("z_k: negative crossing count");
    return out;
}

/// Coefficients of z^0..z^N of
///   z^{2k+1} ((k-2)(1-z) + 1 - z^{k+1}) / ((1-z)^3 (1-z^k)^3).
inline std::vector<std::int64_t> genfunc_coeffs(int k, int N) {
    detail::require(k >= 1 && N >= 0, "genfunc_coeffs: need k >= 1, N >= 0");
    std::vector<std::int64_t> c(static_cast<std::size_t>(N) + 1, 0);
    auto add = [&](std::int64_t power, std::int64_t coef) {
        if (power <= N) c[static_cast<std::size_t>(power)] += coef;
    };
    const std::int64_t base = 2 * static_cast<std::int64_t>(k) + 1;
    add(base, (k - 2) + 1);
    add(base + 1, -(k - 2));
    add(base + k + 1, -1);
    for (int rep = 0; rep < 3; ++rep)
        for (int x = 1; x <= N; ++x) c[x] += c[x - 1];
    for (int rep = 0; rep < 3; ++rep)
        for (int x = k; x <= N; ++x) c[x] += c[x - k];
    return c;
}

/// Z_3(n) from its three residue-class polynomials.
inline std::int64_t z3_piecewise(std::int64_t n) {
    detail::require(n >= 0, "z3_piecewise: n must be >= 0");
    Integer N(n);
    Integer num;
    switch (n % 3) {
        case 0: num = (N - 6) * (N - 3) * N * (5 * N - 9); break;
        case 1: num = (N - 4) * (N - 1) * (5 * N * N - 29 * N + 30); break;
        default: num = (N - 2) * (N - 3) * (N - 5) * (5 * N - 4); break;
    }
    return to_int64(Rational(num, Integer(648)), "z3_piecewise");
}

/// Z_k(n) as a single quartic when k divides n.
inline std::int64_t zk_divisible_poly(std::int64_t n, std::int64_t k) {
    detail::require(k >= 1 && n >= 0, "zk_divisible_poly: need k >= 1, n >= 0");
    detail::require(n % k == 0, "zk_divisible_poly: k must divide n");
    const Rational N(n);
    const Rational K(k);
    const Rational c4 = (Rational(1) / (12 * K * K)) * (Rational(1) - Rational(1) / (2 * K));
    const Rational c3 = -Rational(1) / (4 * K);
    const Rational c2 = rat(7, 24) / K + rat(1, 6);
    const Rational c1 = rat(-1, 4);
    const Rational v = ((c4 * N + c3) * N + c2) * N * N + c1 * N;
    return to_int64(v, "zk_divisible_poly");
}

/// k r Z_k(kr - 1) == (kr - 4) Z_k(kr).
inline bool odd_even_identity(std::int64_t k, std::int64_t r) {
    detail::require(k >= 1 && r >= 1, "odd_even_identity: need k, r >= 1");
    const Integer lhs = Integer(k * r) * z_k(k * r - 1, k);
    const Integer rhs = Integer(k * r - 4) * z_k(k * r, k);
    return lhs == rhs;
}

/// (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2).
inline std::int64_t z2_closed(std::int64_t n) {
    detail::require(n >= 0, "z2_closed: n must be >= 0");
    auto half = [](std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
    const Integer prod = Integer(half(n)) * half(n - 1) * half(n - 2) * half(n - 3);
    return to_int64(Rational(prod, Integer(4)), "z2_closed");
}

// ---------------------------------------------------------------------------
// Reference bounds from earlier work

enum class K4LowerVariant {
    LeadingTerm,  ///< (3/119) C(n,4), O(n^3) correction dropped
    Biplanar,     ///< n^4 / 952
};

struct PriorLowerBound {
    Rational coefficient;   ///< limit ratio lower bound on nu_k(K_n) / C(n,4)
    Rational value;         ///< bound on nu_k(K_n); 0 when !in_range
    bool in_range = false;  ///< n satisfies the stated range condition
    bool leading_term_only = false;  ///< k = 4 leading-term form (O(n^3) dropped)
};

/// Earlier lower bounds on nu_k(K_n) for k >= 3.
inline PriorLowerBound prior_lower_bound(int k, std::int64_t n,
                                         K4LowerVariant variant = K4LowerVariant::LeadingTerm) {
    detail::require(k >= 3, "prior_lower_bound: k must be >= 3");
    detail::require(n >= 0, "prior_lower_bound: n must be >= 0");
    PriorLowerBound out;
    const Rational c4(choose(n, 4));
    if (k == 4) {
        out.coefficient = rat(3, 119);
        out.in_range = true;
        if (variant == K4LowerVariant::Biplanar) {
            const Integer N(n);
            out.value = Rational(N * N * N * N, Integer(952));
        } else {
            out.value = out.coefficient * c4;
            out.leading_term_only = true;
        }
        return out;
    }
    const Rational K(k);
    if (k % 2 == 0) {
        out.coefficient = Rational(2) / ((3 * K - 2) * (3 * K - 2));
        out.in_range = Rational(n) >= K * K / 2 + 3 * K - 1;
    } else {
        out.coefficient = Rational(2) / ((3 * K + 1) * (3 * K + 1));
        out.in_range = Rational(n) >= K * K + 2 * K - rat(7, 2);
    }
    out.value = out.in_range ? out.coefficient * c4 : Rational(0);
    return out;
}

/// (2/k^2)(1 - 1/(2k)): limit of Z_k(n)/C(n,4) and leading ratio of the
/// earlier general upper bound.
inline Rational dds_limit_ratio(int k) {
    detail::require(k >= 1, "dds_limit_ratio: k must be >= 1");
    const Rational K(k);
    return Rational(2) / (K * K) * (Rational(1) - Rational(1) / (2 * K));
}

/// (2/k^2)(1 - 1/(2k)) C(n,4) + n^3/(2k).
inline Rational prior_upper_bound(int k, std::int64_t n) {
    detail::require(k >= 1 && n >= 0, "prior_upper_bound: need k >= 1, n >= 0");
    const Integer N(n);
    return dds_limit_ratio(k) * Rational(choose(n, 4)) + Rational(N * N * N, Integer(2 * k));
}

// ---------------------------------------------------------------------------
// Bound bookkeeping

struct BoundRecord {
    int k = 0;
    int n = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    bool exact = false;
    std::string lower_source;
    std::string upper_source;

    void validate() const {
        if (lower > upper)
            throw InvariantError("BoundRecord(" + std::to_string(k) + "," + std::to_string(n) +
                                 "): lower " + std::to_string(lower) + " > upper " + std::to_string(upper));
        if (exact && lower != upper) throw InvariantError("BoundRecord: exact flag with lower != upper");
    }
};

// ---------------------------------------------------------------------------
// Text format:
//   drawing n=<n> k=<k>
//   page 0: a-b a-b ...
//   ...
//   page <k-1>: ...

inline void write_drawing(const Drawing& dr, std::ostream& out) {
    out << "drawing n=" << dr.n() << " k=" << dr.k() << '\n';
    for (int p = 0; p < dr.k(); ++p) {
        out << "page " << p << ':';
        for (auto [a, b] : dr.page_edges(p)) out << ' ' << a << '-' << b;
        out << '\n';
    }
}

inline std::string drawing_to_string(const Drawing& dr) {
    std::ostringstream os;
    write_drawing(dr, os);
    return os.str();
}

inline Drawing read_drawing(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("drawing: missing header");
    int n = 0;
    int k = 0;
    if (std::sscanf(line.c_str(), "drawing n=%d k=%d", &n, &k) != 2 || n < 1 || k < 1)
        throw ParseError("drawing: bad header '" + line + "'");
    Drawing dr(n, k);
    for (int p = 0; p < k; ++p) {
        if (!std::getline(in, line)) throw ParseError("drawing: missing page " + std::to_string(p));
        std::istringstream ls(line);
        std::string word;
        std::string label;
        ls >> word >> label;
        if (word != "page" || label != std::to_string(p) + ":")
            throw ParseError("drawing: expected 'page " + std::to_string(p) + ":', got '" + line + "'");
        std::string tok;
        while (ls >> tok) {
            int a = -1;
            int b = -1;
            char dash = 0;
            std::istringstream ts(tok);
            if (!(ts >> a >> dash >> b) || dash != '-' || a < 0 || b < 0 || a >= n || b >= n || a == b)
                throw ParseError("drawing: bad edge token '" + tok + "'");
            if (dr.page(a, b) != -1) throw ParseError("drawing: edge " + tok + " listed twice");
            dr.set_page(a, b, p);
        }
    }
    if (!dr.is_total()) throw ParseError("drawing: some edges have no page");
    return dr;
}

inline Drawing drawing_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_drawing(is);
}

}  // namespace bookcross

#endif  // BOOKCROSS_DRAWINGS_HPP
