#ifndef BOOKCROSS_SDPBOUND_HPP
#define BOOKCROSS_SDPBOUND_HPP

// Frieze-Jerrum bounds on max-k-cut(G_n), solved on the minimisation side
//
//   min  sum_v w_v + 1/(k-1) sum_{u,v} S_uv
//   s.t. Diag(w) - c L - S  PSD,  S >= 0,      c = (k-1)/(2k)
//
// either densely or reduced by the dihedral action on G_n (odd n). Any
// feasible point of the minimisation gives an upper bound on the cut, so
// certified bounds only ever come from repaired feasible points.
//
// Reduced form. Orbit i = 2..d, Z has symmetric circulant blocks with
// first rows X^(t)_ij (t = 0..d). In the Fourier basis block m of the LMI is
//
//   Diag(y - c val) + c lambda^A(m) - mu(m)
//   lambda^A_ij(m) = sum_t a_ij(t) cos(2 pi m t / n)   (full adjacency first row)
//   mu_ij(m)       = X^(0)_ij + 2 sum_{t=1..d} X^(t)_ij cos(2 pi m t / n)
//
// for m = 0..d, and sum(Z) = n sum_{i,j} mu_ij(0), so the objective is
//   n sum_i y_i + n/(k-1) sum_{i,j} mu_ij(0).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bookcross/chordgraph.hpp"
#include "bookcross/conic.hpp"
#include "bookcross/drawings.hpp"
#include "bookcross/error.hpp"
#include "bookcross/rational.hpp"

namespace bookcross {

/// A conic program for FJ_k together with what certification needs:
/// adding delta to every shift variable adds delta*I to every PSD block,
/// and nonneg variables are the entrywise-nonnegative ones.
struct FjModel {
    std::string method;  ///< "dense" or "reduced"
    int n = 0;           ///< chord graph order, 0 for an arbitrary input graph
    int k = 0;
    std::int64_t num_edges = 0;
    SdpProblem problem;
    std::vector<int> shift_vars;
    std::vector<int> nonneg_vars;
};

inline double fj_laplacian_coefficient(int k) { return (k - 1.0) / (2.0 * k); }

inline constexpr int kDenseVertexGuard = 300;

/// Dense model for an arbitrary simple graph on num_vertices vertices.
inline FjModel fj_dense_model(int num_vertices, const std::vector<std::pair<int, int>>& edges, int k) {
    detail::require(k >= 2, "fj_dense: k must be >= 2");
    detail::require(num_vertices >= 1, "fj_dense: empty graph");
    if (num_vertices > kDenseVertexGuard)
        throw InputError("fj_dense: " + std::to_string(num_vertices) + " vertices exceeds the dense guard of " +
                         std::to_string(kDenseVertexGuard));
    const int nv = num_vertices;
    const double c = fj_laplacian_coefficient(k);
    FjModel m;
    m.method = "dense";
    m.k = k;
    m.num_edges = static_cast<std::int64_t>(edges.size());
    auto& p = m.problem;
    const int psd = p.add_block(ConeKind::Psd, nv);
    const int lp = p.add_block(ConeKind::Nonneg, nv * (nv - 1) / 2);

    std::vector<int> degree(nv, 0);
    for (auto [u, v] : edges) {
        detail::require(u != v && u >= 0 && v >= 0 && u < nv && v < nv, "fj_dense: bad edge");
        ++degree[u];
        ++degree[v];
        p.add_offset(psd, u, v, c);  // -c L has +c off the diagonal
    }
    for (int v = 0; v < nv; ++v)
        if (degree[v] != 0) p.add_offset(psd, v, v, -c * degree[v]);

    for (int v = 0; v < nv; ++v) {
        const int w = p.add_var(1.0);
        p.add_coef(w, psd, v, v, 1.0);
        m.shift_vars.push_back(w);
    }
    int slot = 0;
    for (int u = 0; u < nv; ++u) {
        for (int v = u + 1; v < nv; ++v) {
            const int s = p.add_var(2.0 / (k - 1));
            p.add_coef(s, psd, u, v, -1.0);
            p.add_coef(s, lp, slot, slot, 1.0);
            m.nonneg_vars.push_back(s);
            ++slot;
        }
    }
    return m;
}

inline FjModel fj_dense_model(const ChordGraph& g, int k) {
    FjModel m = fj_dense_model(g.num_vertices(), g.edges(), k);
    m.n = g.n();
    return m;
}

/// val_i = i(i-1) + 2(i-1)(d-i): degree of a vertex in orbit i.
inline int orbit_valency(int i, int n) {
    const int d = n / 2;
    return i * (i - 1) + 2 * (i - 1) * (d - i);
}

/// lambda^A_ij(m) for the adjacency block (i, j), i <= j.
inline double adjacency_eigenvalue(int i, int j, int m, int n) {
    const auto spec = block_first_row(i, j, n);
    double acc = 0.0;
    for (int t = 0; t < n; ++t)
        if (spec.first_row[t] != 0) acc += spec.first_row[t] * std::cos(2.0 * std::numbers::pi * m * t / n);
    return acc;
}

/// Index layout of the reduced program's variables.
struct ReducedLayout {
    int n = 0;
    int d = 0;

    int orbits() const { return d - 1; }
    int pairs() const { return orbits() * (orbits() + 1) / 2; }
    int y(int i) const { return i - 2; }
    int pair_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        const int a = i - 2;
        const int b = j - 2;
        return a * orbits() - a * (a - 1) / 2 + (b - a);
    }
    int x(int t, int i, int j) const { return orbits() + t * pairs() + pair_index(i, j); }
    int num_vars() const { return orbits() + (d + 1) * pairs(); }
};

inline FjModel fj_reduced_model(int n, int k) {
    if (n % 2 == 0) throw UnsupportedError("assemble_reduced: the reduced program needs odd n");
    detail::require(n >= 7, "assemble_reduced: n must be >= 7");
    detail::require(k >= 2, "assemble_reduced: k must be >= 2");
    const ReducedLayout lay{n, n / 2};
    const int d = lay.d;
    const int r = lay.orbits();
    const double c = fj_laplacian_coefficient(k);

    FjModel m;
    m.method = "reduced";
    m.n = n;
    m.k = k;
    m.num_edges = choose(n, 4);
    auto& p = m.problem;
    std::vector<int> lmi(d + 1);
    for (int mm = 0; mm <= d; ++mm) lmi[mm] = p.add_block(ConeKind::Psd, r);
    const int lp = p.add_block(ConeKind::Nonneg, (d + 1) * lay.pairs());

    std::vector<std::vector<double>> cosine(d + 1, std::vector<double>(d + 1));
    for (int mm = 0; mm <= d; ++mm)
        for (int t = 0; t <= d; ++t) cosine[mm][t] = std::cos(2.0 * std::numbers::pi * mm * t / n);

    for (int mm = 0; mm <= d; ++mm) {
        for (int i = 2; i <= d; ++i) {
            p.add_offset(lmi[mm], i - 2, i - 2, -c * orbit_valency(i, n));
            for (int j = i; j <= d; ++j) {
                const double lam = adjacency_eigenvalue(i, j, mm, n);
                if (lam != 0.0) p.add_offset(lmi[mm], i - 2, j - 2, c * lam);
            }
        }
    }
    for (int i = 2; i <= d; ++i) {
        const int v = p.add_var(n);
        for (int mm = 0; mm <= d; ++mm) p.add_coef(v, lmi[mm], i - 2, i - 2, 1.0);
        m.shift_vars.push_back(v);
    }
    for (int t = 0; t <= d; ++t) {
        const double wt = t == 0 ? 1.0 : 2.0;
        for (int i = 2; i <= d; ++i) {
            for (int j = i; j <= d; ++j) {
                const double ordered = i == j ? 1.0 : 2.0;
                const int v = p.add_var(n / (k - 1.0) * wt * ordered);
                detail::require(v == lay.x(t, i, j), "assemble_reduced: layout mismatch");
                for (int mm = 0; mm <= d; ++mm) p.add_coef(v, lmi[mm], i - 2, j - 2, -wt * cosine[mm][t]);
                const int slot = v - r;
                p.add_coef(v, lp, slot, slot, 1.0);
                m.nonneg_vars.push_back(v);
            }
        }
    }
    return m;
}

inline SdpProblem assemble_reduced(int n, int k) { return fj_reduced_model(n, k).problem; }

/// Structured view of a reduced solution.
struct ReducedFJ {
    int n = 0;
    int k = 0;
    int d = 0;
    std::vector<double> y;                      ///< y_i at index i-2
    std::vector<Eigen::MatrixXd> x_blocks;      ///< X^(0..d)
    std::vector<int> val;                       ///< val_i at index i-2
    std::vector<Eigen::MatrixXd> lambda_blocks; ///< Lambda^(0..d)
};

inline ReducedFJ reduced_view(int n, int k, const std::vector<double>& vars) {
    const ReducedLayout lay{n, n / 2};
    detail::require(static_cast<int>(vars.size()) == lay.num_vars(), "reduced_view: wrong variable count");
    const int d = lay.d;
    const int r = lay.orbits();
    const double c = fj_laplacian_coefficient(k);
    ReducedFJ out{n, k, d, {}, {}, {}, {}};
    for (int i = 2; i <= d; ++i) {
        out.y.push_back(vars[lay.y(i)]);
        out.val.push_back(orbit_valency(i, n));
    }
    for (int t = 0; t <= d; ++t) {
        Eigen::MatrixXd x(r, r);
        for (int i = 2; i <= d; ++i)
            for (int j = 2; j <= d; ++j) x(i - 2, j - 2) = vars[lay.x(t, i, j)];
        out.x_blocks.push_back(x);
    }
    for (int mm = 0; mm <= d; ++mm) {
        Eigen::MatrixXd lam(r, r);
        for (int i = 2; i <= d; ++i) {
            for (int j = i; j <= d; ++j) {
                double mu = out.x_blocks[0](i - 2, j - 2);
                for (int t = 1; t <= d; ++t)
                    mu += 2.0 * out.x_blocks[t](i - 2, j - 2) * std::cos(2.0 * std::numbers::pi * mm * t / n);
                lam(i - 2, j - 2) = lam(j - 2, i - 2) = c * adjacency_eigenvalue(i, j, mm, n) - mu;
            }
        }
        out.lambda_blocks.push_back(lam);
    }
    return out;
}

struct FjResult {
    FjModel model;
    SdpSolution solution;
};

inline FjResult solve_fj(FjModel model, double tol = 1e-8) {
    ConicOptions opt;
    opt.tol = tol;
    SdpSolution sol = solve_conic(model.problem, opt);
    return {std::move(model), std::move(sol)};
}

inline FjResult fj_dense(const ChordGraph& g, int k, double tol = 1e-8) { return solve_fj(fj_dense_model(g, k), tol); }

inline FjResult fj_reduced(int n, int k, double tol = 1e-8) { return solve_fj(fj_reduced_model(n, k), tol); }

/// Reduced program for odd n, dense otherwise.
inline FjResult fj_auto(int n, int k, double tol = 1e-8) {
    if (n % 2 == 1 && n >= 7) return fj_reduced(n, k, tol);
    return fj_dense(ChordGraph(n), k, tol);
}

// ---------------------------------------------------------------------------
// Certification

struct CertifiedBound {
    int n = 0;
    int k = 0;
    double fj_value = 0.0;   ///< objective at the repaired feasible point
    std::int64_t nu_lower = 0;
    double certificate_feasibility_margin = 0.0;  ///< shift added to every y
    std::string method;
};

struct CertifiedPoint {
    std::vector<double> y;
    double objective = 0.0;
    double shift = 0.0;
    double min_eigenvalue = 0.0;  ///< of the repaired slack, before rounding guard
};

/// Clamps nonnegative variables, then raises every shift variable by the
/// worst PSD violation plus extra_margin. The result is feasible up to the
/// accuracy of the eigenvalue computation, which extra_margin covers.
inline CertifiedPoint repair_feasibility(const FjModel& model, std::vector<double> y, double extra_margin = 0.0) {
    detail::require(static_cast<int>(y.size()) == model.problem.num_vars(), "certify: wrong variable count");
    detail::require(extra_margin >= 0.0, "certify: margin must be >= 0");
    for (int v : model.nonneg_vars) y[v] = std::max(0.0, y[v]);
    const BlockValues s = evaluate_slack(model.problem, y);
    double lmin = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t b = 0; b < model.problem.blocks.size(); ++b) {
        if (model.problem.blocks[b].kind != ConeKind::Psd) continue;
        scale = std::max(scale, s[b].cwiseAbs().maxCoeff() * s[b].rows());
        lmin = std::min(lmin, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s[b], Eigen::EigenvaluesOnly).eigenvalues()(0));
    }
    // Guards the eigensolver's backward error.
    const double guard = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    const double shift = std::max(0.0, -lmin) + guard + extra_margin;
    for (int v : model.shift_vars) y[v] += shift;
    long double obj = 0.0L;
    for (int i = 0; i < model.problem.num_vars(); ++i)
        obj += static_cast<long double>(model.problem.objective[i]) * y[i];
    return {std::move(y), static_cast<double>(obj), shift, lmin + shift};
}

inline CertifiedBound certify_bound(const FjModel& model, const SdpSolution& sol, double extra_margin = 0.0) {
    if (sol.status == SdpStatus::Failed)
        throw InvariantError("certify_bound: solver failed (" + sol.message + "); refusing to certify");
    const CertifiedPoint pt = repair_feasibility(model, sol.y, extra_margin);
    const double e = static_cast<double>(model.num_edges);
    // A repair this large means the iterate was nowhere near feasible.
    if (pt.shift * model.shift_vars.size() > 1e-2 * (1.0 + std::abs(sol.objective_value)) + extra_margin * model.shift_vars.size())
        throw InvariantError("certify_bound: repair shift " + std::to_string(pt.shift) + " too large; refusing to certify");
    CertifiedBound out;
    out.n = model.n;
    out.k = model.k;
    out.fj_value = pt.objective;
    out.certificate_feasibility_margin = pt.shift;
    out.method = model.method;
    const double slack = 1e-9 * (1.0 + std::abs(pt.objective));
    out.nu_lower = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(e - pt.objective - slack)));
    return out;
}

inline CertifiedBound certify_bound(const FjResult& r, double extra_margin = 0.0) {
    return certify_bound(r.model, r.solution, extra_margin);
}

/// Lower bound on nu_k(K_m)/C(m,4) from a certified FJ value, clamped at 0.
inline double fj_ratio(int m, double fj_value) {
    const double c = static_cast<double>(choose(m, 4));
    return std::max(0.0, (c - fj_value) / c);
}

/// ratio * C(n,4); valid because nu_k(K_n)/C(n,4) is non-decreasing in n.
inline double lift_bound(int m, double ratio, std::int64_t n) {
    detail::require(m >= 4, "lift_bound: m must be >= 4");
    detail::require(n > m, "lift_bound: need n > m");
    detail::require(ratio >= 0.0, "lift_bound: ratio must be >= 0");
    return ratio * static_cast<double>(choose(n, 4));
}

inline Rational lift_bound(int m, const Rational& ratio, std::int64_t n) {
    detail::require(m >= 4, "lift_bound: m must be >= 4");
    detail::require(n > m, "lift_bound: need n > m");
    detail::require(ratio >= 0, "lift_bound: ratio must be >= 0");
    return ratio * Rational(choose(n, 4));
}

/// Approximation guarantees alpha_k of the FJ rounding, k = 3..10.
inline double alpha_k(int k) {
    static constexpr double table[] = {0.836008, 0.857487, 0.876610, 0.891543,
                                       0.903259, 0.912664, 0.920367, 0.926788};
    if (k < 3 || k > 10) throw UnsupportedError("alpha_k: tabulated only for 3 <= k <= 10");
    return table[k - 3];
}

/// C(n,4) - alpha_k FJ_k(G_n).
inline double alpha_upper_bound(int n, int k, double fj_value) {
    return static_cast<double>(choose(n, 4)) - alpha_k(k) * fj_value;
}

// ---------------------------------------------------------------------------
// Limit table

struct LimitRow {
    int k = 0;
    double prior_lower = 0.0;
    std::optional<double> fj_lower;  ///< empty when no FJ value was supplied
    double dds_upper = 0.0;
    std::optional<double> quotient;
};

/// Rows (k, prior lower, FJ lower at m, DDS upper, quotient). fj_values
/// maps k to a certified FJ_k(G_m); missing k leave gaps.
inline std::vector<LimitRow> limit_table(int k_min, int k_max, int m, const std::map<int, double>& fj_values) {
    detail::require(3 <= k_min && k_min <= k_max, "limit_table: need 3 <= k_min <= k_max");
    detail::require(m >= 5 && m % 2 == 1, "limit_table: m must be odd and >= 5");
    std::vector<LimitRow> rows;
    for (int k = k_min; k <= k_max; ++k) {
        LimitRow row;
        row.k = k;
        row.prior_lower = to_double(prior_lower_bound(k, m).coefficient);
        row.dds_upper = to_double(dds_limit_ratio(k));
        if (auto it = fj_values.find(k); it != fj_values.end()) {
            row.fj_lower = fj_ratio(m, it->second);
            row.quotient = *row.fj_lower / row.dds_upper;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bookcross

#endif  // BOOKCROSS_SDPBOUND_HPP
