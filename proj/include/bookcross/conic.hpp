#ifndef BOOKCROSS_CONIC_HPP
#define BOOKCROSS_CONIC_HPP

// A small primal-dual interior-point solver for block-diagonal conic
// programs over PSD blocks and nonnegative orthants.
//
// Problem data describe the slack of a linear matrix inequality in free
// scalar variables y:
//
//   (min side)  minimise  c^T y   s.t.  S(y) = offset + sum_i y_i A_i  in K
//   (max side)  maximise -<offset, X>  s.t.  <A_i, X> = c_i,  X in K
//
// where K is a product of PSD cones and nonnegative orthants. Any y with
// S(y) in K gives c^T y as an upper bound on the max side; the bound
// machinery in sdpbound.hpp only ever uses that direction.
//
// Search direction: HKM with Mehrotra predictor-corrector and an
// infeasible start.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bookcross/error.hpp"

namespace bookcross {

enum class ConeKind { Psd, Nonneg };

struct ConeBlock {
    ConeKind kind = ConeKind::Psd;
    int dim = 0;
};

/// One structural nonzero of a symmetric block matrix, stored with
/// row <= col; the (col, row) mirror is implied. Nonneg blocks use
/// row == col (the orthant coordinate).
struct BlockEntry {
    int block = 0;
    int row = 0;
    int col = 0;
    double value = 0.0;
};

struct SdpProblem {
    std::vector<ConeBlock> blocks;
    std::vector<double> objective;                 ///< c, one per variable
    std::vector<std::vector<BlockEntry>> columns;  ///< A_i, one per variable
    std::vector<BlockEntry> offset;                ///< constant term of S(y)

    int num_vars() const { return static_cast<int>(objective.size()); }

    int add_block(ConeKind kind, int dim) {
        blocks.push_back({kind, dim});
        return static_cast<int>(blocks.size()) - 1;
    }

    int add_var(double cost) {
        objective.push_back(cost);
        columns.emplace_back();
        return num_vars() - 1;
    }

    void add_coef(int var, int block, int row, int col, double value) {
        if (row > col) std::swap(row, col);
        columns.at(var).push_back({block, row, col, value});
    }

    void add_offset(int block, int row, int col, double value) {
        if (row > col) std::swap(row, col);
        offset.push_back({block, row, col, value});
    }

    /// Throws InputError on out-of-range indices or off-diagonal entries
    /// in orthant blocks.
    void validate() const {
        detail::require(columns.size() == objective.size(), "sdp: objective/column count mismatch");
        auto check = [&](const BlockEntry& e) {
            detail::require(e.block >= 0 && e.block < static_cast<int>(blocks.size()), "sdp: block index");
            const auto& b = blocks[e.block];
            detail::require(e.row >= 0 && e.col < b.dim, "sdp: entry outside block");
            if (b.kind == ConeKind::Nonneg) detail::require(e.row == e.col, "sdp: off-diagonal entry in orthant block");
            detail::require(std::isfinite(e.value), "sdp: non-finite coefficient");
        };
        for (const auto& col : columns)
            for (const auto& e : col) check(e);
        for (const auto& e : offset) check(e);
    }
};

enum class SdpStatus { Optimal, FeasibleSuboptimal, Failed };

inline const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "optimal";
        case SdpStatus::FeasibleSuboptimal: return "feasible-suboptimal";
        default: return "failed";
    }
}

/// Block values: PSD blocks as dense symmetric matrices, orthant blocks
/// as vectors (stored in a one-column matrix).
using BlockValues = std::vector<Eigen::MatrixXd>;

struct SdpSolution {
    SdpStatus status = SdpStatus::Failed;
    std::vector<double> y;
    BlockValues x;  ///< max-side variable
    BlockValues s;  ///< slack iterate
    double objective_value = 0.0;  ///< c^T y (min side)
    double dual_objective = 0.0;   ///< -<offset, X> (max side)
    double primal_residual = 0.0;  ///< ||c - A^T(X)|| / (1 + ||c||)
    double dual_residual = 0.0;    ///< ||S(y) - S|| / (1 + ||offset||)
    double relative_gap = 0.0;
    double min_eigenvalue_slack = 0.0;  ///< min eigenvalue / entry of S(y), recomputed from y
    int iterations = 0;
    std::string message;
};

struct ConicOptions {
    double tol = 1e-8;
    int max_iterations = 200;
    double step_fraction = 0.95;
    bool verbose = false;
};

namespace detail {

struct Expanded {
    int row;
    int col;
    double value;
};

// A_i restricted to one block, with symmetric entries expanded.
struct BlockColumn {
    int var;
    std::vector<Expanded> entries;
};

class ConicData {
public:
    explicit ConicData(const SdpProblem& p) : p_(p) {
        p.validate();
        const int nb = static_cast<int>(p.blocks.size());
        per_block_.assign(nb, {});
        for (int i = 0; i < p.num_vars(); ++i) {
            std::vector<std::vector<Expanded>> by_block(nb);
            for (const auto& e : p.columns[i]) {
                by_block[e.block].push_back({e.row, e.col, e.value});
                if (e.row != e.col) by_block[e.block].push_back({e.col, e.row, e.value});
            }
            for (int b = 0; b < nb; ++b)
                if (!by_block[b].empty()) per_block_[b].push_back({i, std::move(by_block[b])});
        }
        total_dim_ = 0;
        for (const auto& b : p.blocks) total_dim_ += b.dim;
    }

    const SdpProblem& problem() const { return p_; }
    int total_dim() const { return total_dim_; }

    BlockValues zeros() const {
        BlockValues v;
        for (const auto& b : p_.blocks)
            v.push_back(b.kind == ConeKind::Psd ? Eigen::MatrixXd::Zero(b.dim, b.dim)
                                                : Eigen::MatrixXd::Zero(b.dim, 1));
        return v;
    }

    BlockValues identity(double scale) const {
        BlockValues v = zeros();
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (p_.blocks[b].kind == ConeKind::Psd)
                v[b].diagonal().setConstant(scale);
            else
                v[b].setConstant(scale);
        }
        return v;
    }

    /// offset + sum_i y_i A_i
    BlockValues slack(const std::vector<double>& y) const {
        BlockValues s = zeros();
        add_entries(s, p_.offset, 1.0);
        for (int i = 0; i < p_.num_vars(); ++i)
            if (y[i] != 0.0) add_entries(s, p_.columns[i], y[i]);
        return s;
    }

    /// sum_i dy_i A_i
    BlockValues apply(const Eigen::VectorXd& dy) const {
        BlockValues s = zeros();
        for (int i = 0; i < p_.num_vars(); ++i)
            if (dy[i] != 0.0) add_entries(s, p_.columns[i], dy[i]);
        return s;
    }

    /// <A_i, G> for every i (G need not be symmetric: uses tr(A_i G)).
    Eigen::VectorXd adjoint(const BlockValues& g) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(p_.num_vars());
        for (std::size_t b = 0; b < per_block_.size(); ++b) {
            const bool psd = p_.blocks[b].kind == ConeKind::Psd;
            for (const auto& bc : per_block_[b]) {
                double acc = 0.0;
                for (const auto& e : bc.entries) acc += e.value * (psd ? g[b](e.col, e.row) : g[b](e.row, 0));
                out[bc.var] += acc;
            }
        }
        return out;
    }

    /// Schur complement M_ij = sum_blocks tr(A_i X A_j S^{-1}).
    Eigen::MatrixXd schur(const BlockValues& x, const BlockValues& sinv) const {
        const int m = p_.num_vars();
        Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t b = 0; b < per_block_.size(); ++b) {
            const auto& cols = per_block_[b];
            if (p_.blocks[b].kind == ConeKind::Nonneg) {
                // Orthant: M_ij += sum_l a_il a_jl x_l / s_l; group by coordinate.
                std::vector<std::vector<std::pair<int, double>>> at(p_.blocks[b].dim);
                for (const auto& bc : cols)
                    for (const auto& e : bc.entries) at[e.row].push_back({bc.var, e.value});
                for (int l = 0; l < p_.blocks[b].dim; ++l) {
                    const double w = x[b](l, 0) * sinv[b](l, 0);
                    for (const auto& [i, ai] : at[l])
                        for (const auto& [j, aj] : at[l])
                            if (i <= j) mat(i, j) += ai * aj * w;
                }
                continue;
            }
            const Eigen::MatrixXd& xb = x[b];
            const Eigen::MatrixXd& sb = sinv[b];
            for (std::size_t ii = 0; ii < cols.size(); ++ii) {
                const auto& ci = cols[ii];
                for (std::size_t jj = ii; jj < cols.size(); ++jj) {
                    const auto& cj = cols[jj];
                    double acc = 0.0;
                    for (const auto& ei : ci.entries)
                        for (const auto& ej : cj.entries) acc += ei.value * ej.value * xb(ei.col, ej.row) * sb(ej.col, ei.row);
                    const int i = std::min(ci.var, cj.var);
                    const int j = std::max(ci.var, cj.var);
                    mat(i, j) += acc;
                }
            }
        }
        mat.triangularView<Eigen::StrictlyLower>() = mat.transpose().triangularView<Eigen::StrictlyLower>();
        return mat;
    }

private:
    void add_entries(BlockValues& s, const std::vector<BlockEntry>& entries, double scale) const {
        for (const auto& e : entries) {
            if (p_.blocks[e.block].kind == ConeKind::Nonneg) {
                s[e.block](e.row, 0) += scale * e.value;
            } else {
                s[e.block](e.row, e.col) += scale * e.value;
                if (e.row != e.col) s[e.block](e.col, e.row) += scale * e.value;
            }
        }
    }

    const SdpProblem& p_;
    std::vector<std::vector<BlockColumn>> per_block_;
    int total_dim_ = 0;
};

inline double inner(const BlockValues& a, const BlockValues& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].cwiseProduct(b[i]).sum();
    return acc;
}

inline double frob(const BlockValues& a) { return std::sqrt(inner(a, a)); }

inline BlockValues axpy(const BlockValues& x, double alpha, const BlockValues& d) {
    BlockValues out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * d[i];
    return out;
}

/// Largest step in [0, inf) keeping x + alpha d in the cone (inf if unbounded).
inline double max_step(const std::vector<ConeBlock>& blocks, const BlockValues& x, const BlockValues& d) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].kind == ConeKind::Nonneg) {
            for (int l = 0; l < blocks[b].dim; ++l)
                if (d[b](l, 0) < 0) alpha = std::min(alpha, -x[b](l, 0) / d[b](l, 0));
            continue;
        }
        Eigen::LLT<Eigen::MatrixXd> llt(x[b]);
        if (llt.info() != Eigen::Success) return 0.0;
        Eigen::MatrixXd t = llt.matrixL().solve(d[b]);
        t = llt.matrixL().solve(t.transpose()).transpose();
        t = 0.5 * (t + t.transpose());
        const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly).eigenvalues()(0);
        if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

inline bool invert_blocks(const std::vector<ConeBlock>& blocks, const BlockValues& s, BlockValues& out) {
    out.resize(s.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].kind == ConeKind::Nonneg) {
            out[b] = s[b].cwiseInverse();
            continue;
        }
        Eigen::LLT<Eigen::MatrixXd> llt(s[b]);
        if (llt.info() != Eigen::Success) return false;
        out[b] = llt.solve(Eigen::MatrixXd::Identity(s[b].rows(), s[b].cols()));
        out[b] = 0.5 * (out[b] + out[b].transpose());
    }
    return true;
}

}  // namespace detail

/// Smallest eigenvalue (PSD blocks) or entry (orthant blocks) over all blocks.
inline double min_cone_eigenvalue(const SdpProblem& p, const BlockValues& s) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (p.blocks[b].dim == 0) continue;
        if (p.blocks[b].kind == ConeKind::Nonneg) {
            m = std::min(m, s[b].minCoeff());
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s[b], Eigen::EigenvaluesOnly);
            m = std::min(m, es.eigenvalues()(0));
        }
    }
    return m;
}

/// S(y) evaluated from the problem data.
inline BlockValues evaluate_slack(const SdpProblem& p, const std::vector<double>& y) {
    return detail::ConicData(p).slack(y);
}

inline SdpSolution solve_conic(const SdpProblem& p, const ConicOptions& opt = {}) {
    const detail::ConicData data(p);
    const int m = p.num_vars();
    const double n_total = std::max(1, data.total_dim());
    Eigen::Map<const Eigen::VectorXd> c(p.objective.data(), m);

    double scale = 1.0;
    for (const auto& e : p.offset) scale = std::max(scale, std::abs(e.value));
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(p.objective[i]));
    const double start = 10.0 * std::sqrt(scale);

    SdpSolution sol;
    BlockValues x = data.identity(start);
    BlockValues s = data.identity(start);
    std::vector<double> y(m, 0.0);
    const double c_norm = c.norm();
    double off_norm = 0.0;
    for (const auto& e : p.offset) off_norm += e.value * e.value * (e.row == e.col ? 1 : 2);
    off_norm = std::sqrt(off_norm);

    auto finish = [&](SdpStatus st, const std::string& msg) {
        sol.status = st;
        sol.message = msg;
        sol.y = y;
        sol.x = x;
        sol.s = s;
        sol.objective_value = c.dot(Eigen::Map<const Eigen::VectorXd>(y.data(), m));
        const BlockValues sy = data.slack(y);
        sol.min_eigenvalue_slack = min_cone_eigenvalue(p, sy);
        BlockValues off = data.slack(std::vector<double>(m, 0.0));
        sol.dual_objective = -detail::inner(off, x);
        return sol;
    };

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        sol.iterations = iter;
        const BlockValues sy = data.slack(y);
        BlockValues rd = sy;  // S(y) - S
        for (std::size_t b = 0; b < rd.size(); ++b) rd[b] -= s[b];
        const Eigen::VectorXd rp = c - data.adjoint(x);
        const double pobj = c.dot(Eigen::Map<const Eigen::VectorXd>(y.data(), m));
        const double dobj = -detail::inner(data.slack(std::vector<double>(m, 0.0)), x);
        const double mu = detail::inner(x, s) / n_total;
        sol.primal_residual = rp.norm() / (1.0 + c_norm);
        sol.dual_residual = detail::frob(rd) / (1.0 + off_norm);
        sol.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        if (opt.verbose)
            std::fprintf(stderr, "it %3d pobj %.10e dobj %.10e gap %.2e pinf %.2e dinf %.2e mu %.2e\n", iter, pobj,
                         dobj, sol.relative_gap, sol.primal_residual, sol.dual_residual, mu);
        if (sol.relative_gap < opt.tol && sol.primal_residual < opt.tol && sol.dual_residual < opt.tol)
            return finish(SdpStatus::Optimal, "converged");
        if (!std::isfinite(pobj) || !std::isfinite(dobj)) return finish(SdpStatus::Failed, "non-finite iterate");

        BlockValues sinv;
        if (!detail::invert_blocks(p.blocks, s, sinv)) return finish(SdpStatus::Failed, "slack lost definiteness");

        Eigen::MatrixXd schur = data.schur(x, sinv);
        Eigen::LLT<Eigen::MatrixXd> llt(schur);
        Eigen::LDLT<Eigen::MatrixXd> ldlt;
        bool use_llt = llt.info() == Eigen::Success;
        if (!use_llt) {
            ldlt.compute(schur);
            if (ldlt.info() != Eigen::Success) return finish(SdpStatus::Failed, "Schur complement factorisation failed");
        }
        auto solve_schur = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
            return use_llt ? Eigen::VectorXd(llt.solve(r)) : Eigen::VectorXd(ldlt.solve(r));
        };

        // dX = (sigma mu I - X S - X dS - corr) S^{-1}, with dS = A(dy) + Rd.
        auto direction = [&](double sigma_mu, const BlockValues* corr, BlockValues& dx, Eigen::VectorXd& dy,
                             BlockValues& ds) {
            BlockValues g = data.zeros();
            for (std::size_t b = 0; b < g.size(); ++b) {
                if (p.blocks[b].kind == ConeKind::Nonneg) {
                    g[b] = (sigma_mu * sinv[b].array() - x[b].array() - x[b].array() * rd[b].array() * sinv[b].array())
                               .matrix();
                    if (corr) g[b] -= ((*corr)[b].array() * sinv[b].array()).matrix();
                } else {
                    g[b] = sigma_mu * sinv[b] - x[b] - x[b] * rd[b] * sinv[b];
                    if (corr) g[b] -= (*corr)[b] * sinv[b];
                }
            }
            const Eigen::VectorXd rhs = data.adjoint(g) - rp;
            dy = solve_schur(rhs);
            ds = data.apply(dy);
            for (std::size_t b = 0; b < ds.size(); ++b) ds[b] += rd[b];
            dx = data.zeros();
            for (std::size_t b = 0; b < dx.size(); ++b) {
                if (p.blocks[b].kind == ConeKind::Nonneg) {
                    dx[b] = (sigma_mu * sinv[b].array() - x[b].array() - x[b].array() * ds[b].array() * sinv[b].array())
                                .matrix();
                    if (corr) dx[b] -= ((*corr)[b].array() * sinv[b].array()).matrix();
                } else {
                    Eigen::MatrixXd t = sigma_mu * sinv[b] - x[b] - x[b] * ds[b] * sinv[b];
                    if (corr) t -= (*corr)[b] * sinv[b];
                    dx[b] = 0.5 * (t + t.transpose());
                }
            }
        };

        BlockValues dxa;
        BlockValues dsa;
        Eigen::VectorXd dya;
        direction(0.0, nullptr, dxa, dya, dsa);
        const double ap_aff = std::min(1.0, detail::max_step(p.blocks, x, dxa));
        const double ad_aff = std::min(1.0, detail::max_step(p.blocks, s, dsa));
        const double mu_aff = detail::inner(detail::axpy(x, ap_aff, dxa), detail::axpy(s, ad_aff, dsa)) / n_total;
        double sigma = std::pow(std::max(0.0, mu_aff) / std::max(mu, 1e-300), 3);
        sigma = std::clamp(sigma, 0.0, 1.0);

        BlockValues corr = data.zeros();
        for (std::size_t b = 0; b < corr.size(); ++b) {
            if (p.blocks[b].kind == ConeKind::Nonneg)
                corr[b] = (dxa[b].array() * dsa[b].array()).matrix();
            else
                corr[b] = dxa[b] * dsa[b];
        }
        BlockValues dx;
        BlockValues ds;
        Eigen::VectorXd dy;
        direction(sigma * mu, &corr, dx, dy, ds);

        const double ap = std::min(1.0, opt.step_fraction * detail::max_step(p.blocks, x, dx));
        const double ad = std::min(1.0, opt.step_fraction * detail::max_step(p.blocks, s, ds));
        if (!(ap > 0) || !(ad > 0) || !std::isfinite(dy.norm()))
            return finish(SdpStatus::Failed, "zero step length");
        x = detail::axpy(x, ap, dx);
        s = detail::axpy(s, ad, ds);
        for (int i = 0; i < m; ++i) y[i] += ad * dy[i];
    }
    const bool feasible = min_cone_eigenvalue(p, data.slack(y)) >= 0;
    return finish(feasible ? SdpStatus::FeasibleSuboptimal : SdpStatus::Failed, "iteration limit");
}

}  // namespace bookcross

#endif  // BOOKCROSS_CONIC_HPP
