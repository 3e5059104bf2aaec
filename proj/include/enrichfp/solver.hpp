#pragma once

// Picard, Schaefer (averaged) and Jungck-Schaefer iterations with full traces.
//
// Iterate 0 is the seed and carries no residual. After every step n >= 1 the
// solver records u_n and residual r_n, then stops on the first of:
//   divergence  ||u_n|| > divergence_bound (or a non-finite evaluation)
//   convergence r_n <= tol
//   budget      n == max_iter

#include <enrichfp/errors.hpp>
#include <enrichfp/space.hpp>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace enrichfp {

enum class Scheme { Picard, Schaefer, JungckSchaefer };

inline const char* to_string(Scheme s)
{
    switch (s) {
    case Scheme::Picard: return "picard";
    case Scheme::Schaefer: return "schaefer";
    case Scheme::JungckSchaefer: return "jungck-schaefer";
    }
    return "?";
}

inline Scheme parse_scheme(const std::string& s)
{
    if (s == "picard") return Scheme::Picard;
    if (s == "schaefer") return Scheme::Schaefer;
    if (s == "jungck-schaefer" || s == "jungck") return Scheme::JungckSchaefer;
    throw InvalidConfig("unknown scheme '" + s + "' (expected picard, schaefer or jungck-schaefer)");
}

struct SolverConfig {
    Scheme scheme = Scheme::Schaefer;
    double c = 1.0;
    std::optional<double> delta;
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    double divergence_bound = 1e12;
    NormKind norm = NormKind::L2;
    Point seed_point;

    /// c = 1 / (1 + delta).
    static double c_from_delta(double delta)
    {
        if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be a finite value >= 0");
        return 1.0 / (1.0 + delta);
    }

    static SolverConfig with_delta(Scheme scheme, double delta, Point seed)
    {
        SolverConfig cfg;
        cfg.scheme = scheme;
        cfg.delta = delta;
        cfg.c = c_from_delta(delta);
        cfg.seed_point = std::move(seed);
        return cfg;
    }

    static SolverConfig with_c(Scheme scheme, double c, Point seed)
    {
        SolverConfig cfg;
        cfg.scheme = scheme;
        cfg.c = c;
        cfg.seed_point = std::move(seed);
        return cfg;
    }

    void validate() const
    {
        if (!(c > 0.0 && c <= 1.0)) throw InvalidConfig("c must lie in (0, 1]");
        if (delta && std::abs(c - c_from_delta(*delta)) > 1e-12) {
            throw InvalidConfig("c is inconsistent with delta (expected 1 / (1 + delta))");
        }
        if (!(tol > 0.0)) throw InvalidConfig("tol must be > 0");
        if (max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
        if (!(divergence_bound > 0.0)) throw InvalidConfig("divergence_bound must be > 0");
        if (seed_point.dim() == 0) throw InvalidConfig("seed point is not set");
    }
};

enum class Status { Converged, MaxIterExceeded, Diverged };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxIterExceeded: return "max-iter-exceeded";
    case Status::Diverged: return "diverged";
    }
    return "?";
}

struct IterationTrace {
    Scheme scheme = Scheme::Picard;
    std::vector<Point> iterates;   // iterates[0] is the seed
    std::vector<double> residuals; // residuals[n - 1] belongs to iterates[n]
    Status status = Status::MaxIterExceeded;
    std::size_t diverged_at = 0;   // iteration index when status == Diverged

    std::size_t iterations() const { return residuals.size(); }
    const Point& last() const { return iterates.back(); }
    double final_residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
    bool converged() const { return status == Status::Converged; }
    /// The limit u* when converged.
    std::optional<Point> limit() const
    {
        if (!converged()) return std::nullopt;
        return iterates.back();
    }
};

/// (f, S) with an explicit inverse of S, which the Jungck-Schaefer step needs
/// because S u_{n+1} = w only defines u_{n+1} implicitly.
struct PairProblem {
    Mapping f;
    Mapping s;
    std::function<Vector(const Vector&)> s_inverse;
    bool range_check = true; // check f(u_n) = S(S^{-1}(f(u_n))) along the run

    /// For affine S the inverse is built from an LU factorization of A_S.
    static PairProblem with_affine_s(Mapping f, Mapping s)
    {
        const auto* af = s.affine_form();
        if (af == nullptr) throw InvalidConfig("S is not affine; supply an inverse explicitly");
        detail::require_same_dim(f.dim(), s.dim(), "pair problem");
        Eigen::FullPivLU<Matrix> lu(af->a);
        if (!lu.isInvertible()) throw InvalidConfig("affine S is singular; no inverse exists");
        auto inv = [lu = std::move(lu), b = af->b](const Vector& w) -> Vector { return lu.solve(Vector(w - b)); };
        return {std::move(f), std::move(s), std::move(inv), true};
    }

    static PairProblem with_inverse(Mapping f, Mapping s, std::function<Vector(const Vector&)> s_inverse)
    {
        detail::require_same_dim(f.dim(), s.dim(), "pair problem");
        if (!s_inverse) throw InvalidConfig("S inverse is empty");
        return {std::move(f), std::move(s), std::move(s_inverse), true};
    }
};

namespace detail {

// Runs u_n = step(u_{n-1}) with the common stopping contract. The residual of
// a step is computed by `residual(prev, next)` from the raw vectors.
template <class Step, class Residual>
IterationTrace iterate(Scheme scheme, const SolverConfig& cfg, std::size_t dim, Step step, Residual residual)
{
    cfg.validate();
    require_same_dim(cfg.seed_point.dim(), dim, "seed point");
    IterationTrace tr;
    tr.scheme = scheme;
    tr.iterates.push_back(cfg.seed_point);
    Vector cur = cfg.seed_point.vec();
    for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
        Vector next = step(cur, n);
        const double r = residual(cur, next);
        if (!next.allFinite() || !std::isfinite(r) || vector_norm(next, cfg.norm) > cfg.divergence_bound) {
            tr.status = Status::Diverged;
            tr.diverged_at = n;
            if (next.allFinite() && std::isfinite(r)) {
                tr.iterates.emplace_back(std::move(next));
                tr.residuals.push_back(r);
            }
            return tr;
        }
        tr.iterates.emplace_back(next);
        tr.residuals.push_back(r);
        if (r <= cfg.tol) {
            tr.status = Status::Converged;
            return tr;
        }
        cur = std::move(next);
    }
    tr.status = Status::MaxIterExceeded;
    return tr;
}

inline void require_scheme(const SolverConfig& cfg, Scheme expected)
{
    if (cfg.scheme != expected) {
        throw InvalidConfig(std::string("solver expects scheme ") + to_string(expected) + ", config has " +
                            to_string(cfg.scheme));
    }
}

} // namespace detail

/// u_{n+1} = f(u_n).
inline IterationTrace run_picard(const Mapping& f, const SolverConfig& cfg)
{
    detail::require_scheme(cfg, Scheme::Picard);
    return detail::iterate(
        Scheme::Picard, cfg, f.dim(), [&](const Vector& u, std::size_t) { return f.eval_raw(u); },
        [&](const Vector& a, const Vector& b) { return detail::vector_norm(b - a, cfg.norm); });
}

/// u_n = (1 - c) u_{n-1} + c f(u_{n-1}); identical to Picard when c = 1.
inline IterationTrace run_schaefer(const Mapping& f, const SolverConfig& cfg)
{
    detail::require_scheme(cfg, Scheme::Schaefer);
    const double c = cfg.c;
    return detail::iterate(
        Scheme::Schaefer, cfg, f.dim(), [&](const Vector& u, std::size_t) { return detail::blend(c, u, f.eval_raw(u)); },
        [&](const Vector& a, const Vector& b) { return detail::vector_norm(b - a, cfg.norm); });
}

/// S u_{n+1} = (1 - c) S u_n + c f(u_n), solved for u_{n+1} through the inverse of S.
/// Residual is ||S u_{n+1} - S u_n||.
inline IterationTrace run_jungck_schaefer(const PairProblem& p, const SolverConfig& cfg)
{
    detail::require_scheme(cfg, Scheme::JungckSchaefer);
    detail::require_same_dim(p.f.dim(), p.s.dim(), "run_jungck_schaefer");
    const double c = cfg.c;
    const auto consistent = [&](const Vector& w, const Vector& back) {
        return detail::vector_norm(back - w, cfg.norm) <= cfg.tol * std::max(1.0, detail::vector_norm(w, cfg.norm));
    };
    return detail::iterate(
        Scheme::JungckSchaefer, cfg, p.f.dim(),
        [&](const Vector& u, std::size_t n) {
            const Vector fu = p.f.eval_raw(u);
            if (p.range_check && fu.allFinite()) {
                if (!consistent(fu, p.s.eval_raw(p.s_inverse(fu)))) {
                    throw InverseError("f(u_n) is not reproduced as S(S^-1(f(u_n))): f(B) may not lie in S(B)", n);
                }
            }
            const Vector w = detail::blend(c, p.s.eval_raw(u), fu);
            Vector next = p.s_inverse(w);
            if (w.allFinite() && next.allFinite() && !consistent(w, p.s.eval_raw(next))) {
                throw InverseError("S inverse is inconsistent at iteration " + std::to_string(n), n);
            }
            return next;
        },
        [&](const Vector& a, const Vector& b) { return detail::vector_norm(p.s.eval_raw(b) - p.s.eval_raw(a), cfg.norm); });
}

inline IterationTrace run(const Mapping& f, const SolverConfig& cfg)
{
    switch (cfg.scheme) {
    case Scheme::Picard: return run_picard(f, cfg);
    case Scheme::Schaefer: return run_schaefer(f, cfg);
    case Scheme::JungckSchaefer: break;
    }
    throw InvalidConfig("jungck-schaefer needs a pair problem");
}

inline bool verdict_fixed_point(const Mapping& f, const Point& u, NormKind k = NormKind::L2, double tol = 1e-9)
{
    return distance(f(u), u, k) <= tol;
}

inline bool verdict_common_fixed_point(const PairProblem& p, const Point& u, NormKind k = NormKind::L2,
                                       double tol = 1e-9)
{
    return distance(p.f(u), u, k) <= tol && distance(p.s(u), u, k) <= tol;
}

struct ProbeResult {
    bool all_agree = false;
    std::vector<Point> limit_points;         // one per converged start
    std::vector<Status> statuses;            // one per start
    std::vector<std::size_t> excluded;       // indices of starts that did not converge
    double max_spread = 0.0;                 // largest pairwise distance between limits
};

/// Runs Schaefer from every start; limits agree when all pairwise distances are <= 10 tol.
inline ProbeResult uniqueness_probe(const Mapping& f, const SolverConfig& cfg, std::span<const Point> starts)
{
    if (starts.size() < 2) throw InvalidInput("uniqueness_probe needs at least two start points");
    ProbeResult r;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        SolverConfig local = cfg;
        local.scheme = Scheme::Schaefer;
        local.seed_point = starts[i];
        const auto tr = run_schaefer(f, local);
        r.statuses.push_back(tr.status);
        if (tr.converged()) {
            r.limit_points.push_back(tr.last());
        } else {
            r.excluded.push_back(i);
        }
    }
    for (std::size_t i = 0; i < r.limit_points.size(); ++i) {
        for (std::size_t j = i + 1; j < r.limit_points.size(); ++j) {
            r.max_spread = std::max(r.max_spread, distance(r.limit_points[i], r.limit_points[j], cfg.norm));
        }
    }
    r.all_agree = r.limit_points.size() >= 2 && r.max_spread <= 10.0 * cfg.tol;
    return r;
}

} // namespace enrichfp
