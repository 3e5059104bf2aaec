#pragma once

// Sampled certificate checkers for the enriched Hardy-Rogers family:
//
//   HR            ||d(u-v) + fu - fv||          <= M(u, v)
//   Jungck HR     ||d(Su-Sv) + fu - fv||        <= M_S(u, v)
//   C-class HR    psi(||d(u-v) + fu - fv||)     <= G(psi(M), phi(M))
//   C-class JHR   psi(||d(Su-Sv) + fu - fv||)   <= G(psi(M_S), phi(M_S))
//
// where M = c1|u-v| + c2|u-fu| + c3|u-fv| + c4|v-fu| + c5|v-fv| and M_S is the
// same sum with u, v replaced by Su, Sv in the first slot of each term.

#include <enrichfp/cclass.hpp>
#include <enrichfp/errors.hpp>
#include <enrichfp/rng.hpp>
#include <enrichfp/space.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace enrichfp {

enum class SumMode { StrictlyLessOne, ExactlyOne };

inline const char* to_string(SumMode m) { return m == SumMode::StrictlyLessOne ? "strictly-less-one" : "exactly-one"; }

struct Coefficients {
    double delta = 0.0;
    std::array<double, 5> c{};
    SumMode sum_mode = SumMode::StrictlyLessOne;

    double sum() const { return std::accumulate(c.begin(), c.end(), 0.0); }

    /// Throws InvalidInput if any coefficient is negative or the sum violates the mode.
    void validate() const
    {
        if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be a finite value >= 0");
        for (double ci : c) {
            if (!(ci >= 0.0) || !std::isfinite(ci)) throw InvalidInput("coefficients c1..c5 must be finite and >= 0");
        }
        const double s = sum();
        if (sum_mode == SumMode::StrictlyLessOne && !(s < 1.0)) {
            throw InvalidInput("coefficient sum must be < 1 (got " + std::to_string(s) + ")");
        }
        if (sum_mode == SumMode::ExactlyOne && std::abs(s - 1.0) > 1e-12) {
            throw InvalidInput("coefficient sum must equal 1 (got " + std::to_string(s) + ")");
        }
    }

    static Coefficients make(double delta, std::array<double, 5> c, SumMode mode)
    {
        Coefficients k{delta, c, mode};
        k.validate();
        return k;
    }
};

enum class VariantTag { HardyRogers, JungckHardyRogers, CClassHardyRogers, CClassJungckHardyRogers };

inline const char* to_string(VariantTag t)
{
    switch (t) {
    case VariantTag::HardyRogers: return "hr";
    case VariantTag::JungckHardyRogers: return "jungck-hr";
    case VariantTag::CClassHardyRogers: return "cclass-hr";
    case VariantTag::CClassJungckHardyRogers: return "cclass-jungck-hr";
    }
    return "?";
}

inline VariantTag parse_variant(const std::string& s)
{
    for (auto t : {VariantTag::HardyRogers, VariantTag::JungckHardyRogers, VariantTag::CClassHardyRogers,
                   VariantTag::CClassJungckHardyRogers}) {
        if (s == to_string(t)) return t;
    }
    throw InvalidConfig("unknown contraction variant '" + s + "'");
}

inline bool is_jungck(VariantTag t)
{
    return t == VariantTag::JungckHardyRogers || t == VariantTag::CClassJungckHardyRogers;
}

inline bool is_cclass(VariantTag t)
{
    return t == VariantTag::CClassHardyRogers || t == VariantTag::CClassJungckHardyRogers;
}

inline SumMode required_sum_mode(VariantTag t) { return is_cclass(t) ? SumMode::ExactlyOne : SumMode::StrictlyLessOne; }

struct ContractionVariant {
    VariantTag tag = VariantTag::HardyRogers;
    std::optional<CClassTriple> triple;
    std::optional<Mapping> s_map;

    static ContractionVariant hardy_rogers() { return {VariantTag::HardyRogers, {}, {}}; }
    static ContractionVariant jungck(Mapping s) { return {VariantTag::JungckHardyRogers, {}, std::move(s)}; }
    static ContractionVariant cclass(CClassTriple t) { return {VariantTag::CClassHardyRogers, std::move(t), {}}; }
    static ContractionVariant cclass_jungck(CClassTriple t, Mapping s)
    {
        return {VariantTag::CClassJungckHardyRogers, std::move(t), std::move(s)};
    }
};

struct Sides {
    double lhs = 0.0;
    double rhs = 0.0;
};

namespace detail {

// Shared body of both sides functions: su, sv are u, v (plain) or Su, Sv (Jungck).
inline Sides sides_from(const Vector& su, const Vector& sv, const Vector& fu, const Vector& fv, const Coefficients& k,
                        NormKind n)
{
    const auto nm = [n](const Vector& x) { return vector_norm(x, n); };
    Sides out;
    out.lhs = nm(k.delta * (su - sv) + fu - fv);
    out.rhs = k.c[0] * nm(su - sv) + k.c[1] * nm(su - fu) + k.c[2] * nm(su - fv) + k.c[3] * nm(sv - fu) +
              k.c[4] * nm(sv - fv);
    return out;
}

inline bool within(double lhs, double rhs, double tol)
{
    return lhs <= rhs + tol * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

} // namespace detail

inline Sides hr_sides(const Mapping& f, const Point& u, const Point& v, const Coefficients& k,
                      NormKind n = NormKind::L2)
{
    detail::require_same_dim(u.dim(), v.dim(), "hr_sides");
    detail::require_same_dim(u.dim(), f.dim(), "hr_sides");
    return detail::sides_from(u.vec(), v.vec(), f(u).vec(), f(v).vec(), k, n);
}

inline Sides jungck_sides(const Mapping& f, const Mapping& s, const Point& u, const Point& v, const Coefficients& k,
                          NormKind n = NormKind::L2)
{
    detail::require_same_dim(u.dim(), v.dim(), "jungck_sides");
    detail::require_same_dim(u.dim(), f.dim(), "jungck_sides");
    detail::require_same_dim(s.dim(), f.dim(), "jungck_sides");
    return detail::sides_from(s(u).vec(), s(v).vec(), f(u).vec(), f(v).vec(), k, n);
}

struct CClassPairResult {
    bool holds = true;
    double lhs_psi = 0.0;   // psi(lhs)
    double rhs_g = 0.0;     // G(psi(M), phi(M))
    double aggregate = 0.0; // M
};

/// C-class condition at one pair. Plain variants are accepted too; their result
/// is the Hardy-Rogers inequality with lhs_psi = lhs and rhs_g = M.
inline CClassPairResult cclass_check_pair(const ContractionVariant& variant, const Mapping& f, const Point& u,
                                          const Point& v, const Coefficients& k, NormKind n = NormKind::L2,
                                          double tol = 1e-9)
{
    if (is_jungck(variant.tag) && !variant.s_map) throw InvalidConfig("Jungck variant requires a mapping S");
    if (is_cclass(variant.tag) && !variant.triple) throw InvalidConfig("C-class variant requires a (psi, phi, G) triple");

    const Sides sd = is_jungck(variant.tag) ? jungck_sides(f, *variant.s_map, u, v, k, n) : hr_sides(f, u, v, k, n);
    CClassPairResult r;
    r.aggregate = sd.rhs;
    if (!is_cclass(variant.tag)) {
        r.lhs_psi = sd.lhs;
        r.rhs_g = sd.rhs;
    } else {
        const auto& t = *variant.triple;
        r.lhs_psi = t.psi.eval(sd.lhs);
        r.rhs_g = t.g.eval(t.psi.eval(sd.rhs), t.phi.eval(sd.rhs));
        if (!std::isfinite(r.lhs_psi) || !std::isfinite(r.rhs_g)) {
            throw EvaluationError("C-class condition evaluated to a non-finite value");
        }
    }
    r.holds = detail::within(r.lhs_psi, r.rhs_g, tol);
    return r;
}

/// Axis-aligned sampling box.
struct Box {
    Vector lo;
    Vector hi;

    static Box cube(std::size_t dim, double lo, double hi)
    {
        const auto d = static_cast<Eigen::Index>(dim);
        return {Vector::Constant(d, lo), Vector::Constant(d, hi)};
    }

    std::size_t dim() const { return static_cast<std::size_t>(lo.size()); }

    void validate() const
    {
        if (lo.size() == 0 || lo.size() != hi.size()) throw InvalidInput("box bounds must be non-empty and match");
        if (!lo.allFinite() || !hi.allFinite() || (hi.array() < lo.array()).any()) {
            throw InvalidInput("box bounds must be finite with lo <= hi");
        }
    }
};

/// Pair sampler: a fixed structured set (axis pairs, diagonal corners, coincident
/// and near-coincident pairs) followed by seeded uniform pairs from the box.
struct PairSampler {
    Box box;
    std::uint64_t seed = 0;
    std::size_t random_pairs = 1000;
    bool structured = true;

    std::vector<std::pair<Point, Point>> pairs() const
    {
        box.validate();
        const auto d = box.lo.size();
        const Vector mid = 0.5 * (box.lo + box.hi);
        const Vector half = 0.5 * (box.hi - box.lo);
        std::vector<std::pair<Point, Point>> out;
        out.reserve(random_pairs + 4 * static_cast<std::size_t>(d) + 8);
        if (structured) {
            for (Eigen::Index i = 0; i < d; ++i) {
                Vector e = Vector::Zero(d);
                e[i] = half[i];
                out.emplace_back(Point(Vector(mid - e)), Point(Vector(mid + e)));
                out.emplace_back(Point(mid), Point(Vector(mid + 0.5 * e)));
            }
            out.emplace_back(Point(box.lo), Point(box.hi));
            out.emplace_back(Point(box.hi), Point(box.lo));
            for (const Vector* p : {&box.lo, &mid, &box.hi}) out.emplace_back(Point(*p), Point(*p));
            const Vector nudge = 1e-6 * half;
            out.emplace_back(Point(mid), Point(Vector(mid + nudge)));
            out.emplace_back(Point(box.lo), Point(Vector(box.lo + nudge)));
            out.emplace_back(Point(box.hi), Point(Vector(box.hi - nudge)));
        }
        Rng rng(seed);
        const auto draw = [&] {
            Vector x(d);
            for (Eigen::Index i = 0; i < d; ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
            return Point(std::move(x));
        };
        for (std::size_t k = 0; k < random_pairs; ++k) {
            Point u = draw();
            Point v = draw();
            out.emplace_back(std::move(u), std::move(v));
        }
        return out;
    }
};

struct Violation {
    std::size_t index = 0; // position in sampler order
    Point u;
    Point v;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ContractionCertificate {
    VariantTag variant = VariantTag::HardyRogers;
    Coefficients coeffs;
    NormKind norm = NormKind::L2;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::size_t pairs_checked = 0;
    std::optional<Violation> violation; // empty means Satisfied
    std::size_t zero_aggregate_pairs = 0; // C-class pairs with M = 0
    std::vector<std::string> warnings;

    bool satisfied() const { return !violation.has_value(); }
};

/// Problems with the coefficient choice that do not invalidate the certificate.
inline std::vector<std::string> coefficient_warnings(VariantTag tag, const Coefficients& k)
{
    std::vector<std::string> w;
    if (is_cclass(tag) && k.c[2] != k.c[3]) {
        w.emplace_back("c3 != c4: the convergence argument for C-class contractions assumes c3 = c4");
    }
    if (k.sum_mode == SumMode::ExactlyOne && k.c[1] == 0.0 && k.c[4] == 0.0) {
        w.emplace_back("c2 = c5 = 0 with sum 1: c1 + c3 + c4 < 1 cannot hold, uniqueness is not implied");
    }
    return w;
}

/// Batch check over every sampled pair; the reported witness is the first failing
/// pair in sampler order regardless of the number of workers.
inline ContractionCertificate certify(const ContractionVariant& variant, const Mapping& f, const Coefficients& k,
                                      const PairSampler& sampler, NormKind n = NormKind::L2, double tol = 1e-9,
                                      unsigned workers = 1)
{
    k.validate();
    if (k.sum_mode != required_sum_mode(variant.tag)) {
        throw InvalidConfig(std::string("variant ") + to_string(variant.tag) + " requires coefficient mode " +
                            to_string(required_sum_mode(variant.tag)) + ", got " + to_string(k.sum_mode));
    }
    if (sampler.box.dim() != f.dim()) throw InvalidInput("sampling box dimension does not match the mapping");

    const auto pairs = sampler.pairs();

    if (is_cclass(variant.tag)) {
        if (!variant.triple) throw InvalidConfig("C-class variant requires a (psi, phi, G) triple");
        const auto report = validate_triple(*variant.triple);
        if (!report.components_valid()) {
            throw InvalidConfig("triple failed validation: " +
                                (!report.psi.pass ? report.psi.violated
                                                  : !report.phi.pass ? report.phi.violated : report.g.violated));
        }
    }
    if (is_jungck(variant.tag)) {
        if (!variant.s_map) throw InvalidConfig("Jungck variant requires a mapping S");
        std::vector<Point> samples;
        samples.reserve(2 * pairs.size());
        for (const auto& [u, v] : pairs) {
            samples.push_back(u);
            samples.push_back(v);
        }
        const auto comm = check_commuting(f, *variant.s_map, samples, tol * 10.0, n);
        if (!comm.commutes) throw InvalidConfig("S does not commute with f on the sample set");
    }

    struct Partial {
        std::optional<Violation> first;
        std::size_t zero_m = 0;
    };
    const auto scan = [&](std::size_t begin, std::size_t end) {
        Partial p;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [u, v] = pairs[i];
            const auto r = cclass_check_pair(variant, f, u, v, k, n, tol);
            if (is_cclass(variant.tag) && r.aggregate == 0.0) ++p.zero_m;
            if (!r.holds && !p.first) p.first = Violation{i, u, v, r.lhs_psi, r.rhs_g};
        }
        return p;
    };

    ContractionCertificate cert;
    cert.variant = variant.tag;
    cert.coeffs = k;
    cert.norm = n;
    cert.tol = tol;
    cert.seed = sampler.seed;
    cert.pairs_checked = pairs.size();
    cert.warnings = coefficient_warnings(variant.tag, k);

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(pairs.size())));
    std::vector<Partial> parts;
    if (workers == 1) {
        parts.push_back(scan(0, pairs.size()));
    } else {
        std::vector<std::future<Partial>> futs;
        const std::size_t chunk = (pairs.size() + workers - 1) / workers;
        for (std::size_t b = 0; b < pairs.size(); b += chunk) {
            futs.push_back(std::async(std::launch::async, scan, b, std::min(pairs.size(), b + chunk)));
        }
        for (auto& fu : futs) parts.push_back(fu.get());
    }
    // Chunks are in sampler order, so the first chunk with a violation holds the global first.
    for (auto& p : parts) {
        cert.zero_aggregate_pairs += p.zero_m;
        if (!cert.violation && p.first) cert.violation = std::move(p.first);
    }
    if (cert.zero_aggregate_pairs > 0) {
        cert.warnings.emplace_back("aggregate M = 0 at " + std::to_string(cert.zero_aggregate_pairs) +
                                   " pair(s); right side reduces to G(psi(0), phi(0))");
    }
    return cert;
}

} // namespace enrichfp
