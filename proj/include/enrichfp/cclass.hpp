#pragma once

// C-class functions G, altering distances psi, Phi_u functions phi and
// monotone triples (psi, phi, G), with sampled validators.
//
// Continuity cannot be checked from finitely many samples; the validators
// approximate it by bounding the jump between adjacent grid points.

#include <enrichfp/errors.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace enrichfp {

struct CClassFunction {
    std::function<double(double, double)> eval;
    std::string label;
};

struct AlteringDistance {
    std::function<double(double)> eval;
    std::string label;
};

struct PhiU {
    std::function<double(double)> eval;
    std::string label;
};

/// Uniform grid on [0, max] with optional logarithmic refinement near 0.
struct Grid1D {
    double max = 10.0;
    std::size_t points = 1001;
    std::size_t log_points = 24;   // extra points in [log_min, log_max]
    double log_min = 1e-6;
    double log_max = 1e-2;
    double jump_threshold = 1.0;   // continuity heuristic

    std::vector<double> values() const
    {
        if (points < 2 || !(max > 0.0)) throw InvalidInput("grid needs >= 2 points and positive extent");
        std::vector<double> xs;
        xs.reserve(points + log_points);
        for (std::size_t i = 0; i < points; ++i) {
            xs.push_back(max * static_cast<double>(i) / static_cast<double>(points - 1));
        }
        if (log_points > 1 && log_min > 0.0 && log_max > log_min) {
            const double a = std::log10(log_min);
            const double b = std::log10(log_max);
            for (std::size_t i = 0; i < log_points; ++i) {
                const double e = a + (b - a) * static_cast<double>(i) / static_cast<double>(log_points - 1);
                const double x = std::pow(10.0, e);
                if (x < max) xs.push_back(x);
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return xs;
    }
};

/// Uniform square grid on [0, max]^2, visited row-major with s as the outer index.
struct Grid2D {
    double max = 10.0;
    std::size_t points_per_axis = 101;
    double jump_threshold = 1.0;

    std::vector<double> axis() const
    {
        if (points_per_axis < 2 || !(max > 0.0)) throw InvalidInput("grid needs >= 2 points per axis");
        std::vector<double> xs(points_per_axis);
        for (std::size_t i = 0; i < points_per_axis; ++i) {
            xs[i] = max * static_cast<double>(i) / static_cast<double>(points_per_axis - 1);
        }
        return xs;
    }
};

struct ValidationReport {
    bool pass = true;
    std::string subject;
    std::string violated;                 // name of the failed axiom, empty on pass
    std::vector<double> witness;          // (s, t) for G, (t) for psi/phi
    double value = 0.0;                   // function value at the witness
    std::size_t points_checked = 0;

    static ValidationReport failure(std::string subject, std::string axiom, std::vector<double> witness, double value,
                                    std::size_t checked)
    {
        ValidationReport r;
        r.pass = false;
        r.subject = std::move(subject);
        r.violated = std::move(axiom);
        r.witness = std::move(witness);
        r.value = value;
        r.points_checked = checked;
        return r;
    }
};

enum class MonotoneKind { Unchecked, MonotoneOnGrid, Violated };

inline const char* to_string(MonotoneKind k)
{
    switch (k) {
    case MonotoneKind::Unchecked: return "unchecked";
    case MonotoneKind::MonotoneOnGrid: return "monotone-on-grid";
    case MonotoneKind::Violated: return "violated";
    }
    return "?";
}

struct MonotoneStatus {
    MonotoneKind kind = MonotoneKind::Unchecked;
    // Violated: x < y with h(x) > h(y) + tol, where h(t) = G(psi(t), phi(t)).
    double x = 0.0;
    double y = 0.0;
    double hx = 0.0;
    double hy = 0.0;
};

struct CClassTriple {
    AlteringDistance psi;
    PhiU phi;
    CClassFunction g;
    MonotoneStatus monotone_status;

    /// h(t) = G(psi(t), phi(t)), the composition whose monotonicity is tested.
    double composed(double t) const { return g.eval(psi.eval(t), phi.eval(t)); }
};

namespace detail {

inline double checked(double v, const std::string& label, std::initializer_list<double> at)
{
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << label << " is non-finite at (";
        bool first = true;
        for (double a : at) {
            os << (first ? "" : ", ") << a;
            first = false;
        }
        os << ")";
        throw EvaluationError(os.str());
    }
    return v;
}

} // namespace detail

inline ValidationReport validate_cclass(const CClassFunction& g, const Grid2D& grid = {}, double tol = 1e-9)
{
    const auto axis = grid.axis();
    const std::size_t n = axis.size();
    std::vector<double> prev_row(n), row(n);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = axis[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double t = axis[j];
            const double v = detail::checked(g.eval(s, t), g.label, {s, t});
            row[j] = v;
            ++checked;
            if (v > s + tol) return ValidationReport::failure(g.label, "axiom-1: G(s,t) <= s", {s, t}, v, checked);
            if (std::abs(v - s) <= tol && s > tol && t > tol) {
                return ValidationReport::failure(g.label, "axiom-2: G(s,t) = s only if s = 0 or t = 0", {s, t}, v,
                                                 checked);
            }
            const bool jump_t = j > 0 && std::abs(v - row[j - 1]) > grid.jump_threshold;
            const bool jump_s = i > 0 && std::abs(v - prev_row[j]) > grid.jump_threshold;
            if (jump_t || jump_s) {
                return ValidationReport::failure(g.label, "continuity (jump heuristic)", {s, t}, v, checked);
            }
        }
        std::swap(row, prev_row);
    }
    ValidationReport ok;
    ok.subject = g.label;
    ok.points_checked = checked;
    return ok;
}

inline ValidationReport validate_altering(const AlteringDistance& psi, const Grid1D& grid = {}, double tol = 1e-9)
{
    const auto ts = grid.values();
    double prev = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double v = detail::checked(psi.eval(t), psi.label, {t});
        const std::size_t checked = i + 1;
        if (t == 0.0 && v > tol) return ValidationReport::failure(psi.label, "psi(0) = 0", {t}, v, checked);
        if (v < -tol) return ValidationReport::failure(psi.label, "psi(t) >= 0", {t}, v, checked);
        if (t > tol && !(v > 0.0)) return ValidationReport::failure(psi.label, "psi(t) > 0 for t > 0", {t}, v, checked);
        if (i > 0) {
            if (v < prev - tol) return ValidationReport::failure(psi.label, "non-decreasing", {t}, v, checked);
            if (std::abs(v - prev) > grid.jump_threshold) {
                return ValidationReport::failure(psi.label, "continuity (jump heuristic)", {t}, v, checked);
            }
        }
        prev = v;
    }
    ValidationReport ok;
    ok.subject = psi.label;
    ok.points_checked = ts.size();
    return ok;
}

inline ValidationReport validate_phi(const PhiU& phi, const Grid1D& grid = {}, double tol = 1e-9)
{
    const auto ts = grid.values();
    double prev = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double v = detail::checked(phi.eval(t), phi.label, {t});
        const std::size_t checked = i + 1;
        if (v < -tol) return ValidationReport::failure(phi.label, "phi(t) >= 0", {t}, v, checked);
        if (t > 0.0 && !(v > 0.0)) return ValidationReport::failure(phi.label, "phi(t) > 0 for t > 0", {t}, v, checked);
        if (i > 0 && std::abs(v - prev) > grid.jump_threshold) {
            return ValidationReport::failure(phi.label, "continuity (jump heuristic)", {t}, v, checked);
        }
        prev = v;
    }
    ValidationReport ok;
    ok.subject = phi.label;
    ok.points_checked = ts.size();
    return ok;
}

/// Checks h(t) = G(psi(t), phi(t)) is non-decreasing over every ordered grid pair.
/// The witness is the first y (ascending) that drops below an earlier value; x is
/// the earliest position of the running maximum before y.
inline MonotoneStatus validate_monotone_triple(const CClassTriple& t, const Grid1D& grid = {}, double tol = 1e-9)
{
    const auto xs = grid.values();
    MonotoneStatus st;
    st.kind = MonotoneKind::MonotoneOnGrid;
    double best = -std::numeric_limits<double>::infinity();
    double best_at = 0.0;
    for (double y : xs) {
        const double h = detail::checked(t.composed(y), "G(psi, phi)", {y});
        if (best > h + tol) {
            st.kind = MonotoneKind::Violated;
            st.x = best_at;
            st.y = y;
            st.hx = best;
            st.hy = h;
            return st;
        }
        if (h > best) {
            best = h;
            best_at = y;
        }
    }
    return st;
}

struct TripleReport {
    ValidationReport psi;
    ValidationReport phi;
    ValidationReport g;
    MonotoneStatus monotone;

    bool components_valid() const { return psi.pass && phi.pass && g.pass; }
};

struct TripleGrids {
    Grid1D line;
    Grid2D square;
};

inline TripleReport validate_triple(const CClassTriple& t, const TripleGrids& grids = {}, double tol = 1e-9)
{
    return {validate_altering(t.psi, grids.line, tol), validate_phi(t.phi, grids.line, tol),
            validate_cclass(t.g, grids.square, tol), validate_monotone_triple(t, grids.line, tol)};
}

struct BuiltinTriple {
    std::string name;
    std::string description;
    CClassTriple triple;
    bool expect_components_valid = true;
    MonotoneKind expect_monotone = MonotoneKind::MonotoneOnGrid;
};

namespace fns {

inline CClassFunction difference() { return {[](double s, double t) { return s - t; }, "G(s,t)=s-t"}; }

inline AlteringDistance sqrt_then_square()
{
    return {[](double x) { return x <= 1.0 ? std::sqrt(x) : x * x; }, "psi(x)=sqrt(x) on [0,1], x^2 beyond"};
}

inline AlteringDistance identity_psi() { return {[](double x) { return x; }, "psi(x)=x"}; }
inline PhiU identity_phi() { return {[](double x) { return x; }, "phi(x)=x"}; }
inline PhiU sqrt_phi() { return {[](double x) { return std::sqrt(x); }, "phi(x)=sqrt(x)"}; }
inline PhiU square_phi() { return {[](double x) { return x * x; }, "phi(x)=x^2"}; }

} // namespace fns

inline std::vector<BuiltinTriple> builtin_triples()
{
    std::vector<BuiltinTriple> out;
    out.push_back({"example-2.5-monotone", "G=s-t, phi=sqrt(x), psi=sqrt(x) on [0,1] and x^2 beyond",
                   CClassTriple{fns::sqrt_then_square(), fns::sqrt_phi(), fns::difference(), {}}, true,
                   MonotoneKind::MonotoneOnGrid});
    out.push_back({"example-2.6-nonmonotone", "G=s-t, phi=x^2, psi=sqrt(x) on [0,1] and x^2 beyond",
                   CClassTriple{fns::sqrt_then_square(), fns::square_phi(), fns::difference(), {}}, true,
                   MonotoneKind::Violated});
    out.push_back({"identity-triple", "G=s-t, psi=phi=identity (h is identically 0)",
                   CClassTriple{fns::identity_psi(), fns::identity_phi(), fns::difference(), {}}, true,
                   MonotoneKind::MonotoneOnGrid});
    return out;
}

inline BuiltinTriple find_triple(const std::string& name)
{
    for (auto& t : builtin_triples()) {
        if (t.name == name) return t;
    }
    throw InvalidConfig("unknown triple '" + name + "'");
}

} // namespace enrichfp
