#pragma once

// Machine-readable output: trace CSV, run summaries, certificate and
// validation reports. Numbers use '.' as decimal separator and 17
// significant digits, independent of the global locale.

#include <enrichfp/cclass.hpp>
#include <enrichfp/contraction.hpp>
#include <enrichfp/solver.hpp>

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace enrichfp::io {

inline std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_point(const Point& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) s += ", ";
        s += format_double(p[i]);
    }
    return s + "]";
}

/// Columns: iter, residual[, x0 .. x{d-1}]. Row 0 is the seed with an empty residual.
inline void write_trace_csv(std::ostream& os, const IterationTrace& tr, bool coordinates = true)
{
    const std::size_t d = tr.iterates.empty() ? 0 : tr.iterates.front().dim();
    os << "iter,residual";
    if (coordinates) {
        for (std::size_t i = 0; i < d; ++i) os << ",x" << i;
    }
    os << '\n';
    for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
        os << n << ',';
        if (n > 0) os << format_double(tr.residuals[n - 1]);
        if (coordinates) {
            for (std::size_t i = 0; i < d; ++i) os << ',' << format_double(tr.iterates[n][i]);
        }
        os << '\n';
    }
}

struct RunEcho {
    std::string problem;
    std::optional<double> delta;
    std::optional<std::uint64_t> seed;
};

/// "key: value" lines with stable field names.
inline void write_summary(std::ostream& os, const IterationTrace& tr, const SolverConfig& cfg, const RunEcho& echo)
{
    os << "problem: " << echo.problem << '\n';
    os << "scheme: " << to_string(tr.scheme) << '\n';
    os << "status: " << to_string(tr.status) << '\n';
    os << "iterations: " << tr.iterations() << '\n';
    os << "limit: " << (tr.converged() ? format_point(tr.last()) : std::string("none")) << '\n';
    os << "last_iterate: " << format_point(tr.last()) << '\n';
    os << "residual: " << format_double(tr.final_residual()) << '\n';
    if (tr.status == Status::Diverged) os << "diverged_at: " << tr.diverged_at << '\n';
    os << "c: " << format_double(cfg.c) << '\n';
    os << "delta: " << (echo.delta ? format_double(*echo.delta) : std::string("none")) << '\n';
    os << "seed: " << (echo.seed ? std::to_string(*echo.seed) : std::string("none")) << '\n';
    os << "start: " << format_point(cfg.seed_point) << '\n';
    os << "tol: " << format_double(cfg.tol) << '\n';
    os << "max_iter: " << cfg.max_iter << '\n';
    os << "divergence_bound: " << format_double(cfg.divergence_bound) << '\n';
    os << "norm: " << to_string(cfg.norm) << '\n';
}

inline nlohmann::ordered_json point_json(const Point& p)
{
    auto a = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    return a;
}

inline nlohmann::ordered_json to_json(const ContractionCertificate& c, const std::string& problem, const Box& box)
{
    nlohmann::ordered_json j;
    j["problem"] = problem;
    j["variant"] = to_string(c.variant);
    j["coefficients"] = {{"delta", c.coeffs.delta},
                         {"c1", c.coeffs.c[0]},
                         {"c2", c.coeffs.c[1]},
                         {"c3", c.coeffs.c[2]},
                         {"c4", c.coeffs.c[3]},
                         {"c5", c.coeffs.c[4]},
                         {"sum_mode", to_string(c.coeffs.sum_mode)}};
    j["norm"] = to_string(c.norm);
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["box"] = {{"lo", point_json(Point(box.lo))}, {"hi", point_json(Point(box.hi))}};
    j["pairs_checked"] = c.pairs_checked;
    j["outcome"] = c.satisfied() ? "satisfied" : "violated";
    if (c.violation) {
        const auto& w = *c.violation;
        j["witness"] = {{"index", w.index}, {"u", point_json(w.u)}, {"v", point_json(w.v)}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    }
    j["warnings"] = c.warnings;
    return j;
}

inline nlohmann::ordered_json to_json(const ValidationReport& r)
{
    nlohmann::ordered_json j;
    j["subject"] = r.subject;
    j["pass"] = r.pass;
    j["points_checked"] = r.points_checked;
    if (!r.pass) {
        j["violated"] = r.violated;
        j["witness"] = r.witness;
        j["value"] = r.value;
    }
    return j;
}

inline nlohmann::ordered_json to_json(const MonotoneStatus& m)
{
    nlohmann::ordered_json j;
    j["status"] = to_string(m.kind);
    if (m.kind == MonotoneKind::Violated) j["witness"] = {{"x", m.x}, {"y", m.y}, {"h_x", m.hx}, {"h_y", m.hy}};
    return j;
}

struct SweepRow {
    double c = 1.0;
    std::size_t iterations = 0;
    Status status = Status::MaxIterExceeded;
    double final_residual = 0.0;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "c,iterations,status,final_residual\n";
    for (const auto& r : rows) {
        os << format_double(r.c) << ',' << r.iterations << ',' << to_string(r.status) << ','
           << format_double(r.final_residual) << '\n';
    }
}

} // namespace enrichfp::io
