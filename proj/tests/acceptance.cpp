// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <enrichfp/enrichfp.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace enrichfp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

SolverConfig config(Scheme s, double c, Point seed, double tol, std::size_t max_iter)
{
    auto cfg = SolverConfig::with_c(s, c, std::move(seed));
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    return cfg;
}

bool identical(const IterationTrace& a, const IterationTrace& b)
{
    return a.status == b.status && a.iterates == b.iterates && a.residuals == b.residuals;
}

std::vector<ProblemInstance> strict_certified()
{
    std::vector<ProblemInstance> out;
    for (auto& p : builtin_problems()) {
        if (p.certified_as && p.certified_as->coeffs.sum_mode == SumMode::StrictlyLessOne) out.push_back(p);
    }
    return out;
}

std::vector<Point> spread_starts(const Box& box, int count)
{
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / (count - 1);
        out.emplace_back(Vector(box.lo + t * (box.hi - box.lo)));
    }
    return out;
}

// 1. Picard oscillates on f(x) = 1 - x; Schaefer with delta = 1 lands on 0.5.
Outcome reflection_schaefer_beats_picard()
{
    Outcome o;
    const auto p = find_problem("reflection");
    const auto picard = run_picard(p.f, config(Scheme::Picard, 1.0, Point{0.0}, 1e-10, 1000));
    o.require(picard.status == Status::MaxIterExceeded, "picard did not exhaust max_iter");
    for (double r : picard.residuals) o.require(r == 1.0, "picard residual differs from 1");

    const auto cfg = SolverConfig::with_delta(Scheme::Schaefer, 1.0, Point{0.0});
    o.require(cfg.c == 0.5, "c != 1/(1+delta)");
    const auto s = run_schaefer(p.f, cfg);
    o.require(s.converged(), "schaefer did not converge");
    o.require(s.iterations() <= 2, "schaefer needed more than 2 iterations");
    o.require(std::abs(s.last()[0] - 0.5) <= 1e-12, "schaefer limit off 0.5");
    std::ostringstream d;
    d << "picard " << to_string(picard.status) << " after " << picard.iterations() << "; schaefer limit "
      << io::format_double(s.last()[0]) << " in " << s.iterations() << " iterations";
    if (o.pass) o.detail = d.str();
    return o;
}

// 2. Schaefer (c = 1) limit equals the linear-solve oracle on 20 random affine maps.
Outcome affine_oracle_equivalence()
{
    Outcome o;
    double worst = 0.0;
    std::size_t most_iters = 0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t dim = 1 + static_cast<std::size_t>(i % 10);
        const auto p = random_affine(dim, 0.9, 1000 + static_cast<std::uint64_t>(i));
        const auto tr = run_schaefer(p.f, config(Scheme::Schaefer, 1.0, Point::zeros(dim), 1e-10, 500));
        o.require(tr.converged(), "instance " + std::to_string(i) + " did not converge in 500 iterations");
        if (!tr.converged()) continue;
        const double err = distance(tr.last(), *p.oracle_fixed_point);
        worst = std::max(worst, err);
        most_iters = std::max(most_iters, tr.iterations());
        o.require(err <= 1e-8, "instance " + std::to_string(i) + " off oracle by " + io::format_double(err));
    }
    if (o.pass) o.detail = "max error " + io::format_double(worst) + ", max iterations " + std::to_string(most_iters);
    return o;
}

// 3. Every converged Schaefer limit is a fixed point of f itself.
Outcome fix_set_equivalence()
{
    Outcome o;
    std::vector<ProblemInstance> suite = builtin_problems();
    for (int i = 0; i < 20; ++i) suite.push_back(random_affine(1 + static_cast<std::size_t>(i % 10), 0.9, 1000 + i));
    std::size_t converged = 0;
    double worst = 0.0;
    for (const auto& p : suite) {
        for (double c : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const auto tr = run_schaefer(p.f, config(Scheme::Schaefer, c, p.start, 1e-10, 100000));
            if (!tr.converged()) continue;
            ++converged;
            const double defect = distance(p.f(tr.last()), tr.last());
            worst = std::max(worst, defect);
            o.require(defect <= 1e-8, p.name + " c=" + io::format_double(c) + " defect " + io::format_double(defect));
        }
    }
    o.require(converged > 0, "no converged runs");
    if (o.pass) o.detail = std::to_string(converged) + " converged runs, max ||f(u*) - u*|| " + io::format_double(worst);
    return o;
}

// 4. Residuals never increase along Schaefer traces of certified built-ins.
Outcome residual_monotonicity()
{
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& p : builtin_problems()) {
        if (!p.certified_as) continue;
        const auto cert = certify(p.variant(), p.f, p.certified_as->coeffs, PairSampler{p.box, 0, 1000, true});
        o.require(cert.satisfied(), p.name + " is not certified");
        const auto tr = run_schaefer(p.f, config(Scheme::Schaefer, p.certified_c(), p.start, 1e-12, 100000));
        for (std::size_t n = 1; n < tr.residuals.size(); ++n) {
            ++pairs;
            o.require(tr.residuals[n] <= tr.residuals[n - 1] + 1e-12, p.name + " residual increased at " + std::to_string(n));
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " consecutive residual pairs checked";
    return o;
}

// 5. Jungck-Schaefer reaches the common fixed point; S = id reproduces Schaefer.
Outcome jungck_common_fixed_point()
{
    Outcome o;
    const auto p = find_problem("jungck-linear");
    const auto tr = run_jungck_schaefer(*p.pair, config(Scheme::JungckSchaefer, 0.5, p.start, 1e-10, 100000));
    o.require(tr.converged(), "jungck-schaefer did not converge");
    o.require(verdict_common_fixed_point(*p.pair, tr.last(), NormKind::L2, 1e-8), "limit is not a common fixed point");

    for (const char* name : {"jungck-linear", "reflection", "affine-contraction-10d"}) {
        const auto q = find_problem(name);
        const auto id_pair = PairProblem::with_affine_s(q.f, Mapping::identity(q.f.dim()));
        for (double c : {0.5, 1.0}) {
            const auto a = run_jungck_schaefer(id_pair, config(Scheme::JungckSchaefer, c, q.start, 1e-10, 100000));
            const auto b = run_schaefer(q.f, config(Scheme::Schaefer, c, q.start, 1e-10, 100000));
            o.require(identical(a, b), std::string("S = id trace differs from schaefer on ") + name);
        }
    }
    if (o.pass) o.detail = "limit " + io::format_point(tr.last()) + " after " + std::to_string(tr.iterations());
    return o;
}

// 6. Certificates: half-map satisfied, doubling violated at the first pair in order, reruns identical.
Outcome contraction_certificates()
{
    Outcome o;
    const auto hr = ContractionVariant::hardy_rogers();
    const PairSampler sampler{Box::cube(1, -10, 10), 2024, 1000, true};
    const auto half = find_problem("half-map");
    const auto dbl = find_problem("doubling");
    const auto k6 = Coefficients::make(0, {0.6, 0, 0, 0, 0}, SumMode::StrictlyLessOne);
    const auto k9 = Coefficients::make(0, {0.9, 0, 0, 0, 0}, SumMode::StrictlyLessOne);

    const auto a = certify(hr, half.f, k6, sampler);
    o.require(a.satisfied(), "half-map not satisfied");
    o.require(a.pairs_checked >= 1000, "fewer than 1000 pairs");

    const auto b = certify(hr, dbl.f, k9, sampler);
    o.require(!b.satisfied(), "doubling map not violated");
    if (!b.satisfied()) {
        const auto pairs = sampler.pairs();
        std::size_t first = pairs.size();
        for (std::size_t i = 0; i < pairs.size() && first == pairs.size(); ++i) {
            const auto s = hr_sides(dbl.f, pairs[i].first, pairs[i].second, k9);
            if (s.lhs > s.rhs + 1e-9 * std::max({s.lhs, s.rhs, 1.0})) first = i;
        }
        o.require(b.violation->index == first, "witness is not the first violation in sampler order");
        const auto again = hr_sides(dbl.f, b.violation->u, b.violation->v, k9);
        o.require(again.lhs > again.rhs, "witness does not reproduce");
    }
    const auto dump = [&](const ContractionCertificate& c, const ProblemInstance& p) {
        return io::to_json(c, p.name, sampler.box).dump(2);
    };
    o.require(dump(a, half) == dump(certify(hr, half.f, k6, sampler), half), "half-map rerun differs");
    o.require(dump(b, dbl) == dump(certify(hr, dbl.f, k9, sampler, NormKind::L2, 1e-9, 4), dbl),
              "doubling rerun differs");
    if (o.pass) {
        o.detail = std::to_string(a.pairs_checked) + " pairs; doubling witness #" + std::to_string(b.violation->index) +
                   " u=" + io::format_point(b.violation->u) + " v=" + io::format_point(b.violation->v);
    }
    return o;
}

// 7. The monotone triple passes; the non-monotone one yields a witness past the peak of h.
Outcome cclass_fixtures()
{
    Outcome o;
    const auto mono = validate_triple(find_triple("example-2.5-monotone").triple);
    o.require(mono.components_valid(), "monotone triple components fail validation");
    o.require(mono.monotone.kind == MonotoneKind::MonotoneOnGrid, "monotone triple not monotone on grid");

    const auto nonmono = validate_triple(find_triple("example-2.6-nonmonotone").triple);
    o.require(nonmono.components_valid(), "non-monotone triple components fail validation");
    const auto& m = nonmono.monotone;
    o.require(m.kind == MonotoneKind::Violated, "non-monotone triple not reported as violated");
    const auto h = [](double x) { return std::sqrt(x) - x * x; };
    const double peak = std::pow(0.25, 2.0 / 3.0);
    o.require(m.x < m.y && m.x >= 0.39 && m.y <= 1.0, "witness pair outside [0.39, 1]");
    o.require(h(m.x) > h(m.y), "h does not decrease across the witness pair");
    o.require(m.x >= peak - 0.01 && m.x <= m.y, "witness not past the interior maximum");
    if (o.pass) {
        o.detail = "non-monotone witness x=" + io::format_double(m.x) + " y=" + io::format_double(m.y) +
                   " (peak " + io::format_double(peak) + ")";
    }
    return o;
}

// 8. Jungck sides with S = id equal the plain sides; Schaefer with c = 1 equals Picard.
Outcome reduction_identities()
{
    Outcome o;
    const auto p = find_problem("affine-contraction-10d");
    const auto k = Coefficients::make(0.3, {0.2, 0.1, 0.15, 0.15, 0.1}, SumMode::StrictlyLessOne);
    const auto pairs = PairSampler{p.box, 99, 1000, false}.pairs();
    double worst = 0.0;
    for (const auto& [u, v] : pairs) {
        const auto a = hr_sides(p.f, u, v, k);
        const auto b = jungck_sides(p.f, Mapping::identity(p.f.dim()), u, v, k);
        worst = std::max({worst, std::abs(a.lhs - b.lhs) / std::max(std::abs(a.lhs), 1e-300),
                          std::abs(a.rhs - b.rhs) / std::max(std::abs(a.rhs), 1e-300)});
    }
    o.require(worst <= 1e-15, "jungck_sides(S = id) deviates by " + io::format_double(worst));

    for (const auto& q : builtin_problems()) {
        const auto a = run_schaefer(q.f, config(Scheme::Schaefer, 1.0, q.start, 1e-10, 2000));
        const auto b = run_picard(q.f, config(Scheme::Picard, 1.0, q.start, 1e-10, 2000));
        o.require(identical(a, b), "schaefer(c = 1) differs from picard on " + q.name);
    }
    if (o.pass) o.detail = "max relative side deviation " + io::format_double(worst);
    return o;
}

// 9. Limits from spread-out starts agree on certified strict contractions; the identity is flagged.
Outcome uniqueness()
{
    Outcome o;
    double spread = 0.0;
    const double tol = 1e-10;
    for (const auto& p : strict_certified()) {
        const auto starts = spread_starts(p.box, 5);
        const auto r = uniqueness_probe(p.f, config(Scheme::Schaefer, p.certified_c(), p.start, tol, 100000), starts);
        o.require(r.excluded.empty(), p.name + ": a start did not converge");
        o.require(r.all_agree, p.name + ": limits disagree (spread " + io::format_double(r.max_spread) + ")");
        spread = std::max(spread, r.max_spread);
    }
    const auto id = find_problem("identity");
    const auto r = uniqueness_probe(id.f, config(Scheme::Schaefer, 1.0, id.start, tol, 1000),
                                    spread_starts(id.box, 5));
    o.require(!r.all_agree, "identity map reported a unique fixed point");
    if (o.pass) o.detail = "max spread " + io::format_double(spread) + " (limit " + io::format_double(10 * tol) + ")";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 schaefer beats picard on reflection", reflection_schaefer_beats_picard},
        {"AC2 affine oracle equivalence", affine_oracle_equivalence},
        {"AC3 fix-set equivalence", fix_set_equivalence},
        {"AC4 residual monotonicity", residual_monotonicity},
        {"AC5 jungck common fixed point", jungck_common_fixed_point},
        {"AC6 contraction certificates", contraction_certificates},
        {"AC7 c-class fixtures", cclass_fixtures},
        {"AC8 reduction identities", reduction_identities},
        {"AC9 uniqueness probe", uniqueness},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
