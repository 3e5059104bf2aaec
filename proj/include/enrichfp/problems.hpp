#pragma once

#include <enrichfp/cclass.hpp>
#include <enrichfp/contraction.hpp>
#include <enrichfp/errors.hpp>
#include <enrichfp/rng.hpp>
#include <enrichfp/solver.hpp>
#include <enrichfp/space.hpp>

#include <Eigen/LU>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace enrichfp {

struct Certification {
    VariantTag tag = VariantTag::HardyRogers;
    Coefficients coeffs;
};

struct ProblemInstance {
    std::string name;
    std::string description;
    Mapping f;
    std::optional<PairProblem> pair;
    std::optional<Certification> certified_as;
    std::optional<Point> oracle_fixed_point;
    Box box;
    Point start;

    /// The contraction variant this instance is certified under (S taken from the pair).
    ContractionVariant variant() const
    {
        if (!certified_as) throw InvalidConfig("problem '" + name + "' carries no certification");
        ContractionVariant v;
        v.tag = certified_as->tag;
        if (is_jungck(v.tag)) {
            if (!pair) throw InvalidConfig("Jungck certification on a problem without S");
            v.s_map = pair->s;
        }
        return v;
    }

    /// Averaging parameter implied by the certified delta, or 1 when uncertified.
    double certified_c() const { return certified_as ? SolverConfig::c_from_delta(certified_as->coeffs.delta) : 1.0; }
};

namespace detail {

// max(max row sum, max column sum) of |A| bounds the induced l1, l2 and linf norms.
inline double operator_norm_bound(const Matrix& a)
{
    const double row = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double col = a.cwiseAbs().colwise().sum().maxCoeff();
    return std::max(row, col);
}

inline Coefficients hr_coeffs(double delta, std::array<double, 5> c)
{
    return Coefficients::make(delta, c, SumMode::StrictlyLessOne);
}

} // namespace detail

/// f(x) = A x + b with A, b drawn from one seeded uniform(-1, 1) stream (A row-major,
/// then b) and A rescaled so that its l1/linf operator-norm bound is <= spectral_cap.
inline ProblemInstance random_affine(std::size_t dim, double spectral_cap, std::uint64_t seed)
{
    if (dim < 1) throw InvalidInput("random_affine: dim must be >= 1");
    if (!(spectral_cap > 0.0 && spectral_cap < 1.0)) throw InvalidInput("random_affine: cap must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(dim);
    Rng rng(seed);
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    }
    Vector b(n);
    for (Eigen::Index i = 0; i < n; ++i) b[i] = rng.uniform(-1.0, 1.0);

    const double bound = detail::operator_norm_bound(a);
    if (bound > 0.0) a *= spectral_cap / bound;
    while (detail::operator_norm_bound(a) > spectral_cap) a *= 1.0 - 1e-15;

    const Matrix i_minus_a = Matrix::Identity(n, n) - a;
    const Vector x = Eigen::PartialPivLU<Matrix>(i_minus_a).solve(b);
    if (!x.allFinite() || (a * x + b - x).norm() > 1e-9) {
        throw std::logic_error("random_affine: oracle solve failed for a capped contraction");
    }

    ProblemInstance p;
    p.name = "random-affine:" + std::to_string(dim) + ":" + std::to_string(spectral_cap) + ":" + std::to_string(seed);
    p.description = "seeded affine contraction x -> Ax + b";
    p.f = Mapping::affine(p.name, a, b, Point(x));
    p.certified_as = Certification{VariantTag::HardyRogers, detail::hr_coeffs(0.0, {spectral_cap, 0, 0, 0, 0})};
    p.oracle_fixed_point = Point(x);
    p.box = Box::cube(dim, -10.0, 10.0);
    p.start = Point::zeros(dim);
    return p;
}

/// Kannan-type map on [0, 1]: x/4 below 1/2, x/5 from 1/2 on. Discontinuous at 1/2,
/// fixed point 0; satisfies |fu - fv| <= a (|u - fu| + |v - fv|) with a = 0.4.
inline Mapping kannan_map()
{
    return Mapping::scalar(
        "kannan-style", [](double x) { return x < 0.5 ? x / 4.0 : x / 5.0; }, 0.0);
}

inline std::vector<ProblemInstance> builtin_problems()
{
    std::vector<ProblemInstance> out;
    const auto line = [](double lo, double hi) { return Box::cube(1, lo, hi); };

    {
        ProblemInstance p;
        p.name = "half-map";
        p.description = "f(x) = x/2, Banach contraction with a = 1/2";
        p.f = Mapping::affine_scalar(p.name, 0.5, 0.0, 0.0);
        p.certified_as = Certification{VariantTag::HardyRogers, detail::hr_coeffs(0.0, {0.5, 0, 0, 0, 0})};
        p.oracle_fixed_point = Point{0.0};
        p.box = line(-10, 10);
        p.start = Point{1.0};
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p;
        p.name = "reflection";
        p.description = "f(x) = 1 - x, period-2 under Picard; enriched contraction with delta = 1";
        p.f = Mapping::affine_scalar(p.name, -1.0, 1.0, 0.5);
        p.certified_as = Certification{VariantTag::HardyRogers, detail::hr_coeffs(1.0, {0.5, 0, 0, 0, 0})};
        p.oracle_fixed_point = Point{0.5};
        p.box = line(-10, 10);
        p.start = Point{0.0};
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p;
        p.name = "kannan-style";
        p.description = "x/4 on [0,1/2), x/5 on [1/2,1]; Kannan condition with c2 = c5 = 0.4";
        p.f = kannan_map();
        p.certified_as = Certification{VariantTag::HardyRogers, detail::hr_coeffs(0.0, {0, 0.4, 0, 0, 0.4})};
        p.oracle_fixed_point = Point{0.0};
        p.box = line(0, 1);
        p.start = Point{1.0};
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p = random_affine(10, 0.9, 2024);
        p.name = "affine-contraction-10d";
        p.description = "random_affine(dim=10, cap=0.9, seed=2024)";
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p;
        p.name = "jungck-linear";
        p.description = "f(x) = x/2 with commuting S(x) = 2x";
        p.f = Mapping::affine_scalar("f", 0.5, 0.0, 0.0);
        p.pair = PairProblem::with_affine_s(p.f, Mapping::affine_scalar("S", 2.0, 0.0, 0.0));
        p.certified_as = Certification{VariantTag::JungckHardyRogers, detail::hr_coeffs(0.0, {0.5, 0, 0, 0, 0})};
        p.oracle_fixed_point = Point{0.0};
        p.box = line(-10, 10);
        p.start = Point{1.0};
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p;
        p.name = "doubling";
        p.description = "f(x) = 2x, expansive; not a contraction";
        p.f = Mapping::affine_scalar(p.name, 2.0, 0.0, 0.0);
        p.oracle_fixed_point = Point{0.0};
        p.box = line(-10, 10);
        p.start = Point{1.0};
        out.push_back(std::move(p));
    }
    {
        ProblemInstance p;
        p.name = "identity";
        p.description = "f(x) = x, every point is fixed";
        p.f = Mapping::identity(1);
        p.box = line(-10, 10);
        p.start = Point{0.0};
        out.push_back(std::move(p));
    }
    return out;
}

/// Looks up a built-in by name, or builds "random-affine:dim:cap:seed".
inline ProblemInstance find_problem(const std::string& name)
{
    constexpr std::string_view prefix = "random-affine:";
    if (name.rfind(prefix, 0) == 0) {
        const std::string rest = name.substr(prefix.size());
        const auto p1 = rest.find(':');
        const auto p2 = p1 == std::string::npos ? p1 : rest.find(':', p1 + 1);
        if (p2 == std::string::npos) throw InvalidConfig("expected random-affine:dim:cap:seed, got '" + name + "'");
        try {
            std::size_t used = 0;
            const auto dim = std::stoul(rest.substr(0, p1), &used);
            const double cap = std::stod(rest.substr(p1 + 1, p2 - p1 - 1));
            const auto seed = std::stoull(rest.substr(p2 + 1));
            ProblemInstance p = random_affine(dim, cap, seed);
            p.name = name;
            return p;
        } catch (const std::logic_error&) {
            throw InvalidConfig("malformed random problem name '" + name + "'");
        }
    }
    for (auto& p : builtin_problems()) {
        if (p.name == name) return p;
    }
    throw InvalidConfig("unknown problem '" + name + "'");
}

/// Bisection root of g(x) = f(x) - x on [lo, hi]; independent of the iteration schemes.
inline Point oracle_fixed_point_1d(const Mapping& f, double lo, double hi, double tol = 1e-12)
{
    if (f.dim() != 1) throw InvalidInput("oracle_fixed_point_1d needs a 1-D mapping");
    if (!(lo <= hi) || !(tol > 0.0)) throw InvalidInput("oracle_fixed_point_1d: need lo <= hi and tol > 0");
    const auto g = [&](double x) { return f(Point{x})[0] - x; };
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return Point{lo};
    if (ghi == 0.0) return Point{hi};
    if (std::signbit(glo) == std::signbit(ghi)) throw NoRootBracketed("f(x) - x does not change sign on the interval");
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return Point{mid};
        if (std::signbit(gm) == std::signbit(glo)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return Point{lo + 0.5 * (hi - lo)};
}

} // namespace enrichfp
