#pragma once

#include <enrichfp/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace enrichfp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Element of R^n with finite coordinates. Dimension is at least one.
class Point {
public:
    Point() = default;

    explicit Point(Vector coords) : coords_(std::move(coords)) { validate(); }

    Point(std::initializer_list<double> coords) : coords_(static_cast<Eigen::Index>(coords.size()))
    {
        Eigen::Index i = 0;
        for (double x : coords) coords_[i++] = x;
        validate();
    }

    explicit Point(std::span<const double> coords) : coords_(static_cast<Eigen::Index>(coords.size()))
    {
        for (std::size_t i = 0; i < coords.size(); ++i) coords_[static_cast<Eigen::Index>(i)] = coords[i];
        validate();
    }

    static Point zeros(std::size_t dim) { return Point(Vector::Zero(static_cast<Eigen::Index>(dim))); }
    static Point constant(std::size_t dim, double value)
    {
        return Point(Vector::Constant(static_cast<Eigen::Index>(dim), value));
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }
    const Vector& vec() const noexcept { return coords_; }

    friend bool operator==(const Point& a, const Point& b)
    {
        return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
    }

private:
    void validate() const
    {
        if (coords_.size() == 0) throw InvalidInput("point must have dimension >= 1");
        if (!coords_.allFinite()) throw InvalidInput("point has non-finite coordinates");
    }

    Vector coords_;
};

enum class NormKind { L1, L2, LInf };

inline const char* to_string(NormKind k)
{
    switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
    }
    return "?";
}

inline NormKind parse_norm(const std::string& s)
{
    if (s == "l1" || s == "L1") return NormKind::L1;
    if (s == "l2" || s == "L2") return NormKind::L2;
    if (s == "linf" || s == "LInf" || s == "inf") return NormKind::LInf;
    throw InvalidConfig("unknown norm '" + s + "' (expected l1, l2 or linf)");
}

namespace detail {

inline double vector_norm(const Vector& v, NormKind k)
{
    switch (k) {
    case NormKind::L1: return v.lpNorm<1>();
    case NormKind::L2: return v.norm();
    case NormKind::LInf: return v.lpNorm<Eigen::Infinity>();
    }
    return v.norm();
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* where)
{
    if (a != b) {
        throw InvalidInput(std::string(where) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                           std::to_string(b) + ")");
    }
}

// (1 - c) * a + c * b, evaluated in this order everywhere so that schemes which
// reduce to one another produce bit-identical iterates.
inline Vector blend(double c, const Vector& a, const Vector& b)
{
    if (c == 1.0) return b;
    return (1.0 - c) * a + c * b;
}

} // namespace detail

inline double norm(const Point& p, NormKind k = NormKind::L2) { return detail::vector_norm(p.vec(), k); }

inline double distance(const Point& u, const Point& v, NormKind k = NormKind::L2)
{
    detail::require_same_dim(u.dim(), v.dim(), "distance");
    return detail::vector_norm(u.vec() - v.vec(), k);
}

/// A self-map of R^n. Either an opaque closure or an affine map x -> A x + b;
/// the affine form is kept so that exact fixed points are available by linear solve.
class Mapping {
public:
    using Fn = std::function<Vector(const Vector&)>;

    struct Affine {
        Matrix a;
        Vector b;
    };

    Mapping() = default;

    static Mapping closure(std::string name, std::size_t dim, Fn fn, std::optional<Point> known_fixed_point = {})
    {
        if (dim == 0) throw InvalidInput("mapping dimension must be >= 1");
        if (!fn) throw InvalidInput("mapping function is empty");
        Mapping m;
        m.name_ = std::move(name);
        m.dim_ = dim;
        m.fn_ = std::make_shared<Fn>(std::move(fn));
        m.fixed_ = std::move(known_fixed_point);
        return m;
    }

    static Mapping scalar(std::string name, std::function<double(double)> fn,
                          std::optional<double> known_fixed_point = {})
    {
        std::optional<Point> fp;
        if (known_fixed_point) fp = Point{*known_fixed_point};
        return closure(std::move(name), 1,
                       [fn = std::move(fn)](const Vector& x) { return Vector::Constant(1, fn(x[0])); },
                       std::move(fp));
    }

    static Mapping affine(std::string name, Matrix a, Vector b, std::optional<Point> known_fixed_point = {})
    {
        if (a.rows() == 0 || a.rows() != a.cols() || b.size() != a.rows()) {
            throw InvalidInput("affine mapping needs square A and matching b");
        }
        Mapping m;
        m.name_ = std::move(name);
        m.dim_ = static_cast<std::size_t>(a.rows());
        m.affine_ = std::make_shared<const Affine>(Affine{std::move(a), std::move(b)});
        m.fixed_ = std::move(known_fixed_point);
        return m;
    }

    /// 1-D affine map x -> a x + b.
    static Mapping affine_scalar(std::string name, double a, double b, std::optional<double> known_fixed_point = {})
    {
        std::optional<Point> fp;
        if (known_fixed_point) fp = Point{*known_fixed_point};
        return affine(std::move(name), Matrix::Constant(1, 1, a), Vector::Constant(1, b), std::move(fp));
    }

    static Mapping identity(std::size_t dim, std::string name = "identity")
    {
        return affine(std::move(name), Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                      Vector::Zero(static_cast<Eigen::Index>(dim)));
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return dim_; }
    bool is_affine() const noexcept { return affine_ != nullptr; }
    const Affine* affine_form() const noexcept { return affine_.get(); }
    const std::optional<Point>& known_fixed_point() const noexcept { return fixed_; }

    /// Raw evaluation; no finiteness check on the result.
    Vector eval_raw(const Vector& x) const
    {
        if (affine_) return affine_->a * x + affine_->b;
        Vector y = (*fn_)(x);
        detail::require_same_dim(static_cast<std::size_t>(y.size()), dim_, "mapping output");
        return y;
    }

    Point operator()(const Point& p) const
    {
        detail::require_same_dim(p.dim(), dim_, "mapping evaluation");
        Vector y = eval_raw(p.vec());
        if (!y.allFinite()) throw EvaluationError("mapping '" + name_ + "' produced a non-finite value");
        return Point(std::move(y));
    }

private:
    std::string name_;
    std::size_t dim_ = 0;
    std::shared_ptr<const Fn> fn_;
    std::shared_ptr<const Affine> affine_;
    std::optional<Point> fixed_;
};

/// The averaged map f_c(u) = (1 - c) u + c f(u), c in (0, 1]. Shares its fixed points with f.
class AveragedMap {
public:
    AveragedMap(Mapping base, double c) : base_(std::move(base)), c_(c)
    {
        if (!(c > 0.0 && c <= 1.0)) throw InvalidInput("averaging parameter c must lie in (0, 1]");
    }

    const Mapping& base() const noexcept { return base_; }
    double c() const noexcept { return c_; }

    Point operator()(const Point& u) const
    {
        detail::require_same_dim(u.dim(), base_.dim(), "averaged_apply");
        return Point(detail::blend(c_, u.vec(), base_(u).vec()));
    }

    /// f_c as a Mapping; affine bases stay affine.
    Mapping as_mapping() const
    {
        std::string name = base_.name() + "_c";
        if (const auto* af = base_.affine_form()) {
            const auto n = af->a.rows();
            Matrix a = c_ == 1.0 ? af->a : Matrix((1.0 - c_) * Matrix::Identity(n, n) + c_ * af->a);
            Vector b = c_ == 1.0 ? af->b : Vector(c_ * af->b);
            return Mapping::affine(std::move(name), std::move(a), std::move(b), base_.known_fixed_point());
        }
        return Mapping::closure(
            std::move(name), base_.dim(),
            [base = base_, c = c_](const Vector& x) { return detail::blend(c, x, base.eval_raw(x)); },
            base_.known_fixed_point());
    }

private:
    Mapping base_;
    double c_;
};

inline Point averaged_apply(const AveragedMap& m, const Point& u) { return m(u); }

struct CommutingResult {
    bool commutes = true;
    std::optional<Point> witness;
    double max_defect = 0.0;
};

/// Sampled check of f(S(p)) = S(f(p)); reports the first sample whose defect exceeds tol.
inline CommutingResult check_commuting(const Mapping& f, const Mapping& s, std::span<const Point> samples, double tol,
                                       NormKind k = NormKind::L2)
{
    detail::require_same_dim(f.dim(), s.dim(), "check_commuting");
    if (samples.empty()) throw InvalidInput("check_commuting: no sample points");
    CommutingResult out;
    for (const auto& p : samples) {
        const double defect = distance(f(s(p)), s(f(p)), k);
        out.max_defect = std::max(out.max_defect, defect);
        if (defect > tol && out.commutes) {
            out.commutes = false;
            out.witness = p;
        }
    }
    return out;
}

} // namespace enrichfp
