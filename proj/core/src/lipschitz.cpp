#include "subriem/ccmetric/lipschitz.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "subriem/carnot/group.hpp"
#include "subriem/errors.hpp"

namespace subriem::ccmetric {

LipResult lip_cc(const ScalarFunction& f, const HorizontalFields& fields, const std::vector<PointPair>& pairs,
                 const DistanceOptions& opts)
{
    LipResult out;
    for (const auto& [x, y] : pairs) {
        if ((x - y).cwiseAbs().maxCoeff() == 0.0) {
            ++out.excluded;
            continue;
        }
        const DistanceResult r = cc_distance(fields, x, y, opts);
        if (!r.converged || !(r.value > 0.0)) {
            ++out.excluded;
            continue;
        }
        out.value = std::max(out.value, std::abs(f(x) - f(y)) / r.value);
        ++out.used;
    }
    return out;
}

std::vector<PointPair> near_pairs(const carnot::GradedLieAlgebra& alg, const std::vector<Eigen::VectorXd>& points,
                                  double h, int directions, std::uint64_t seed)
{
    const int d1 = alg.horizontal_dim();
    std::vector<Eigen::VectorXd> dirs;
    if (d1 == 2) {
        for (int i = 0; i < directions; ++i) {
            const double a = 2.0 * std::numbers::pi * i / directions;
            dirs.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
        }
    }
    else {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        for (int i = 0; i < directions; ++i) {
            Eigen::VectorXd v(d1);
            for (int k = 0; k < d1; ++k)
                v[k] = normal(rng);
            dirs.push_back(v.normalized());
        }
    }
    std::vector<PointPair> out;
    for (const auto& x : points) {
        for (const auto& v : dirs) {
            Eigen::VectorXd step = Eigen::VectorXd::Zero(alg.dim());
            step.head(d1) = h * v;
            out.emplace_back(x, carnot::bch(alg, x, step));
        }
    }
    return out;
}

Eigen::VectorXd horizontal_gradient(const ScalarFunction& f, const carnot::GradedLieAlgebra& alg,
                                    const Eigen::VectorXd& x, double h)
{
    const int d1 = alg.horizontal_dim();
    Eigen::VectorXd grad(d1);
    auto central = [&](int j, double t) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(alg.dim());
        s[j] = t;
        const double fp = f(carnot::bch(alg, x, s));
        s[j] = -t;
        const double fm = f(carnot::bch(alg, x, s));
        return (fp - fm) / (2.0 * t);
    };
    for (int j = 0; j < d1; ++j)
        grad[j] = (4.0 * central(j, 0.5 * h) - central(j, h)) / 3.0;
    return grad;
}

double grad_h_sup(const ScalarFunction& f, const HorizontalFields& fields, const std::vector<Eigen::VectorXd>& samples,
                  double h)
{
    double sup = 0.0;
    for (const auto& x : samples)
        sup = std::max(sup, horizontal_gradient(f, fields.algebra(), x, h).norm());
    return sup;
}

std::vector<Eigen::VectorXd> random_points(int dim, int count, double half_width, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-half_width, half_width);
    std::vector<Eigen::VectorXd> out;
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v(dim);
        for (int k = 0; k < dim; ++k)
            v[k] = unif(rng);
        out.push_back(std::move(v));
    }
    return out;
}

ComplexPolynomial apply_laplacian(const HorizontalFields& fields, const FirstOrderTerms& a, const Polynomial& g)
{
    const auto& alg = fields.algebra();
    const int n = alg.dim();
    ComplexPolynomial out{Polynomial(n), Polynomial(n)};
    for (int j = 0; j < fields.rank(); ++j)
        out.re -= fields.apply(j, fields.apply(j, g));
    for (const auto& [jk, c] : a) {
        const auto [j, k] = jk;
        if (j < 0 || k >= fields.rank() || j >= k)
            throw IndexError("first-order coefficient indices must satisfy j < k <= d");
        const Eigen::VectorXd v = alg.bracket(Eigen::VectorXd::Unit(n, j), Eigen::VectorXd::Unit(n, k));
        const Polynomial vg = apply_field(left_invariant_field(alg, v), g);
        // -i (a + ib) V g = b V g - i a V g
        out.re += c.imag() * vg;
        out.im -= c.real() * vg;
    }
    return out;
}

ComplexPolynomial double_commutator_apply(const Polynomial& f, const Polynomial& g, const HorizontalFields& fields,
                                          const FirstOrderTerms& a)
{
    const Polynomial f2 = f * f;
    const ComplexPolynomial t1 = apply_laplacian(fields, a, f2 * g);
    const ComplexPolynomial t2 = apply_laplacian(fields, a, f * g);
    const ComplexPolynomial t3 = apply_laplacian(fields, a, g);
    ComplexPolynomial out{t1.re - 2.0 * (f * t2.re) + f2 * t3.re, t1.im - 2.0 * (f * t2.im) + f2 * t3.im};
    out.re *= 0.5;
    out.im *= 0.5;
    return out;
}

ComplexPolynomial double_commutator_value(const Polynomial& f, const HorizontalFields& fields,
                                          const FirstOrderTerms& a)
{
    return double_commutator_apply(f, Polynomial::constant(f.nvars(), 1.0), fields, a);
}

Polynomial negative_gradient_square(const Polynomial& f, const HorizontalFields& fields)
{
    Polynomial out(f.nvars());
    for (int j = 0; j < fields.rank(); ++j) {
        const Polynomial xf = fields.apply(j, f);
        out -= xf * xf;
    }
    return out;
}

SandwichVerdict lipnorm_sandwich(const std::vector<double>& L0, const std::vector<double>& Ltheta, double eps)
{
    if (L0.size() != Ltheta.size())
        throw MalformedInput("seminorm samples must be paired");
    if (!(eps > 0.0))
        throw DomainError("eps must be positive");
    SandwichVerdict v;
    v.lower = 1.0 - eps;
    v.upper = 1.0 + eps;
    for (std::size_t i = 0; i < L0.size(); ++i) {
        if (!(L0[i] > 0.0))
            throw DomainError("reference seminorm values must be positive");
        const double gap = std::abs(Ltheta[i] - L0[i]) / L0[i];
        v.max_relative_gap = std::max(v.max_relative_gap, gap);
        if (gap > eps && !v.witness)
            v.witness = i;
    }
    v.holds = !v.witness.has_value();
    return v;
}

} // namespace subriem::ccmetric
