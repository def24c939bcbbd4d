#include "subriem/carnot/group.hpp"

#include <cmath>
#include <string>

#include "subriem/errors.hpp"

namespace subriem::carnot {

namespace {

void require_exponential(const GroupElement& x)
{
    if (x.convention != Convention::Exponential)
        throw MalformedInput("operation expects exponential coordinates");
}

void require_size(const GradedLieAlgebra& alg, const Eigen::VectorXd& v)
{
    if (v.size() != alg.dim())
        throw MalformedInput("coordinate vector has length " + std::to_string(v.size()) + ", algebra dimension is "
                             + std::to_string(alg.dim()));
}

} // namespace

GroupElement make_element(const GradedLieAlgebra& alg, Eigen::VectorXd coords, Convention convention)
{
    require_size(alg, coords);
    return {std::move(coords), convention};
}

Eigen::VectorXd bch(const GradedLieAlgebra& alg, const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    const int R = alg.step();
    if (R > 4)
        throw UnsupportedError("BCH composition is implemented for step <= 4, got step " + std::to_string(R));
    Eigen::VectorXd z = x + y;
    if (R < 2)
        return z;
    const Eigen::VectorXd xy = alg.bracket(x, y);
    z += 0.5 * xy;
    if (R < 3)
        return z;
    const Eigen::VectorXd xxy = alg.bracket(x, xy);
    z += (xxy - alg.bracket(y, xy)) / 12.0;
    if (R < 4)
        return z;
    z -= alg.bracket(y, xxy) / 24.0;
    return z;
}

GroupElement bch_compose(const GradedLieAlgebra& alg, const GroupElement& x, const GroupElement& y)
{
    require_exponential(x);
    require_exponential(y);
    require_size(alg, x.coords);
    require_size(alg, y.coords);
    return {bch(alg, x.coords, y.coords), Convention::Exponential};
}

GroupElement inverse(const GradedLieAlgebra& alg, const GroupElement& x)
{
    require_exponential(x);
    require_size(alg, x.coords);
    return {-x.coords, Convention::Exponential};
}

Eigen::VectorXd dilate(const GradedLieAlgebra& alg, double lambda, const Eigen::VectorXd& x)
{
    if (!(lambda > 0.0))
        throw DomainError("dilation factor must be positive");
    require_size(alg, x);
    Eigen::VectorXd out = x;
    double scale = 1.0;
    for (int s = 0; s < alg.step(); ++s) {
        scale *= lambda;
        out.segment(alg.offset(s), alg.dim(s)) *= scale;
    }
    return out;
}

GroupElement dilate(const GradedLieAlgebra& alg, double lambda, const GroupElement& x)
{
    // Both conventions are graded, so the same scaling applies.
    return {dilate(alg, lambda, x.coords), x.convention};
}

double koranyi_norm(const GradedLieAlgebra& alg, const Eigen::VectorXd& x)
{
    require_size(alg, x);
    const int R = alg.step();
    double fact = 1.0;
    for (int s = 2; s <= R; ++s)
        fact *= s;
    const double e = 2.0 * fact;

    double r = 0.0;
    for (int s = 0; s < R; ++s)
        for (int j = 0; j < alg.dim(s); ++j)
            r = std::max(r, std::pow(std::abs(x[alg.offset(s) + j]), 1.0 / (s + 1)));
    if (r == 0.0)
        return 0.0;
    double sum = 0.0;
    for (int s = 0; s < R; ++s) {
        const double rs = std::pow(r, s + 1);
        for (int j = 0; j < alg.dim(s); ++j)
            sum += std::pow(std::abs(x[alg.offset(s) + j]) / rs, e / (s + 1));
    }
    return r * std::pow(sum, 1.0 / e);
}

double koranyi_norm(const GradedLieAlgebra& alg, const GroupElement& x)
{
    require_exponential(x);
    return koranyi_norm(alg, x.coords);
}

double koranyi_dist(const GradedLieAlgebra& alg, const GroupElement& x, const GroupElement& y)
{
    return koranyi_norm(alg, bch_compose(alg, inverse(alg, y), x));
}

int heisenberg_rank(const GradedLieAlgebra& alg)
{
    if (alg.step() != 2 || alg.dim(1) != 1)
        return 0;
    const int n = alg.horizontal_dim();
    const int t = alg.offset(1);
    // The partner of X_1 fixes m; the full table is then compared against the standard form.
    int m = 0;
    for (int k = 1; k < n; ++k)
        if (!alg.bracket(0, k).empty()) {
            m = k;
            break;
        }
    if (m == 0 || 2 * m > n)
        return 0;
    for (int a = 0; a < alg.dim(); ++a) {
        for (int b = 0; b < alg.dim(); ++b) {
            double expect = 0.0;
            if (a < m && b == a + m)
                expect = 1.0;
            else if (b < m && a == b + m)
                expect = -1.0;
            double got = 0.0;
            for (const auto& [i, c] : alg.bracket(a, b)) {
                if (i != t)
                    return 0;
                got += c;
            }
            if (got != expect)
                return 0;
        }
    }
    return m;
}

GroupElement heisenberg_coordinate_convert(const GradedLieAlgebra& alg, const GroupElement& x, Convention to)
{
    require_size(alg, x.coords);
    const int m = heisenberg_rank(alg);
    if (m == 0)
        throw UnsupportedError("coordinate conversion needs a Heisenberg algebra in standard basis");
    if (x.convention == to)
        return x;
    double q = 0.0;
    for (int j = 0; j < m; ++j)
        q += x.coords[j] * x.coords[m + j];
    GroupElement out{x.coords, to};
    const int t = alg.offset(1);
    out.coords[t] += (to == Convention::Polarized ? 0.5 : -0.5) * q;
    return out;
}

} // namespace subriem::carnot
