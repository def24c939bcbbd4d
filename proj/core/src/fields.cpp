#include "subriem/ccmetric/fields.hpp"

#include <cmath>

#include "subriem/carnot/group.hpp"
#include "subriem/errors.hpp"

namespace subriem::ccmetric {

namespace {

// [x, P] for the coordinate vector x of variables and a polynomial algebra element P.
PolyField bracket_with_x(const carnot::GradedLieAlgebra& alg, const PolyField& P)
{
    const int n = alg.dim();
    PolyField out(static_cast<std::size_t>(n), Polynomial(n));
    for (int a = 0; a < n; ++a) {
        const Polynomial xa = Polynomial::variable(n, a);
        for (int b = 0; b < n; ++b) {
            if (P[static_cast<std::size_t>(b)].terms().empty())
                continue;
            const auto& br = alg.bracket(a, b);
            if (br.empty())
                continue;
            const Polynomial prod = xa * P[static_cast<std::size_t>(b)];
            for (const auto& [i, c] : br)
                out[static_cast<std::size_t>(i)] += c * prod;
        }
    }
    return out;
}

} // namespace

PolyField left_invariant_field(const carnot::GradedLieAlgebra& alg, const Eigen::VectorXd& v)
{
    if (alg.step() > 4)
        throw UnsupportedError("left-invariant fields are implemented for step <= 4");
    const int n = alg.dim();
    PolyField base(static_cast<std::size_t>(n), Polynomial(n));
    for (int i = 0; i < n; ++i)
        if (v[i] != 0.0)
            base[static_cast<std::size_t>(i)] = Polynomial::constant(n, v[i]);
    const PolyField one = bracket_with_x(alg, base);
    const PolyField two = bracket_with_x(alg, one);
    PolyField out = base;
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] += 0.5 * one[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] += (1.0 / 12.0) * two[static_cast<std::size_t>(i)];
    }
    return out;
}

HorizontalFields::HorizontalFields(carnot::GradedLieAlgebra alg) : alg_(std::move(alg))
{
    for (int j = 0; j < rank(); ++j)
        fields_.push_back(left_invariant_field(alg_, Eigen::VectorXd::Unit(alg_.dim(), j)));
}

Eigen::VectorXd HorizontalFields::evaluate(int j, const Eigen::VectorXd& x) const
{
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(dim(), j);
    const Eigen::VectorXd xe = alg_.bracket(x, e);
    return e + 0.5 * xe + alg_.bracket(x, xe) / 12.0;
}

Eigen::MatrixXd HorizontalFields::frame(const Eigen::VectorXd& x) const
{
    Eigen::MatrixXd F(dim(), rank());
    for (int j = 0; j < rank(); ++j)
        F.col(j) = evaluate(j, x);
    return F;
}

double PathControls::length() const
{
    if (u.rows() == 0)
        return 0.0;
    return u.rowwise().norm().sum() / static_cast<double>(u.rows());
}

double PathControls::energy() const
{
    if (u.rows() == 0)
        return 0.0;
    return u.squaredNorm() / static_cast<double>(u.rows());
}

Eigen::VectorXd integrate(const HorizontalFields& fields, const Eigen::VectorXd& x0, const PathControls& controls,
                          int substeps)
{
    if (substeps < 8)
        substeps = 8;
    if (x0.size() != fields.dim() || controls.u.cols() != fields.rank())
        throw MalformedInput("state or control dimension does not match the fields");
    const int K = controls.segments();
    const double h = 1.0 / (static_cast<double>(K) * substeps);
    Eigen::VectorXd x = x0;
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXd uk = controls.u.row(k).transpose();
        auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd { return fields.frame(y) * uk; };
        for (int s = 0; s < substeps; ++s) {
            const Eigen::VectorXd k1 = rhs(x);
            const Eigen::VectorXd k2 = rhs(x + 0.5 * h * k1);
            const Eigen::VectorXd k3 = rhs(x + 0.5 * h * k2);
            const Eigen::VectorXd k4 = rhs(x + h * k3);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!x.allFinite())
            throw ConsistencyError("integration blow-up: non-finite state on segment " + std::to_string(k + 1));
    }
    return x;
}

Eigen::VectorXd group_endpoint(const carnot::GradedLieAlgebra& alg, const Eigen::VectorXd& x0,
                               const PathControls& controls)
{
    const int K = controls.segments();
    const int d1 = alg.horizontal_dim();
    Eigen::VectorXd x = x0;
    Eigen::VectorXd step = Eigen::VectorXd::Zero(alg.dim());
    for (int k = 0; k < K; ++k) {
        step.head(d1) = controls.u.row(k).transpose() / static_cast<double>(K);
        x = carnot::bch(alg, x, step);
    }
    return x;
}

} // namespace subriem::ccmetric
