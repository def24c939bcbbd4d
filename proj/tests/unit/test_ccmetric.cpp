#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "subriem/carnot/algebra.hpp"
#include "subriem/carnot/group.hpp"
#include "subriem/ccmetric/distance.hpp"
#include "subriem/ccmetric/fields.hpp"
#include "subriem/ccmetric/lipschitz.hpp"
#include "subriem/ccmetric/polynomial.hpp"
#include "subriem/errors.hpp"

using namespace subriem;
using namespace subriem::ccmetric;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

PathControls square_loop()
{
    PathControls c;
    c.u.resize(4, 2);
    c.u << 2, 0, 0, 2, -2, 0, 0, -2;
    return c;
}

} // namespace

TEST_CASE("polynomial arithmetic")
{
    const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    const auto p = x * x * y + 3.0 * y - Polynomial::constant(2, 1.0);
    CHECK(p(vec({2, 3})) == doctest::Approx(12 + 9 - 1));
    CHECK(p.degree() == 3);
    CHECK(p.derivative(0)(vec({2, 3})) == doctest::Approx(12));
    CHECK(p.derivative(1)(vec({2, 3})) == doctest::Approx(7));
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(x + Polynomial::variable(3, 0), MalformedInput);

    std::mt19937_64 rng(1);
    const auto r = Polynomial::random(3, 3, rng);
    CHECK(r.degree() == 3);
    CHECK(r.terms().size() == 20);
}

TEST_CASE("H3 fields in exponential coordinates")
{
    const HorizontalFields F(carnot::heisenberg(1));
    const Eigen::VectorXd x = vec({0.3, -0.7, 1.1});
    CHECK((F.evaluate(0, x) - vec({1, 0, 0.35})).norm() < 1e-15);
    CHECK((F.evaluate(1, x) - vec({0, 1, 0.15})).norm() < 1e-15);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i)
            CHECK(F.field(j)[static_cast<std::size_t>(i)](x) == doctest::Approx(F.evaluate(j, x)[i]));
    CHECK((F.frame(Eigen::VectorXd::Zero(3)) - Eigen::MatrixXd::Identity(3, 2)).norm() == 0.0);
}

TEST_CASE("field components are homogeneous of degree L - 1")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& alg : {carnot::free_rank2_step3(), carnot::filiform(4), carnot::heisenberg(2)}) {
        const HorizontalFields F(alg);
        for (int t = 0; t < 10; ++t) {
            Eigen::VectorXd x(alg.dim());
            for (int i = 0; i < alg.dim(); ++i)
                x[i] = u(rng);
            const double lam = 1.7;
            const Eigen::VectorXd dx = carnot::dilate(alg, lam, x);
            for (int j = 0; j < F.rank(); ++j)
                for (int i = 0; i < alg.dim(); ++i) {
                    const int L = alg.layer_of(i) + 1;
                    const auto& P = F.field(j)[static_cast<std::size_t>(i)];
                    CHECK(std::abs(P(dx) - std::pow(lam, L - 1) * P(x)) < 1e-12);
                }
        }
    }
}

TEST_CASE("integration")
{
    const auto h3 = carnot::heisenberg(1);
    const HorizontalFields F(h3);
    PathControls straight;
    straight.u = Eigen::MatrixXd::Zero(3, 2);
    straight.u.col(0).setOnes();
    CHECK((integrate(F, Eigen::VectorXd::Zero(3), straight) - vec({1, 0, 0})).norm() < 1e-14);

    PathControls none;
    none.u = Eigen::MatrixXd::Zero(5, 2);
    const Eigen::VectorXd x0 = vec({0.2, 0.4, -1});
    CHECK(integrate(F, x0, none) == x0);

    const auto sq = square_loop();
    const Eigen::VectorXd end = integrate(F, Eigen::VectorXd::Zero(3), sq);
    CHECK((end - vec({0, 0, 0.25})).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((group_endpoint(h3, Eigen::VectorXd::Zero(3), sq) - vec({0, 0, 0.25})).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sq.length() == doctest::Approx(2.0));
    CHECK(sq.energy() == doctest::Approx(4.0));

    // Single-direction flows agree with group products.
    for (const auto& alg : {carnot::free_rank2_step3(), carnot::filiform(4)}) {
        const HorizontalFields G(alg);
        Eigen::VectorXd start = Eigen::VectorXd::LinSpaced(alg.dim(), -0.5, 0.7);
        PathControls c;
        c.u = Eigen::MatrixXd::Zero(4, 2);
        c.u.row(0) << 0.8, 0;
        c.u.row(1) << 0, -1.3;
        c.u.row(2) << 0.4, 0.6;
        c.u.row(3) << -1, 0.2;
        CHECK((integrate(G, start, c, 16) - group_endpoint(alg, start, c)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("cc distance: horizontal and vertical targets")
{
    const HorizontalFields F(carnot::heisenberg(1));
    const auto d1 = cc_distance(F, Eigen::VectorXd::Zero(3), vec({1, 0, 0}));
    CHECK(d1.converged);
    CHECK(std::abs(d1.value - 1.0) < 1e-3);

    DistanceOptions no_short;
    no_short.horizontal_shortcut = false;
    const auto d1b = cc_distance(F, Eigen::VectorXd::Zero(3), vec({1, 0, 0}), no_short);
    CHECK(std::abs(d1b.value - 1.0) < 1e-3);

    // Isoperimetric value sqrt(4 pi z) for the central target, below the square loop length.
    const auto dz = cc_distance(F, Eigen::VectorXd::Zero(3), vec({0, 0, 0.25}));
    CHECK(dz.converged);
    CHECK(dz.value <= square_loop().length());
    CHECK(std::abs(dz.value - std::sqrt(std::numbers::pi)) < 0.01 * std::sqrt(std::numbers::pi));
    CHECK(dz.endpoint_residual < 1e-6);

    CHECK(cc_distance(F, vec({1, 2, 3}), vec({1, 2, 3})).value == 0.0);
}

TEST_CASE("cc distance invariants on H3")
{
    const auto alg = carnot::heisenberg(1);
    const HorizontalFields F(alg);
    const auto pairs = random_pairs(3, 6, 1.0, 5);
    DistanceOptions opts;
    opts.multistart = 4;
    for (const auto& [x, y] : pairs) {
        const auto dxy = cc_distance(F, x, y, opts);
        const auto dyx = cc_distance(F, y, x, opts);
        REQUIRE(dxy.converged);
        CHECK(std::abs(dxy.value - dyx.value) < 2e-3 * dxy.value);

        // Planar projection lower bound.
        const Eigen::VectorXd rel = carnot::bch(alg, -y, x);
        CHECK(dxy.value >= rel.head(2).norm() - 1e-9);

        const Eigen::VectorXd g = vec({0.3, -1.2, 0.8});
        const auto dg = cc_distance(F, carnot::bch(alg, g, x), carnot::bch(alg, g, y), opts);
        CHECK(std::abs(dxy.value - dg.value) < 2e-3 * dxy.value);

        for (double lam : {0.5, 2.0}) {
            const auto dl = cc_distance(F, carnot::dilate(alg, lam, x), carnot::dilate(alg, lam, y), opts);
            CHECK(std::abs(dl.value / dxy.value - lam) < 0.02 * lam);
        }
    }
}

TEST_CASE("triangle inequality on a step-3 group")
{
    const auto alg = carnot::free_rank2_step3();
    const HorizontalFields F(alg);
    const auto pts = random_points(alg.dim(), 3, 0.5, 9);
    DistanceOptions opts;
    opts.multistart = 4;
    const double ab = cc_distance(F, pts[0], pts[1], opts).value;
    const double bc = cc_distance(F, pts[1], pts[2], opts).value;
    const double ac = cc_distance(F, pts[0], pts[2], opts).value;
    CHECK(ac <= ab + bc + 3e-3 * (ab + bc));
}

TEST_CASE("Koranyi bounds")
{
    const auto alg = carnot::heisenberg(1);
    const HorizontalFields F(alg);
    auto pairs = random_pairs(3, 20, 1.0, 11);
    pairs.emplace_back(vec({1, 1, 1}), vec({1, 1, 1}));
    DistanceOptions opts;
    opts.multistart = 3;
    const auto kb = koranyi_bounds(F, pairs, opts);
    CHECK(kb.skipped_equal == 1);
    CHECK(kb.used + kb.nonconverged == 20);
    CHECK(kb.c_hat > 0.0);
    CHECK(kb.c_hat <= kb.C_hat);
    CHECK(std::isfinite(kb.C_hat));

    // Axis-aligned horizontal displacements: the coordinatewise gauge equals the length.
    std::vector<PointPair> flat;
    for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXd x = vec({0.1 * i, -0.2, 0.3});
        const Eigen::VectorXd step = i % 2 ? vec({0, 0.2 * i, 0}) : vec({-0.5 - 0.1 * i, 0, 0});
        flat.emplace_back(carnot::bch(alg, x, step), x);
    }
    const auto kf = koranyi_bounds(F, flat, opts);
    CHECK(kf.c_hat == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(kf.C_hat == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Lipschitz constants and horizontal gradients")
{
    const auto alg = carnot::heisenberg(1);
    const HorizontalFields F(alg);
    const auto pts = random_points(3, 30, 1.0, 2);

    const ScalarFunction x1 = [](const Eigen::VectorXd& x) { return x[0]; };
    const ScalarFunction c = [](const Eigen::VectorXd&) { return 4.0; };
    const ScalarFunction x3 = [](const Eigen::VectorXd& x) { return x[2]; };

    CHECK(grad_h_sup(x1, F, pts) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(grad_h_sup(c, F, pts) == 0.0);

    double expect = 0.0;
    for (const auto& p : pts)
        expect = std::max(expect, 0.5 * std::hypot(p[0], p[1]));
    CHECK(grad_h_sup(x3, F, pts) == doctest::Approx(expect).epsilon(1e-8));
    CHECK(expect < 0.5 * std::sqrt(2.0));

    const auto near = near_pairs(alg, std::vector<Eigen::VectorXd>(pts.begin(), pts.begin() + 5), 1e-2, 8);
    CHECK(near.size() == 40);
    const auto l1 = lip_cc(x1, F, near);
    CHECK(l1.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(lip_cc(c, F, near).value == 0.0);

    const Eigen::VectorXd g = horizontal_gradient(x3, alg, vec({0.4, -0.6, 2.0}));
    CHECK(g[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(0.2).epsilon(1e-8));
}

TEST_CASE("double commutator identity")
{
    const auto h3 = carnot::heisenberg(1);
    const HorizontalFields F(h3);
    const auto x1 = Polynomial::variable(3, 0), x2 = Polynomial::variable(3, 1);

    auto dc = double_commutator_value(x1, F);
    CHECK((dc.re - Polynomial::constant(3, -1.0)).is_zero(1e-14));
    CHECK(dc.im.is_zero(1e-14));
    CHECK(double_commutator_value(Polynomial::constant(3, 2.5), F).re.is_zero());

    dc = double_commutator_value(x1 * x2, F);
    CHECK((dc.re + x1 * x1 + x2 * x2).is_zero(1e-14));

    std::mt19937_64 rng(8);
    FirstOrderTerms a;
    a[{0, 1}] = {0.7, -0.2};
    for (const auto& alg : {h3, carnot::heisenberg(2), carnot::free_rank2_step3()}) {
        const HorizontalFields G(alg);
        for (int t = 0; t < 5; ++t) {
            const auto f = Polynomial::random(alg.dim(), 3, rng);
            const auto v = double_commutator_value(f, G, a);
            CHECK((v.re - negative_gradient_square(f, G)).is_zero(1e-10));
            CHECK(v.im.is_zero(1e-10));
            // Multiplication operator on a nontrivial test polynomial.
            const auto g = Polynomial::random(alg.dim(), 2, rng);
            const auto w = double_commutator_apply(f, g, G, a);
            CHECK((w.re - negative_gradient_square(f, G) * g).is_zero(1e-10));
            CHECK(w.im.is_zero(1e-10));
        }
    }
}

TEST_CASE("sup of the double commutator equals grad_h_sup squared")
{
    const HorizontalFields F(carnot::heisenberg(1));
    std::mt19937_64 rng(12);
    const auto pts = random_points(3, 25, 1.0, 4);
    for (int t = 0; t < 3; ++t) {
        const auto f = Polynomial::random(3, 2, rng);
        const auto v = double_commutator_value(f, F);
        double sup_dc = 0.0;
        for (const auto& p : pts)
            sup_dc = std::max(sup_dc, std::abs(v.re(p)));
        const ScalarFunction fn = [&f](const Eigen::VectorXd& x) { return f(x); };
        const double gh = grad_h_sup(fn, F, pts);
        CHECK(std::abs(sup_dc - gh * gh) < 1e-6 * std::max(1.0, sup_dc));
    }
}

TEST_CASE("Lip-norm sandwich")
{
    const std::vector<double> L0{1.0, 2.0, 0.5};
    auto v = lipnorm_sandwich(L0, L0, 1e-6);
    CHECK(v.holds);
    CHECK(v.lower == doctest::Approx(1 - 1e-6));
    std::vector<double> scaled;
    for (double x : L0)
        scaled.push_back(1.05 * x);
    v = lipnorm_sandwich(L0, scaled, 0.1);
    CHECK(v.holds);
    CHECK(v.upper == doctest::Approx(1.1));
    v = lipnorm_sandwich(L0, scaled, 0.01);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(*v.witness == 0);
    CHECK(v.max_relative_gap == doctest::Approx(0.05));
}
