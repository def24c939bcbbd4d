#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "subriem/carnot/algebra.hpp"
#include "subriem/carnot/algebra_io.hpp"
#include "subriem/carnot/group.hpp"
#include "subriem/carnot/levi.hpp"
#include "subriem/errors.hpp"

using namespace subriem;
using namespace subriem::carnot;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

Eigen::VectorXd random_vec(int n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = u(rng);
    return v;
}

GroupElement el(const Eigen::VectorXd& v) { return {v, Convention::Exponential}; }

} // namespace

TEST_CASE("validate_algebra accepts the standard examples")
{
    CHECK(validate_algebra(heisenberg(1)).ok());
    CHECK(validate_algebra(heisenberg(2, 1)).ok());
    CHECK(validate_algebra(abelian(3)).ok());
    CHECK(validate_algebra(filiform(3)).ok());
    CHECK(validate_algebra(filiform(4)).ok());
    CHECK(validate_algebra(free_rank2_step3()).ok());
}

TEST_CASE("one-sided flip of [X1,X2] is an antisymmetry violation at ((1,1),(1,2))")
{
    GradedLieAlgebra bad({2, 1}, {{{0, 0}, {0, 1}, {{{1, 0}, 1.0}}}, {{0, 1}, {0, 0}, {{{1, 0}, 1.0}}}});
    const auto report = validate_algebra(bad);
    REQUIRE(report.has(Invariant::Antisymmetry));
    const auto& v = report.violations.front();
    CHECK(v.kind == Invariant::Antisymmetry);
    CHECK(v.witness == std::vector<Generator>{{0, 0}, {0, 1}});
    CHECK(report.summary().find("(1,1) (1,2)") != std::string::npos);
}

TEST_CASE("grading, Jacobi and bracket-generation violations are detected")
{
    // [X1, X2] landing in layer 1
    GradedLieAlgebra grading({2, 1}, {{{0, 0}, {0, 1}, {{{0, 0}, 1.0}, {{1, 0}, 1.0}}}});
    CHECK(validate_algebra(grading).has(Invariant::Grading));

    // Layer 2 never reached.
    GradedLieAlgebra flat({2, 1}, {});
    CHECK(validate_algebra(flat).has(Invariant::BracketGenerating));

    // dims (3,2,1): [X1,X2]=Y1, [X1,X3]=Y2, [X2,Y2]=Z, [X3,Y1]=2Z (Jacobi fails).
    GradedLieAlgebra jac({3, 2, 1}, {{{0, 0}, {0, 1}, {{{1, 0}, 1.0}}},
                                     {{0, 0}, {0, 2}, {{{1, 1}, 1.0}}},
                                     {{0, 1}, {1, 1}, {{{2, 0}, 1.0}}},
                                     {{0, 2}, {1, 0}, {{{2, 0}, 2.0}}}});
    const auto r = validate_algebra(jac);
    CHECK(r.has(Invariant::Jacobi));
    CHECK_FALSE(r.has(Invariant::Antisymmetry));
}

TEST_CASE("structure constants outside the declared dims are malformed")
{
    CHECK_THROWS_AS(GradedLieAlgebra({2, 1}, {{{0, 0}, {0, 2}, {{{1, 0}, 1.0}}}}), MalformedInput);
    CHECK_THROWS_AS(GradedLieAlgebra({2, 1}, {{{0, 0}, {0, 1}, {{{2, 0}, 1.0}}}}), MalformedInput);
    CHECK_THROWS_AS(GradedLieAlgebra({}, {}), MalformedInput);
}

TEST_CASE("bch_compose on h3 and identity / inverse")
{
    const auto h3 = heisenberg(1);
    const auto z = bch_compose(h3, el(vec({1, 0, 0})), el(vec({0, 1, 0})));
    CHECK(z.coords.isApprox(vec({1, 1, 0.5})));

    std::mt19937_64 rng(1);
    for (const auto& alg : {heisenberg(2), filiform(3), filiform(4), free_rank2_step3()}) {
        const Eigen::VectorXd x = random_vec(alg.dim(), rng);
        CHECK((bch(alg, x, Eigen::VectorXd::Zero(alg.dim())) - x).norm() == 0.0);
        CHECK((bch(alg, Eigen::VectorXd::Zero(alg.dim()), x) - x).norm() == 0.0);
        CHECK(bch(alg, x, inverse(alg, el(x)).coords).norm() < 1e-15);
    }
}

TEST_CASE("bch matches the Dynkin word-series oracle")
{
    std::mt19937_64 rng(7);
    for (const auto& alg : {filiform(3), filiform(4), free_rank2_step3(), heisenberg(2, 1)}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd x = random_vec(alg.dim(), rng);
            const Eigen::VectorXd y = random_vec(alg.dim(), rng);
            const Eigen::VectorXd ref = oracle::dynkin_bch(alg, x, y, alg.step());
            CHECK((bch(alg, x, y) - ref).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("bch refuses step 5 and polarized input")
{
    std::vector<BracketEntry> e;
    e.push_back({{0, 0}, {0, 1}, {{{1, 0}, 1.0}}});
    for (int s = 1; s < 4; ++s)
        e.push_back({{0, 0}, {s, 0}, {{{s + 1, 0}, 1.0}}});
    GradedLieAlgebra f5({2, 1, 1, 1, 1}, e);
    CHECK(validate_algebra(f5).ok());
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(6);
    CHECK_THROWS_AS(bch_compose(f5, el(z), el(z)), UnsupportedError);

    const auto h3 = heisenberg(1);
    GroupElement p{vec({1, 0, 0}), Convention::Polarized};
    CHECK_THROWS_AS(bch_compose(h3, p, el(vec({0, 1, 0}))), MalformedInput);
}

TEST_CASE("associativity on random triples")
{
    std::mt19937_64 rng(3);
    for (const auto& alg : {heisenberg(1), filiform(3), free_rank2_step3()}) {
        for (int t = 0; t < 50; ++t) {
            const Eigen::VectorXd a = random_vec(alg.dim(), rng), b = random_vec(alg.dim(), rng),
                                  c = random_vec(alg.dim(), rng);
            CHECK((bch(alg, bch(alg, a, b), c) - bch(alg, a, bch(alg, b, c))).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Heisenberg coordinate conversion")
{
    const auto h3 = heisenberg(1);
    auto p = heisenberg_coordinate_convert(h3, el(vec({1, 1, 0})), Convention::Polarized);
    CHECK(p.convention == Convention::Polarized);
    CHECK(p.coords.isApprox(vec({1, 1, 0.5})));
    p = heisenberg_coordinate_convert(h3, el(vec({0.3, 0, 2})), Convention::Polarized);
    CHECK(p.coords == vec({0.3, 0, 2}));

    std::mt19937_64 rng(11);
    const auto h5r = heisenberg(2, 1);
    CHECK(heisenberg_rank(h5r) == 2);
    for (int t = 0; t < 20; ++t) {
        const GroupElement x = el(random_vec(h5r.dim(), rng));
        const auto back = heisenberg_coordinate_convert(
            h5r, heisenberg_coordinate_convert(h5r, x, Convention::Polarized), Convention::Exponential);
        CHECK((back.coords - x.coords).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK_THROWS_AS(heisenberg_coordinate_convert(filiform(3), el(Eigen::VectorXd::Zero(4)), Convention::Polarized),
                    UnsupportedError);
}

TEST_CASE("dilations")
{
    const auto h3 = heisenberg(1);
    CHECK(dilate(h3, 2.0, el(vec({1, 1, 1}))).coords == vec({2, 2, 4}));
    CHECK(dilate(h3, 1.0, el(vec({0.1, -2, 3}))).coords == vec({0.1, -2, 3}));
    CHECK_THROWS_AS(dilate(h3, 0.0, el(vec({1, 1, 1}))), DomainError);
    CHECK_THROWS_AS(dilate(h3, -1.0, el(vec({1, 1, 1}))), DomainError);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const Eigen::VectorXd x = random_vec(3, rng), y = random_vec(3, rng);
        const double lam = 0.1 + 3.0 * std::abs(x[0]);
        const Eigen::VectorXd lhs = dilate(h3, lam, bch(h3, x, y));
        const Eigen::VectorXd rhs = bch(h3, dilate(h3, lam, x), dilate(h3, lam, y));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Koranyi gauge")
{
    const auto h3 = heisenberg(1);
    CHECK(koranyi_norm(h3, vec({1, 1, 1})) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-15));
    for (int i = 0; i < 3; ++i)
        CHECK(koranyi_norm(h3, Eigen::VectorXd::Unit(3, i)) == doctest::Approx(1.0));
    const auto f4 = filiform(4);
    for (int i = 0; i < f4.dim(); ++i)
        CHECK(koranyi_norm(f4, Eigen::VectorXd::Unit(f4.dim(), i)) == doctest::Approx(1.0));
    CHECK(koranyi_norm(h3, Eigen::VectorXd::Zero(3)) == 0.0);

    std::mt19937_64 rng(2);
    for (const auto& alg : {h3, filiform(3), f4}) {
        for (double lam : {0.5, 2.0, 10.0}) {
            const Eigen::VectorXd x = random_vec(alg.dim(), rng);
            const double lhs = koranyi_norm(alg, dilate(alg, lam, x));
            CHECK(std::abs(lhs - lam * koranyi_norm(alg, x)) < 1e-12 * std::max(1.0, lhs));
        }
    }
    // Extreme magnitudes stay finite.
    CHECK(std::isfinite(koranyi_norm(f4, vec({1e80, 0, 0, 0, 1e300}))));
    CHECK(koranyi_dist(h3, el(vec({1, 0, 0})), el(vec({1, 0, 0}))) == 0.0);
}

TEST_CASE("Levi normal form")
{
    const auto h3 = heisenberg(1);
    const auto L = levi_normal_form(h3, 0);
    CHECK(L.m == 1);
    CHECK(L.lambdas[0] == doctest::Approx(1.0));
    CHECK(L.matrix.isApprox((Eigen::MatrixXd(2, 2) << 0, 1, -1, 0).finished()));

    const auto zero = levi_normal_form(Eigen::MatrixXd::Zero(4, 4));
    CHECK(zero.m == 0);
    CHECK(zero.lambdas.size() == 0);
    CHECK_THROWS_AS(levi_normal_form(abelian(3), 0), DomainError);
    CHECK_THROWS_AS(levi_normal_form(h3, 1), IndexError);

    for (unsigned seed = 1; seed <= 30; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const Eigen::MatrixXd A = oracle::random_skew(n, seed);
        const auto d = levi_normal_form(A);
        const auto ref = oracle::skew_moduli(A);
        REQUIRE(static_cast<int>(ref.size()) == d.m);
        for (int j = 0; j < d.m; ++j)
            CHECK(std::abs(d.lambdas[j] - ref[static_cast<std::size_t>(j)]) < 1e-10);
        CHECK((d.O.transpose() * d.O - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((d.O.transpose() * A * d.O - d.block_form()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((d.O * d.block_form() * d.O.transpose() - A).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(d.trace_norm() == doctest::Approx(2.0 * d.lambdas.sum()));

        const Eigen::MatrixXd Q = oracle::random_orthogonal(n, seed + 100);
        const auto rotated = levi_normal_form(Eigen::MatrixXd(Q.transpose() * A * Q));
        CHECK((rotated.lambdas - d.lambdas).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("Levi normal form with repeated eigenvalues")
{
    const auto h5 = heisenberg(2);
    const auto d = levi_normal_form(h5, 0);
    CHECK(d.m == 2);
    CHECK((d.O.transpose() * d.O - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((d.O.transpose() * d.matrix * d.O - d.block_form()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("quotient_codim1")
{
    // h5 with two central directions: [X1,X3]=Z1, [X2,X4]=Z1, [X1,X2]=Z2.
    GradedLieAlgebra g({4, 2}, {{{0, 0}, {0, 2}, {{{1, 0}, 1.0}}},
                                {{0, 1}, {0, 3}, {{{1, 0}, 1.0}}},
                                {{0, 0}, {0, 1}, {{{1, 1}, 2.0}}}});
    REQUIRE(validate_algebra(g).ok());
    const auto q = quotient_codim1(g, 0);
    CHECK(q.target.step() == 2);
    CHECK(q.target.dim(0) == 4);
    CHECK(q.target.dim(1) == 1);
    CHECK(validate_algebra(q.target).ok());
    CHECK(q.homomorphism_defect() == 0.0);
    CHECK(levi_normal_form(q.target, 0).lambdas.isApprox(levi_normal_form(g, 0).lambdas));
    CHECK(q.projector.rows() == 5);
    CHECK(q.kernel.cols() == 1);
    CHECK((q.projector * q.kernel).norm() == 0.0);
    CHECK_THROWS_AS(quotient_codim1(g, 2), IndexError);

    const auto id = quotient_codim1(heisenberg(1), 0);
    CHECK(id.projector == Eigen::MatrixXd::Identity(3, 3));

    std::mt19937_64 rng(9);
    const auto q2 = quotient_codim1(g, 1);
    for (int t = 0; t < 50; ++t) {
        const Eigen::VectorXd x = random_vec(6, rng), y = random_vec(6, rng);
        const Eigen::VectorXd lhs = q2.apply(bch(g, x, y));
        const Eigen::VectorXd rhs = bch(q2.target, q2.apply(x), q2.apply(y));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }

    // Quotients of a step-3 algebra drop layer 3.
    const auto q3 = quotient_codim1(free_rank2_step3(), 0);
    CHECK(q3.homomorphism_defect() == 0.0);
    CHECK(q3.target.dim() == 3);
}

TEST_CASE("random step-2 quotients are exact homomorphisms")
{
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::vector<Eigen::MatrixXd> levi{oracle::random_skew(4, seed), oracle::random_skew(4, seed + 50)};
        const auto alg = step2_from_levi(levi);
        for (int nu = 0; nu < 2; ++nu)
            CHECK(quotient_codim1(alg, nu).homomorphism_defect() == 0.0);
    }
}

TEST_CASE("Christoffel symbols")
{
    const auto h3 = heisenberg(1);
    const auto G = christoffel(h3);
    CHECK(G(2, 0, 1) == 0.5);
    for (int l = 0; l < 2; ++l)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                CHECK(G(l, j, k) == 0.0);

    const auto A = christoffel(abelian(3));
    for (int l = 0; l < 3; ++l)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(A(l, j, k) == 0.0);

    for (const auto& alg : {free_rank2_step3(), filiform(4), heisenberg(2, 1)}) {
        const auto C = christoffel(alg);
        const int n = alg.dim();
        const int d1 = alg.horizontal_dim();
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    CHECK(C(l, j, k) == -C(k, j, l));
                    if (l < d1 && j < d1 && k < d1)
                        CHECK(C(l, j, k) == 0.0);
                }
    }
}

TEST_CASE("algebra JSON round trip and validation on load")
{
    const std::string text = R"({"step":2,"dims":[2,1],"brackets":[{"a":[1,1],"b":[1,2],"out":[[2,1,1.0]]}]})";
    const auto alg = parse_algebra(text);
    CHECK(alg.dim() == 3);
    CHECK(alg.bracket(1, 0) == SparseVector{{2, -1.0}});
    const auto again = parse_algebra(algebra_to_json(alg));
    CHECK(again.bracket(0, 1) == alg.bracket(0, 1));

    CHECK_THROWS_AS(parse_algebra(R"({"step":3,"dims":[2,1]})"), MalformedInput);
    CHECK_THROWS_AS(parse_algebra(R"({"dims":[2,1],"brackets":[{"a":[1,1],"b":[1,2]}]})"), MalformedInput);
    CHECK_THROWS_AS(parse_algebra(R"({"dims":[2,1],)"), MalformedInput);
    // Valid JSON, invalid algebra.
    const std::string flipped = R"({"dims":[2,1],"brackets":[{"a":[1,1],"b":[1,2],"out":[[2,1,1]]},
                                                  {"a":[1,2],"b":[1,1],"out":[[2,1,1]]}]})";
    CHECK_THROWS_AS(parse_algebra(flipped), MalformedInput);
    CHECK_FALSE(validate_algebra(parse_algebra(flipped, false)).ok());
}
