#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "subriem/ccmetric/distance.hpp"
#include "subriem/ccmetric/polynomial.hpp"

namespace subriem::ccmetric {

using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;

struct LipResult {
    double value = 0.0;
    int used = 0;
    int excluded = 0;
};

/// max |f(x) - f(y)| / d_CC(x, y) over the pairs; non-converged pairs are excluded.
LipResult lip_cc(const ScalarFunction& f, const HorizontalFields& fields, const std::vector<PointPair>& pairs,
                 const DistanceOptions& opts = {});

/// Pairs (x, x exp(h v)) for `directions` horizontal unit vectors v per sample point.
/// For d = 2 the directions are equally spaced on the circle; otherwise seeded random.
std::vector<PointPair> near_pairs(const carnot::GradedLieAlgebra& alg, const std::vector<Eigen::VectorXd>& points,
                                  double h, int directions, std::uint64_t seed = 0);

/// X_j f(x) by central differences along exp(t X_j), h = 1e-5 with one Richardson step.
Eigen::VectorXd horizontal_gradient(const ScalarFunction& f, const carnot::GradedLieAlgebra& alg,
                                    const Eigen::VectorXd& x, double h = 1e-5);

/// max over the samples of ||(X_1 f, ..., X_d f)||.
double grad_h_sup(const ScalarFunction& f, const HorizontalFields& fields, const std::vector<Eigen::VectorXd>& samples,
                  double h = 1e-5);

/// Uniform samples in the box |x_i| <= half_width.
std::vector<Eigen::VectorXd> random_points(int dim, int count, double half_width, std::uint64_t seed);

/// Complex polynomial split into real and imaginary parts.
struct ComplexPolynomial {
    Polynomial re;
    Polynomial im;
};

/// Coefficients a_jk (0-based, j < k) of the first-order part -i sum a_jk [X_j, X_k].
using FirstOrderTerms = std::map<std::pair<int, int>, std::complex<double>>;

/// Delta g = -sum X_j^2 g - i sum a_jk [X_j, X_k] g.
ComplexPolynomial apply_laplacian(const HorizontalFields& fields, const FirstOrderTerms& a, const Polynomial& g);

/// The multiplier of 1/2 [[Delta, f], f], computed as 1/2 (Delta(f^2 g) - 2 f Delta(f g) + f^2 Delta g) / g
/// with g = 1.
ComplexPolynomial double_commutator_value(const Polynomial& f, const HorizontalFields& fields,
                                          const FirstOrderTerms& a = {});

/// 1/2 [[Delta, f], f] g for a test polynomial g.
ComplexPolynomial double_commutator_apply(const Polynomial& f, const Polynomial& g, const HorizontalFields& fields,
                                          const FirstOrderTerms& a = {});

/// -sum_j (X_j f)^2.
Polynomial negative_gradient_square(const Polynomial& f, const HorizontalFields& fields);

struct SandwichVerdict {
    bool holds = false;
    std::optional<std::size_t> witness;  // first index with |Lt - L0| > eps L0
    double max_relative_gap = 0.0;
    double lower = 0.0;  // 1 - eps
    double upper = 0.0;  // 1 + eps
};

SandwichVerdict lipnorm_sandwich(const std::vector<double>& L0, const std::vector<double>& Ltheta, double eps);

} // namespace subriem::ccmetric
