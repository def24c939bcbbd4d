#pragma once

#include <vector>

#include <Eigen/Dense>

#include "subriem/carnot/algebra.hpp"

namespace subriem::carnot {

inline constexpr double kLeviRankTol = 1e-10;

/// nu-th Levi form with its orthogonal normal form O^T L O = [[0,D,0],[-D,0,0],[0,0,0]].
struct LeviData {
    int nu = 0;               // 0-based layer-2 index
    Eigen::MatrixXd matrix;   // L^{(nu)}
    Eigen::VectorXd lambdas;  // descending, positive
    int m = 0;
    Eigen::MatrixXd O;

    double trace_norm() const { return 2.0 * lambdas.sum(); }
    /// The block form built from lambdas.
    Eigen::MatrixXd block_form() const;
};

/// L^{(nu)}_{jk}: coefficient of X_{2,nu} in [X_{1,j}, X_{1,k}].
Eigen::MatrixXd levi_matrix(const GradedLieAlgebra& alg, int nu);

LeviData levi_normal_form(const Eigen::MatrixXd& L, double tol_rank = kLeviRankTol);
LeviData levi_normal_form(const GradedLieAlgebra& alg, int nu, double tol_rank = kLeviRankTol);

struct QuotientMap {
    GradedLieAlgebra source;
    GradedLieAlgebra target;
    Eigen::MatrixXd projector;  // target dim x source dim
    Eigen::MatrixXd kernel;     // source dim x (source dim - target dim), orthonormal columns

    /// psi on exponential coordinates.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return projector * x; }
    /// max over generator pairs of |pr[a,b] - [pr a, pr b]|.
    double homomorphism_defect() const;
};

/// g_{2,nu} = V_1 + span{X_{2,nu}} with bracket pr o [.,.].
QuotientMap quotient_codim1(const GradedLieAlgebra& alg, int nu);

/// Gamma^l_{jk} for the left-invariant metric that makes the graded frame orthonormal.
class Christoffel {
public:
    explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

    int dim() const noexcept { return n_; }
    double operator()(int l, int j, int k) const { return data_[index(l, j, k)]; }
    double& operator()(int l, int j, int k) { return data_[index(l, j, k)]; }

private:
    std::size_t index(int l, int j, int k) const
    {
        return (static_cast<std::size_t>(l) * n_ + j) * n_ + k;
    }
    int n_;
    std::vector<double> data_;
};

Christoffel christoffel(const GradedLieAlgebra& alg);

} // namespace subriem::carnot
