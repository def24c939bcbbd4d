#pragma once

#include <vector>

#include <Eigen/Dense>

#include "subriem/carnot/algebra.hpp"
#include "subriem/ccmetric/polynomial.hpp"

namespace subriem::ccmetric {

/// Left-invariant field of v in exponential coordinates,
/// X_v(x) = v + 1/2 [x,v] + 1/12 [x,[x,v]] (exact through step 4).
PolyField left_invariant_field(const carnot::GradedLieAlgebra& alg, const Eigen::VectorXd& v);

/// The horizontal frame X_1..X_d of a Carnot group as polynomial vector fields.
class HorizontalFields {
public:
    explicit HorizontalFields(carnot::GradedLieAlgebra alg);

    const carnot::GradedLieAlgebra& algebra() const noexcept { return alg_; }
    int rank() const noexcept { return alg_.horizontal_dim(); }
    int dim() const noexcept { return alg_.dim(); }

    const PolyField& field(int j) const { return fields_.at(static_cast<std::size_t>(j)); }
    /// X_j(x), evaluated through brackets rather than the polynomial table.
    Eigen::VectorXd evaluate(int j, const Eigen::VectorXd& x) const;
    /// n x d matrix whose columns are X_j(x).
    Eigen::MatrixXd frame(const Eigen::VectorXd& x) const;
    /// X_j f.
    Polynomial apply(int j, const Polynomial& f) const { return apply_field(field(j), f); }

private:
    carnot::GradedLieAlgebra alg_;
    std::vector<PolyField> fields_;
};

/// Piecewise-constant horizontal controls on [0,1]: row k is the velocity on segment k.
struct PathControls {
    Eigen::MatrixXd u;

    int segments() const { return static_cast<int>(u.rows()); }
    double length() const;
    double energy() const;
};

/// RK4 integration of x' = sum_j u_j X_j(x) with `substeps` steps per segment.
Eigen::VectorXd integrate(const HorizontalFields& fields, const Eigen::VectorXd& x0, const PathControls& controls,
                          int substeps = 8);

/// Endpoint of the controls from x0 via exact group products x0 exp(u_1/K) ... exp(u_K/K).
Eigen::VectorXd group_endpoint(const carnot::GradedLieAlgebra& alg, const Eigen::VectorXd& x0,
                               const PathControls& controls);

} // namespace subriem::ccmetric
