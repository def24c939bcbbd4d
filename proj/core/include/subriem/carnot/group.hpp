#pragma once

#include <Eigen/Dense>

#include "subriem/carnot/algebra.hpp"

namespace subriem::carnot {

enum class Convention { Exponential, Polarized };

/// Point of the Carnot group in flat graded coordinates.
struct GroupElement {
    Eigen::VectorXd coords;
    Convention convention = Convention::Exponential;
};

GroupElement make_element(const GradedLieAlgebra& alg, Eigen::VectorXd coords,
                          Convention convention = Convention::Exponential);

/// Raw BCH product in exponential coordinates, Dynkin series through order 4.
Eigen::VectorXd bch(const GradedLieAlgebra& alg, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// exp(x) exp(y) in exponential coordinates. Refuses step > 4.
GroupElement bch_compose(const GradedLieAlgebra& alg, const GroupElement& x, const GroupElement& y);

GroupElement inverse(const GradedLieAlgebra& alg, const GroupElement& x);

/// Layer S scaled by lambda^S.
GroupElement dilate(const GradedLieAlgebra& alg, double lambda, const GroupElement& x);
Eigen::VectorXd dilate(const GradedLieAlgebra& alg, double lambda, const Eigen::VectorXd& x);

double koranyi_norm(const GradedLieAlgebra& alg, const Eigen::VectorXd& x);
double koranyi_norm(const GradedLieAlgebra& alg, const GroupElement& x);
/// ||y^{-1} x|| in the Koranyi gauge.
double koranyi_dist(const GradedLieAlgebra& alg, const GroupElement& x, const GroupElement& y);

/// Returns m when alg is h_{2m+1} (times an abelian factor appended to layer 1) in its
/// standard basis [X_j, X_{m+j}] = T, and 0 otherwise.
int heisenberg_rank(const GradedLieAlgebra& alg);

/// phi: exponential -> polarized adds 1/2 sum x_j x_{m+j} to the central coordinate;
/// the reverse direction applies phi^{-1}.
GroupElement heisenberg_coordinate_convert(const GradedLieAlgebra& alg, const GroupElement& x, Convention to);

} // namespace subriem::carnot
