#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "subriem/carnot/algebra.hpp"
#include "subriem/carnot/levi.hpp"
#include "subriem/clifford/clifford.hpp"
#include "subriem/linalg.hpp"

namespace subriem::hypo {

inline constexpr double kDefaultTol = 1e-9;

/// -sum X_j^2 - i sum_{j<k} A_jk [X_j, X_k] + lower order. Keys are 0-based (j, k), j < k.
struct LaplacianSpec {
    carnot::GradedLieAlgebra alg;
    int p = 1;
    std::map<std::pair<int, int>, Eigen::MatrixXcd> A;
};

/// Checks index ranges and matrix shapes.
void validate_spec(const LaplacianSpec& spec);

enum class GroupKind { Heisenberg, HeisenbergTimesAbelian };

struct SingularSet {
    enum class Kind { Discrete, Rays };
    Kind kind = Kind::Discrete;
    double half_trace = 0.0;      // 1/2 ||L||_1
    std::vector<double> lambdas;  // Discrete only
    double tol = kDefaultTol;
};

SingularSet singular_set(const carnot::LeviData& levi, GroupKind kind, double tol = kDefaultTol);

/// 2m = d means the quotient is a Heisenberg group.
GroupKind classify(const carnot::LeviData& levi);

struct Membership {
    bool member = false;
    double element = 0.0;
};

Membership membership(cplx mu, const SingularSet& set);

/// A_nu = sum_{j<k} A_jk L^{(nu)}_jk.
Eigen::MatrixXcd effective_matrix(const LaplacianSpec& spec, int nu);

enum class Status { Hypoelliptic, NotHypoelliptic, Inconclusive };

std::string to_string(Status s);

struct Witness {
    int nu = 0;  // 0-based
    cplx mu;
    double element = 0.0;
};

struct Verdict {
    Status status = Status::Inconclusive;
    std::optional<Witness> witness;
    std::vector<std::string> notes;
};

Verdict decide(const LaplacianSpec& spec, double tol = kDefaultTol);

/// A_jk = i c(e_j) c(e_k).
LaplacianSpec dirac_square_spec(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep);
Verdict dirac_verdict(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep,
                      double tol = kDefaultTol);

/// A_jk = (1 - theta) i c(e_j) c(e_k), theta in (0, 1], step 2 with d_2 = 1.
LaplacianSpec theta_family_spec(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep,
                                double theta);
Verdict theta_verdict(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep, double theta,
                      double tol = kDefaultTol);

} // namespace subriem::hypo
