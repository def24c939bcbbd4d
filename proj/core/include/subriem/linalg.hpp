#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace subriem {

using cplx = std::complex<double>;

struct GroupedValue {
    double value;
    std::size_t multiplicity;

    friend bool operator==(const GroupedValue&, const GroupedValue&) = default;
};

/// Groups ascending values into clusters whose consecutive gaps are <= tol.
/// Each cluster is reported by its mean.
std::vector<GroupedValue> group_sorted(std::span<const double> sorted, double tol);

/// Kronecker product a (x) b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// max |M - M^H| / max(1, |M|), entrywise.
double hermitian_residual(const Eigen::MatrixXcd& m);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

} // namespace subriem
