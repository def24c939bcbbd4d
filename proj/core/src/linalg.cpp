#include "subriem/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace subriem {

std::vector<GroupedValue> group_sorted(std::span<const double> sorted, double tol)
{
    std::vector<GroupedValue> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        double sum = sorted[i];
        while (j < sorted.size() && sorted[j] - sorted[j - 1] <= tol) {
            sum += sorted[j];
            ++j;
        }
        out.push_back({sum / static_cast<double>(j - i), j - i});
        i = j;
    }
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermitian_residual(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0)
        return 0.0;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace subriem
