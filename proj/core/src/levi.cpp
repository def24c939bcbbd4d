#include "subriem/carnot/levi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subriem/errors.hpp"
#include "subriem/linalg.hpp"

namespace subriem::carnot {

Eigen::MatrixXd LeviData::block_form() const
{
    const auto n = matrix.rows();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < m; ++j) {
        b(j, m + j) = lambdas[j];
        b(m + j, j) = -lambdas[j];
    }
    return b;
}

Eigen::MatrixXd levi_matrix(const GradedLieAlgebra& alg, int nu)
{
    if (alg.step() < 2)
        throw DomainError("algebra has no layer 2");
    if (nu < 0 || nu >= alg.dim(1))
        throw IndexError("layer-2 index " + std::to_string(nu + 1) + " out of range 1.."
                         + std::to_string(alg.dim(1)));
    const int n = alg.horizontal_dim();
    const int target = alg.offset(1) + nu;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (const auto& [i, c] : alg.bracket(j, k))
                if (i == target)
                    L(j, k) += c;
    return L;
}

LeviData levi_normal_form(const Eigen::MatrixXd& L, double tol_rank)
{
    if (L.rows() != L.cols())
        throw MalformedInput("Levi matrix must be square");
    const auto n = L.rows();
    LeviData out;
    out.matrix = L;
    out.O = Eigen::MatrixXd::Identity(n, n);
    out.lambdas.resize(0);
    const double fro = L.norm();
    if (n == 0 || fro == 0.0)
        return out;

    const Eigen::MatrixXcd H = cplx(0.0, 1.0) * L.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();

    // Positive eigenvalues come last in ascending order.
    std::vector<Eigen::Index> pos;
    for (Eigen::Index i = n - 1; i >= 0; --i)
        if (vals[i] > tol_rank * fro)
            pos.push_back(i);
    const int m = static_cast<int>(pos.size());
    out.m = m;
    out.lambdas.resize(m);
    Eigen::MatrixXd P(n, 2 * m);
    for (int j = 0; j < m; ++j) {
        const auto i = pos[static_cast<std::size_t>(j)];
        out.lambdas[j] = vals[i];
        // v = x + i y with L x = lambda y, L y = -lambda x.
        P.col(j) = std::sqrt(2.0) * vecs.col(i).imag();
        P.col(m + j) = std::sqrt(2.0) * vecs.col(i).real();
    }
    Eigen::MatrixXd O(n, n);
    O.leftCols(2 * m) = P;
    if (2 * m < n) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(P);
        const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        O.rightCols(n - 2 * m) = Q.rightCols(n - 2 * m);
    }
    out.O = O;
    return out;
}

LeviData levi_normal_form(const GradedLieAlgebra& alg, int nu, double tol_rank)
{
    LeviData d = levi_normal_form(levi_matrix(alg, nu), tol_rank);
    d.nu = nu;
    return d;
}

double QuotientMap::homomorphism_defect() const
{
    double defect = 0.0;
    const int n = source.dim();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXd ea = Eigen::VectorXd::Unit(n, a);
            Eigen::VectorXd eb = Eigen::VectorXd::Unit(n, b);
            const Eigen::VectorXd lhs = projector * source.bracket(ea, eb);
            const Eigen::VectorXd rhs = target.bracket(projector * ea, projector * eb);
            defect = std::max(defect, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return defect;
}

QuotientMap quotient_codim1(const GradedLieAlgebra& alg, int nu)
{
    const Eigen::MatrixXd L = levi_matrix(alg, nu);
    const Eigen::MatrixXd levi[] = {L};
    GradedLieAlgebra target = step2_from_levi(levi);
    const int n = alg.dim();
    const int d1 = alg.horizontal_dim();
    const int kept = alg.offset(1) + nu;

    Eigen::MatrixXd pr = Eigen::MatrixXd::Zero(d1 + 1, n);
    pr.leftCols(d1).topRows(d1).setIdentity();
    pr(d1, kept) = 1.0;

    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, n - d1 - 1);
    int col = 0;
    for (int i = d1; i < n; ++i)
        if (i != kept)
            kernel(i, col++) = 1.0;
    return {alg, std::move(target), std::move(pr), std::move(kernel)};
}

Christoffel christoffel(const GradedLieAlgebra& alg)
{
    const int n = alg.dim();
    auto g = [&](int e, int a, int b) {
        double v = 0.0;
        for (const auto& [i, c] : alg.bracket(a, b))
            if (i == e)
                v += c;
        return v;
    };
    Christoffel out(n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out(l, j, k) = 0.5 * (-g(k, j, l) - g(l, k, j) + g(j, k, l));
    return out;
}

} // namespace subriem::carnot
