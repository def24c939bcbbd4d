#include "subriem/spectra/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "subriem/errors.hpp"
#include "subriem/linalg.hpp"

namespace subriem::spectra {

namespace {

constexpr double kPi = std::numbers::pi;

// Ladder matrix a with a|k> = sqrt(k)|k-1>.
Eigen::MatrixXd lowering(int N)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
    for (int k = 1; k < N; ++k)
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// Identity on every oscillator factor except `slot`, which carries `op`.
Eigen::MatrixXcd embed(const Eigen::MatrixXd& op, int slot, int m, int N)
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(N, N);
    for (int j = 0; j < m; ++j)
        out = kron(out, j == slot ? Eigen::MatrixXcd(op.cast<cplx>()) : id);
    return out;
}

} // namespace

Eigen::MatrixXcd hermite_operator(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                  const HermiteTruncation& trunc)
{
    if (tau == 0)
        throw DomainError("the Hermite oracle needs tau != 0");
    if (trunc.N < 2)
        throw DomainError("the Hermite truncation needs N >= 2");
    const int m = spec.m;
    if (static_cast<int>(gamma.size()) != spec.d - 2 * m)
        throw MalformedInput("gamma must have d - 2m components");
    const int N = trunc.N;
    const double levels = std::pow(static_cast<double>(N), m) * spec.rep.dim;
    if (levels > 6000)
        throw SizeError("Hermite oracle matrix of dimension " + std::to_string(static_cast<long long>(levels))
                        + " is too large");

    const double s = std::sqrt(2.0 * kPi * std::abs(tau));
    const Eigen::MatrixXd a = lowering(N);
    const Eigen::MatrixXd u = (a + a.transpose()) / (std::sqrt(2.0) * s);
    const Eigen::MatrixXd du = s * (a - a.transpose()) / std::sqrt(2.0);
    const cplx I{0.0, 1.0};

    const auto osc_dim = static_cast<Eigen::Index>(std::pow(N, m) + 0.5);
    const Eigen::MatrixXcd id_osc = Eigen::MatrixXcd::Identity(osc_dim, osc_dim);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(osc_dim * spec.rep.dim, osc_dim * spec.rep.dim);
    for (int j = 0; j < m; ++j) {
        const double r = std::sqrt(spec.lambdas[static_cast<std::size_t>(j)]);
        D += r * kron(embed(du, j, m, N), spec.rep[j]);
        D += r * 2.0 * kPi * I * static_cast<double>(tau) * kron(embed(u, j, m, N), spec.rep[m + j]);
    }
    for (std::size_t k = 0; k < gamma.size(); ++k)
        D += 2.0 * kPi * I * gamma[k] * kron(id_osc, spec.rep[2 * m + static_cast<int>(k)]);

    const double residual = hermitian_residual(D);
    if (residual > 1e-10)
        throw ConsistencyError("assembled Hermite operator is not Hermitian (residual " + std::to_string(residual)
                               + ")");
    return D;
}

std::vector<OracleEigen> hermite_oracle_detailed(const NilmanifoldSpec& spec, int tau,
                                                 std::span<const double> gamma, const HermiteTruncation& trunc)
{
    const Eigen::MatrixXcd D = hermite_operator(spec, tau, gamma, trunc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D);
    const int m = spec.m;
    const int N = trunc.N;
    const int spin = spec.rep.dim;

    // Flags for basis rows that sit on the top two levels of some direction.
    std::vector<char> edge(static_cast<std::size_t>(D.rows()), 0);
    for (Eigen::Index row = 0; row < D.rows(); ++row) {
        Eigen::Index osc = row / spin;
        for (int j = 0; j < m; ++j) {
            if (osc % N >= N - 2)
                edge[static_cast<std::size_t>(row)] = 1;
            osc /= N;
        }
    }
    Eigen::VectorXd mask(D.rows());
    for (Eigen::Index row = 0; row < D.rows(); ++row)
        mask[row] = edge[static_cast<std::size_t>(row)] ? 1.0 : 0.0;

    // Inside a degenerate cluster the eigenvectors are an arbitrary basis, so the edge
    // mass is diagonalized on the cluster subspace before it is attributed.
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXcd& V = es.eigenvectors();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<OracleEigen> out;
    out.reserve(static_cast<std::size_t>(D.rows()));
    for (Eigen::Index i = 0; i < D.rows();) {
        Eigen::Index j = i + 1;
        while (j < D.rows() && ev[j] - ev[j - 1] <= 1e-9 * scale)
            ++j;
        const Eigen::MatrixXcd C = V.middleCols(i, j - i);
        const Eigen::MatrixXcd E = C.adjoint() * mask.asDiagonal() * C;
        const Eigen::VectorXd w = hermitian_eigenvalues(E);
        for (Eigen::Index k = i; k < j; ++k)
            out.push_back({ev[k], std::max(0.0, w[k - i])});
        i = j;
    }
    return out;
}

std::vector<double> hermite_oracle(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                   const HermiteTruncation& trunc)
{
    const Eigen::VectorXd ev = hermitian_eigenvalues(hermite_operator(spec, tau, gamma, trunc));
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> hermite_converged(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                      const HermiteTruncation& trunc, double edge_threshold)
{
    std::vector<double> out;
    for (const auto& e : hermite_oracle_detailed(spec, tau, gamma, trunc))
        if (e.edge_weight < edge_threshold)
            out.push_back(e.value);
    return out;
}

} // namespace subriem::spectra
