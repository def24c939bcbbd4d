#include "subriem/clifford/clifford.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "subriem/errors.hpp"

namespace subriem::clifford {

namespace {

const cplx I{0.0, 1.0};

Eigen::MatrixXcd e2()
{
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, I, I, 0.0;
    return m;
}

Eigen::MatrixXcd e3()
{
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, -1.0, 1.0, 0.0;
    return m;
}

// diag(1,-1) in the slot where the paper tensors with E1 = diag(i,-i); see README.
Eigen::MatrixXcd grading()
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

} // namespace

CliffordRep build_rep(int d)
{
    if (d < 0)
        throw DomainError("generator count must be nonnegative");
    if (d > kMaxGenerators)
        throw SizeError("Clifford representations are capped at d = " + std::to_string(kMaxGenerators) + ", got "
                        + std::to_string(d));
    if (d == 0)
        return {0, 1, {}};
    if (d == 1) {
        Eigen::MatrixXcd c(1, 1);
        c(0, 0) = I;
        return {1, 1, {c}};
    }
    const CliffordRep prev = build_rep(d - 2);
    const int m = d / 2;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(prev.dim, prev.dim);
    const Eigen::MatrixXcd s = grading();

    CliffordRep rep{d, prev.dim * 2, {}};
    for (int j = 1; j <= d; ++j) {
        if (j < m)
            rep.gens.push_back(kron(prev[j - 1], s));
        else if (j == m)
            rep.gens.push_back(kron(id, e2()));
        else if (j < 2 * m)
            rep.gens.push_back(kron(prev[j - 2], s));
        else if (j == 2 * m)
            rep.gens.push_back(kron(id, e3()));
        else
            rep.gens.push_back(kron(prev[j - 3], s));
    }
    return rep;
}

double relation_defect(const CliffordRep& rep)
{
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
    double defect = 0.0;
    for (int j = 0; j < rep.d; ++j) {
        defect = std::max(defect, (rep[j] * rep[j] + id).cwiseAbs().maxCoeff());
        for (int k = j + 1; k < rep.d; ++k)
            defect = std::max(defect, (rep[j] * rep[k] + rep[k] * rep[j]).cwiseAbs().maxCoeff());
    }
    return defect;
}

PairEigs pair_product_eigs(const CliffordRep& rep, int k, int l)
{
    if (k < 0 || l < 0 || k >= rep.d || l >= rep.d)
        throw IndexError("generator index out of range");
    if (k == l)
        throw DomainError("c(e_k)c(e_k) = -I; the pair proposition needs k != l");
    // -i c_k c_l is Hermitian with eigenvalues +-1.
    const Eigen::VectorXd ev = hermitian_eigenvalues(-I * rep[k] * rep[l]);
    PairEigs out;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        (ev[i] > 0.0 ? out.plus_i : out.minus_i)++;
    return out;
}

Eigen::MatrixXcd weighted_pair_matrix(const CliffordRep& rep, std::span<const double> lambdas)
{
    const int m = static_cast<int>(lambdas.size());
    if (2 * m > rep.d)
        throw DomainError("pairing needs 2m <= d, got m = " + std::to_string(m) + ", d = " + std::to_string(rep.d));
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
    for (int j = 0; j < m; ++j)
        sum += lambdas[static_cast<std::size_t>(j)] * rep[j] * rep[m + j];
    return sum;
}

WeightedPairSum weighted_sum_spectrum(const CliffordRep& rep, std::span<const double> lambdas)
{
    for (double l : lambdas)
        if (!(l > 0.0))
            throw DomainError("weights must be positive");
    WeightedPairSum out;
    out.m = static_cast<int>(lambdas.size());
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    out.matrix = weighted_pair_matrix(rep, lambdas);
    const Eigen::VectorXd ev = hermitian_eigenvalues(-I * out.matrix);
    const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
    const double tol = total > 0.0 ? 1e-9 * total : 1e-12;
    out.spectrum = group_sorted(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())), tol);
    return out;
}

} // namespace subriem::clifford
