#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subriem/linalg.hpp"

namespace subriem::clifford {

inline constexpr int kMaxGenerators = 12;

/// Irreducible complex representation of Cl(d): d generators of size 2^{floor(d/2)}.
struct CliffordRep {
    int d = 0;
    int dim = 1;
    std::vector<Eigen::MatrixXcd> gens;

    const Eigen::MatrixXcd& operator[](int j) const { return gens.at(static_cast<std::size_t>(j)); }
};

/// Tensor recursion Cl(d) from Cl(d-2) and the 2x2 blocks E2, E3. Raises SizeError for d > 12.
CliffordRep build_rep(int d);

/// Largest entrywise deviation from c_j^2 = -I and c_j c_k + c_k c_j = 0.
double relation_defect(const CliffordRep& rep);

struct PairEigs {
    std::size_t plus_i = 0;
    std::size_t minus_i = 0;
};

/// Multiplicities of +i and -i in c(e_k)c(e_l), 0-based, k != l.
PairEigs pair_product_eigs(const CliffordRep& rep, int k, int l);

/// sum_j lambda_j c(e_j) c(e_{m+j}) with m = lambdas.size().
Eigen::MatrixXcd weighted_pair_matrix(const CliffordRep& rep, std::span<const double> lambdas);

struct WeightedPairSum {
    int m = 0;
    std::vector<double> lambdas;
    Eigen::MatrixXcd matrix;
    /// Imaginary parts of the eigenvalues, ascending, grouped.
    std::vector<GroupedValue> spectrum;
};

WeightedPairSum weighted_sum_spectrum(const CliffordRep& rep, std::span<const double> lambdas);

} // namespace subriem::clifford
