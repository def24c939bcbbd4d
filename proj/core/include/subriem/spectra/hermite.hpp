#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subriem/spectra/spectrum.hpp"

namespace subriem::spectra {

struct HermiteTruncation {
    int N = 200;  // Hermite levels per oscillator direction
};

struct OracleEigen {
    double value;
    /// Eigenvector mass on the two highest Hermite levels of any direction. Large
    /// values flag eigenvalues produced by the truncation itself.
    double edge_weight;
};

/// Reduced operator sum sqrt(lambda_j)(c_j d/du_j + 2 pi i tau u_j c_{m+j}) + sum 2 pi i gamma_k c_{2m+k}
/// in the scaled Hermite basis (scale sqrt(2 pi |tau|)) tensor spinors.
Eigen::MatrixXcd hermite_operator(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                  const HermiteTruncation& trunc);

/// Ascending eigenvalues of the truncated operator.
std::vector<double> hermite_oracle(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                   const HermiteTruncation& trunc);

std::vector<OracleEigen> hermite_oracle_detailed(const NilmanifoldSpec& spec, int tau,
                                                 std::span<const double> gamma, const HermiteTruncation& trunc);

/// Eigenvalues whose edge weight is below the threshold.
std::vector<double> hermite_converged(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                      const HermiteTruncation& trunc, double edge_threshold = 1e-6);

} // namespace subriem::spectra
