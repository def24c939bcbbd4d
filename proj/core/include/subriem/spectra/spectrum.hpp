#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "subriem/clifford/clifford.hpp"
#include "subriem/linalg.hpp"

namespace subriem::spectra {

/// delta in {+1,-1}^d.
struct SpinStructure {
    std::vector<int> delta;

    static SpinStructure trivial(int d) { return {std::vector<int>(static_cast<std::size_t>(d), 1)}; }
};

/// Gamma \ (H^{2m+1} x R^{d-2m}) with Levi eigenvalue moduli lambdas.
struct NilmanifoldSpec {
    int m = 1;
    std::vector<double> lambdas;
    int d = 2;
    SpinStructure spin;
    clifford::CliffordRep rep;
};

/// Checks the invariants and builds the Clifford representation.
NilmanifoldSpec make_spec(int m, std::vector<double> lambdas, int d, std::vector<int> delta);

/// Twice the admissible alpha vectors: 2 alpha_j even when delta_j = +1, odd when -1,
/// |alpha_j| <= bound. Lexicographic order.
std::vector<std::vector<int>> allowed_lattice_doubled(std::span<const int> delta, double bound);

/// Admissible alpha vectors themselves.
std::vector<std::vector<double>> allowed_lattice(std::span<const int> delta, double bound);

inline constexpr int kMaxPairs = 6;
inline constexpr int kMaxRank = 12;

enum class BlockKind : std::uint8_t { Torus, Landau };

struct BlockLabel {
    BlockKind kind = BlockKind::Torus;
    std::uint8_t offset = 0;               // ascending offset index (Landau)
    std::int32_t tau = 0;                  // Landau
    std::array<std::uint16_t, kMaxPairs> kappa{};
    std::array<std::int16_t, kMaxRank> lattice2{};  // 2 alpha (Torus) or 2 gamma (Landau)

    friend auto operator<=>(const BlockLabel&, const BlockLabel&) = default;
};

/// One eigenvalue of (D^H)^2 with its multiplicity. When has_signs is set the Dirac
/// eigenvalues are +sqrt(square) with multiplicity mult_positive and -sqrt(square)
/// for the rest (all zero when square == 0).
struct EigenBlock {
    BlockLabel label;
    double square = 0.0;
    std::uint64_t mult = 0;
    bool has_signs = false;
    std::uint64_t mult_positive = 0;

    double abs_value() const;
};

/// 1-based human readable label, e.g. "alpha=(1,-1/2)" or "tau=2;kappa=(0);gamma=();offset=1".
std::string format_label(const BlockLabel& label, int m, int d);

struct Cutoffs {
    int tau_max = 10;
    int kappa_max = 10;
    double alpha_max = 10.0;
    double gamma_max = 10.0;
};

struct SpectrumTable {
    int m = 0;
    int d = 0;
    std::vector<EigenBlock> blocks;  // sorted by (square, label)
    Cutoffs cutoffs;
    /// Every |mu| strictly below this bound is present with full multiplicity.
    double completeness_bound = std::numeric_limits<double>::infinity();
    /// Which cutoff limits completeness_bound ("tau", "kappa", "alpha", "gamma", "degenerate").
    std::string limiting_cutoff;
    double torus_bound = std::numeric_limits<double>::infinity();

    /// Sub-table of torus blocks, complete below torus_bound.
    SpectrumTable torus_only() const;
};

/// Table of the given |mu| values with multiplicity 1 each; complete up to the largest value.
SpectrumTable synthetic_table(std::span<const double> abs_values);

std::vector<EigenBlock> torus_block(const NilmanifoldSpec& spec, double bound);

/// Real spectrum of -2 pi i tau sum lambda_j c_j c_{m+j}, ascending and grouped.
std::vector<GroupedValue> clifford_offsets(const NilmanifoldSpec& spec, int tau);

std::vector<EigenBlock> landau_block(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                     int kappa_max);

/// Fails with SizeError when the cutoffs would produce more than this many blocks.
inline constexpr double kMaxTableBlocks = 2.0e7;

SpectrumTable dirac_spectrum(const NilmanifoldSpec& spec, const Cutoffs& cutoffs);

} // namespace subriem::spectra
