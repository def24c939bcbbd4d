#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace subriem::carnot {

/// Basis element X_{layer,index} of a graded algebra. Both indices are 0-based;
/// files and reports use the 1-based (S,j) convention.
struct Generator {
    int layer = 0;
    int index = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Sparse coefficient vector over the flat basis.
using SparseVector = std::vector<std::pair<int, double>>;

/// One stated bracket relation [a,b] = sum coeff * out.
struct BracketEntry {
    Generator a;
    Generator b;
    std::vector<std::pair<Generator, double>> out;
};

/// Graded nilpotent Lie algebra g = V_1 + ... + V_R given by structure constants
/// over the graded basis. Relations are stored as stated: [b,a] is derived as -[a,b]
/// only when the pair is not stated explicitly, so an inconsistent input survives
/// construction and is reported by validate_algebra.
class GradedLieAlgebra {
public:
    GradedLieAlgebra(std::vector<int> dims, std::vector<BracketEntry> entries);

    int step() const noexcept { return static_cast<int>(dims_.size()); }
    int dim() const noexcept { return n_; }
    int dim(int layer) const { return dims_.at(static_cast<std::size_t>(layer)); }
    std::span<const int> dims() const noexcept { return dims_; }
    int horizontal_dim() const noexcept { return dims_.front(); }

    int offset(int layer) const { return offsets_.at(static_cast<std::size_t>(layer)); }
    int flat(Generator g) const { return offset(g.layer) + g.index; }
    Generator generator(int flat) const;
    int layer_of(int flat) const { return generator(flat).layer; }

    /// Structure constants of [e_a, e_b] over the flat basis.
    const SparseVector& bracket(int a, int b) const { return table_[static_cast<std::size_t>(a * n_ + b)]; }

    /// Bilinear bracket of two coordinate vectors.
    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    const std::vector<BracketEntry>& entries() const noexcept { return entries_; }

private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int n_ = 0;
    std::vector<SparseVector> table_;
    std::vector<std::array<int, 2>> support_;
    std::vector<BracketEntry> entries_;
};

/// Heisenberg algebra h_{2m+1}: [X_j, X_{m+j}] = T, optionally times an abelian R^extra
/// appended to the horizontal layer.
GradedLieAlgebra heisenberg(int m, int extra_abelian = 0);

/// Abelian R^n, step 1.
GradedLieAlgebra abelian(int n);

/// Filiform algebra of the given step (2..4): dims (2,1,...,1), [X_1, Y_S] = Y_{S+1}.
GradedLieAlgebra filiform(int step);

/// Free nilpotent algebra of rank 2 and step 3: dims (2,1,2).
GradedLieAlgebra free_rank2_step3();

/// Step-2 algebra with horizontal dimension n whose nu-th layer-2 direction has the
/// given skew Levi matrix.
GradedLieAlgebra step2_from_levi(std::span<const Eigen::MatrixXd> levi);

enum class Invariant { Antisymmetry, Grading, Jacobi, BracketGenerating };

std::string to_string(Invariant kind);

struct Violation {
    Invariant kind;
    std::vector<Generator> witness;
    double magnitude = 0.0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(Invariant kind) const;
    std::string summary() const;
};

/// Checks antisymmetry, grading, Jacobi (exhaustive triple scan) and bracket generation.
ValidationReport validate_algebra(const GradedLieAlgebra& alg, double tol = 1e-12);

/// Formats a generator as "(S,j)" with 1-based indices.
std::string format_generator(Generator g);

} // namespace subriem::carnot
