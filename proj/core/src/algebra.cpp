#include "subriem/carnot/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "subriem/errors.hpp"

namespace subriem::carnot {

namespace {

void add_into(SparseVector& acc, int index, double coeff)
{
    for (auto& [i, c] : acc) {
        if (i == index) {
            c += coeff;
            return;
        }
    }
    acc.emplace_back(index, coeff);
}

SparseVector negated(const SparseVector& v)
{
    SparseVector out = v;
    for (auto& entry : out)
        entry.second = -entry.second;
    return out;
}

} // namespace

GradedLieAlgebra::GradedLieAlgebra(std::vector<int> dims, std::vector<BracketEntry> entries)
    : dims_(std::move(dims)), entries_(std::move(entries))
{
    if (dims_.empty())
        throw MalformedInput("algebra needs at least one layer");
    for (int d : dims_)
        if (d <= 0)
            throw MalformedInput("layer dimensions must be positive");

    offsets_.resize(dims_.size());
    std::exclusive_scan(dims_.begin(), dims_.end(), offsets_.begin(), 0);
    n_ = std::accumulate(dims_.begin(), dims_.end(), 0);

    auto check = [&](Generator g) {
        if (g.layer < 0 || g.layer >= step() || g.index < 0 || g.index >= dims_[static_cast<std::size_t>(g.layer)])
            throw MalformedInput("generator " + format_generator(g) + " does not exist in an algebra of dims "
                                 + std::to_string(step()) + " layers");
    };

    const auto nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    table_.assign(nn, {});
    std::vector<bool> stated(nn, false);

    for (const auto& e : entries_) {
        check(e.a);
        check(e.b);
        SparseVector v;
        for (const auto& [g, c] : e.out) {
            check(g);
            add_into(v, flat(g), c);
        }
        const auto idx = static_cast<std::size_t>(flat(e.a) * n_ + flat(e.b));
        if (stated[idx])
            throw MalformedInput("bracket " + format_generator(e.a) + "," + format_generator(e.b) + " stated twice");
        stated[idx] = true;
        table_[idx] = std::move(v);
    }
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            const auto ab = static_cast<std::size_t>(a * n_ + b);
            const auto ba = static_cast<std::size_t>(b * n_ + a);
            if (!stated[ab] && stated[ba])
                table_[ab] = negated(table_[ba]);
        }
    }
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (!table_[static_cast<std::size_t>(a * n_ + b)].empty())
                support_.push_back({a, b});
}

Generator GradedLieAlgebra::generator(int flat) const
{
    if (flat < 0 || flat >= n_)
        throw IndexError("flat index " + std::to_string(flat) + " out of range");
    int layer = step() - 1;
    while (offsets_[static_cast<std::size_t>(layer)] > flat)
        --layer;
    return {layer, flat - offsets_[static_cast<std::size_t>(layer)]};
}

Eigen::VectorXd GradedLieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
    for (const auto& [a, b] : support_) {
        const double w = x[a] * y[b];
        if (w == 0.0)
            continue;
        for (const auto& [i, c] : bracket(a, b))
            out[i] += w * c;
    }
    return out;
}

GradedLieAlgebra heisenberg(int m, int extra_abelian)
{
    if (m < 1 || extra_abelian < 0)
        throw DomainError("heisenberg algebra needs m >= 1 and a nonnegative abelian part");
    std::vector<BracketEntry> entries;
    for (int j = 0; j < m; ++j)
        entries.push_back({{0, j}, {0, m + j}, {{{1, 0}, 1.0}}});
    return GradedLieAlgebra({2 * m + extra_abelian, 1}, std::move(entries));
}

GradedLieAlgebra abelian(int n)
{
    return GradedLieAlgebra({n}, {});
}

GradedLieAlgebra filiform(int step)
{
    if (step < 2 || step > 4)
        throw UnsupportedError("filiform algebras are provided for steps 2..4");
    std::vector<int> dims{2};
    for (int s = 1; s < step; ++s)
        dims.push_back(1);
    std::vector<BracketEntry> entries;
    entries.push_back({{0, 0}, {0, 1}, {{{1, 0}, 1.0}}});
    for (int s = 1; s + 1 < step; ++s)
        entries.push_back({{0, 0}, {s, 0}, {{{s + 1, 0}, 1.0}}});
    return GradedLieAlgebra(std::move(dims), std::move(entries));
}

GradedLieAlgebra free_rank2_step3()
{
    std::vector<BracketEntry> entries{
        {{0, 0}, {0, 1}, {{{1, 0}, 1.0}}},
        {{0, 0}, {1, 0}, {{{2, 0}, 1.0}}},
        {{0, 1}, {1, 0}, {{{2, 1}, 1.0}}},
    };
    return GradedLieAlgebra({2, 1, 2}, std::move(entries));
}

GradedLieAlgebra step2_from_levi(std::span<const Eigen::MatrixXd> levi)
{
    if (levi.empty())
        throw DomainError("step-2 algebra needs at least one Levi matrix");
    const auto n = levi.front().rows();
    std::vector<BracketEntry> entries;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            BracketEntry e{{0, static_cast<int>(j)}, {0, static_cast<int>(k)}, {}};
            for (std::size_t nu = 0; nu < levi.size(); ++nu) {
                const auto& L = levi[nu];
                if (L.rows() != n || L.cols() != n)
                    throw MalformedInput("Levi matrices must share one square size");
                if (L(j, k) != 0.0)
                    e.out.push_back({{1, static_cast<int>(nu)}, L(j, k)});
            }
            if (!e.out.empty())
                entries.push_back(std::move(e));
        }
    }
    return GradedLieAlgebra({static_cast<int>(n), static_cast<int>(levi.size())}, std::move(entries));
}

std::string to_string(Invariant kind)
{
    switch (kind) {
    case Invariant::Antisymmetry: return "antisymmetry";
    case Invariant::Grading: return "grading";
    case Invariant::Jacobi: return "jacobi";
    case Invariant::BracketGenerating: return "bracket-generating";
    }
    return "unknown";
}

std::string format_generator(Generator g)
{
    return "(" + std::to_string(g.layer + 1) + "," + std::to_string(g.index + 1) + ")";
}

bool ValidationReport::has(Invariant kind) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const
{
    if (ok())
        return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << to_string(v.kind) << " violated at";
        for (const auto& g : v.witness)
            os << ' ' << format_generator(g);
        os << ": " << v.message << '\n';
    }
    return os.str();
}

ValidationReport validate_algebra(const GradedLieAlgebra& alg, double tol)
{
    ValidationReport report;
    const int n = alg.dim();
    auto basis = [n](int a) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[a] = 1.0;
        return e;
    };

    std::vector<Eigen::VectorXd> dense(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            for (const auto& [i, c] : alg.bracket(a, b))
                v[i] += c;
            dense[static_cast<std::size_t>(a * n + b)] = std::move(v);
        }
    auto br = [&](int a, int b) -> const Eigen::VectorXd& { return dense[static_cast<std::size_t>(a * n + b)]; };

    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            const double defect = (br(a, b) + br(b, a)).cwiseAbs().maxCoeff();
            if (defect > tol) {
                report.violations.push_back({Invariant::Antisymmetry,
                                             {alg.generator(a), alg.generator(b)},
                                             defect,
                                             "[a,b] + [b,a] != 0"});
            }
        }
    }

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int target = alg.layer_of(a) + alg.layer_of(b) + 1;
            for (const auto& [i, c] : alg.bracket(a, b)) {
                if (c != 0.0 && alg.layer_of(i) != target) {
                    report.violations.push_back({Invariant::Grading,
                                                 {alg.generator(a), alg.generator(b)},
                                                 std::abs(c),
                                                 "component along " + format_generator(alg.generator(i))
                                                     + " outside layer " + std::to_string(target + 1)});
                    break;
                }
            }
        }
    }

    auto bracket_vec = [&](int a, const Eigen::VectorXd& y) { return alg.bracket(basis(a), y); };
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const Eigen::VectorXd jac = bracket_vec(a, br(b, c)) + bracket_vec(b, br(c, a)) + bracket_vec(c, br(a, b));
                const double defect = jac.size() ? jac.cwiseAbs().maxCoeff() : 0.0;
                if (defect > tol) {
                    report.violations.push_back({Invariant::Jacobi,
                                                 {alg.generator(a), alg.generator(b), alg.generator(c)},
                                                 defect,
                                                 "cyclic sum of [a,[b,c]] is nonzero"});
                }
            }
        }
    }

    // Iterated brackets of V_1 must span every layer.
    const int d1 = alg.horizontal_dim();
    Eigen::MatrixXd span_prev = Eigen::MatrixXd::Identity(n, d1);
    for (int s = 1; s < alg.step(); ++s) {
        const int off = alg.offset(s);
        const int ds = alg.dim(s);
        Eigen::MatrixXd cand(ds, d1 * span_prev.cols());
        Eigen::Index col = 0;
        for (int a = 0; a < d1; ++a)
            for (Eigen::Index w = 0; w < span_prev.cols(); ++w)
                cand.col(col++) = bracket_vec(a, span_prev.col(w)).segment(off, ds);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cand);
        qr.setThreshold(1e-10);
        const auto rank = cand.size() ? qr.rank() : 0;
        if (rank < ds) {
            report.violations.push_back({Invariant::BracketGenerating,
                                         {Generator{s, 0}},
                                         static_cast<double>(ds - rank),
                                         "iterated brackets of layer 1 span only " + std::to_string(rank) + " of "
                                             + std::to_string(ds) + " directions of layer " + std::to_string(s + 1)});
        }
        if (rank == 0)
            break;
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ds, rank);
        span_prev = Eigen::MatrixXd::Zero(n, rank);
        span_prev.block(off, 0, ds, rank) = q;
    }
    return report;
}

} // namespace subriem::carnot
