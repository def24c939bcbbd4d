#include "subriem/hypo/hypo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "subriem/errors.hpp"

namespace subriem::hypo {

namespace {

const cplx I{0.0, 1.0};

std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& A)
{
    std::vector<cplx> out;
    if (hermitian_residual(A) < 1e-12) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(A);
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            out.emplace_back(ev[i], 0.0);
    }
    else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.push_back(es.eigenvalues()[i]);
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
    return out;
}

// Is x (>= 0) within tol of 2 sum alpha_j lambda_j for some alpha in N^m? Returns the sum.
std::optional<double> lattice_match(double x, const std::vector<double>& lambdas, double tol)
{
    std::optional<double> best;
    std::function<void(std::size_t, double)> rec = [&](std::size_t j, double acc) {
        if (best)
            return;
        if (j == lambdas.size()) {
            if (std::abs(acc - x) <= tol)
                best = acc;
            return;
        }
        for (double v = acc; v <= x + tol; v += 2.0 * lambdas[j]) {
            rec(j + 1, v);
            if (best)
                return;
        }
    };
    rec(0, 0.0);
    return best;
}

LaplacianSpec clifford_spec(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep, double scale)
{
    const int d1 = alg.horizontal_dim();
    if (rep.d != d1)
        throw MalformedInput("Clifford rank " + std::to_string(rep.d) + " does not match horizontal dimension "
                             + std::to_string(d1));
    LaplacianSpec spec{alg, rep.dim, {}};
    for (int j = 0; j < d1; ++j)
        for (int k = j + 1; k < d1; ++k)
            spec.A.emplace(std::make_pair(j, k), scale * I * rep[j] * rep[k]);
    return spec;
}

} // namespace

void validate_spec(const LaplacianSpec& spec)
{
    if (spec.p < 1)
        throw MalformedInput("bundle rank p must be positive");
    const int d1 = spec.alg.horizontal_dim();
    for (const auto& [jk, a] : spec.A) {
        const auto [j, k] = jk;
        if (j < 0 || k >= d1 || j >= k)
            throw IndexError("coefficient A_{" + std::to_string(j + 1) + "," + std::to_string(k + 1)
                             + "} needs 1 <= j < k <= " + std::to_string(d1));
        if (a.rows() != spec.p || a.cols() != spec.p)
            throw MalformedInput("coefficient A_{" + std::to_string(j + 1) + "," + std::to_string(k + 1)
                                 + "} is not " + std::to_string(spec.p) + "x" + std::to_string(spec.p));
    }
}

GroupKind classify(const carnot::LeviData& levi)
{
    return 2 * levi.m == levi.matrix.rows() ? GroupKind::Heisenberg : GroupKind::HeisenbergTimesAbelian;
}

SingularSet singular_set(const carnot::LeviData& levi, GroupKind kind, double tol)
{
    if (levi.m == 0)
        throw DomainError("degenerate Levi form: the singular-set criterion needs m >= 1");
    SingularSet set;
    set.half_trace = 0.5 * levi.trace_norm();
    set.tol = tol;
    if (kind == GroupKind::Heisenberg) {
        set.kind = SingularSet::Kind::Discrete;
        set.lambdas.assign(levi.lambdas.data(), levi.lambdas.data() + levi.lambdas.size());
    }
    else {
        set.kind = SingularSet::Kind::Rays;
    }
    return set;
}

Membership membership(cplx mu, const SingularSet& set)
{
    const double scale = 1.0 + std::abs(mu);
    if (std::abs(mu.imag()) > set.tol * scale)
        return {};
    const double x = mu.real();
    const double ax = std::abs(x);
    const double tol = set.tol * scale;
    const double sign = x < 0.0 ? -1.0 : 1.0;
    if (ax < set.half_trace - tol)
        return {};
    if (set.kind == SingularSet::Kind::Rays)
        return {true, ax < set.half_trace ? sign * set.half_trace : x};
    const auto hit = lattice_match(std::max(0.0, ax - set.half_trace), set.lambdas, tol);
    if (!hit)
        return {};
    return {true, sign * (set.half_trace + *hit)};
}

Eigen::MatrixXcd effective_matrix(const LaplacianSpec& spec, int nu)
{
    validate_spec(spec);
    const Eigen::MatrixXd L = carnot::levi_matrix(spec.alg, nu);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(spec.p, spec.p);
    for (const auto& [jk, a] : spec.A)
        out += L(jk.first, jk.second) * a;
    return out;
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Hypoelliptic: return "Hypoelliptic";
    case Status::NotHypoelliptic: return "NotHypoelliptic";
    case Status::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Verdict decide(const LaplacianSpec& spec, double tol)
{
    validate_spec(spec);
    const auto& alg = spec.alg;
    if (alg.step() < 2)
        throw DomainError("hypoellipticity decision needs step >= 2");
    Verdict v;
    bool any_levi = false;
    bool complex_seen = false;
    for (int nu = 0; nu < alg.dim(1); ++nu) {
        const carnot::QuotientMap q = carnot::quotient_codim1(alg, nu);
        const carnot::LeviData levi = carnot::levi_normal_form(q.target, 0);
        if (levi.m == 0)
            continue;
        any_levi = true;
        const SingularSet set = singular_set(levi, classify(levi), tol);
        for (const cplx mu : eigenvalues(effective_matrix(spec, nu))) {
            if (std::abs(mu.imag()) > tol * (1.0 + std::abs(mu)))
                complex_seen = true;
            const Membership hit = membership(mu, set);
            if (hit.member) {
                v.status = Status::NotHypoelliptic;
                v.witness = Witness{nu, mu, hit.element};
                return v;
            }
        }
    }
    if (!any_levi)
        throw DomainError("degenerate: every layer-2 Levi form vanishes");
    if (complex_seen)
        v.notes.push_back("non-real eigenvalues of A_nu were treated as non-members of the real singular set");
    if (alg.step() == 2 && alg.dim(1) == 1)
        v.status = Status::Hypoelliptic;
    else
        v.status = Status::Inconclusive;
    return v;
}

LaplacianSpec dirac_square_spec(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep)
{
    return clifford_spec(alg, rep, 1.0);
}

Verdict dirac_verdict(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep, double tol)
{
    return decide(dirac_square_spec(alg, rep), tol);
}

LaplacianSpec theta_family_spec(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep,
                                double theta)
{
    if (!(theta > 0.0 && theta <= 1.0))
        throw DomainError("theta must lie in (0, 1]");
    if (alg.step() != 2 || alg.dim(1) != 1)
        throw DomainError("the theta family is defined on step-2 algebras with one central direction");
    return clifford_spec(alg, rep, 1.0 - theta);
}

Verdict theta_verdict(const carnot::GradedLieAlgebra& alg, const clifford::CliffordRep& rep, double theta,
                      double tol)
{
    return decide(theta_family_spec(alg, rep, theta), tol);
}

} // namespace subriem::hypo
