#include "subriem/ccmetric/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>

#include "subriem/carnot/group.hpp"
#include "subriem/errors.hpp"

namespace subriem::ccmetric {

namespace {

using carnot::GradedLieAlgebra;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Endpoint map u -> exp(u_1/K) ... exp(u_K/K) from the identity, with cached
// prefix and suffix products for finite-difference Jacobians.
class EndpointMap {
public:
    EndpointMap(const GradedLieAlgebra& alg, int K) : alg_(alg), K_(K), d1_(alg.horizontal_dim()), n_(alg.dim()) {}

    int inputs() const { return K_ * d1_; }

    Eigen::VectorXd step(const Eigen::VectorXd& u, int k) const
    {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n_);
        g.head(d1_) = u.segment(k * d1_, d1_) / static_cast<double>(K_);
        return g;
    }

    Eigen::VectorXd endpoint(const Eigen::VectorXd& u) const
    {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int k = 0; k < K_; ++k)
            x = carnot::bch(alg_, x, step(u, k));
        return x;
    }

    /// n x (K d1) Jacobian by central differences.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const
    {
        std::vector<Eigen::VectorXd> prefix(static_cast<std::size_t>(K_ + 1), Eigen::VectorXd::Zero(n_));
        std::vector<Eigen::VectorXd> suffix(static_cast<std::size_t>(K_ + 1), Eigen::VectorXd::Zero(n_));
        for (int k = 0; k < K_; ++k)
            prefix[static_cast<std::size_t>(k + 1)] = carnot::bch(alg_, prefix[static_cast<std::size_t>(k)], step(u, k));
        for (int k = K_ - 1; k >= 0; --k)
            suffix[static_cast<std::size_t>(k)] = carnot::bch(alg_, step(u, k), suffix[static_cast<std::size_t>(k + 1)]);

        Eigen::MatrixXd J(n_, inputs());
        const double h = 1e-6;
        for (int k = 0; k < K_; ++k) {
            const auto& P = prefix[static_cast<std::size_t>(k)];
            const auto& S = suffix[static_cast<std::size_t>(k + 1)];
            const Eigen::VectorXd g = step(u, k);
            for (int j = 0; j < d1_; ++j) {
                Eigen::VectorXd gp = g, gm = g;
                const double dh = h / static_cast<double>(K_);
                gp[j] += dh;
                gm[j] -= dh;
                const Eigen::VectorXd ep = carnot::bch(alg_, carnot::bch(alg_, P, gp), S);
                const Eigen::VectorXd em = carnot::bch(alg_, carnot::bch(alg_, P, gm), S);
                J.col(k * d1_ + j) = (ep - em) / (2.0 * h);
            }
        }
        return J;
    }

private:
    const GradedLieAlgebra& alg_;
    int K_;
    int d1_;
    int n_;
};

// Residual [u / sqrt(K); sqrt(mu) (E(u) - target)].
struct PenaltyFunctor {
    const EndpointMap& map;
    Eigen::VectorXd target;
    double mu;
    int K;

    int inputs() const { return map.inputs(); }
    int values() const { return map.inputs() + static_cast<int>(target.size()); }

    int operator()(const Eigen::VectorXd& u, Eigen::VectorXd& r) const
    {
        r.resize(values());
        r.head(inputs()) = u / std::sqrt(static_cast<double>(K));
        r.tail(target.size()) = std::sqrt(mu) * (map.endpoint(u) - target);
        return 0;
    }

    int df(const Eigen::VectorXd& u, Eigen::MatrixXd& J) const
    {
        J.setZero(values(), inputs());
        J.topRows(inputs()).diagonal().setConstant(1.0 / std::sqrt(static_cast<double>(K)));
        J.bottomRows(target.size()) = std::sqrt(mu) * map.jacobian(u);
        return 0;
    }
};

double gauge_residual(const GradedLieAlgebra& alg, const Eigen::VectorXd& end, const Eigen::VectorXd& target)
{
    return carnot::koranyi_norm(alg, carnot::bch(alg, -end, target));
}

struct Candidate {
    Eigen::VectorXd u;
    double energy = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
};

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs)
{
    return J.transpose() * (J * J.transpose()).completeOrthogonalDecomposition().solve(rhs);
}

// Newton steps u <- u - J^+ c(u) back onto the endpoint constraint.
Candidate restore(const GradedLieAlgebra& alg, const EndpointMap& map, const Eigen::VectorXd& target,
                  Eigen::VectorXd u, int K)
{
    Candidate best;
    for (int it = 0; it < 20; ++it) {
        const Eigen::VectorXd end = map.endpoint(u);
        const double res = gauge_residual(alg, end, target);
        if (res < best.residual)
            best = {u, u.squaredNorm() / K, res};
        if (res < 1e-13)
            break;
        const Eigen::VectorXd step = min_norm_solve(map.jacobian(u), end - target);
        if (!step.allFinite())
            break;
        u -= step;
    }
    return best;
}

// Feasibility restoration, then minimum-norm Gauss-Newton steps u <- J^+ (J u - c(u)),
// whose fixed points are first-order optimal; a step is kept only if it lowers the
// energy after restoration.
Candidate polish(const GradedLieAlgebra& alg, const EndpointMap& map, const Eigen::VectorXd& target,
                 const Eigen::VectorXd& u0, int K, double tol)
{
    Candidate best = restore(alg, map, target, u0, K);
    for (int it = 0; it < 20 && best.residual <= tol; ++it) {
        const Eigen::MatrixXd J = map.jacobian(best.u);
        const Eigen::VectorXd c = map.endpoint(best.u) - target;
        const Eigen::VectorXd next = min_norm_solve(J, J * best.u - c);
        if (!next.allFinite())
            break;
        const Candidate trial = restore(alg, map, target, next, K);
        if (trial.residual > tol || trial.energy >= best.energy * (1.0 - 1e-14))
            break;
        best = trial;
    }
    return best;
}

} // namespace

DistanceResult cc_distance(const HorizontalFields& fields, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const DistanceOptions& opts)
{
    const auto& alg = fields.algebra();
    if (x.size() != alg.dim() || y.size() != alg.dim())
        throw MalformedInput("points do not match the algebra dimension");
    if (opts.segments < 1 || opts.multistart < 1)
        throw DomainError("cc_distance needs at least one segment and one start");
    const int K = opts.segments;
    const int d1 = alg.horizontal_dim();
    const int n = alg.dim();

    const Eigen::VectorXd z = carnot::bch(alg, -x, y);
    const double rho = carnot::koranyi_norm(alg, z);
    DistanceResult result;
    result.controls.u = Eigen::MatrixXd::Zero(K, d1);
    if (rho == 0.0) {
        result.converged = true;
        return result;
    }

    // Purely horizontal displacement, up to the rounding of the group product.
    bool horizontal = true;
    const double scale = 1.0 + carnot::koranyi_norm(alg, x) + carnot::koranyi_norm(alg, y);
    for (int i = d1; i < n; ++i)
        horizontal = horizontal && std::abs(z[i]) <= 64.0 * kEps * std::pow(scale, alg.layer_of(i) + 1);
    if (opts.horizontal_shortcut && horizontal) {
        result.value = z.head(d1).norm();
        result.controls.u.rowwise() = z.head(d1).transpose();
        result.endpoint_residual = 0.0;
        result.converged = true;
        return result;
    }

    const Eigen::VectorXd target = carnot::dilate(alg, 1.0 / rho, z);
    const EndpointMap map(alg, K);
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Candidate best;
    bool best_feasible = false;
    for (int start = 0; start < opts.multistart; ++start) {
        Eigen::VectorXd u(K * d1);
        for (Eigen::Index i = 0; i < u.size(); ++i)
            u[i] = normal(rng);
        // Bias each start towards the horizontal displacement.
        for (int k = 0; k < K; ++k)
            u.segment(k * d1, d1) += target.head(d1);

        for (double mu = opts.penalty_start; mu <= opts.penalty_end * 1.0000001; mu *= 10.0) {
            PenaltyFunctor f{map, target, mu, K};
            Eigen::LevenbergMarquardt<PenaltyFunctor> lm(f);
            lm.parameters.maxfev = 400;
            lm.parameters.ftol = 1e-12;
            lm.parameters.xtol = 1e-12;
            lm.minimize(u);
        }
        const Candidate c = polish(alg, map, target, u, K, opts.tol);
        const bool feasible = c.residual <= opts.tol;
        if ((feasible && (!best_feasible || c.energy < best.energy))
            || (!feasible && !best_feasible && c.residual < best.residual)) {
            best = c;
            best_feasible = feasible;
        }
    }

    result.value = std::sqrt(best.energy) * rho;
    result.endpoint_residual = best.residual;
    result.converged = best_feasible;
    for (int k = 0; k < K; ++k)
        result.controls.u.row(k) = rho * best.u.segment(k * d1, d1).transpose();
    return result;
}

std::vector<PointPair> random_pairs(int dim, int count, double half_width, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-half_width, half_width);
    std::vector<PointPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd a(dim), b(dim);
        for (int k = 0; k < dim; ++k)
            a[k] = unif(rng);
        for (int k = 0; k < dim; ++k)
            b[k] = unif(rng);
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

KoranyiBounds koranyi_bounds(const HorizontalFields& fields, const std::vector<PointPair>& samples,
                             const DistanceOptions& opts)
{
    const auto& alg = fields.algebra();
    KoranyiBounds out;
    out.c_hat = std::numeric_limits<double>::infinity();
    out.C_hat = 0.0;
    for (const auto& [x, y] : samples) {
        if ((x - y).cwiseAbs().maxCoeff() == 0.0) {
            ++out.skipped_equal;
            continue;
        }
        const DistanceResult r = cc_distance(fields, x, y, opts);
        if (!r.converged || !(r.value > 0.0)) {
            ++out.nonconverged;
            continue;
        }
        const double dk = carnot::koranyi_norm(alg, carnot::bch(alg, -y, x));
        const double ratio = dk / r.value;
        out.c_hat = std::min(out.c_hat, ratio);
        out.C_hat = std::max(out.C_hat, ratio);
        ++out.used;
    }
    if (out.used == 0)
        out.c_hat = 0.0;
    return out;
}

} // namespace subriem::ccmetric
