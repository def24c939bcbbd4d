#include "subriem/spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "subriem/errors.hpp"

namespace subriem::spectra {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

int doubled_limit(double bound)
{
    return static_cast<int>(std::floor(2.0 * bound + 1e-9));
}

// Admissible doubled values of one component, ascending.
std::vector<int> component_values(int delta, double bound)
{
    const int lim = doubled_limit(bound);
    const int parity = delta == 1 ? 0 : 1;
    std::vector<int> out;
    for (int v = -lim; v <= lim; ++v)
        if (std::abs(v) % 2 == parity)
            out.push_back(v);
    return out;
}

// Smallest admissible |doubled value| strictly beyond the bound.
int next_beyond(int delta, double bound)
{
    int v = doubled_limit(bound) + 1;
    if (std::abs(v) % 2 != (delta == 1 ? 0 : 1))
        ++v;
    return v;
}

template <class F>
void for_each_product(const std::vector<std::vector<int>>& axes, F&& f)
{
    const std::size_t n = axes.size();
    for (const auto& a : axes)
        if (a.empty())
            return;
    std::vector<std::size_t> idx(n, 0);
    std::vector<int> cur(n);
    for (std::size_t i = 0; i < n; ++i)
        cur[i] = axes[i][0];
    while (true) {
        f(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++idx[i] < axes[i].size()) {
                cur[i] = axes[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = axes[i][0];
            if (i == 0)
                return;
        }
        if (n == 0)
            return;
    }
}

std::string half_integer(int doubled)
{
    if (doubled % 2 == 0)
        return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

// Imaginary parts of sum lambda_j c_j c_{m+j}, ascending, extremes snapped to +-sum lambda.
std::vector<GroupedValue> unit_offsets(const NilmanifoldSpec& spec)
{
    auto spectrum = clifford::weighted_sum_spectrum(spec.rep, spec.lambdas).spectrum;
    const double total = std::accumulate(spec.lambdas.begin(), spec.lambdas.end(), 0.0);
    if (!spectrum.empty()) {
        spectrum.front().value = -total;
        spectrum.back().value = total;
    }
    for (auto& g : spectrum)
        if (std::abs(g.value) <= 1e-12 * total)
            g.value = 0.0;
    return spectrum;
}

std::vector<GroupedValue> scaled_offsets(const std::vector<GroupedValue>& unit, int tau)
{
    std::vector<GroupedValue> out;
    out.reserve(unit.size());
    for (const auto& g : unit)
        out.push_back({2.0 * kPi * tau * g.value, g.multiplicity});
    if (tau < 0)
        std::reverse(out.begin(), out.end());
    return out;
}

double snap(double value, double scale)
{
    return std::abs(value) <= 1e-10 * scale ? 0.0 : value;
}

// Signs of sum 2 pi i gamma_k c_{2m+k} on the lowest-offset eigenspace (m = 1, kappa = 0).
std::pair<std::uint64_t, std::uint64_t> kernel_signs(const NilmanifoldSpec& spec, int tau,
                                                     std::span<const int> gamma2)
{
    const int m = spec.m;
    const auto& rep = spec.rep;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
    for (std::size_t k = 0; k < gamma2.size(); ++k)
        G += 2.0 * kPi * I * (0.5 * gamma2[k]) * rep[2 * m + static_cast<int>(k)];
    const Eigen::MatrixXcd off = (tau > 0 ? 1.0 : -1.0) * (-I) * clifford::weighted_pair_matrix(rep, spec.lambdas);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(off);
    const double low = es.eigenvalues()[0];
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] - low <= 1e-9 * std::max(1.0, std::abs(low)))
            cols.push_back(i);
    Eigen::MatrixXcd P(rep.dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        P.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    const Eigen::VectorXd g = hermitian_eigenvalues(P.adjoint() * G * P);
    std::uint64_t pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (g[i] > 1e-9)
            ++pos;
        else if (g[i] < -1e-9)
            ++neg;
    }
    return {pos, neg};
}

void check_label_range(const NilmanifoldSpec& spec, const Cutoffs& c)
{
    if (c.tau_max < 0 || c.kappa_max < 0 || c.alpha_max < 0.0 || c.gamma_max < 0.0)
        throw DomainError("cutoffs must be nonnegative");
    if (c.kappa_max > std::numeric_limits<std::uint16_t>::max())
        throw SizeError("kappa cutoff exceeds the label range");
    if (doubled_limit(std::max(c.alpha_max, c.gamma_max)) + 1 > std::numeric_limits<std::int16_t>::max())
        throw SizeError("lattice cutoff exceeds the label range");
    (void)spec;
}

// Landau blocks for one (tau, gamma), appended to out.
void append_landau(const NilmanifoldSpec& spec, int tau, std::span<const int> gamma2, int kappa_max,
                   const std::vector<GroupedValue>& unit, std::vector<EigenBlock>& out)
{
    const int m = spec.m;
    const auto offsets = scaled_offsets(unit, tau);
    double gamma_sq = 0.0;
    for (int g : gamma2)
        gamma_sq += 0.25 * g * g;
    const double shift = 4.0 * kPi * kPi * gamma_sq;
    const std::uint64_t tau_pow = [&] {
        std::uint64_t p = 1;
        for (int j = 0; j < m; ++j)
            p *= static_cast<std::uint64_t>(std::abs(tau));
        return p;
    }();

    std::pair<std::uint64_t, std::uint64_t> ksigns{0, 0};
    const bool signed_blocks = m == 1;
    if (signed_blocks)
        ksigns = kernel_signs(spec, tau, gamma2);

    BlockLabel label;
    label.kind = BlockKind::Landau;
    label.tau = tau;
    for (std::size_t k = 0; k < gamma2.size(); ++k)
        label.lattice2[k] = static_cast<std::int16_t>(gamma2[k]);

    std::vector<int> kappa(static_cast<std::size_t>(m), 0);
    while (true) {
        double osc = 0.0;
        for (int j = 0; j < m; ++j)
            osc += spec.lambdas[static_cast<std::size_t>(j)] * (2.0 * kappa[static_cast<std::size_t>(j)] + 1.0);
        osc *= 2.0 * kPi * std::abs(tau);
        for (int j = 0; j < m; ++j)
            label.kappa[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(kappa[static_cast<std::size_t>(j)]);
        for (std::size_t l = 0; l < offsets.size(); ++l) {
            EigenBlock b;
            label.offset = static_cast<std::uint8_t>(l);
            b.label = label;
            b.square = std::max(0.0, snap(osc + offsets[l].value, osc) + shift);
            b.mult = offsets[l].multiplicity * tau_pow;
            if (signed_blocks) {
                b.has_signs = true;
                const bool ground = std::all_of(kappa.begin(), kappa.end(), [](int k) { return k == 0; });
                if (l == 0 && ground)
                    b.mult_positive = ksigns.first * tau_pow;
                else
                    b.mult_positive = l == 0 ? b.mult : 0;
            }
            out.push_back(b);
        }
        int j = m - 1;
        while (j >= 0 && kappa[static_cast<std::size_t>(j)] == kappa_max) {
            kappa[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0)
            break;
        ++kappa[static_cast<std::size_t>(j)];
    }
}

std::vector<std::vector<int>> gamma_axes(const NilmanifoldSpec& spec, double bound)
{
    std::vector<std::vector<int>> axes;
    for (int k = 2 * spec.m; k < spec.d; ++k)
        axes.push_back(component_values(spec.spin.delta[static_cast<std::size_t>(k)], bound));
    return axes;
}

} // namespace

double EigenBlock::abs_value() const
{
    return std::sqrt(square);
}

NilmanifoldSpec make_spec(int m, std::vector<double> lambdas, int d, std::vector<int> delta)
{
    if (m < 1 || m > kMaxPairs)
        throw DomainError("m must lie in 1.." + std::to_string(kMaxPairs));
    if (static_cast<int>(lambdas.size()) != m)
        throw MalformedInput("expected " + std::to_string(m) + " Levi eigenvalues, got " + std::to_string(lambdas.size()));
    for (double l : lambdas)
        if (!(l > 0.0) || !std::isfinite(l))
            throw DomainError("Levi eigenvalues must be positive and finite");
    if (d < 2 * m)
        throw DomainError("horizontal rank d must satisfy d >= 2m");
    if (d > kMaxRank)
        throw SizeError("horizontal rank is capped at " + std::to_string(kMaxRank));
    if (static_cast<int>(delta.size()) != d)
        throw MalformedInput("spin structure must have d = " + std::to_string(d) + " entries");
    for (int v : delta)
        if (v != 1 && v != -1)
            throw MalformedInput("spin structure entries must be +1 or -1");
    NilmanifoldSpec spec;
    spec.m = m;
    spec.lambdas = std::move(lambdas);
    spec.d = d;
    spec.spin.delta = std::move(delta);
    spec.rep = clifford::build_rep(d);
    return spec;
}

std::vector<std::vector<int>> allowed_lattice_doubled(std::span<const int> delta, double bound)
{
    if (bound < 0.0)
        throw DomainError("lattice bound must be nonnegative");
    std::vector<std::vector<int>> axes;
    for (int v : delta) {
        if (v != 1 && v != -1)
            throw MalformedInput("spin structure entries must be +1 or -1");
        axes.push_back(component_values(v, bound));
    }
    std::vector<std::vector<int>> out;
    for_each_product(axes, [&](const std::vector<int>& p) { out.push_back(p); });
    return out;
}

std::vector<std::vector<double>> allowed_lattice(std::span<const int> delta, double bound)
{
    std::vector<std::vector<double>> out;
    for (const auto& p : allowed_lattice_doubled(delta, bound)) {
        std::vector<double> a;
        for (int v : p)
            a.push_back(0.5 * v);
        out.push_back(std::move(a));
    }
    return out;
}

std::string format_label(const BlockLabel& label, int m, int d)
{
    std::ostringstream os;
    auto list = [&](int from, int to) {
        os << '(';
        for (int i = from; i < to; ++i)
            os << (i > from ? "," : "") << half_integer(label.lattice2[static_cast<std::size_t>(i - from)]);
        os << ')';
    };
    if (label.kind == BlockKind::Torus) {
        os << "alpha=";
        list(0, d);
        return os.str();
    }
    os << "tau=" << label.tau << ";kappa=(";
    for (int j = 0; j < m; ++j)
        os << (j ? "," : "") << label.kappa[static_cast<std::size_t>(j)];
    os << ");gamma=";
    list(2 * m, d);
    os << ";offset=" << static_cast<int>(label.offset) + 1;
    return os.str();
}

std::vector<EigenBlock> torus_block(const NilmanifoldSpec& spec, double bound)
{
    const int m = spec.m;
    std::vector<double> weight(static_cast<std::size_t>(spec.d), 1.0);
    for (int j = 0; j < m; ++j) {
        weight[static_cast<std::size_t>(j)] = spec.lambdas[static_cast<std::size_t>(j)];
        weight[static_cast<std::size_t>(m + j)] = spec.lambdas[static_cast<std::size_t>(j)];
    }
    const auto mult = static_cast<std::uint64_t>(spec.rep.dim);
    std::vector<std::vector<int>> axes;
    for (int v : spec.spin.delta)
        axes.push_back(component_values(v, bound));
    std::vector<EigenBlock> out;
    for_each_product(axes, [&](const std::vector<int>& a2) {
        EigenBlock b;
        b.label.kind = BlockKind::Torus;
        double q = 0.0;
        for (std::size_t i = 0; i < a2.size(); ++i) {
            b.label.lattice2[i] = static_cast<std::int16_t>(a2[i]);
            q += weight[i] * 0.25 * a2[i] * a2[i];
        }
        b.square = 4.0 * kPi * kPi * q;
        b.mult = mult;
        b.has_signs = true;
        b.mult_positive = b.square > 0.0 ? mult / 2 : 0;
        out.push_back(b);
    });
    return out;
}

std::vector<GroupedValue> clifford_offsets(const NilmanifoldSpec& spec, int tau)
{
    if (tau == 0)
        throw DomainError("Clifford offsets need tau != 0");
    return scaled_offsets(unit_offsets(spec), tau);
}

std::vector<EigenBlock> landau_block(const NilmanifoldSpec& spec, int tau, std::span<const double> gamma,
                                     int kappa_max)
{
    if (tau == 0)
        throw DomainError("Landau blocks need tau != 0");
    if (kappa_max < 0)
        throw DomainError("kappa cutoff must be nonnegative");
    if (static_cast<int>(gamma.size()) != spec.d - 2 * spec.m)
        throw MalformedInput("gamma must have d - 2m = " + std::to_string(spec.d - 2 * spec.m) + " components");
    std::vector<int> gamma2;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        const double twice = 2.0 * gamma[k];
        const int g2 = static_cast<int>(std::lround(twice));
        const int delta = spec.spin.delta[static_cast<std::size_t>(2 * spec.m) + k];
        if (std::abs(twice - g2) > 1e-12 || std::abs(g2) % 2 != (delta == 1 ? 0 : 1))
            throw DomainError("parity: gamma_" + std::to_string(k + 1) + " = " + std::to_string(gamma[k])
                              + " is not admissible for delta = " + std::to_string(delta));
        gamma2.push_back(g2);
    }
    std::vector<EigenBlock> out;
    append_landau(spec, tau, gamma2, kappa_max, unit_offsets(spec), out);
    return out;
}

SpectrumTable dirac_spectrum(const NilmanifoldSpec& spec, const Cutoffs& cutoffs)
{
    check_label_range(spec, cutoffs);
    const int m = spec.m;
    const int d = spec.d;
    const auto unit = unit_offsets(spec);
    const auto gaxes = gamma_axes(spec, cutoffs.gamma_max);

    double torus_count = 1.0;
    for (int v : spec.spin.delta)
        torus_count *= static_cast<double>(component_values(v, cutoffs.alpha_max).size());
    double gamma_count = 1.0;
    for (const auto& a : gaxes)
        gamma_count *= static_cast<double>(a.size());
    const double landau_count = 2.0 * cutoffs.tau_max * std::pow(cutoffs.kappa_max + 1.0, m)
                                * static_cast<double>(unit.size()) * gamma_count;
    if (torus_count + landau_count > kMaxTableBlocks)
        throw SizeError("cutoffs would produce about " + std::to_string(torus_count + landau_count)
                        + " blocks; lower them");

    SpectrumTable table;
    table.m = m;
    table.d = d;
    table.cutoffs = cutoffs;
    table.blocks = torus_block(spec, cutoffs.alpha_max);
    table.blocks.reserve(static_cast<std::size_t>(torus_count + landau_count));
    for (int t = -cutoffs.tau_max; t <= cutoffs.tau_max; ++t) {
        if (t == 0)
            continue;
        for_each_product(gaxes, [&](const std::vector<int>& g2) {
            append_landau(spec, t, g2, cutoffs.kappa_max, unit, table.blocks);
        });
    }
    std::sort(table.blocks.begin(), table.blocks.end(), [](const EigenBlock& a, const EigenBlock& b) {
        if (a.square != b.square)
            return a.square < b.square;
        return a.label < b.label;
    });

    // Completeness: the smallest |mu| a missing label could produce.
    std::vector<std::pair<double, std::string>> cuts;
    double torus_cut = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        const double w = i < 2 * m ? spec.lambdas[static_cast<std::size_t>(i % m)] : 1.0;
        const int next = next_beyond(spec.spin.delta[static_cast<std::size_t>(i)], cutoffs.alpha_max);
        torus_cut = std::min(torus_cut, 2.0 * kPi * std::sqrt(w) * 0.5 * next);
    }
    table.torus_bound = torus_cut;
    cuts.emplace_back(torus_cut, "alpha");

    double g0 = 0.0;  // smallest admissible sum gamma^2
    bool any_odd = false;
    for (int k = 2 * m; k < d; ++k)
        if (spec.spin.delta[static_cast<std::size_t>(k)] == -1) {
            g0 += 0.25;
            any_odd = true;
        }
    const double shift0 = 4.0 * kPi * kPi * g0;
    if (d > 2 * m) {
        const double g_nonzero = any_odd ? g0 : 1.0;
        cuts.emplace_back(2.0 * kPi * std::sqrt(g_nonzero), "degenerate");
        double gamma_cut = std::numeric_limits<double>::infinity();
        for (int k = 2 * m; k < d; ++k)
            gamma_cut = std::min(gamma_cut,
                                 kPi * next_beyond(spec.spin.delta[static_cast<std::size_t>(k)], cutoffs.gamma_max));
        cuts.emplace_back(gamma_cut, "gamma");
    }

    const double total = std::accumulate(spec.lambdas.begin(), spec.lambdas.end(), 0.0);
    const double lam_min = *std::min_element(spec.lambdas.begin(), spec.lambdas.end());
    {
        const double T = cutoffs.tau_max + 1.0;
        double best = 4.0 * kPi * T * lam_min + shift0;
        for (const auto& g : unit) {
            const double v = snap(2.0 * kPi * T * (total + g.value), 2.0 * kPi * T * total) + shift0;
            if (v > 0.0)
                best = std::min(best, v);
        }
        cuts.emplace_back(std::sqrt(best), "tau");
    }
    cuts.emplace_back(std::sqrt(4.0 * kPi * lam_min * (cutoffs.kappa_max + 1.0) + shift0), "kappa");

    const auto it = std::min_element(cuts.begin(), cuts.end());
    table.completeness_bound = it->first;
    table.limiting_cutoff = it->second;
    return table;
}

SpectrumTable SpectrumTable::torus_only() const
{
    SpectrumTable sub;
    sub.m = m;
    sub.d = d;
    sub.cutoffs = cutoffs;
    sub.torus_bound = torus_bound;
    sub.completeness_bound = torus_bound;
    sub.limiting_cutoff = "alpha";
    for (const auto& b : blocks)
        if (b.label.kind == BlockKind::Torus)
            sub.blocks.push_back(b);
    return sub;
}

SpectrumTable synthetic_table(std::span<const double> abs_values)
{
    SpectrumTable table;
    std::int32_t k = 0;
    double largest = 0.0;
    for (double v : abs_values) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("synthetic eigenvalues must be finite and nonnegative");
        EigenBlock b;
        b.label.tau = k++;
        b.square = v * v;
        b.mult = 1;
        table.blocks.push_back(b);
        largest = std::max(largest, v);
    }
    std::sort(table.blocks.begin(), table.blocks.end(), [](const EigenBlock& a, const EigenBlock& b) {
        return a.square != b.square ? a.square < b.square : a.label < b.label;
    });
    table.completeness_bound = abs_values.empty() ? 0.0 : largest;
    table.torus_bound = table.completeness_bound;
    table.limiting_cutoff = "values";
    return table;
}

} // namespace subriem::spectra
