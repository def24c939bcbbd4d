#include "subriem/spectra/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "subriem/errors.hpp"

namespace subriem::spectra {

CountingIndex::CountingIndex(const SpectrumTable& table)
{
    std::uint64_t acc = 0;
    for (const auto& b : table.blocks) {
        if (b.square <= 0.0)
            continue;
        acc += b.mult;
        const double v = b.abs_value();
        if (!values_.empty() && values_.back() == v) {
            cumulative_.back() = acc;
            continue;
        }
        values_.push_back(v);
        cumulative_.push_back(acc);
    }
}

std::uint64_t CountingIndex::count(double t) const
{
    const auto it = std::upper_bound(values_.begin(), values_.end(), t);
    if (it == values_.begin())
        return 0;
    return cumulative_[static_cast<std::size_t>(it - values_.begin() - 1)];
}

std::uint64_t counting_function(const SpectrumTable& table, double t)
{
    std::uint64_t n = 0;
    for (const auto& b : table.blocks) {
        if (b.square > t * t)
            break;
        if (b.square > 0.0 && b.abs_value() <= t)
            n += b.mult;
    }
    return n;
}

void require_complete(const SpectrumTable& table, double t)
{
    if (!(table.completeness_bound > t)) {
        std::ostringstream os;
        os << "spectrum table is complete only below |mu| = " << table.completeness_bound << " but t = " << t
           << " was requested; increase the " << table.limiting_cutoff << " cutoff";
        throw CutoffError(os.str());
    }
    double largest = 0.0;
    for (const auto& b : table.blocks)
        largest = std::max(largest, b.abs_value());
    if (!(largest > t)) {
        std::ostringstream os;
        os << "largest eigenvalue in the table is " << largest << ", not beyond t = " << t << "; increase the "
           << table.limiting_cutoff << " cutoff";
        throw CutoffError(os.str());
    }
}

DimensionFit dimension_fit(const SpectrumTable& table, double t_lo, double t_hi, int samples)
{
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw DomainError("dimension fit needs 0 < t_lo < t_hi");
    if (samples < 2)
        throw DomainError("dimension fit needs at least two samples");
    require_complete(table, t_hi);

    const CountingIndex index(table);
    DimensionFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (samples - 1));
        const std::uint64_t n = index.count(t);
        fit.t.push_back(t);
        fit.counts.push_back(n);
        if (n == 0)
            continue;
        const double x = std::log(t);
        const double y = std::log(static_cast<double>(n));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.samples_used;
    }
    if (fit.samples_used < 2)
        throw CutoffError("fewer than two samples with N(t) > 0 in the fit window");
    const double k = fit.samples_used;
    const double denom = k * sxx - sx * sx;
    if (denom <= 0.0)
        throw CutoffError("degenerate fit window");
    fit.exponent = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.exponent * sx) / k;
    return fit;
}

std::vector<ZetaScan> zeta_scan(const SpectrumTable& table, std::span<const double> p_list)
{
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& b : table.blocks)
        if (b.square > 0.0)
            lo = std::min(lo, b.abs_value());
    const double hi = table.completeness_bound;

    std::vector<double> grid;
    if (std::isfinite(lo)) {
        if (!(hi > lo)) {
            grid.push_back(lo);
        }
        else {
            for (int g = 0; g < kZetaGrid; ++g)
                grid.push_back(lo * std::pow(hi / lo, static_cast<double>(g) / (kZetaGrid - 1)));
        }
    }

    std::vector<ZetaScan> out;
    for (double p : p_list) {
        ZetaScan scan;
        scan.p = p;
        scan.grid = grid;
        scan.partial.assign(grid.size(), 0.0);
        std::size_t g = 0;
        double acc = 0.0;
        for (const auto& b : table.blocks) {
            if (b.square <= 0.0)
                continue;
            const double v = b.abs_value();
            if (grid.empty() || v > grid.back())
                break;
            while (g < grid.size() && v > grid[g])
                scan.partial[g++] = acc;
            acc += static_cast<double>(b.mult) * std::pow(v, -p);
        }
        while (g < grid.size())
            scan.partial[g++] = acc;
        scan.total = acc;

        for (std::size_t i = 1; i < scan.partial.size(); ++i)
            scan.increments.push_back(scan.partial[i] - scan.partial[i - 1]);
        if (!scan.increments.empty())
            scan.last_increment = scan.increments.back();

        // Log-log slope of the increments over the last half of the grid.
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int k = 0;
        for (std::size_t i = scan.increments.size() / 2; i < scan.increments.size(); ++i) {
            if (scan.increments[i] <= 0.0)
                continue;
            const double x = std::log(scan.grid[i + 1]);
            const double y = std::log(scan.increments[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++k;
        }
        if (k >= 2 && k * sxx - sx * sx > 0.0) {
            scan.tail_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
            scan.diverging = scan.tail_exponent > -0.1;
        }
        else {
            scan.tail_exponent = std::numeric_limits<double>::quiet_NaN();
            scan.diverging = false;
        }
        out.push_back(std::move(scan));
    }
    return out;
}

} // namespace subriem::spectra
