#include "orbitsum/analysis.hpp"

#include "orbitsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitsum {

Series ratio_series(const Series& a, const Series& b)
{
    if (a.size() != b.size()) {
        throw ValidationError("ratio_series: series lengths differ (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    }
    Series out;
    out.label = a.label + "/" + b.label;
    out.points.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& pa = a.points[i];
        const auto& pb = b.points[i];
        if (pa.index != pb.index || pa.prime != pb.prime) {
            throw ValidationError("ratio_series: index mismatch at position " + std::to_string(i));
        }
        if (pb.value == 0.0) {
            throw ValidationError("ratio_series: zero denominator at N = " + std::to_string(pb.index));
        }
        out.points.push_back({pa.index, pa.prime, pa.value / pb.value});
    }
    return out;
}

Series normalized_series(const Series& s)
{
    Series out;
    out.label = s.label + "/sqrt(p_N)";
    out.points.reserve(s.size());
    for (const auto& pt : s.points) {
        out.points.push_back({pt.index, pt.prime, pt.value / std::sqrt(static_cast<double>(pt.prime))});
    }
    return out;
}

FitResult linear_fit(std::span<const Point2> points)
{
    const std::size_t n = points.size();
    if (n < 2) {
        throw ValidationError("linear_fit needs at least two points");
    }
    // Centered sums; the uncentered normal equations lose digits for x ~ 1e5.
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& pt : points) {
        mean_x += pt.x;
        mean_y += pt.y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& pt : points) {
        const double dx = pt.x - mean_x;
        sxx += dx * dx;
        sxy += dx * (pt.y - mean_y);
    }
    if (sxx == 0.0) {
        throw ValidationError("linear_fit: all x values are equal");
    }

    FitResult fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss = 0.0;
    for (const auto& pt : points) {
        const double r = pt.y - (fit.slope * pt.x + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

FitResult fit_series(const Series& s)
{
    std::vector<Point2> pts;
    pts.reserve(s.size());
    for (const auto& pt : s.points) {
        pts.push_back({static_cast<double>(pt.index), pt.value});
    }
    return linear_fit(pts);
}

Series slope_progression(const Series& s, std::size_t step)
{
    if (step < 2) {
        throw ValidationError("slope_progression: step must be at least 2");
    }
    Series out;
    out.label = "slope(" + s.label + ")";

    std::vector<Point2> pts;
    pts.reserve(s.size());
    for (const auto& pt : s.points) {
        pts.push_back({static_cast<double>(pt.index), pt.value});
    }
    for (std::size_t m = step; m <= pts.size(); m += step) {
        const auto fit = linear_fit(std::span(pts).first(m));
        out.points.push_back({s.points[m - 1].index, s.points[m - 1].prime, fit.slope});
    }
    return out;
}

double pnt_approx(double x)
{
    if (!(x > 1.0)) {
        throw DomainError("pnt_approx requires x > 1");
    }
    return x / std::log(x);
}

double conjecture_model(double n, double k)
{
    if (!(n > 1.0)) {
        throw DomainError("conjecture_model requires N > 1");
    }
    return k * n * std::sqrt(n) / std::log(n);
}

double rayleigh_cdf(double x, double sigma)
{
    if (x <= 0.0) {
        return 0.0;
    }
    return -std::expm1(-(x * x) / (2.0 * sigma * sigma));
}

double rayleigh_pdf(double x, double sigma)
{
    if (x < 0.0) {
        return 0.0;
    }
    const double s2 = sigma * sigma;
    return x / s2 * std::exp(-(x * x) / (2.0 * s2));
}

RayleighFit rayleigh_fit(std::span<const double> samples)
{
    const std::size_t n = samples.size();
    if (n < 2) {
        throw ValidationError("rayleigh_fit needs at least two samples");
    }
    double sum_sq = 0.0;
    for (double x : samples) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw ValidationError("rayleigh_fit: samples must be positive and finite");
        }
        sum_sq += x * x;
    }
    RayleighFit fit;
    fit.n = n;
    fit.sigma = std::sqrt(sum_sq / (2.0 * static_cast<double>(n)));

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = rayleigh_cdf(sorted[i], fit.sigma);
        d = std::max({d, f - static_cast<double>(i) / nn, static_cast<double>(i + 1) / nn - f});
    }
    fit.ks_distance = std::clamp(d, 0.0, 1.0);
    return fit;
}

Histogram histogram_density(std::span<const double> samples, std::size_t bin_count)
{
    const std::size_t n = samples.size();
    if (n == 0) {
        throw ValidationError("histogram_density needs at least one sample");
    }
    if (bin_count == 0) {
        bin_count = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    }
    double hi = 0.0;
    for (double x : samples) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ValidationError("histogram_density: samples must be finite and nonnegative");
        }
        hi = std::max(hi, x);
    }
    if (hi == 0.0) {
        throw ValidationError("histogram_density: all samples are zero");
    }

    Histogram h;
    const double width = hi / static_cast<double>(bin_count);
    h.edges.reserve(bin_count + 1);
    for (std::size_t i = 0; i < bin_count; ++i) {
        h.edges.push_back(width * static_cast<double>(i));
    }
    h.edges.push_back(hi);

    std::vector<std::size_t> counts(bin_count, 0);
    for (double x : samples) {
        auto bin = static_cast<std::size_t>(x / width);
        // x / width can round past an edge; settle against the stored edges.
        bin = std::min(bin, bin_count - 1);
        while (bin > 0 && x < h.edges[bin]) {
            --bin;
        }
        while (bin + 1 < bin_count && x >= h.edges[bin + 1]) {
            ++bin;
        }
        ++counts[bin];
    }
    h.densities.reserve(bin_count);
    for (std::size_t i = 0; i < bin_count; ++i) {
        const double w = h.edges[i + 1] - h.edges[i];
        h.densities.push_back(static_cast<double>(counts[i]) / (static_cast<double>(n) * w));
    }
    return h;
}

double consistency_check(double k_hat, double sigma_hat)
{
    return std::abs(k_hat - kRayleighSlopeFactor * sigma_hat);
}

std::vector<double> normalized_counts(std::span<const CountRecord> records)
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(static_cast<double>(r.count) / std::sqrt(static_cast<double>(r.prime)));
    }
    return out;
}

} // namespace orbitsum
