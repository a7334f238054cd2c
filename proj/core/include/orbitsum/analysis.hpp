#pragma once

#include "orbitsum/series.hpp"
#include "orbitsum/store.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orbitsum {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Ordinary least-squares line y = slope * x + intercept.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n = 0;
};

// Maximum-likelihood Rayleigh scale and the Kolmogorov-Smirnov distance between the
// sample and the fitted distribution.
struct RayleighFit {
    double sigma = 0.0;
    std::size_t n = 0;
    double ks_distance = 0.0;
};

// Equal-width probability density histogram; edges has one more entry than densities.
struct Histogram {
    std::vector<double> edges;
    std::vector<double> densities;

    std::size_t bins() const noexcept { return densities.size(); }
};

// Pointwise a / b over a shared index set (ValidationError on mismatch or zero).
Series ratio_series(const Series& a, const Series& b);

// Pointwise value / sqrt(p_N).
Series normalized_series(const Series& s);

// Affine least squares. Needs n >= 2 and at least two distinct x values.
FitResult linear_fit(std::span<const Point2> points);

// linear_fit with x = index N and y = value.
FitResult fit_series(const Series& s);

// Slope of fit_series over prefixes of length step, 2 step, ...; each point of the
// result sits at index m (and p_m) with the prefix slope as value. Series shorter
// than step give an empty result. step < 2 raises ValidationError.
Series slope_progression(const Series& s, std::size_t step);

// x / ln x, for x > 1.
double pnt_approx(double x);

// k N^{3/2} / ln N, for N > 1.
double conjecture_model(double n, double k);

// Rayleigh CDF and density at x >= 0.
double rayleigh_cdf(double x, double sigma);
double rayleigh_pdf(double x, double sigma);

// sigma = sqrt(sum x^2 / 2n). Needs n >= 2 and every sample > 0.
RayleighFit rayleigh_fit(std::span<const double> samples);

// Bins span [0, max sample]; the last bin is closed. bin_count == 0 selects ceil(sqrt(n)).
Histogram histogram_density(std::span<const double> samples, std::size_t bin_count = 0);

// (2/3) sqrt(pi / 2): the constant k a Rayleigh(sigma = 1) model for T_c(p) / sqrt(p) predicts.
inline constexpr double kRayleighSlopeFactor = 0.83554275821033336;

// |k - kRayleighSlopeFactor * sigma|.
double consistency_check(double k_hat, double sigma_hat);

// T / sqrt(p) for each record.
std::vector<double> normalized_counts(std::span<const CountRecord> records);

} // namespace orbitsum
