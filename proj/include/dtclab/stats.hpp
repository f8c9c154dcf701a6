#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dtc {

/// Leave-one-out jackknife of the mean: returns (estimate, stderr).
/// For the mean estimator the stderr equals s/sqrt(n) with the n-1
/// convention, exactly.
struct JackknifeResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

JackknifeResult jackknife_mean(std::span<const double> samples);

/// Histogram summary. sigma uses the population convention (divide by n);
/// ratio = sigma/|mean| is flagged unreliable when the mean is degenerate.
struct HistogramStats {
    int n = 0;
    double mean = 0.0;
    double sigma = 0.0;
    double ratio = 0.0;
    bool ratio_flagged = false;
    std::vector<double> bin_edges;
    std::vector<int> bin_counts;
};

HistogramStats histogram_stats(std::span<const double> values, int bins);

/// One chi(g) curve at fixed chain length.
struct SizeCurve {
    int length = 0;
    std::vector<double> g;
    std::vector<double> value;
    std::vector<double> stderr_;
};

/// Pairwise linear-interpolation crossing of finite-size curves.
struct CrossingEstimate {
    bool found = false;
    double g_lo = 0.0;
    double g_hi = 0.0;
    double center = 0.0;  // stderr-weighted mean of the pairwise crossings
    struct Pair {
        int length_a = 0, length_b = 0;
        double g = 0.0;
        double stderr_ = 0.0;
    };
    std::vector<Pair> pairs;
};

CrossingEstimate crossing_estimate(const std::vector<SizeCurve>& curves);

/// Scatter of an observable against bitstring energy, with means over
/// energy windows of fixed width.
struct ScatterPoint {
    double energy = 0.0;
    double value = 0.0;
};

struct ScatterAnalysis {
    std::vector<ScatterPoint> points;
    double window_width = 0.2;
    std::vector<double> window_center;
    std::vector<double> window_mean;
    std::vector<double> window_stderr;
    std::vector<int> window_count;
    // weighted straight-line fit through the window means
    double slope = 0.0;
    double slope_stderr = 0.0;
    // reduced chi^2 of the window means against a constant: ~1 when the
    // energy carries no information, large when it does
    double variation_chi2 = 0.0;
};

ScatterAnalysis energy_scatter(std::span<const ScatterPoint> points, double window_width = 0.2);

}  // namespace dtc
