#include "dtclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dtc {

JackknifeResult jackknife_mean(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw std::invalid_argument("jackknife_mean: need at least two samples");
    double total = 0.0;
    for (double v : samples) total += v;
    const double mean = total / n;
    // leave-one-out means theta_i = (total - x_i) / (n-1)
    double ss = 0.0;
    for (double v : samples) {
        const double theta = (total - v) / (n - 1);
        ss += (theta - mean) * (theta - mean);
    }
    JackknifeResult res;
    res.n = n;
    res.estimate = mean;
    res.stderr_ = std::sqrt(ss * (n - 1) / static_cast<double>(n));
    return res;
}

HistogramStats histogram_stats(std::span<const double> values, int bins) {
    if (values.empty()) throw std::invalid_argument("histogram_stats: empty input");
    if (bins < 1) throw std::invalid_argument("histogram_stats: need at least one bin");
    HistogramStats st;
    st.n = static_cast<int>(values.size());
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        st.mean += v;
    }
    st.mean /= st.n;
    double var = 0.0;
    for (double v : values) var += (v - st.mean) * (v - st.mean);
    st.sigma = std::sqrt(var / st.n);
    if (std::abs(st.mean) < 1e-12 || std::abs(st.mean) * 1e6 < st.sigma) {
        st.ratio_flagged = true;
        st.ratio = 0.0;
    } else {
        st.ratio = st.sigma / std::abs(st.mean);
    }
    if (hi == lo) hi = lo + 1.0;  // degenerate range: single full bin
    st.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        st.bin_edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
    st.bin_counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++st.bin_counts[static_cast<std::size_t>(b)];
    }
    return st;
}

CrossingEstimate crossing_estimate(const std::vector<SizeCurve>& curves) {
    if (curves.size() < 2) throw std::invalid_argument("crossing_estimate: need at least two system sizes");
    const auto& g0 = curves.front().g;
    for (const auto& c : curves) {
        if (c.g != g0) throw std::invalid_argument("crossing_estimate: curves must share the g grid");
        if (c.value.size() != g0.size() || c.stderr_.size() != g0.size())
            throw std::invalid_argument("crossing_estimate: curve sizes inconsistent");
    }
    CrossingEstimate est;
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::size_t b = a + 1; b < curves.size(); ++b) {
            const SizeCurve& small = curves[a].length < curves[b].length ? curves[a] : curves[b];
            const SizeCurve& large = curves[a].length < curves[b].length ? curves[b] : curves[a];
            // diff goes negative -> positive across the transition
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i + 1 < g0.size(); ++i) {
                const double d0 = large.value[i] - small.value[i];
                const double d1 = large.value[i + 1] - small.value[i + 1];
                if (d0 < 0.0 && d1 >= 0.0) hits.push_back(i);
            }
            if (hits.empty()) continue;
            const std::size_t i = hits[hits.size() / 2];
            const double d0 = large.value[i] - small.value[i];
            const double d1 = large.value[i + 1] - small.value[i + 1];
            const double dg = g0[i + 1] - g0[i];
            const double gx = g0[i] + dg * d0 / (d0 - d1);
            // propagate curve uncertainties through the interpolation
            const double dd = d0 - d1;
            const double w0 = dg * (-d1) / (dd * dd);
            const double w1 = dg * d0 / (dd * dd);
            const double var = w0 * w0 * (small.stderr_[i] * small.stderr_[i] + large.stderr_[i] * large.stderr_[i]) +
                               w1 * w1 * (small.stderr_[i + 1] * small.stderr_[i + 1] + large.stderr_[i + 1] * large.stderr_[i + 1]);
            CrossingEstimate::Pair pr;
            pr.length_a = small.length;
            pr.length_b = large.length;
            pr.g = gx;
            pr.stderr_ = std::sqrt(var);
            est.pairs.push_back(pr);
        }
    }
    if (est.pairs.empty()) return est;  // found = false: no crossing on the grid
    est.found = true;
    est.g_lo = est.pairs.front().g;
    est.g_hi = est.pairs.front().g;
    double wsum = 0.0, wval = 0.0;
    for (const auto& p : est.pairs) {
        est.g_lo = std::min(est.g_lo, p.g);
        est.g_hi = std::max(est.g_hi, p.g);
        const double w = 1.0 / std::max(1e-12, p.stderr_ * p.stderr_);
        wsum += w;
        wval += w * p.g;
    }
    est.center = wval / wsum;
    return est;
}

ScatterAnalysis energy_scatter(std::span<const ScatterPoint> points, double window_width) {
    if (points.empty()) throw std::invalid_argument("energy_scatter: empty input");
    if (window_width <= 0.0) throw std::invalid_argument("energy_scatter: window width must be positive");
    ScatterAnalysis an;
    an.points.assign(points.begin(), points.end());
    an.window_width = window_width;
    std::map<long, std::vector<double>> windows;
    for (const auto& p : points)
        windows[std::lround(p.energy / window_width)].push_back(p.value);
    for (const auto& [idx, vals] : windows) {
        double m = 0.0;
        for (double v : vals) m += v;
        m /= static_cast<double>(vals.size());
        double var = 0.0;
        for (double v : vals) var += (v - m) * (v - m);
        const auto n = static_cast<double>(vals.size());
        const double se = vals.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
        an.window_center.push_back(static_cast<double>(idx) * window_width);
        an.window_mean.push_back(m);
        an.window_stderr.push_back(se);
        an.window_count.push_back(static_cast<int>(vals.size()));
    }
    // weighted fit of the window means against a line and a constant
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    int used = 0;
    for (std::size_t i = 0; i < an.window_mean.size(); ++i) {
        if (an.window_count[i] < 2) continue;
        const double se = std::max(an.window_stderr[i], 1e-12);
        const double w = 1.0 / (se * se);
        const double x = an.window_center[i], y = an.window_mean[i];
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
        ++used;
    }
    if (used >= 2) {
        const double det = sw * swxx - swx * swx;
        if (std::abs(det) > 1e-30) {
            an.slope = (sw * swxy - swx * swy) / det;
            an.slope_stderr = std::sqrt(sw / det);
        }
        const double wmean = swy / sw;
        double chi2 = 0.0;
        for (std::size_t i = 0; i < an.window_mean.size(); ++i) {
            if (an.window_count[i] < 2) continue;
            const double se = std::max(an.window_stderr[i], 1e-12);
            const double r = (an.window_mean[i] - wmean) / se;
            chi2 += r * r;
        }
        an.variation_chi2 = chi2 / (used - 1);
    }
    return an;
}

}  // namespace dtc
