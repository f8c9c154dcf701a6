#include "dtclab/calibration.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dtclab/state_vector.hpp"

namespace dtc {

namespace {

double wrap_pi(double x) {
    double v = std::remainder(x, 2.0 * kPi);
    if (v <= -kPi) v += 2.0 * kPi;
    return v;
}

// Bloch angle of one qubit, alpha = atan2(<Y>, <X>).
double bloch_angle(const StateVector& s, int qubit) {
    const double x = s.expect_x(qubit);
    StateVector t = s;
    t.apply_1q(qubit, z_rotation(-kPi / 2.0));  // rotate Y into the X frame
    const double y = t.expect_x(qubit);
    return std::atan2(y, x);
}

double p1_of(const StateVector& s, int qubit) { return 0.5 * (1.0 - s.expect_z(qubit)); }

}  // namespace

CosineFit fit_cosine(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_cosine: size mismatch");
    const int n = static_cast<int>(xs.size());
    if (n < 3) throw std::invalid_argument("fit_cosine: need at least three points");
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d row(std::cos(xs[static_cast<std::size_t>(i)]), std::sin(xs[static_cast<std::size_t>(i)]), 1.0);
        m += row * row.transpose();
        rhs += row * ys[static_cast<std::size_t>(i)];
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
    if (!lu.isInvertible()) throw std::runtime_error("fit_cosine: rank-deficient design (degenerate grid)");
    const Eigen::Vector3d sol = lu.solve(rhs);
    CosineFit fit;
    fit.b0 = sol(2);
    fit.b1 = std::hypot(sol(0), sol(1));
    fit.xi0 = fit.b1 > 0.0 ? std::atan2(-sol(1), sol(0)) : 0.0;
    if (fit.xi0 <= -kPi) fit.xi0 += 2.0 * kPi;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = fit.b0 + fit.b1 * std::cos(xs[static_cast<std::size_t>(i)] + fit.xi0);
        ss += (f - ys[static_cast<std::size_t>(i)]) * (f - ys[static_cast<std::size_t>(i)]);
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: size mismatch");
    const int n = static_cast<int>(xs.size());
    if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[static_cast<std::size_t>(i)];
        sy += ys[static_cast<std::size_t>(i)];
        sxx += xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)];
        sxy += xs[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * std::max(1.0, sxx)) throw std::runtime_error("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = fit.intercept + fit.slope * xs[static_cast<std::size_t>(i)];
        ss += (f - ys[static_cast<std::size_t>(i)]) * (f - ys[static_cast<std::size_t>(i)]);
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

DeltaMinusResult simulate_delta_minus(const FsimParams& params, int d, std::span<const double> xi_grid) {
    if (d < 1) throw std::invalid_argument("simulate_delta_minus: depth must be positive");
    if (xi_grid.size() < 3) throw std::invalid_argument("simulate_delta_minus: need at least three xi points");
    const GateMatrix f = fsim_matrix(params);
    DeltaMinusResult res;
    auto run = [&](int excited, std::vector<double>& p1s) {
        StateVector base = StateVector::bitstring({0, 0});
        base.apply_1q(excited, y_rotation(kPi / 2.0));  // |X>
        for (int k = 0; k < d; ++k) base.apply_2q(0, 1, f);
        p1s.reserve(xi_grid.size());
        for (double xi : xi_grid) {
            StateVector s = base;
            // Z(xi): e^{+i xi Z / 2}; this sign makes the quoted slope
            // identity delta_minus = (xi_a - xi_b)/(2d) hold as stated.
            s.apply_1q(excited, z_rotation(-xi));
            s.apply_1q(excited, y_rotation(kPi / 2.0));  // sqrt(Y)
            p1s.push_back(p1_of(s, excited));
        }
    };
    run(0, res.p1_a);
    run(1, res.p1_b);
    std::vector<double> xs(xi_grid.begin(), xi_grid.end());
    res.fit_a = fit_cosine(xs, res.p1_a);
    res.fit_b = fit_cosine(xs, res.p1_b);
    res.fit.parameter = "delta_minus";
    res.fit.kind = FitKind::cosine;
    res.fit.estimate = wrap_pi(res.fit_a.xi0 - res.fit_b.xi0) / (2.0 * d);
    res.fit.residual_rms = std::max(res.fit_a.rms, res.fit_b.rms);
    if (res.fit_a.b1 < 1e-6 || res.fit_b.b1 < 1e-6) res.fit.flagged = true;  // flat curve
    return res;
}

PhaseSumResult simulate_phase_sums(const FsimParams& params, std::span<const int> depths,
                                   bool negative_phase_branch) {
    if (depths.size() < 2) throw std::invalid_argument("simulate_phase_sums: need at least two depths");
    for (std::size_t i = 0; i + 1 < depths.size(); ++i)
        if (depths[i + 1] <= depths[i]) throw std::invalid_argument("simulate_phase_sums: depths must increase");
    if (depths[0] < 1) throw std::invalid_argument("simulate_phase_sums: depths must be positive");
    const GateMatrix f = fsim_matrix(params);

    auto angle_after = [&](int excited, bool other_excited, int d) {
        StateVector s = StateVector::bitstring({0, 0});
        if (other_excited) s.apply_1q(1 - excited, pauli_x());
        s.apply_1q(excited, y_rotation(kPi / 2.0));
        for (int k = 0; k < d; ++k) s.apply_2q(0, 1, f);
        return bloch_angle(s, excited);
    };

    PhaseSumResult res;
    res.depths.assign(depths.begin(), depths.end());
    std::vector<double> ds;
    std::vector<double> sum_u, diff_u;
    double prev_sum = 0.0, prev_diff = 0.0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        const int d = depths[i];
        const double a1 = angle_after(0, false, d);
        const double a2 = angle_after(1, false, d);
        const double a3 = angle_after(0, false, d);
        const double a4 = angle_after(0, true, d);
        double vs = wrap_pi(a1 + a2);
        double vd = wrap_pi(a4 - a3);
        if (i == 0) {
            if (negative_phase_branch) {
                // alpha1+alpha2 = 2 d delta_plus in (-2 pi d, 0);
                // alpha4-alpha3 = -d phi in (0, 2 pi d); unique for d = 1.
                if (vs > 0) vs -= 2.0 * kPi;
                if (vd < 0) vd += 2.0 * kPi;
            }
        } else {
            const double ps = prev_sum * d / res.depths[i - 1];
            const double pd = prev_diff * d / res.depths[i - 1];
            vs = ps + wrap_pi(vs - ps);
            vd = pd + wrap_pi(vd - pd);
        }
        prev_sum = vs;
        prev_diff = vd;
        ds.push_back(d);
        sum_u.push_back(vs);
        diff_u.push_back(vd);
    }
    res.alpha_sum = sum_u;
    res.alpha_diff = diff_u;
    const LineFit fs = fit_line(ds, sum_u);
    const LineFit fd = fit_line(ds, diff_u);
    int max_gap = 0;
    for (std::size_t i = 0; i + 1 < res.depths.size(); ++i)
        max_gap = std::max(max_gap, res.depths[i + 1] - res.depths[i]);

    res.delta_plus.parameter = "delta_plus";
    res.delta_plus.kind = FitKind::line;
    res.delta_plus.estimate = fs.slope / 2.0;
    res.delta_plus.residual_rms = fs.rms;
    res.delta_plus.flagged = std::abs(fs.slope) * max_gap > kPi;

    res.phi.parameter = "phi";
    res.phi.kind = FitKind::line;
    res.phi.estimate = -fd.slope;
    res.phi.residual_rms = fd.rms;
    res.phi.flagged = std::abs(fd.slope) * max_gap > kPi;
    return res;
}

double theta_sequence_p1(const FsimParams& params, int d, double psi) {
    const GateMatrix f = fsim_matrix(params);
    const GateMatrix ra = pi_rotation(-psi);
    const GateMatrix rb = pi_rotation(psi + kPi / 2.0);
    StateVector s = StateVector::bitstring({1, 0});
    for (int k = 0; k < d; ++k) {
        s.apply_1q(0, ra);
        s.apply_1q(1, rb);
        s.apply_2q(0, 1, f);
    }
    return p1_of(s, 1);
}

namespace {

double golden_extremum(const std::function<double(double)>& fn, double lo, double hi, bool maximize) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int it = 0; it < 120 && (b - a) > 1e-13; ++it) {
        const bool pick_left = maximize ? (fc > fd) : (fc < fd);
        if (pick_left) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = fn(d);
        }
    }
    return fn(0.5 * (a + b));
}

}  // namespace

ThetaResult simulate_theta(const FsimParams& params, int d, std::span<const double> psi_grid,
                           bool refine_extrema) {
    if (d < 1 || d % 2 == 0) throw std::invalid_argument("simulate_theta: depth must be odd and positive");
    if (psi_grid.size() < 4) throw std::invalid_argument("simulate_theta: need at least four psi points");
    ThetaResult res;
    res.p1.reserve(psi_grid.size());
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < psi_grid.size(); ++i) {
        const double v = theta_sequence_p1(params, d, psi_grid[i]);
        res.p1.push_back(v);
        if (v > res.p1[imax]) imax = i;
        if (v < res.p1[imin]) imin = i;
    }
    double vmax = res.p1[imax], vmin = res.p1[imin];
    if (refine_extrema) {
        // extremes sit between grid neighbours; polish them to machine precision
        auto fn = [&](double psi) { return theta_sequence_p1(params, d, psi); };
        auto span_of = [&](std::size_t i) {
            const double left = psi_grid[i == 0 ? 0 : i - 1];
            const double right = psi_grid[i + 1 < psi_grid.size() ? i + 1 : i];
            return std::pair{left, right};
        };
        const auto [la, ra] = span_of(imax);
        const auto [lb, rb] = span_of(imin);
        vmax = std::max(vmax, golden_extremum(fn, la, ra, true));
        vmin = std::min(vmin, golden_extremum(fn, lb, rb, false));
    }
    double ptp = vmax - vmin;
    if (ptp > 1.0) {
        res.clipped = true;
        ptp = 1.0;
    }
    res.peak_to_peak = ptp;

    // Invert cos^2(theta) - cos^2(d theta) = ptp on theta in [0, pi/(2d)].
    const double theta_hi = kPi / (2.0 * d);
    auto law = [&](double th) {
        const double c = std::cos(th), cd = std::cos(d * th);
        return c * c - cd * cd;
    };
    res.fit.parameter = "theta";
    res.fit.kind = FitKind::sinusoid;
    if (ptp >= law(theta_hi)) {
        res.fit.estimate = theta_hi;
        res.fit.flagged = true;  // at or beyond the branch boundary d*theta = pi/2
    } else {
        double lo = 0.0, hi = theta_hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (law(mid) < ptp ? lo : hi) = mid;
        }
        res.fit.estimate = 0.5 * (lo + hi);
        if (res.fit.estimate > 0.95 * theta_hi) res.fit.flagged = true;
    }
    // harmonic fit at the sweep's period (pi in psi) for the residual report
    std::vector<double> doubled(psi_grid.size());
    for (std::size_t i = 0; i < psi_grid.size(); ++i) doubled[i] = 2.0 * psi_grid[i];
    const CosineFit cf = fit_cosine(doubled, res.p1);
    res.fit.residual_rms = cf.rms;
    return res;
}

}  // namespace dtc
