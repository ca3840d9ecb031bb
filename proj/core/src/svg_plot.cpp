#include "sege/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sege {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70, kRight = 170, kTop = 30, kBottom = 50;
constexpr std::size_t kMaxPoints = 800;

const char* policy_color(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Sege: return "#1f77b4";
        case PolicyKind::Clucb: return "#d62728";
        case PolicyKind::BaselineOnly: return "#2ca02c";
        case PolicyKind::UnsafeGreedy: return "#9467bd";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// 1-2-5 spacing giving roughly `target` ticks over [lo, hi].
double nice_step(double lo, double hi, int target) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

// Stage indices to draw; the full series can be 10^4 points or more.
std::vector<std::size_t> sample_indices(std::size_t n) {
    std::vector<std::size_t> idx;
    if (n <= kMaxPoints) {
        for (std::size_t k = 0; k < n; ++k) idx.push_back(k);
        return idx;
    }
    for (std::size_t j = 0; j < kMaxPoints; ++j) idx.push_back(j * (n - 1) / (kMaxPoints - 1));
    return idx;
}

class Canvas {
public:
    Canvas(double x_lo, double x_hi, double y_lo, double y_hi, bool equal_aspect = false)
        : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
        if (!(x_hi_ > x_lo_)) x_hi_ = x_lo_ + 1.0;
        if (!(y_hi_ > y_lo_)) y_hi_ = y_lo_ + 1.0;
        plot_w_ = kWidth - kLeft - kRight;
        plot_h_ = kHeight - kTop - kBottom;
        if (equal_aspect) {
            const double scale = std::min(plot_w_ / (x_hi_ - x_lo_), plot_h_ / (y_hi_ - y_lo_));
            plot_w_ = scale * (x_hi_ - x_lo_);
            plot_h_ = scale * (y_hi_ - y_lo_);
        }
        out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
               "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    double px(double x) const { return kLeft + (x - x_lo_) / (x_hi_ - x_lo_) * plot_w_; }
    double py(double y) const { return kTop + plot_h_ - (y - y_lo_) / (y_hi_ - y_lo_) * plot_h_; }

    void axes(const std::string& x_label, const std::string& y_label) {
        out_ += "<g stroke=\"#444\" fill=\"none\">\n";
        out_ += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w_) + "\" height=\"" +
                num(plot_h_) + "\"/>\n</g>\n";
        const double xs = nice_step(x_lo_, x_hi_, 6);
        for (double v = std::ceil(x_lo_ / xs) * xs; v <= x_hi_ + 1e-9 * xs; v += xs) {
            const double x = px(v);
            line(x, kTop + plot_h_, x, kTop + plot_h_ + 5, "#444");
            text(x, kTop + plot_h_ + 18, tick_label(std::abs(v) < 1e-12 * xs ? 0.0 : v), "middle");
        }
        const double ys = nice_step(y_lo_, y_hi_, 6);
        for (double v = std::ceil(y_lo_ / ys) * ys; v <= y_hi_ + 1e-9 * ys; v += ys) {
            const double y = py(v);
            line(kLeft - 5, y, kLeft, y, "#444");
            text(kLeft - 8, y + 4, tick_label(std::abs(v) < 1e-12 * ys ? 0.0 : v), "end");
        }
        text(kLeft + plot_w_ / 2, kHeight - 12, x_label, "middle");
        out_ += "<text x=\"16\" y=\"" + num(kTop + plot_h_ / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
                num(kTop + plot_h_ / 2) + ")\">" + y_label + "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* color, const char* dash = nullptr) {
        out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
                "\" stroke=\"" + color + "\"";
        if (dash) out_ += std::string(" stroke-dasharray=\"") + dash + "\"";
        out_ += "/>\n";
    }

    void hline(double y, const char* color, const char* dash) { line(px(x_lo_), py(y), px(x_hi_), py(y), color, dash); }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, double width = 1.5,
                  bool closed = false) {
        if (pts.empty()) return;
        out_ += std::string(closed ? "<polygon" : "<polyline") + " fill=\"none\" stroke=\"" + color +
                "\" stroke-width=\"" + num(width) + "\" points=\"";
        for (const auto& [x, y] : pts) out_ += num(px(x)) + "," + num(py(y)) + " ";
        out_ += "\"/>\n";
    }

    void band(const std::vector<std::pair<double, double>>& upper, const std::vector<std::pair<double, double>>& lower,
              const char* color) {
        out_ += std::string("<polygon fill=\"") + color + "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
        for (const auto& [x, y] : upper) out_ += num(px(x)) + "," + num(py(y)) + " ";
        for (auto it = lower.rbegin(); it != lower.rend(); ++it) out_ += num(px(it->first)) + "," + num(py(it->second)) + " ";
        out_ += "\"/>\n";
    }

    void marker(double x, double y, const char* color, const std::string& label) {
        out_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"4\" fill=\"" + color + "\"/>\n";
        text(px(x) + 7, py(y) - 6, label, "start");
    }

    void text(double x, double y, const std::string& s, const char* anchor) {
        out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
    }

    void legend(const std::string& label, const char* color, const char* dash = nullptr) {
        const double x = kLeft + plot_w_ + 15;
        const double y = kTop + 10 + 18 * legend_rows_++;
        line(x, y, x + 24, y, color, dash);
        text(x + 30, y + 4, label, "start");
    }

    std::string finish() { return out_ + "</svg>\n"; }

private:
    double x_lo_, x_hi_, y_lo_, y_hi_;
    double plot_w_ = 0, plot_h_ = 0;
    int legend_rows_ = 0;
    std::string out_;
};

std::pair<double, double> padded(double lo, double hi) {
    const double pad = 0.05 * std::max(hi - lo, 1e-9);
    return {lo - pad, hi + pad};
}

std::string series_plot(std::span<const AggregateSummary> aggregates, bool regret, double threshold,
                        double baseline_bound) {
    if (aggregates.empty()) throw std::invalid_argument("plot: no aggregates");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::int64_t horizon = 1;
    for (const auto& a : aggregates) {
        const auto& mn = regret ? a.min_regret : a.min_reward;
        const auto& mx = regret ? a.max_regret : a.max_reward;
        for (double v : mn) lo = std::min(lo, v);
        for (double v : mx) hi = std::max(hi, v);
        horizon = std::max(horizon, a.horizon);
    }
    if (!regret) {
        lo = std::min(lo, threshold);
        hi = std::max(hi, baseline_bound);
    }
    const auto [y_lo, y_hi] = padded(lo, hi);
    Canvas c(1.0, static_cast<double>(horizon), y_lo, y_hi);
    c.axes("stage t", regret ? "cumulative regret" : "expected reward");

    for (const auto& a : aggregates) {
        const auto& mean = regret ? a.mean_regret : a.mean_reward;
        const auto& mn = regret ? a.min_regret : a.min_reward;
        const auto& mx = regret ? a.max_regret : a.max_reward;
        std::vector<std::pair<double, double>> m, l, u;
        for (auto k : sample_indices(mean.size())) {
            const double t = static_cast<double>(k + 1);
            m.emplace_back(t, mean[k]);
            l.emplace_back(t, mn[k]);
            u.emplace_back(t, mx[k]);
        }
        const char* color = policy_color(a.policy);
        c.band(u, l, color);
        c.polyline(m, color);
        c.legend(std::string(to_string(a.policy)), color);
    }
    if (!regret) {
        c.hline(threshold, "#000000", "6,4");
        c.legend("b", "#000000", "6,4");
        c.hline(baseline_bound, "#7f7f7f", "2,3");
        c.legend("b0", "#7f7f7f", "2,3");
    }
    return c.finish();
}

}  // namespace

std::string reward_band_svg(std::span<const AggregateSummary> aggregates, double threshold, double baseline_bound) {
    return series_plot(aggregates, false, threshold, baseline_bound);
}

std::string regret_svg(std::span<const AggregateSummary> aggregates) { return series_plot(aggregates, true, 0.0, 0.0); }

std::string safe_set_svg(const EllipsoidArmSet& arm_set, std::span<const SafeSetSnapshot> snapshots,
                         const Vector& optimal_arm, const Vector& baseline_arm) {
    if (arm_set.dim() != 2) throw std::invalid_argument("safe_set_svg: planar arm sets only");
    const Vector half = arm_set.shape().matrix().diagonal().cwiseSqrt();
    const auto [x_lo, x_hi] = padded(arm_set.center()(0) - half(0), arm_set.center()(0) + half(0));
    const auto [y_lo, y_hi] = padded(arm_set.center()(1) - half(1), arm_set.center()(1) + half(1));
    Canvas c(x_lo, x_hi, y_lo, y_hi, true);
    c.axes("x1", "x2");

    std::vector<std::pair<double, double>> outline;
    for (int k = 0; k < 360; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 360.0;
        const Vector p = arm_set.boundary_point((Vector(2) << std::cos(phi), std::sin(phi)).finished());
        outline.emplace_back(p(0), p(1));
    }
    c.polyline(outline, "#444444", 1.0, true);
    c.legend("arm set", "#444444");

    // Light-to-dark blue as the stage grows.
    const std::size_t n = snapshots.size();
    for (std::size_t s = 0; s < n; ++s) {
        const double f = n <= 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(n - 1);
        char color[8];
        std::snprintf(color, sizeof color, "#%02x%02x%02x", static_cast<int>(160 - 140 * f),
                      static_cast<int>(200 - 150 * f), static_cast<int>(255 - 80 * f));
        for (const auto& chain : snapshots[s].contours) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : chain) pts.emplace_back(p(0), p(1));
            const bool closed = chain.size() > 2 && (chain.front() - chain.back()).norm() < 1e-12;
            c.polyline(pts, color, 1.5, closed);
        }
        c.legend("t = " + std::to_string(snapshots[s].stage), color);
    }
    c.marker(optimal_arm(0), optimal_arm(1), "#d62728", "X*");
    c.marker(baseline_arm(0), baseline_arm(1), "#2ca02c", "X0");
    return c.finish();
}

}  // namespace sege
