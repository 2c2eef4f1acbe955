#include "spurion/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace spurion {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 70;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kColors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    double map(double v, double px_lo, double px_hi) const {
        const double t = (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

AxisRange nice_range(double lo, double hi) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

void draw_ticks(std::ostringstream& svg, const AxisRange& r, bool left, double px, double y_top,
                double y_bot) {
    const int n = 6;
    for (int i = 0; i <= n; ++i) {
        const double v = r.lo + (r.hi - r.lo) * i / n;
        const double y = y_bot + (v - r.lo) / (r.hi - r.lo) * (y_top - y_bot);
        svg << "<line x1='" << (left ? px - 5 : px) << "' y1='" << y << "' x2='"
            << (left ? px : px + 5) << "' y2='" << y << "' stroke='black'/>\n";
        svg << "<text x='" << (left ? px - 8 : px + 8) << "' y='" << y + 4
            << "' font-size='11' text-anchor='" << (left ? "end" : "start") << "'>" << fmt(v)
            << "</text>\n";
    }
}

}  // namespace

void emit_plot(const std::vector<TimeSeries>& series, const std::filesystem::path& svg_path) {
    if (series.empty() || series.size() > 4)
        throw_usage("emit_plot: need between 1 and 4 series, got " +
                    std::to_string(series.size()));

    // Align everything to the common index range.
    int lo = series[0].start_index, hi = series[0].end_index();
    for (const auto& s : series) {
        lo = std::max(lo, s.start_index);
        hi = std::min(hi, s.end_index());
    }
    if (lo > hi) throw_usage("emit_plot: series have no common index range");
    std::vector<TimeSeries> aligned;
    for (const auto& s : series) aligned.push_back(restrict_window(s, lo, hi));
    const Eigen::Index n = aligned[0].values.size();

    AxisRange left = nice_range(aligned[0].values.minCoeff(), aligned[0].values.maxCoeff());
    AxisRange right;
    if (aligned.size() > 1) {
        double rlo = aligned[1].values.minCoeff(), rhi = aligned[1].values.maxCoeff();
        for (std::size_t i = 2; i < aligned.size(); ++i) {
            rlo = std::min(rlo, aligned[i].values.minCoeff());
            rhi = std::max(rhi, aligned[i].values.maxCoeff());
        }
        right = nice_range(rlo, rhi);
    }

    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y_top = kMarginTop, y_bot = kHeight - kMarginBottom;
    auto x_of = [&](Eigen::Index i) {
        return n > 1 ? x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n - 1)
                     : 0.5 * (x0 + x1);
    };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<line x1='" << x0 << "' y1='" << y_bot << "' x2='" << x1 << "' y2='" << y_bot
        << "' stroke='black'/>\n";
    svg << "<line x1='" << x0 << "' y1='" << y_top << "' x2='" << x0 << "' y2='" << y_bot
        << "' stroke='black'/>\n";
    if (aligned.size() > 1)
        svg << "<line x1='" << x1 << "' y1='" << y_top << "' x2='" << x1 << "' y2='" << y_bot
            << "' stroke='black'/>\n";

    draw_ticks(svg, left, true, x0, y_top, y_bot);
    if (aligned.size() > 1) draw_ticks(svg, right, false, x1, y_top, y_bot);

    // Year ticks.
    const int nxticks = std::min<Eigen::Index>(8, n);
    for (int i = 0; i < nxticks; ++i) {
        const auto idx = static_cast<Eigen::Index>(
            std::llround(static_cast<double>(i) * static_cast<double>(n - 1) /
                         std::max(1, nxticks - 1)));
        const double x = x_of(idx);
        svg << "<line x1='" << x << "' y1='" << y_bot << "' x2='" << x << "' y2='" << y_bot + 5
            << "' stroke='black'/>\n";
        svg << "<text x='" << x << "' y='" << y_bot + 20
            << "' font-size='11' text-anchor='middle'>" << (lo + static_cast<int>(idx))
            << "</text>\n";
    }

    for (std::size_t si = 0; si < aligned.size(); ++si) {
        const AxisRange& ax = si == 0 ? left : right;
        svg << "<polyline fill='none' stroke='" << kColors[si] << "' stroke-width='1.5' points='";
        for (Eigen::Index i = 0; i < n; ++i) {
            const double y =
                y_bot + (aligned[si].values[i] - ax.lo) / (ax.hi - ax.lo) * (y_top - y_bot);
            svg << x_of(i) << "," << y << " ";
        }
        svg << "'/>\n";
        svg << "<text x='" << x0 + 10 << "' y='" << y_top + 16 + 16 * static_cast<double>(si)
            << "' font-size='12' fill='" << kColors[si] << "'>" << aligned[si].label
            << (si == 0 ? " (left)" : " (right)") << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(svg_path);
    if (!out) throw_usage("emit_plot: cannot write " + svg_path.string());
    out << svg.str();

    // CSV sidecar with the plotted points and the axis scales used.
    std::filesystem::path csv_path = svg_path;
    csv_path.replace_extension(".csv");
    std::ofstream csv(csv_path);
    if (!csv) throw_usage("emit_plot: cannot write " + csv_path.string());
    csv << "# left axis: " << aligned[0].label << " range [" << fmt(left.lo) << ", "
        << fmt(left.hi) << "]\n";
    if (aligned.size() > 1)
        csv << "# right axis range [" << fmt(right.lo) << ", " << fmt(right.hi) << "]\n";
    csv << "year";
    for (const auto& s : aligned) csv << "," << s.label;
    csv << "\n";
    csv << std::setprecision(17);
    for (Eigen::Index i = 0; i < n; ++i) {
        csv << (lo + static_cast<int>(i));
        for (const auto& s : aligned) csv << "," << s.values[i];
        csv << "\n";
    }
}

}  // namespace spurion
