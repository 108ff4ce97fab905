#include "msloc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "msloc/errors.hpp"

namespace msloc {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

const char* x_label(SweepChannel c) {
    switch (c) {
        case SweepChannel::br: return "BR noise sigma (m)";
        case SweepChannel::brr: return "BRR noise sigma (m/s)";
        case SweepChannel::doa: return "DOA noise sigma (deg)";
    }
    return "";
}

class Axis {
public:
    Axis(double lo, double hi, bool log_scale, double px_lo, double px_hi) : log_(log_scale), px_lo_(px_lo), px_hi_(px_hi) {
        lo_ = log_ ? std::log10(lo) : lo;
        hi_ = log_ ? std::log10(hi) : hi;
        if (log_) {
            lo_ = std::floor(lo_);
            hi_ = std::ceil(hi_);
        }
        if (hi_ - lo_ <= 0.0) {
            lo_ -= 1.0;
            hi_ += 1.0;
        }
    }
    double map(double v) const {
        const double t = ((log_ ? std::log10(v) : v) - lo_) / (hi_ - lo_);
        return px_lo_ + t * (px_hi_ - px_lo_);
    }
    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log_) {
            for (double e = lo_; e <= hi_ + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
        } else {
            for (int i = 0; i <= 5; ++i) out.push_back(lo_ + (hi_ - lo_) * i / 5.0);
        }
        return out;
    }

private:
    bool log_;
    double lo_, hi_, px_lo_, px_hi_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string render_sweep_svg(std::span<const SweepCsvRow> rows, PlotMetric metric) {
    std::map<std::tuple<int, double, std::size_t>, Series> groups;
    for (const auto& r : rows) {
        const double y = metric == PlotMetric::position ? r.rmse_pos_m : r.rmse_vel_mps.value_or(std::nan(""));
        if (!std::isfinite(y) || !(r.swept_sigma() > 0.0)) continue;
        const double doa_key = r.channel == SweepChannel::doa ? -1.0 : r.noise.sigma_doa_deg;
        auto& s = groups[{static_cast<int>(r.channel), doa_key, r.pairs}];
        if (s.label.empty()) {
            std::ostringstream os;
            os << to_string(r.channel) << " sweep";
            if (r.channel != SweepChannel::doa) os << ", DOA " << fmt(r.noise.sigma_doa_deg) << " deg";
            os << ", " << r.pairs << (r.pairs == 1 ? " pair" : " pairs");
            s.label = os.str();
        }
        s.points.emplace_back(r.swept_sigma(), y);
    }
    if (groups.empty()) throw ValidationError("csv", "no plottable rows");

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& [_, s] : groups) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const bool log_y = ymin > 0.0;
    const Axis ax(xmin, xmax, true, kLeft, kWidth - kRight);
    const Axis ay(ymin, ymax, log_y, kHeight - kBottom, kTop);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" stroke=\"#000\">\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>\n";
    for (double t : ax.ticks()) {
        const double px = ax.map(t);
        svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << y0 << "\" x2=\"" << fmt(px) << "\" y2=\"" << y0 + 5 << "\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << y0 + 20 << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(t)
            << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double py = ay.map(t);
        svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << x0 << "\" y2=\"" << fmt(py) << "\"/>\n"
            << "<text x=\"" << x0 - 8 << "\" y=\"" << fmt(py + 4) << "\" text-anchor=\"end\" stroke=\"none\">" << fmt(t)
            << "</text>\n";
    }
    const auto first_channel = static_cast<SweepChannel>(std::get<0>(groups.begin()->first));
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" stroke=\"none\">"
        << x_label(first_channel) << "</text>\n"
        << "<text x=\"20\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" stroke=\"none\" transform=\"rotate(-90 20 "
        << (y0 + y1) / 2 << ")\">" << (metric == PlotMetric::position ? "position RMSE (m)" : "velocity RMSE (m/s)")
        << "</text>\n</g>\n";

    std::size_t idx = 0;
    for (auto& [_, s] : groups) {
        std::sort(s.points.begin(), s.points.end());
        const char* color = kColors[idx % std::size(kColors)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            svg << (i ? " " : "") << fmt(ax.map(s.points[i].first)) << ',' << fmt(ay.map(s.points[i].second));
        }
        svg << "\"/>\n";
        ++idx;
    }

    if (groups.size() > 1) {
        svg << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
        idx = 0;
        for (const auto& [_, s] : groups) {
            const double ly = kTop + 10 + 18.0 * static_cast<double>(idx);
            const double lx = kWidth - kRight + 15;
            svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly << "\" stroke=\""
                << kColors[idx % std::size(kColors)] << "\" stroke-width=\"2\"/>\n"
                << "<text x=\"" << lx + 25 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
            ++idx;
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace msloc
