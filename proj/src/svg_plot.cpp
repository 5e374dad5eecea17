#include "txrate/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace txrate {
namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 16.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 44.0;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void write_rating_svg(std::ostream& out, const AnnualRatingProfile& profile) {
    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto& day : profile.days) {
        if (!day.rated) continue;
        if (!any) {
            lo = hi = day.rating_mva;
            any = true;
        } else {
            lo = std::min(lo, day.rating_mva);
            hi = std::max(hi, day.rating_mva);
        }
    }
    if (!any) {
        lo = 0.0;
        hi = 1.0;
    }
    const double pad = std::max(0.5, 0.05 * (hi - lo));
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto x_of = [&](int day_index) {
        return kLeft + plot_w * (day_index - 1) / 364.0;
    };
    const auto y_of = [&](double mva) {
        return kTop + plot_h * (1.0 - (mva - lo) / (hi - lo));
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << coord(kWidth) << ' '
        << coord(kHeight) << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect width=\"" << coord(kWidth) << "\" height=\"" << coord(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kLeft) << "\" y=\"22\" font-size=\"16\">Annual dynamic rating, "
        << scenario_name(profile.scenario) << " temperature scenario (MVA)</text>\n";

    // horizontal grid at 5 levels
    for (int g = 0; g <= 4; ++g) {
        const double mva = lo + (hi - lo) * g / 4.0;
        const double y = y_of(mva);
        out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y) << "\" x2=\""
            << coord(kWidth - kRight) << "\" y2=\"" << coord(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.1f", mva);
        out << "<text x=\"6\" y=\"" << coord(y + 4) << "\">" << label << "</text>\n";
    }
    // month-ish ticks every 30 days
    for (int d = 1; d <= 365; d += 30) {
        const double x = x_of(d);
        out << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kHeight - kBottom) << "\" x2=\""
            << coord(x) << "\" y2=\"" << coord(kHeight - kBottom + 6)
            << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << coord(x - 8) << "\" y=\"" << coord(kHeight - kBottom + 22) << "\">"
            << d << "</text>\n";
    }
    out << "<text x=\"" << coord(kLeft + plot_w / 2.0 - 30.0) << "\" y=\""
        << coord(kHeight - 8.0) << "\">day of year</text>\n";

    std::vector<std::string> segment;
    const auto flush_segment = [&] {
        if (segment.size() < 2) {
            segment.clear();
            return;
        }
        out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < segment.size(); ++i) {
            if (i) out << ' ';
            out << segment[i];
        }
        out << "\"/>\n";
        segment.clear();
    };
    for (const auto& day : profile.days) {
        if (!day.rated) {
            flush_segment();
            continue;
        }
        segment.push_back(coord(x_of(day.day_index)) + ',' + coord(y_of(day.rating_mva)));
    }
    flush_segment();
    out << "</svg>\n";
}

}  // namespace txrate
