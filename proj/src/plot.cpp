#include "adjclose/plot.hpp"

#include "adjclose/error.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <set>

namespace adjclose {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return buffer;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_normalized_csv(std::span<const NamedSeries> series, std::ostream& sink) {
    std::set<TradingDate> dates;
    for (const auto& s : series) {
        for (const auto& p : s.series.points) {
            dates.insert(p.date);
        }
    }
    std::string out = "date";
    for (const auto& s : series) {
        out += ',' + s.name;
    }
    out += '\n';
    for (const auto& date : dates) {
        out += date.to_string();
        for (const auto& s : series) {
            out += ',';
            if (auto value = s.series.value_at(date)) {
                out += to_fixed(*value, 4);
            }
        }
        out += '\n';
    }
    sink << out;
    if (!sink) {
        throw Error{ErrorCode::SinkWrite, "failed writing normalized series"};
    }
}

std::string render_svg(std::span<const NamedSeries> series, const std::string& title) {
    long first_day = std::numeric_limits<long>::max();
    long last_day = std::numeric_limits<long>::min();
    double low = std::numeric_limits<double>::max();
    double high = std::numeric_limits<double>::lowest();
    for (const auto& s : series) {
        for (const auto& p : s.series.points) {
            long day = p.date.days().time_since_epoch().count();
            first_day = std::min(first_day, day);
            last_day = std::max(last_day, day);
            double v = p.adjusted.convert_to<double>();
            low = std::min(low, v);
            high = std::max(high, v);
        }
    }
    if (first_day > last_day) {
        first_day = last_day = 0;
        low = high = 0;
    }
    if (high - low < 1e-9) {
        low -= 1;
        high += 1;
    }
    const double span_days = std::max<double>(static_cast<double>(last_day - first_day), 1.0);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_of = [&](long day) { return kLeft + plot_w * static_cast<double>(day - first_day) / span_days; };
    auto y_of = [&](double v) { return kTop + plot_h * (high - v) / (high - low); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + number(kWidth) + "\" height=\"" +
           number(kHeight) + "\" viewBox=\"0 0 " + number(kWidth) + " " + number(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + number(kWidth) + "\" height=\"" + number(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + number(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" + escape(title) + "</text>\n";
    svg += "<rect x=\"" + number(kLeft) + "\" y=\"" + number(kTop) + "\" width=\"" + number(plot_w) + "\" height=\"" +
           number(plot_h) + "\" fill=\"none\" stroke=\"#888888\"/>\n";

    auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        svg += "<text x=\"" + number(x) + "\" y=\"" + number(y) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(text) + "</text>\n";
    };
    label(kLeft - 6, y_of(high) + 4, number(high), "end");
    label(kLeft - 6, y_of(low) + 4, number(low), "end");
    if (!series.empty()) {
        label(kLeft, kHeight - kBottom + 18,
              TradingDate{std::chrono::sys_days{std::chrono::days{first_day}}}.to_string(), "start");
        label(kLeft + plot_w, kHeight - kBottom + 18,
              TradingDate{std::chrono::sys_days{std::chrono::days{last_day}}}.to_string(), "end");
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string{color} + "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& p : series[i].series.points) {
            if (!first) {
                svg += ' ';
            }
            first = false;
            svg += number(x_of(p.date.days().time_since_epoch().count())) + "," +
                   number(y_of(p.adjusted.convert_to<double>()));
        }
        svg += "\"/>\n";
        double legend_y = kTop + 16 + 18 * static_cast<double>(i);
        svg += "<line x1=\"" + number(kWidth - kRight + 12) + "\" y1=\"" + number(legend_y - 4) + "\" x2=\"" +
               number(kWidth - kRight + 32) + "\" y2=\"" + number(legend_y - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        label(kWidth - kRight + 38, legend_y, series[i].name, "start");
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace adjclose
