#pragma once

#include "adjclose/domain.hpp"

#include <ostream>
#include <span>
#include <string>

namespace adjclose {

struct NamedSeries {
    std::string name;
    AdjustedSeries series;
};

/// `date,<name1>,<name2>,...` over the union of all dates, values at 4
/// fractional digits, empty cells where a series has no bar.
void write_normalized_csv(std::span<const NamedSeries> series, std::ostream& sink);

/// Static SVG 1.1 line chart, one polyline per series on a shared time axis.
std::string render_svg(std::span<const NamedSeries> series, const std::string& title);

}  // namespace adjclose
