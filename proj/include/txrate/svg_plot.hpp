#pragma once

#include <iosfwd>

#include "txrate/rating.hpp"

namespace txrate {

/// Static vector plot of a 365-day rating curve. Unrated days break the
/// line so gaps stay visible.
void write_rating_svg(std::ostream& out, const AnnualRatingProfile& profile);

}  // namespace txrate
