#pragma once

#include <span>

namespace ltlf::featlab {

/// Residential, commercial and industrial shares of a feeder peak.
struct Composition {
    double residential = 0.0;
    double commercial = 0.0;
    double industrial = 0.0;
};

/// Shares from per-customer loads at the time of the feeder peak. The
/// industrial share is the residual, so the three always sum to one.
Composition load_composition(double feeder_peak, std::span<const double> residential_loads,
                             std::span<const double> commercial_loads);

}  // namespace ltlf::featlab
