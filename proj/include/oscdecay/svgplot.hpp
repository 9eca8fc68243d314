#pragma once

#include <string>
#include <vector>

#include "oscdecay/decayfit.hpp"

namespace oscdecay {

// Log-log scatter of (lambda, norm) with the fitted line and a reference
// line of the predicted slope anchored at the fit midpoint. Static SVG,
// no external tooling.
std::string svg_loglog_plot(const DecayFitResult& fit, double predicted_exponent,
                            const std::string& title);

}  // namespace oscdecay
