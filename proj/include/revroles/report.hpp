#pragma once

#include <string>

#include "revroles/validation.hpp"

namespace revroles {

// Significance stars: *** p<.001, ** p<.01, * p<.05, else empty.
std::string significance_stars(double p_value);

// "0.205(0.035)" style correlation cell, three decimals each.
std::string format_r_p(double r, double p);

// Plain-text rendering of the two validation tables: per-purpose R^2
// with stars, and per-role Corr(p-value). Requires >= 1 role.
std::string render_report(const ValidationReport& report);

}  // namespace revroles
