#pragma once

#include <span>
#include <vector>

namespace bwskit {

// Fractional (average) ranks. Ascending: rank 1 for the smallest value.
// Descending: rank 1 for the largest. Tied values share the mean of the
// positions they occupy.
std::vector<double> fractional_ranks(std::span<const double> values, bool descending = false);

// Pearson correlation. Throws std::invalid_argument on length mismatch,
// fewer than two observations, or a constant sequence. A numerically
// perfect linear relation returns exactly +1.0 or -1.0.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation: Pearson over average ranks (tie-corrected).
// Same error conditions as pearson.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace bwskit
