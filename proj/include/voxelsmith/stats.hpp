#pragma once

#include <stdexcept>
#include <vector>

namespace voxelsmith::stats {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double mean(const std::vector<double>& xs);  // throws DegenerateInput on empty

/// n-1 denominator. Throws DegenerateInput when n < 2.
double sample_stddev(const std::vector<double>& xs);

/// Definitional sample Pearson coefficient. Throws DegenerateInput on length
/// mismatch, n < 2, or zero variance in either input.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Average ranks (1-based); tied values share the mean of their rank range.
std::vector<double> average_ranks(const std::vector<double>& xs);

/// Pearson of the average-rank vectors.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace voxelsmith::stats
