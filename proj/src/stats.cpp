#include "voxelsmith/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace voxelsmith::stats {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw DegenerateInput("mean of empty vector");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) throw DegenerateInput("sample stddev needs at least 2 values");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(xs.size() - 1));
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DegenerateInput("pearson: length mismatch");
    if (xs.size() < 2) throw DegenerateInput("pearson: need at least 2 pairs");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
        const double shared = (double(i + 1) + double(j + 1)) / 2.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DegenerateInput("spearman: length mismatch");
    if (xs.size() < 2) throw DegenerateInput("spearman: need at least 2 pairs");
    return pearson(average_ranks(xs), average_ranks(ys));
}

}  // namespace voxelsmith::stats
