#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "voxelsmith/stats.hpp"

using namespace voxelsmith;

namespace {

// definitional oracles, written independently of the library internals

double oracle_mean(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / double(xs.size());
}

double oracle_pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double mx = oracle_mean(xs), my = oracle_mean(ys);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> oracle_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
        const double shared = (double(i + 1) + double(j + 1)) / 2.0;  // mean of 1-based range
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

std::vector<double> random_vector(std::mt19937& rng, std::size_t n, bool with_ties) {
    std::uniform_real_distribution<double> real(-10.0, 10.0);
    std::uniform_int_distribution<int> small(-4, 4);
    std::vector<double> v(n);
    for (double& x : v) x = with_ties ? double(small(rng)) : real(rng);
    return v;
}

bool constant(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

}  // namespace

TEST_CASE("stats: mean and sample stddev on known values") {
    CHECK(stats::mean({70.0, 90.0}) == doctest::Approx(80.0).epsilon(1e-15));
    CHECK(stats::sample_stddev({70.0, 90.0}) ==
          doctest::Approx(std::sqrt(200.0)).epsilon(1e-15));
    CHECK(stats::mean({5.0}) == doctest::Approx(5.0));
    CHECK(stats::sample_stddev({3.0, 3.0, 3.0}) == doctest::Approx(0.0));

    CHECK_THROWS_AS(stats::mean({}), stats::DegenerateInput);
    CHECK_THROWS_AS(stats::sample_stddev({1.0}), stats::DegenerateInput);
}

TEST_CASE("stats: pearson matches its definition exactly on simple cases") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y_up = {2, 4, 6, 8, 10};
    std::vector<double> y_dn = {5, 4, 3, 2, 1};
    CHECK(stats::pearson(x, y_up) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(stats::pearson(x, y_dn) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(stats::pearson({1, 2}, {1, 2, 3}), stats::DegenerateInput);
    CHECK_THROWS_AS(stats::pearson({1}, {2}), stats::DegenerateInput);
    CHECK_THROWS_AS(stats::pearson({3, 3, 3}, {1, 2, 3}), stats::DegenerateInput);
}

TEST_CASE("stats: average ranks share tied rank ranges") {
    CHECK(stats::average_ranks({10, 20, 20, 30}) == std::vector<double>{1, 2.5, 2.5, 4});
    CHECK(stats::average_ranks({5, 5, 5}) == std::vector<double>{2, 2, 2});
    CHECK(stats::average_ranks({3, 1, 2}) == std::vector<double>{3, 1, 2});
    CHECK(stats::average_ranks({}) == std::vector<double>{});
}

TEST_CASE("stats: pearson and spearman track definitional oracles on 100 random pairs") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::size_t> len(3, 50);
    int checked = 0;
    while (checked < 100) {
        const std::size_t n = len(rng);
        const bool ties = checked % 2 == 0;
        std::vector<double> x = random_vector(rng, n, ties);
        std::vector<double> y = random_vector(rng, n, ties);
        if (constant(x) || constant(y)) continue;
        std::vector<double> rx = oracle_ranks(x), ry = oracle_ranks(y);
        if (constant(rx) || constant(ry)) continue;

        CHECK(std::abs(stats::pearson(x, y) - oracle_pearson(x, y)) <= 1e-12);
        CHECK(std::abs(stats::spearman(x, y) - oracle_pearson(rx, ry)) <= 1e-12);

        // spearman is invariant under strictly increasing transforms
        std::vector<double> ex(n), lx(n);
        for (std::size_t i = 0; i < n; ++i) {
            ex[i] = std::exp(x[i] / 4.0);
            lx[i] = 2.0 * x[i] + 3.0;
        }
        CHECK(std::abs(stats::spearman(ex, y) - stats::spearman(x, y)) <= 1e-12);
        CHECK(std::abs(stats::spearman(lx, y) - stats::spearman(x, y)) <= 1e-12);
        ++checked;
    }
}

TEST_CASE("stats: spearman equals pearson when values are already ranks") {
    std::vector<double> x = {1, 2, 3, 4};
    std::vector<double> y = {2, 1, 4, 3};
    CHECK(stats::spearman(x, y) == doctest::Approx(stats::pearson(x, y)).epsilon(1e-12));
}
