#include <cmath>
#include <stdexcept>
#include <vector>

#include "bwskit/rng.hpp"
#include "bwskit/stats.hpp"
#include "doctest.h"

using bwskit::fractional_ranks;
using bwskit::pearson;
using bwskit::spearman;

TEST_CASE("fractional ranks average tied positions") {
    const std::vector<double> values = {10, 20, 20, 30};
    CHECK(fractional_ranks(values) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    CHECK(fractional_ranks(values, true) == std::vector<double>{4.0, 2.5, 2.5, 1.0});

    const std::vector<double> constant = {7, 7, 7};
    CHECK(fractional_ranks(constant) == std::vector<double>{2.0, 2.0, 2.0});

    const std::vector<double> single = {3};
    CHECK(fractional_ranks(single) == std::vector<double>{1.0});
}

TEST_CASE("spearman matches hand-computed rank correlations") {
    // No ties: rho = 1 - 6*sum(d^2)/(n*(n^2-1)).
    const std::vector<double> x4 = {1, 2, 3, 4};
    const std::vector<double> y4 = {1, 3, 2, 4};
    CHECK(std::fabs(spearman(x4, y4) - 0.8) < 1e-12);

    const std::vector<double> x5 = {1, 2, 3, 4, 5};
    const std::vector<double> y5 = {2, 1, 4, 3, 5};
    CHECK(std::fabs(spearman(x5, y5) - 0.8) < 1e-12);

    const std::vector<double> reversed = {5, 4, 3, 2, 1};
    CHECK(spearman(x5, reversed) == -1.0);
}

TEST_CASE("pearson matches the closed form") {
    // x = (1,2,3), y = (1,2,4): sxy = 3, sxx = 2, syy = 14/3.
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {1, 2, 4};
    const double expected = 3.0 / std::sqrt(2.0 * (14.0 / 3.0));
    CHECK(std::fabs(pearson(x, y) - expected) < 1e-12);
    CHECK(pearson(x, y) == doctest::Approx(0.98198).epsilon(1e-5));
}

TEST_CASE("perfect linear relations return exactly +-1") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> up;
    std::vector<double> down;
    for (double v : x) {
        up.push_back(2.0 * v + 1.0);
        down.push_back(-0.5 * v + 3.0);
    }
    CHECK(pearson(x, up) == 1.0);
    CHECK(pearson(x, x) == 1.0);
    CHECK(pearson(x, down) == -1.0);
}

TEST_CASE("pearson is affine invariant") {
    bwskit::Rng rng(101);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x;
        std::vector<double> y;
        std::vector<double> xt;
        const double a = rng.uniform(0.1, 5.0);
        const double b = rng.uniform(-10.0, 10.0);
        for (int i = 0; i < 20; ++i) {
            x.push_back(rng.uniform(-1.0, 1.0));
            y.push_back(rng.uniform(-1.0, 1.0));
            xt.push_back(a * x.back() + b);
        }
        CHECK(std::fabs(pearson(x, y) - pearson(xt, y)) < 1e-12);
        std::vector<double> flipped;
        for (double v : xt) flipped.push_back(-v);
        CHECK(std::fabs(pearson(x, y) + pearson(flipped, y)) < 1e-12);
    }
}

TEST_CASE("spearman is invariant under strictly increasing maps") {
    bwskit::Rng rng(202);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x;
        std::vector<double> y;
        std::vector<double> xt;
        for (int i = 0; i < 15; ++i) {
            x.push_back(rng.uniform(-2.0, 2.0));
            y.push_back(rng.uniform(-2.0, 2.0));
            xt.push_back(std::exp(x.back()));  // order-preserving
        }
        CHECK(spearman(x, y) == spearman(xt, y));
    }
}

TEST_CASE("tied inputs follow the average-rank definition") {
    bwskit::Rng rng(303);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 25; ++i) {
            // Small integer support forces heavy ties.
            x.push_back(static_cast<double>(rng.uniform_below(5)));
            y.push_back(static_cast<double>(rng.uniform_below(5)));
        }
        double rho = 0.0;
        try {
            rho = spearman(x, y);
        } catch (const std::invalid_argument&) {
            continue;  // constant draw
        }
        const auto rx = fractional_ranks(x);
        const auto ry = fractional_ranks(y);
        CHECK(std::fabs(rho - pearson(rx, ry)) < 1e-12);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> shorter = {1, 2};
    const std::vector<double> constant = {4, 4, 4};
    const std::vector<double> one = {1};
    CHECK_THROWS_AS(pearson(x, shorter), std::invalid_argument);
    CHECK_THROWS_AS(pearson(one, one), std::invalid_argument);
    CHECK_THROWS_AS(pearson(x, constant), std::invalid_argument);
    CHECK_THROWS_AS(spearman(x, constant), std::invalid_argument);
    CHECK_THROWS_AS(spearman(x, shorter), std::invalid_argument);
}
