#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "motune/evaluator.hpp"
#include "motune/nsga2.hpp"
#include "motune/pareto.hpp"
#include "support/oracles.hpp"

using namespace motune;

namespace {

std::vector<std::vector<double>> random_instance(Rng& rng, std::size_t n, std::size_t m) {
    std::vector<std::vector<double>> values(n, std::vector<double>(m));
    for (auto& row : values) {
        for (double& v : row) {
            v = rng.uniform(-5.0, 5.0);
        }
    }
    return values;
}

} // namespace

TEST_SUITE("nsga2") {

TEST_CASE("sort ranks simple instances") {
    CHECK(fast_non_dominated_sort({{1, 1}, {2, 2}}, Sense::maximize) == std::vector<int>{2, 1});
    CHECK(fast_non_dominated_sort({{1, 1}, {2, 2}, {1.5, 0.5}}, Sense::minimize) ==
          std::vector<int>{1, 2, 1});
    CHECK(fast_non_dominated_sort({{3, 3}, {3, 3}, {3, 3}}, Sense::minimize) ==
          std::vector<int>{1, 1, 1});
}

TEST_CASE("sort agrees with the peeling oracle on random instances") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 200));
        const auto m = static_cast<std::size_t>(rng.uniform_int(2, 3));
        const auto values = random_instance(rng, n, m);
        const bool maximize = trial % 2 == 0;
        const Sense sense = maximize ? Sense::maximize : Sense::minimize;
        CHECK(fast_non_dominated_sort(values, sense) == oracles::peel_ranks(values, maximize));
    }
}

TEST_CASE("crowding distance on tiny and collinear fronts") {
    CHECK(crowding_distance({{0, 1}, {1, 0}}) ==
          std::vector<double>(2, std::numeric_limits<double>::infinity()));

    const std::vector<double> collinear = crowding_distance({{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}});
    CHECK(std::isinf(collinear[0]));
    CHECK(collinear[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(collinear[2]));
}

TEST_CASE("crowding distance is symmetric under mirrored objectives") {
    const std::vector<std::vector<double>> front{{0.0, 1.0}, {0.2, 0.8}, {0.8, 0.2}, {1.0, 0.0}};
    const std::vector<double> distance = crowding_distance(front);
    CHECK(distance[1] == doctest::Approx(distance[2]).epsilon(1e-12));
}

TEST_CASE("zdt1 front quality at the acceptance budget") {
    Nsga2Config config;
    config.population = 100;
    config.generations = 250;
    Rng rng(2024);
    const auto evaluate = [](std::span<const double> u) {
        const std::vector<double> f = evaluate_builtin_unit("zdt1", u, 0, std::nullopt);
        return std::vector<double>{-f[0], -f[1]};
    };
    const std::vector<Individual> result = nsga2(evaluate, 8, config, rng);

    std::vector<std::array<double, 2>> front;
    for (const Individual& ind : result) {
        front.push_back({-ind.values[0], -ind.values[1]});
    }
    const double hv = hypervolume_2d(std::move(front), {1.2, 1.2});
    CHECK(hv >= 0.98 * 1.10667);
}

TEST_CASE("degenerate second objective reduces to scalar maximization") {
    Nsga2Config config;
    config.population = 40;
    config.generations = 50;
    Rng rng(5);
    const double target = 0.37;
    const auto evaluate = [&](std::span<const double> u) {
        const double d = u[0] - target;
        return std::vector<double>{-d * d, 1.0};
    };
    const std::vector<Individual> result = nsga2(evaluate, 1, config, rng);

    double best_genome = -1.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const Individual& ind : result) {
        if (ind.values[0] > best_value) {
            best_value = ind.values[0];
            best_genome = ind.genome[0];
        }
    }
    // grid-search oracle
    double grid_best = -std::numeric_limits<double>::infinity();
    double grid_arg = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double x = i / 10000.0;
        const double v = -(x - target) * (x - target);
        if (v > grid_best) {
            grid_best = v;
            grid_arg = x;
        }
    }
    CHECK(std::abs(best_genome - grid_arg) <= 1e-2);
}

TEST_CASE("same seed gives identical output") {
    Nsga2Config config;
    config.population = 20;
    config.generations = 10;
    const auto evaluate = [](std::span<const double> u) {
        return std::vector<double>{-u[0], u[0] - u[1]};
    };
    Rng a(7);
    Rng b(7);
    const auto ra = nsga2(evaluate, 3, config, a);
    const auto rb = nsga2(evaluate, 3, config, b);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].genome == rb[i].genome);
        CHECK(ra[i].values == rb[i].values);
    }
}

TEST_CASE("output is mutually non-dominated, bounded and within population size") {
    Nsga2Config config;
    config.population = 30;
    config.generations = 20;
    Rng rng(11);
    const auto evaluate = [](std::span<const double> u) {
        const std::vector<double> f = evaluate_builtin_unit("zdt1", u, 0, std::nullopt);
        return std::vector<double>{-f[0], -f[1]};
    };
    const std::vector<Individual> result = nsga2(evaluate, 4, config, rng);
    CHECK(!result.empty());
    CHECK(result.size() <= 30);
    for (const Individual& ind : result) {
        for (double gene : ind.genome) {
            CHECK(gene >= 0.0);
            CHECK(gene <= 1.0);
        }
    }
    for (std::size_t i = 0; i < result.size(); ++i) {
        for (std::size_t j = 0; j < result.size(); ++j) {
            if (i == j) {
                continue;
            }
            CHECK(!oracles::dominates(result[i].values, result[j].values, true));
        }
    }
}

TEST_CASE("non-finite objectives abort with the genome in the message") {
    Nsga2Config config;
    config.population = 8;
    config.generations = 2;
    Rng rng(3);
    const auto evaluate = [](std::span<const double> u) {
        return std::vector<double>{u[0] > 0.01 ? std::numeric_limits<double>::quiet_NaN() : 0.0};
    };
    CHECK_THROWS_WITH_AS(nsga2(evaluate, 2, config, rng), doctest::Contains("genome"),
                         std::runtime_error);
}

TEST_CASE("configuration preconditions") {
    Rng rng(1);
    const auto evaluate = [](std::span<const double>) { return std::vector<double>{0.0}; };
    Nsga2Config odd;
    odd.population = 7;
    CHECK_THROWS_AS(nsga2(evaluate, 1, odd, rng), std::invalid_argument);
    Nsga2Config tiny;
    tiny.population = 2;
    CHECK_THROWS_AS(nsga2(evaluate, 1, tiny, rng), std::invalid_argument);
    CHECK_THROWS_AS(nsga2(evaluate, 0, Nsga2Config{}, rng), std::invalid_argument);
}

} // TEST_SUITE
