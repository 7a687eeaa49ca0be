#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "motune/importance.hpp"
#include "support/oracles.hpp"

using namespace motune;

namespace {

ParameterSpace continuous_space(int dims) {
    std::vector<ParameterSpec> params;
    for (int i = 1; i <= dims; ++i) {
        params.push_back({"x" + std::to_string(i), ContinuousSpec{0.0, 1.0, Scale::linear}});
    }
    return ParameterSpace(std::move(params));
}

/// 500 random rows where the first objective is exactly the first encoded
/// coordinate and the rest of the dimensions are noise.
ObservationDataset single_driver_dataset(std::uint64_t seed, std::size_t rows = 500) {
    const ParameterSpace space = continuous_space(6);
    ObservationDataset ds(space, {"f1"});
    Rng rng(seed);
    for (std::size_t i = 0; i < rows; ++i) {
        Observation obs;
        obs.config = sample_random(space, rng);
        obs.objectives = {std::get<double>(obs.config.values[0])};
        obs.iteration = static_cast<std::int64_t>(i);
        obs.algorithm = "random";
        ds.append(obs);
    }
    return ds;
}

ImportanceTable table_from(std::vector<std::string> names, std::vector<std::vector<double>> rows) {
    ImportanceTable table;
    table.param_names = std::move(names);
    table.objective_names.assign(rows.front().size(), "f");
    table.gini.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            table.gini(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    table.degenerate_objective.assign(rows.front().size(), false);
    return table;
}

} // namespace

TEST_SUITE("importance") {

TEST_CASE("the active dimension collects the importance mass") {
    const ObservationDataset ds = single_driver_dataset(300);
    const GiniImportance gi = gini_importance(ds, 0, ForestConfig{100, 8, 2, 42});
    CHECK(!gi.degenerate);
    CHECK(gi.importance[0] >= 0.8);
    double sum = 0.0;
    for (double v : gi.importance) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a constant objective falls back to uniform importances") {
    const ParameterSpace space = continuous_space(4);
    ObservationDataset ds(space, {"f1"});
    Rng rng(8);
    for (int i = 0; i < 25; ++i) {
        Observation obs;
        obs.config = sample_random(space, rng);
        obs.objectives = {3.25};
        ds.append(obs);
    }
    const GiniImportance gi = gini_importance(ds, 0);
    CHECK(gi.degenerate);
    for (double v : gi.importance) {
        CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("importances ignore dataset row order") {
    const ObservationDataset ds = single_driver_dataset(77, 60);
    ObservationDataset reversed(ds.space(), ds.objective_names());
    for (std::size_t i = ds.size(); i > 0; --i) {
        reversed.append(ds.row(i - 1));
    }
    const ForestConfig forest{50, 8, 2, 9};
    const GiniImportance a = gini_importance(ds, 0, forest);
    const GiniImportance b = gini_importance(reversed, 0, forest);
    REQUIRE(a.importance.size() == b.importance.size());
    for (std::size_t i = 0; i < a.importance.size(); ++i) {
        CHECK(a.importance[i] == b.importance[i]);
    }
}

TEST_CASE("importances are deterministic per seed") {
    const ObservationDataset ds = single_driver_dataset(55, 40);
    const GiniImportance a = gini_importance(ds, 0, ForestConfig{40, 8, 2, 3});
    const GiniImportance b = gini_importance(ds, 0, ForestConfig{40, 8, 2, 3});
    CHECK(a.importance == b.importance);
}

TEST_CASE("too little data is an error") {
    const ObservationDataset ds = single_driver_dataset(1, 19);
    CHECK_THROWS_WITH_AS(gini_importance(ds, 0), doctest::Contains("insufficient data"),
                         std::invalid_argument);
}

TEST_CASE("parameter ranks follow importance dominance") {
    const ImportanceTable incomparable =
        table_from({"a", "b", "c"}, {{0.5, 0.1}, {0.1, 0.5}, {0.4, 0.4}});
    CHECK(pareto_rank_parameters(incomparable) == std::vector<int>{1, 1, 1});

    const ImportanceTable layered =
        table_from({"a", "b", "c"}, {{0.6, 0.6}, {0.2, 0.2}, {0.2, 0.2}});
    CHECK(pareto_rank_parameters(layered) == std::vector<int>{1, 2, 2});

    const ImportanceTable single =
        table_from({"a", "b", "c"}, {{0.2}, {0.5}, {0.3}});
    CHECK(pareto_rank_parameters(single) == std::vector<int>{3, 1, 2});
}

TEST_CASE("rank-1 parameters equal the brute-force filter") {
    Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = static_cast<std::size_t>(rng.uniform_int(1, 12));
        std::vector<std::vector<double>> rows(d, std::vector<double>(2));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < d; ++i) {
            rows[i] = {rng.uniform01(), rng.uniform01()};
            names.push_back("p" + std::to_string(i));
        }
        const ImportanceTable table = table_from(names, rows);
        const std::vector<int> ranks = pareto_rank_parameters(table);
        const std::vector<std::size_t> oracle = oracles::pareto_filter(rows, true);
        std::vector<std::size_t> rank1;
        for (std::size_t i = 0; i < d; ++i) {
            if (ranks[i] == 1) {
                rank1.push_back(i);
            }
        }
        CHECK(rank1 == oracle);
    }
}

TEST_CASE("selection takes whole ranks then splits by max importance") {
    const ImportanceTable table =
        table_from({"a", "b", "c"}, {{0.5, 0.1}, {0.1, 0.5}, {0.05, 0.05}});
    const std::vector<int> ranks = pareto_rank_parameters(table);
    CHECK(select_top(table, ranks, 2) == std::vector<std::string>{"a", "b"});

    const ImportanceTable split = table_from({"a", "b"}, {{0.3, 0.1}, {0.2, 0.25}});
    const std::vector<int> split_ranks = pareto_rank_parameters(split);
    CHECK(split_ranks == std::vector<int>{1, 1});
    CHECK(select_top(split, split_ranks, 1) == std::vector<std::string>{"a"});
}

TEST_CASE("selecting everything returns a rank-sorted list") {
    const ImportanceTable table =
        table_from({"low", "high", "mid"}, {{0.1, 0.1}, {0.6, 0.6}, {0.3, 0.3}});
    const std::vector<int> ranks = pareto_rank_parameters(table);
    CHECK(select_top(table, ranks, 3) == std::vector<std::string>{"high", "mid", "low"});
    CHECK_THROWS_AS(select_top(table, ranks, 4), std::invalid_argument);
    CHECK_THROWS_AS(select_top(table, ranks, 0), std::invalid_argument);
}

TEST_CASE("selection is rank-prefix-closed on random tables") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = static_cast<std::size_t>(rng.uniform_int(2, 10));
        std::vector<std::vector<double>> rows(d, std::vector<double>(2));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < d; ++i) {
            rows[i] = {rng.uniform01(), rng.uniform01()};
            names.push_back("p" + std::to_string(i));
        }
        const ImportanceTable table = table_from(names, rows);
        const std::vector<int> ranks = pareto_rank_parameters(table);
        const auto top = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(d)));
        const std::vector<std::string> selected = select_top(table, ranks, top);

        int worst_selected = 0;
        for (const std::string& name : selected) {
            const auto idx = static_cast<std::size_t>(
                std::find(names.begin(), names.end(), name) - names.begin());
            worst_selected = std::max(worst_selected, ranks[idx]);
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (ranks[i] < worst_selected) {
                CHECK(std::find(selected.begin(), selected.end(), names[i]) != selected.end());
            }
        }
    }
}

TEST_CASE("rank_importance aggregates every objective") {
    const ParameterSpace space = continuous_space(3);
    ObservationDataset ds(space, {"f1", "f2"});
    Rng rng(12);
    for (int i = 0; i < 80; ++i) {
        Observation obs;
        obs.config = sample_random(space, rng);
        const double x1 = std::get<double>(obs.config.values[0]);
        const double x2 = std::get<double>(obs.config.values[1]);
        obs.objectives = {x1, 5.0 * x2};
        ds.append(obs);
    }
    const ImportanceTable table = rank_importance(ds, ForestConfig{60, 8, 2, 5});
    CHECK(table.gini.rows() == 3);
    CHECK(table.gini.cols() == 2);
    CHECK(table.gini(0, 0) > table.gini(1, 0)); // x1 drives f1
    CHECK(table.gini(1, 1) > table.gini(0, 1)); // x2 drives f2
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(table.gini.col(j).sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

} // TEST_SUITE
