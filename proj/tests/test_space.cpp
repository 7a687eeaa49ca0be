#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>
#include <set>

#include "motune/space.hpp"

using namespace motune;

namespace {

ParameterSpace small_mixed_space() {
    std::vector<ParameterSpec> params;
    params.push_back({"color", CategoricalSpec{{"red", "green", "blue", "gray"}}});
    params.push_back({"count", IntegerSpec{0, 100}});
    params.push_back({"rate", ContinuousSpec{1.0, 100.0, Scale::log}});
    params.push_back({"mix", ContinuousSpec{-2.0, 3.0, Scale::linear}});
    return ParameterSpace(std::move(params));
}

} // namespace

TEST_SUITE("space") {

TEST_CASE("validate reports duplicate names") {
    ParameterSpace space({{"batchsize", IntegerSpec{1, 8}}, {"batchsize", IntegerSpec{1, 4}}});
    const auto violations = validate(space);
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().find("duplicate name") != std::string::npos);
}

TEST_CASE("validate requires min < max") {
    ParameterSpace space({{"x", ContinuousSpec{1.0, 1.0, Scale::linear}}});
    const auto violations = validate(space);
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().find("min < max required") != std::string::npos);
}

TEST_CASE("validate catches log scale with nonpositive min and tiny categoricals") {
    ParameterSpace space({{"lr", ContinuousSpec{0.0, 1.0, Scale::log}},
                          {"only", CategoricalSpec{{"a"}}}});
    const auto violations = validate(space);
    CHECK(violations.size() == 2);
}

TEST_CASE("the shipped cross-layer space is well formed") {
    const ParameterSpace space = load_space(std::string(MOTUNE_SOURCE_DIR) + "/spaces/tf-crosslayer.json");
    CHECK(space.dimension() == 15);
    CHECK(validate(space).empty());
}

TEST_CASE("shipped spark spaces are well formed") {
    for (const char* name : {"/spaces/spark-lr-svm.json", "/spaces/spark-dt.json"}) {
        const ParameterSpace space = load_space(std::string(MOTUNE_SOURCE_DIR) + name);
        CHECK(validate(space).empty());
        CHECK(space.dimension() >= 14);
    }
}

TEST_CASE("encode maps categorical to bin midpoints") {
    ParameterSpace space({{"c", CategoricalSpec{{"a", "b", "c", "d"}}}});
    Configuration config{{std::string("c")}}; // index 2 of 4
    CHECK(encode(space, config)[0] == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("encode maps integer and log-continuous affinely") {
    ParameterSpace space({{"n", IntegerSpec{0, 100}}, {"r", ContinuousSpec{1.0, 100.0, Scale::log}}});
    Configuration config{{std::int64_t{0}, 10.0}};
    const UnitVector u = encode(space, config);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("encode rejects out-of-domain values naming the parameter") {
    ParameterSpace space = small_mixed_space();
    Configuration config{{std::string("purple"), std::int64_t{5}, 2.0, 0.0}};
    CHECK_THROWS_WITH_AS(encode(space, config), doctest::Contains("color"), std::invalid_argument);
    config.values[0] = std::string("red");
    config.values[1] = std::int64_t{101};
    CHECK_THROWS_WITH_AS(encode(space, config), doctest::Contains("count"), std::invalid_argument);
}

TEST_CASE("decode picks categorical bins by floor and clamps the boundary") {
    ParameterSpace space({{"c", CategoricalSpec{{"a", "b", "c", "d"}}}});
    CHECK(std::get<std::string>(decode(space, std::vector<double>{0.6}).values[0]) == "c");
    CHECK(std::get<std::string>(decode(space, std::vector<double>{1.0}).values[0]) == "d");
}

TEST_CASE("decode rounds integers") {
    ParameterSpace space({{"n", IntegerSpec{32, 128}}});
    CHECK(std::get<std::int64_t>(decode(space, std::vector<double>{0.5}).values[0]) == 80);
}

TEST_CASE("decode is total on [0,1]^D") {
    const ParameterSpace space = small_mixed_space();
    for (double v : {0.0, 1.0, 0.5, 1e-300}) {
        const Configuration c = decode(space, std::vector<double>(space.dimension(), v));
        CHECK_NOTHROW(encode(space, c));
    }
}

TEST_CASE("round trip is exact for grids and 1e-12-relative for reals") {
    const ParameterSpace space = small_mixed_space();
    Rng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const Configuration c = sample_random(space, rng);
        const Configuration back = decode(space, encode(space, c));
        CHECK(std::get<std::string>(back.values[0]) == std::get<std::string>(c.values[0]));
        CHECK(std::get<std::int64_t>(back.values[1]) == std::get<std::int64_t>(c.values[1]));
        for (std::size_t i : {std::size_t{2}, std::size_t{3}}) {
            const double orig = std::get<double>(c.values[i]);
            const double round = std::get<double>(back.values[i]);
            CHECK(std::abs(round - orig) <= 1e-12 * std::max(1.0, std::abs(orig)));
        }
    }
}

TEST_CASE("encode output stays inside the unit cube") {
    const ParameterSpace space = small_mixed_space();
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const UnitVector u = encode(space, sample_random(space, rng));
        for (double coord : u) {
            CHECK(coord >= 0.0);
            CHECK(coord <= 1.0);
        }
    }
}

TEST_CASE("sample_random is deterministic per seed and varies across draws") {
    const ParameterSpace space = small_mixed_space();
    Rng a(42);
    Rng b(42);
    CHECK(sample_random(space, a) == sample_random(space, b));
    Rng c(17);
    const Configuration first = sample_random(space, c);
    const Configuration second = sample_random(space, c);
    CHECK(std::get<double>(first.values[3]) != std::get<double>(second.values[3]));
}

TEST_CASE("uniform sampling hits each category at the expected rate") {
    ParameterSpace space({{"c", CategoricalSpec{{"a", "b", "c", "d"}}}});
    Rng rng(9);
    std::map<std::string, int> counts;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        counts[std::get<std::string>(sample_random(space, rng).values[0])]++;
    }
    for (const char* cat : {"a", "b", "c", "d"}) {
        const double freq = counts[cat] / static_cast<double>(n);
        CHECK(freq >= 0.22);
        CHECK(freq <= 0.28);
    }
}

TEST_CASE("log_cardinality sums per-kind logs") {
    ParameterSpace one_cat({{"c", CategoricalSpec{{"a", "b", "c", "d"}}}});
    CHECK(log_cardinality(one_cat) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    ParameterSpace two_cats({{"c", CategoricalSpec{{"a", "b", "c", "d"}}},
                             {"f", CategoricalSpec{{"1", "2", "3", "4", "5", "6", "7", "8", "9",
                                                    "10", "11", "12", "13", "14"}}}});
    CHECK(log_cardinality(two_cats) == doctest::Approx(std::log(56.0)).epsilon(1e-12));

    ParameterSpace cont({{"x", ContinuousSpec{0.0, 1.0, Scale::linear}}});
    CHECK(log_cardinality(cont) == doctest::Approx(std::log(100.0)).epsilon(1e-12));
    CHECK(log_cardinality(cont, 1000) == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
}

TEST_CASE("log_cardinality is additive over concatenation") {
    const ParameterSpace space = small_mixed_space();
    std::vector<ParameterSpec> head(space.params().begin(), space.params().begin() + 2);
    std::vector<ParameterSpec> tail(space.params().begin() + 2, space.params().end());
    const double whole = log_cardinality(space);
    const double parts = log_cardinality(ParameterSpace(head)) + log_cardinality(ParameterSpace(tail));
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
}

TEST_CASE("space JSON round trips") {
    const ParameterSpace space = small_mixed_space();
    CHECK(parse_space_json(space_to_json(space)) == space);
}

TEST_CASE("space JSON rejects unknown kinds") {
    CHECK_THROWS_AS(parse_space_json(R"({"params":[{"name":"x","kind":"weird"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_space_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space_json(R"({"nope":[]})"), std::invalid_argument);
}

} // TEST_SUITE
