// Copyright 2026 The hqw authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqw/dataset.hpp"

using namespace hqw;

namespace {

std::filesystem::path write_temp(const std::string &name,
                                 const std::string &content) {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("circles are balanced and sit on two radii without noise") {
    const Dataset data = make_circles(200, 0.0, 0.5, 3);
    REQUIRE(data.size() == 200);
    REQUIRE(data.num_features() == 2);
    int inner = 0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double r = std::hypot(data.features[k][0], data.features[k][1]);
        if (data.targets[k] == 1.0) {
            ++inner;
            CHECK(r == doctest::Approx(0.5).epsilon(1e-9));
        } else {
            CHECK(data.targets[k] == 0.0);
            CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    CHECK(inner == 100);
}

TEST_CASE("noisy circles stay balanced and are seed deterministic") {
    const Dataset a = make_circles(100, 0.1, 0.5, 7);
    const Dataset b = make_circles(100, 0.1, 0.5, 7);
    int label_one = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        label_one += a.targets[k] == 1.0 ? 1 : 0;
    }
    CHECK(label_one == 50);
    CHECK(a.features == b.features);
    CHECK(a.targets == b.targets);
    // A different seed rearranges the samples.
    const Dataset c = make_circles(100, 0.1, 0.5, 8);
    CHECK(a.features != c.features);
}

TEST_CASE("min-max statistics map columns onto the unit interval") {
    Dataset data;
    data.features = {{0.0, 10.0}, {5.0, 20.0}, {10.0, 40.0}};
    data.targets = {0.0, 1.0, 0.0};
    const NormStats stats = fit_minmax(data);
    REQUIRE(stats.offset.size() == 2);
    CHECK(stats.offset[0] == 0.0);
    CHECK(stats.scale[0] == 10.0);
    CHECK(stats.offset[1] == 10.0);
    CHECK(stats.scale[1] == 30.0);

    apply_normalization(data, stats);
    CHECK(data.features[0][0] == 0.0);
    CHECK(data.features[1][0] == doctest::Approx(0.5));
    CHECK(data.features[2][0] == 1.0);
    CHECK(data.features[1][1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("constant columns normalize to zero instead of dividing by zero") {
    Dataset data;
    data.features = {{4.0, 1.0}, {4.0, 2.0}};
    data.targets = {0.0, 1.0};
    const NormStats stats = fit_minmax(data);
    CHECK(stats.scale[0] == 1.0);
    apply_normalization(data, stats);
    CHECK(data.features[0][0] == 0.0);
    CHECK(data.features[1][0] == 0.0);
}

TEST_CASE("z-score statistics use population moments") {
    Dataset data;
    data.features = {{1.0}, {3.0}, {5.0}};
    data.targets = {0.0, 0.0, 0.0};
    const NormStats stats = fit_zscore(data);
    CHECK(stats.offset[0] == doctest::Approx(3.0));
    CHECK(stats.scale[0] == doctest::Approx(std::sqrt(8.0 / 3.0)));
}

TEST_CASE("split sizes follow the requested fraction") {
    const Dataset data = make_circles(100, 0.05, 0.5, 1);
    const auto [train, test] = train_test_split(data, 0.2, 9);
    CHECK(train.size() == 80);
    CHECK(test.size() == 20);
    // Deterministic for a fixed seed.
    const auto [train2, test2] = train_test_split(data, 0.2, 9);
    CHECK(train.features == train2.features);
    CHECK(test.targets == test2.targets);
}

TEST_CASE("csv loader takes the last column as the target") {
    const auto path = write_temp("hqw_dataset_basic.csv",
                                 "a,b,y\n1,2,3\n4,5,6\n");
    const Dataset data = load_csv_dataset(path);
    std::filesystem::remove(path);
    REQUIRE(data.size() == 2);
    CHECK(data.num_features() == 2);
    CHECK(data.features[1][0] == 4.0);
    CHECK(data.targets[1] == 6.0);
}

TEST_CASE("csv parse errors report the 1-based file row") {
    const auto path = write_temp("hqw_dataset_bad.csv", "a,b\n1,2\n1,oops\n");
    try {
        load_csv_dataset(path);
        FAIL("expected an exception");
    } catch (const std::runtime_error &e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    try {
        load_csv_table(path);
        FAIL("expected an exception");
    } catch (const std::runtime_error &e) {
        // The table loader also quotes the offending cell.
        CHECK(std::string(e.what()).find("'oops'") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("csv tables keep column names for selection") {
    const auto path = write_temp("hqw_dataset_table.csv",
                                 "x1, x2 ,y\n1,2,3\n4,5,6\n7,8,9\n");
    const CsvTable table = load_csv_table(path);
    std::filesystem::remove(path);
    REQUIRE(table.columns.size() == 3);
    CHECK(table.columns[1] == "x2"); // cells are trimmed
    REQUIRE(table.rows.size() == 3);

    const Dataset data = select_columns(table, {"x2", "x1"}, "y");
    REQUIRE(data.size() == 3);
    // Feature order follows the request, not the file.
    CHECK(data.features[0][0] == 2.0);
    CHECK(data.features[0][1] == 1.0);
    CHECK(data.targets[2] == 9.0);
}

TEST_CASE("selecting a missing column names it in the error") {
    CsvTable table;
    table.columns = {"a", "b"};
    table.rows = {{1.0, 2.0}};
    try {
        select_columns(table, {"a"}, "price");
        FAIL("expected an exception");
    } catch (const std::invalid_argument &e) {
        CHECK(std::string(e.what()).find("price") != std::string::npos);
    }
}

TEST_CASE("ragged csv rows are rejected") {
    const auto path = write_temp("hqw_dataset_ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_csv_table(path), std::runtime_error);
    std::filesystem::remove(path);
}
