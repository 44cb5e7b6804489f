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

#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace hqw {

struct Dataset {
    std::vector<std::vector<double>> features; // one row per sample
    std::vector<double> targets;

    std::size_t size() const { return features.size(); }
    std::size_t num_features() const {
        return features.empty() ? 0 : features.front().size();
    }
};

/// Two concentric circles: outer radius 1 (label 0), inner radius `factor`
/// (label 1), with isotropic Gaussian noise added to both coordinates.
/// Samples are evenly spaced in angle, then shuffled.
Dataset make_circles(int n_samples, double noise, double factor,
                     std::uint64_t seed);

/// Numeric CSV, last column is the target. A non-numeric first line is
/// treated as a header. Parse errors report the 1-based row number.
Dataset load_csv_dataset(const std::filesystem::path &path);

/// CSV with a header line of column names and numeric cells.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

CsvTable load_csv_table(const std::filesystem::path &path);

/// Builds a dataset from named columns; throws std::invalid_argument naming
/// any column that is missing.
Dataset select_columns(const CsvTable &table,
                       const std::vector<std::string> &feature_columns,
                       const std::string &target_column);

/// x' = (x - offset[f]) / scale[f] per feature.
struct NormStats {
    std::vector<double> offset;
    std::vector<double> scale;
};

/// offset = column min, scale = max - min (1 for constant columns, which
/// therefore map to all zeros).
NormStats fit_minmax(const Dataset &data);

/// offset = column mean, scale = population standard deviation (1 for
/// constant columns).
NormStats fit_zscore(const Dataset &data);

void apply_normalization(Dataset &data, const NormStats &stats);

/// Shuffled split; the test set gets round(test_fraction * size) samples.
std::pair<Dataset, Dataset> train_test_split(const Dataset &data,
                                             double test_fraction,
                                             std::uint64_t seed);

} // namespace hqw
