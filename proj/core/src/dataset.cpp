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

#include "hqw/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hqw/rng.hpp"

namespace hqw {

Dataset make_circles(int n_samples, double noise, double factor,
                     std::uint64_t seed) {
    if (n_samples < 2)
        throw std::invalid_argument("make_circles: need at least 2 samples");
    if (noise < 0.0)
        throw std::invalid_argument("make_circles: noise must be >= 0");
    if (!(factor > 0.0) || factor >= 1.0)
        throw std::invalid_argument("make_circles: factor must be in (0, 1)");

    const int n_outer = n_samples / 2;
    const int n_inner = n_samples - n_outer;
    Rng rng(seed);
    Dataset data;
    data.features.reserve(n_samples);
    data.targets.reserve(n_samples);
    for (int k = 0; k < n_outer; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n_outer;
        data.features.push_back({std::cos(a), std::sin(a)});
        data.targets.push_back(0.0);
    }
    for (int k = 0; k < n_inner; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n_inner;
        data.features.push_back({factor * std::cos(a), factor * std::sin(a)});
        data.targets.push_back(1.0);
    }
    if (noise > 0.0)
        for (auto &row : data.features)
            for (double &v : row)
                v += rng.normal(0.0, noise);

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    Dataset shuffled;
    shuffled.features.reserve(data.size());
    shuffled.targets.reserve(data.size());
    for (std::size_t idx : order) {
        shuffled.features.push_back(std::move(data.features[idx]));
        shuffled.targets.push_back(data.targets[idx]);
    }
    return shuffled;
}

Dataset load_csv_dataset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_csv_dataset: cannot open " + path.string());
    Dataset data;
    std::string line;
    std::size_t row = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() ||
            line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(cell, &pos);
                while (pos < cell.size() &&
                       std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size())
                    throw std::invalid_argument(cell);
                values.push_back(v);
            } catch (const std::exception &) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (row == 1)
                continue; // header line
            throw std::runtime_error("load_csv_dataset: " + path.string() +
                                     ": non-numeric value at row " +
                                     std::to_string(row));
        }
        if (values.size() < 2)
            throw std::runtime_error("load_csv_dataset: " + path.string() +
                                     ": row " + std::to_string(row) +
                                     " needs at least one feature and a target");
        if (width == 0)
            width = values.size();
        else if (values.size() != width)
            throw std::runtime_error("load_csv_dataset: " + path.string() +
                                     ": row " + std::to_string(row) + " has " +
                                     std::to_string(values.size()) +
                                     " columns, expected " +
                                     std::to_string(width));
        data.targets.push_back(values.back());
        values.pop_back();
        data.features.push_back(std::move(values));
    }
    if (data.size() == 0)
        throw std::runtime_error("load_csv_dataset: " + path.string() +
                                 " contains no data rows");
    return data;
}

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_cells(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(trim(cell));
    return cells;
}

} // namespace

CsvTable load_csv_table(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_csv_table: cannot open " + path.string());
    CsvTable table;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() ||
            line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::vector<std::string> cells = split_cells(line);
        if (table.columns.empty()) {
            table.columns = std::move(cells);
            continue;
        }
        if (cells.size() != table.columns.size())
            throw std::runtime_error("load_csv_table: " + path.string() +
                                     ": row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) +
                                     " columns, expected " +
                                     std::to_string(table.columns.size()));
        std::vector<double> values;
        values.reserve(cells.size());
        for (const std::string &cell : cells) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception &) {
                pos = std::string::npos;
            }
            if (pos != cell.size())
                throw std::runtime_error("load_csv_table: " + path.string() +
                                         ": non-numeric value '" + cell +
                                         "' at row " + std::to_string(row));
            values.push_back(v);
        }
        table.rows.push_back(std::move(values));
    }
    if (table.columns.empty())
        throw std::runtime_error("load_csv_table: " + path.string() +
                                 " has no header line");
    if (table.rows.empty())
        throw std::runtime_error("load_csv_table: " + path.string() +
                                 " contains no data rows");
    return table;
}

Dataset select_columns(const CsvTable &table,
                       const std::vector<std::string> &feature_columns,
                       const std::string &target_column) {
    auto column_index = [&table](const std::string &name) {
        const auto it =
            std::find(table.columns.begin(), table.columns.end(), name);
        if (it == table.columns.end())
            throw std::invalid_argument("select_columns: column '" + name +
                                        "' not found");
        return static_cast<std::size_t>(it - table.columns.begin());
    };
    if (feature_columns.empty())
        throw std::invalid_argument("select_columns: no feature columns");
    std::vector<std::size_t> feat_idx;
    feat_idx.reserve(feature_columns.size());
    for (const std::string &name : feature_columns)
        feat_idx.push_back(column_index(name));
    const std::size_t target_idx = column_index(target_column);
    Dataset data;
    data.features.reserve(table.rows.size());
    data.targets.reserve(table.rows.size());
    for (const auto &row : table.rows) {
        std::vector<double> feats;
        feats.reserve(feat_idx.size());
        for (std::size_t f : feat_idx)
            feats.push_back(row[f]);
        data.features.push_back(std::move(feats));
        data.targets.push_back(row[target_idx]);
    }
    return data;
}

NormStats fit_minmax(const Dataset &data) {
    if (data.size() == 0)
        throw std::invalid_argument("fit_minmax: empty dataset");
    const std::size_t nf = data.num_features();
    NormStats stats;
    stats.offset.assign(nf, 0.0);
    stats.scale.assign(nf, 1.0);
    for (std::size_t f = 0; f < nf; ++f) {
        double lo = data.features[0][f];
        double hi = lo;
        for (const auto &row : data.features) {
            lo = std::min(lo, row[f]);
            hi = std::max(hi, row[f]);
        }
        stats.offset[f] = lo;
        stats.scale[f] = hi > lo ? hi - lo : 1.0;
    }
    return stats;
}

NormStats fit_zscore(const Dataset &data) {
    if (data.size() == 0)
        throw std::invalid_argument("fit_zscore: empty dataset");
    const std::size_t nf = data.num_features();
    const double n = static_cast<double>(data.size());
    NormStats stats;
    stats.offset.assign(nf, 0.0);
    stats.scale.assign(nf, 1.0);
    for (std::size_t f = 0; f < nf; ++f) {
        double mean = 0.0;
        for (const auto &row : data.features)
            mean += row[f];
        mean /= n;
        double var = 0.0;
        for (const auto &row : data.features) {
            const double d = row[f] - mean;
            var += d * d;
        }
        var /= n;
        stats.offset[f] = mean;
        stats.scale[f] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return stats;
}

void apply_normalization(Dataset &data, const NormStats &stats) {
    if (stats.offset.size() != data.num_features() ||
        stats.scale.size() != data.num_features())
        throw std::invalid_argument("apply_normalization: stats size mismatch");
    for (auto &row : data.features)
        for (std::size_t f = 0; f < row.size(); ++f)
            row[f] = (row[f] - stats.offset[f]) / stats.scale[f];
}

std::pair<Dataset, Dataset> train_test_split(const Dataset &data,
                                             double test_fraction,
                                             std::uint64_t seed) {
    if (!(test_fraction >= 0.0) || test_fraction >= 1.0)
        throw std::invalid_argument(
            "train_test_split: test_fraction must be in [0, 1)");
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);
    const std::size_t n_test = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(data.size())));
    Dataset train, test;
    for (std::size_t k = 0; k < order.size(); ++k) {
        Dataset &dst = k < n_test ? test : train;
        dst.features.push_back(data.features[order[k]]);
        dst.targets.push_back(data.targets[order[k]]);
    }
    return {train, test};
}

} // namespace hqw
