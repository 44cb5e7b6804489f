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

#include "hqw/opt_result.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hqw {

void write_result_json(const OptResult &result, const std::filesystem::path &path) {
    nlohmann::json j;
    j["best_energy"] = result.best_energy;
    j["best_x"] = nlohmann::json::array();
    for (auto bit : result.best_x)
        j["best_x"].push_back(static_cast<int>(bit));
    j["trace"] = nlohmann::json::array();
    for (const TracePoint &p : result.trace)
        j["trace"].push_back({{"iter", p.iter},
                              {"cost", p.cost},
                              {"energy", p.energy},
                              {"elapsed_ms", p.elapsed_ms}});
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_result_json: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

void write_trace_csv(const OptResult &result, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_trace_csv: cannot open " + path.string());
    out << "iter,cost,energy,elapsed_ms\n";
    out.precision(17);
    for (const TracePoint &p : result.trace)
        out << p.iter << ',' << p.cost << ',' << p.energy << ',' << p.elapsed_ms
            << '\n';
}

} // namespace hqw
