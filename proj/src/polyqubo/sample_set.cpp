// Copyright 2026 The polyqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "polyqubo/error.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

std::string bits_to_string(const BitString& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
    return s;
}

const SampleRecord& SampleSet::best() const {
    if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "sample set is empty");
    return records.front();
}

double SampleSet::hit_fraction() const {
    if (records.empty() || total_reads == 0) return 0.0;
    const double lowest = min_energy();
    double magnitude = 0.0;
    for (const auto& r : records) magnitude = std::max(magnitude, std::abs(r.energy));
    const double tol = 1e-9 * magnitude;
    std::uint64_t hits = 0;
    for (const auto& r : records) {
        if (r.energy <= lowest + tol) hits += r.count;
    }
    return static_cast<double>(hits) / static_cast<double>(total_reads);
}

std::string SampleSet::to_json() const {
    nlohmann::ordered_json doc;
    doc["solver"] = solver;
    doc["total_reads"] = total_reads;
    doc["rng_seed"] = rng_seed;
    if (schedule) {
        doc["schedule"] = {{"kind", "geometric"},
                           {"t_hot", schedule->t_hot},
                           {"t_cold", schedule->t_cold},
                           {"sweeps", schedule->sweeps}};
    }
    doc["hit_fraction"] = hit_fraction();
    auto& recs = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json rec;
        rec["state"] = bits_to_string(r.bits);
        rec["energy"] = r.energy;
        rec["count"] = r.count;
        recs.push_back(std::move(rec));
    }
    return doc.dump(2);
}

}  // namespace polyqubo
