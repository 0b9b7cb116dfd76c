#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slicebed {

/// Template from which concrete slice requests of one type are drawn.
struct SliceTypeSpec {
    std::string name;
    double weight = 1.0;
    int services_min = 1;
    int services_max = 1;
    double bandwidth_min = 1.0;
    double bandwidth_max = 1.0;
    double max_latency_min = 10.0;
    double max_latency_max = 10.0;
    int chain_min = 1;
    int chain_max = 3;
    int deny_count = 0;           // operators (never the origin) put on the deny-list
    int allow_count = 0;          // extra operators put on the allow-list
    double cross_operator_prob = 0.5; // probability the sink lives outside the origin operator
};

struct Workload {
    double arrival_rate = 1.0;  // slices per time unit
    double mean_holding = 1.0;  // time units
    double horizon = 100.0;     // time units
    std::uint64_t seed = 1;
    bool deterministic_holding = false;
    double sample_interval = 0.0; // 0 disables the time series

    void validate() const;
};

std::vector<SliceTypeSpec> default_slice_types();

}  // namespace slicebed
