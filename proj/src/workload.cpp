#include "slicebed/workload.hpp"

#include "slicebed/model.hpp"

#include <cmath>

namespace slicebed {

void Workload::validate() const {
    if (!std::isfinite(arrival_rate) || arrival_rate < 0.0) throw InputError("workload: lambda >= 0");
    if (!std::isfinite(mean_holding) || mean_holding <= 0.0) throw InputError("workload: mean_holding > 0");
    if (!std::isfinite(horizon) || horizon <= 0.0) throw InputError("workload: horizon > 0");
    if (!std::isfinite(sample_interval) || sample_interval < 0.0) throw InputError("workload: sample_interval >= 0");
}

std::vector<SliceTypeSpec> default_slice_types() {
    SliceTypeSpec critical;
    critical.name = "latency-critical";
    critical.weight = 0.3;
    critical.services_min = 1;
    critical.services_max = 1;
    critical.bandwidth_min = 1.0;
    critical.bandwidth_max = 3.0;
    critical.max_latency_min = 18.0;
    critical.max_latency_max = 26.0;
    critical.chain_min = 1;
    critical.chain_max = 2;
    critical.deny_count = 1;
    critical.cross_operator_prob = 0.4;

    SliceTypeSpec heavy;
    heavy.name = "bandwidth-heavy";
    heavy.weight = 0.3;
    heavy.services_min = 1;
    heavy.services_max = 2;
    heavy.bandwidth_min = 6.0;
    heavy.bandwidth_max = 12.0;
    heavy.max_latency_min = 60.0;
    heavy.max_latency_max = 90.0;
    heavy.chain_min = 1;
    heavy.chain_max = 3;
    heavy.cross_operator_prob = 0.5;

    SliceTypeSpec standard;
    standard.name = "standard";
    standard.weight = 0.4;
    standard.services_min = 1;
    standard.services_max = 2;
    standard.bandwidth_min = 2.0;
    standard.bandwidth_max = 5.0;
    standard.max_latency_min = 35.0;
    standard.max_latency_max = 50.0;
    standard.chain_min = 2;
    standard.chain_max = 3;
    standard.cross_operator_prob = 0.5;

    return {critical, heavy, standard};
}

}  // namespace slicebed
