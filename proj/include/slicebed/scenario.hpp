#pragma once

#include "slicebed/model.hpp"
#include "slicebed/pricing.hpp"
#include "slicebed/workload.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace slicebed {

/// Everything a scenario file describes.
struct Scenario {
    PhysicalNetwork net;
    TrustRelation trust;
    std::vector<SliceTypeSpec> slice_types;
    Workload workload;
    PricingPolicy pricing;
    EmbeddingOptions options;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Request files reference nodes and VNFs of a loaded network.
SliceRequest parse_request(const PhysicalNetwork& net, const nlohmann::json& doc);
SliceRequest load_request(const PhysicalNetwork& net, const std::filesystem::path& path);
nlohmann::json request_to_json(const SliceRequest& slice);

nlohmann::json embedding_to_json(const Embedding& emb);
Embedding embedding_from_json(const nlohmann::json& doc);

/// Reads and parses a JSON file; throws InputError on I/O or syntax failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace slicebed
