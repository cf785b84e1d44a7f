#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "spincomm/network.hpp"

namespace spincomm {

// Parses a network description (schema in docs/network-format.md). The full
// form lists edges explicitly; the chain shorthand gives kind, couplings and
// control-set sizes. `seed` overrides any "seed" key used by random_couplings.
SpinNetwork build_network(const nlohmann::json& description,
                          std::optional<unsigned long long> seed = std::nullopt);

SpinNetwork load_network(const std::filesystem::path& path,
                         std::optional<unsigned long long> seed = std::nullopt);

// Always emits the full (explicit-edge) form.
nlohmann::json network_to_json(const SpinNetwork& network);

}  // namespace spincomm
