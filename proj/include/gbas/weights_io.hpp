#pragma once

#include "gbas/network.hpp"

#include <filesystem>

namespace gbas {

/// Loads a network from the JSON weight file and validates every
/// invariant. Parse failures, dimension mismatches and non-finite values
/// are reported with the offending layer index and field name.
Network load_network(const std::filesystem::path& path);

/// Writes the JSON weight file. Doubles are emitted with full round-trip
/// precision, so save followed by load is value-identical.
void save_network(const Network& net, const std::filesystem::path& path);

}  // namespace gbas
