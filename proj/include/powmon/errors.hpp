#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace powmon {

/// Bad arguments at an API boundary (rejected before any work happens).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value that should have been structurally valid is not (e.g. a mask
/// that is not closed under addition where a subgroup is required).
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// A configured bound (group order, carrier size, search budget) was hit.
struct resource_error : std::runtime_error {
    std::uint64_t nodes_visited = 0;

    explicit resource_error(const std::string& what, std::uint64_t nodes = 0)
        : std::runtime_error(what), nodes_visited(nodes) {}
};

}  // namespace powmon
