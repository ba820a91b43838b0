#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arithmos {

// Allocation or memory-budget failure while building tables.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File read/write failure (cache, report output).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller-supplied hypothesis does not hold on the data; carries the first
// witness against it.
struct precondition_error : std::runtime_error {
    precondition_error(const std::string& what, std::uint64_t witness)
        : std::runtime_error(what), witness(witness) {}
    std::uint64_t witness;
};

} // namespace arithmos
