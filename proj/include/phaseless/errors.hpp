#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phaseless {

// Shape or index mismatch.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of an operation (negative entry where
// a nonnegative one is required, parameter out of range, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Instance exceeds a documented size cap of an exhaustive routine.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A list that was required to be nonlopsided is lopsided. `index` is the
// position of the offending (dominant) entry; for matrix level failures
// `column` identifies the column.
struct LopsidedError : std::runtime_error {
    std::size_t index;
    std::size_t column;

    explicit LopsidedError(std::size_t idx, std::size_t col = static_cast<std::size_t>(-1))
        : std::runtime_error(col == static_cast<std::size_t>(-1)
                                 ? "lopsided list, dominant entry " + std::to_string(idx)
                                 : "lopsided column " + std::to_string(col) +
                                       ", dominant entry " + std::to_string(idx)),
          index(idx),
          column(col) {}
};

// Malformed input file or unparsable literal.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bound construction whose hypothesis fails on the given instance.
struct BoundInapplicable : std::runtime_error {
    std::size_t block;

    explicit BoundInapplicable(std::size_t blk)
        : std::runtime_error("patching block " + std::to_string(blk) +
                             " is not nonmaximal, bound inapplicable"),
          block(blk) {}
};

} // namespace phaseless
