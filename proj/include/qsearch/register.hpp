#pragma once

#include <cstddef>

#include "qsearch/gate.hpp"

namespace qsearch {

/// Contiguous qubit range; qubit offset+i holds bit i of the register value.
struct RegisterSlice {
    Qubit offset = 0;
    std::size_t width = 0;

    Qubit qubit(std::size_t bit) const noexcept { return offset + bit; }
    Qubit end() const noexcept { return offset + width; }
    BasisIndex mask() const noexcept {
        return ((BasisIndex{1} << width) - 1) << offset;
    }
    BasisIndex extract(BasisIndex index) const noexcept {
        return (index >> offset) & ((BasisIndex{1} << width) - 1);
    }
    bool overlaps(const RegisterSlice &other) const noexcept {
        return offset < other.end() && other.offset < end();
    }

    friend bool operator==(const RegisterSlice &, const RegisterSlice &) = default;
};

} // namespace qsearch
