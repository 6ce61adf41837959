#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isq/errors.hpp"

namespace isq {

// A finite bit string. Position 0 is the least significant bit, so
// value() == sum of bit(i) * 2^i. The ASCII form used on every textual
// boundary is LSB-first as well: the leftmost character is bit 0.
class BitWord {
public:
    BitWord() = default;

    // n copies of the same bit.
    static BitWord repeat(bool bit, std::size_t n);

    // The low `width` bits of `value` (value is reduced mod 2^width).
    static BitWord from_value(std::uint64_t value, std::size_t width);

    // Reads an LSB-first string of '0'/'1' characters. Throws ValidationError
    // on any other character.
    static BitWord from_string(std::string_view ascii);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool bit(std::size_t i) const;
    void set_bit(std::size_t i, bool value);
    void push_back(bool value) { bits_.push_back(value ? 1 : 0); }

    // Natural-number interpretation; defined for words up to 64 bits.
    std::uint64_t value() const;

    std::string str() const;

    bool operator==(const BitWord&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

// a followed by b (a occupies the low positions).
BitWord concat(const BitWord& a, const BitWord& b);

} // namespace isq
