#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "isq/bitword.hpp"
#include "isq/instr.hpp"

namespace isq {

// One bank of Boolean registers per kind, addressed by positive number.
// Registers never written read as 0; writes grow the bank on demand.
class RegisterFile {
public:
    bool get(RegisterKind kind, std::uint64_t number) const;
    void set(RegisterKind kind, std::uint64_t number, bool value);

    // The word stored in `width` successive registers starting at `base`.
    BitWord read_word(RegisterKind kind, std::uint64_t base, std::size_t width) const;
    void write_word(RegisterKind kind, std::uint64_t base, const BitWord& word);

    // Raw bank contents; element i holds register number i + 1.
    const std::vector<std::uint8_t>& bank(RegisterKind kind) const;

    // Content equality: banks compare equal up to trailing zero registers.
    bool same_contents(const RegisterFile& other) const;

private:
    std::array<std::vector<std::uint8_t>, 3> banks_;
};

} // namespace isq
