#pragma once

#include <cstdint>
#include <unordered_map>

#include "isq/bitword.hpp"
#include "isq/gadgets.hpp"
#include "isq/instr.hpp"

namespace isq {

// Register assignment used by the multiplier generators for operand width n:
// the two factors arrive LSB-first in in:1.. and in:n+1.., the 2n-bit
// product leaves in out:1.., four 2n-bit scratch words T1..T4 live in the
// auxiliary bank above the carry register aux:1.
struct RegisterLayout {
    std::uint32_t n = 1;

    RegisterRef input1() const;               // in:1
    RegisterRef input2() const;               // in:n+1
    RegisterRef output() const;               // out:1
    RegisterRef temp(std::uint32_t i) const;  // aux:(2n(i-1)+2), i in 1..4
    RegisterRef carry() const;                // aux:1

    RegisterRef input_bit(std::uint32_t i, std::uint32_t j) const; // bit j of factor i
    RegisterRef temp_bit(std::uint32_t i, std::uint32_t j) const;  // bit j of T_i
};

RegisterLayout layout(std::uint32_t n);

enum class LmulVariant : std::uint8_t { lmul1 = 1, lmul2 = 2, lmul3 = 3, lmul4 = 4 };

// Schoolbook shift-and-add, one dedicated add/shift pair per multiplier
// bit, widths growing with the partial product. Forward-only; length
// 45n^2 + 30n + 1.
InstructionSequence gen_lmul1(std::uint32_t n);

// Variant that shifts the multiplier right each round so the tested bit is
// always position 0; the round body is the same for every bit. Forward-only;
// length 64n^2 + 16n + 1.
InstructionSequence gen_lmul2(std::uint32_t n);

// The same round body driven by a counter and one backward jump. Length
// 83n + 9*floor(log2 n) + 12.
InstructionSequence gen_lmul3(std::uint32_t n);

// Positions of interest inside gen_lmul3(n): the first instruction of the
// repeated round body (executed exactly n times) and the backward jump.
struct Lmul3Markers {
    std::uint64_t body_first_pc = 0;
    std::uint64_t backjump_pc = 0;
};

Lmul3Markers lmul3_markers(std::uint32_t n);

// n-bit x n-bit -> 2n-bit product via the chosen generator, run with a
// generous internally derived step budget.
BitWord multiply(LmulVariant variant, std::uint32_t n, const BitWord& a, const BitWord& b);

// Step budget that every terminating run of the variant stays under.
std::uint64_t multiply_step_budget(LmulVariant variant, std::uint32_t n);

// Sequence lengths computed by mirroring the generators' composition over
// measured part lengths, without materializing the quadratic-size variants.
// Memoizes per-width part measurements; not thread-safe.
class LengthModel {
public:
    std::uint64_t length(LmulVariant variant, std::uint64_t n);

private:
    std::uint64_t add_len(std::uint64_t width);
    std::uint64_t shl1_len(std::uint64_t width);
    std::uint64_t shr1_len(std::uint64_t width);
    std::uint64_t mov_len(std::uint64_t width);
    std::unordered_map<std::uint64_t, std::uint64_t> add_memo_;
    std::unordered_map<std::uint64_t, std::uint64_t> shl1_memo_;
    std::unordered_map<std::uint64_t, std::uint64_t> shr1_memo_;
    std::unordered_map<std::uint64_t, std::uint64_t> mov_memo_;
};

// Closed-form lengths for variants 1..3 (the formulas the
// generators are tested against). Variant 4 has no closed form here; use
// lmul4_length_fit().
std::uint64_t nominal_length(LmulVariant variant, std::uint64_t n);

} // namespace isq
