#pragma once

#include <cstdint>
#include <span>

#include "isq/bitword.hpp"
#include "isq/instr.hpp"

namespace isq {

// An n-bit word held in n successive registers of one kind, least
// significant bit at `ref`. `ref` must be a direct reference.
struct WordRef {
    RegisterRef ref;
    std::uint32_t width = 1;
};

inline WordRef word(const RegisterRef& ref, std::uint32_t width) { return {ref, width}; }

enum class Overlap : std::uint8_t { disjoint, fully_coinciding, partially_coinciding };

// Classification of two equal-width words. Words of different kinds never
// overlap; same-kind words partially coincide when their bases differ by a
// nonzero amount smaller than the width.
Overlap classify_overlap(const WordRef& a, const WordRef& b);

// A destination may be disjoint from or fully coincide with each source;
// partial coincidence is rejected. Sources must be input or auxiliary
// words, destinations auxiliary or output words. Throws ValidationError.
void validate_operands(const WordRef& dst, std::span<const WordRef> srcs);

// The auxiliary register holding the ripple carry used by the adder.
RegisterRef carry_register();

// --- word-operation generators -------------------------------------------
//
// Each generator returns a forward-only sequence with an exact closed-form
// length. When a generated sequence is embedded in a larger one, execution
// falls out at the first instruction after it, except for the two test
// gadgets, whose whole result is where control lands: at the first
// following instruction when the test holds, at the second when it fails.

// Test on nonzero: control leaves at the first following instruction iff
// the source word is nonzero. Length 3n + 1. Writes nothing.
InstructionSequence gen_tstnz(std::uint32_t n, const WordRef& src);

// Decrement by one, mod 2^n. Length 5n + 3. Writes destination bits from
// position 0 up to the lowest set source bit; higher destination bits are
// untouched, so a disjoint destination must already mirror the source word
// there (automatic when source and destination fully coincide).
InstructionSequence gen_dec(std::uint32_t n, const WordRef& src, const WordRef& dst);

// Shift left / right by m positions (0 < m <= n; m == n degenerates to a
// zero fill). Vacated positions are zeroed. Length 4n - 3m. Safe when
// source and destination fully coincide: gen_shl writes descending from the
// top, gen_shr ascending from the bottom.
InstructionSequence gen_shl(std::uint32_t n, std::uint32_t m, const WordRef& src, const WordRef& dst);
InstructionSequence gen_shr(std::uint32_t n, std::uint32_t m, const WordRef& src, const WordRef& dst);

// Addition mod 2^n with ripple carry through aux:1. Length 26n + 1. The
// destination may fully coincide with either source; no operand word may
// contain aux:1. The carry register is scratch afterwards.
InstructionSequence gen_add(std::uint32_t n, const WordRef& src1, const WordRef& src2,
                            const WordRef& dst);

// Store a constant word. Length = word size.
InstructionSequence gen_set(const BitWord& constant, const WordRef& dst);

// Copy a word. Length 4n.
InstructionSequence gen_mov(std::uint32_t n, const WordRef& src, const WordRef& dst);

// Zero-extend the m-bit word at dst to n bits by clearing positions
// m..n-1 (0 < m < n). Length n - m.
InstructionSequence gen_zpad(std::uint32_t n, std::uint32_t m, const WordRef& dst);

} // namespace isq
