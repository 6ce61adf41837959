#pragma once

#include <cstdint>

#include "isq/bitword.hpp"
#include "isq/gadgets.hpp"
#include "isq/instr.hpp"
#include "isq/registers.hpp"

namespace isq {

// Result of resolving a register reference against the current register
// contents: the effective register number is base + value of the index
// word (LSB-first), recomputed at every execution of the instruction.
struct EffectiveAddress {
    RegisterKind kind = RegisterKind::aux;
    std::uint64_t number = 1;
};

EffectiveAddress resolve_address(const RegisterRef& ref, const RegisterFile& registers);

// Increment by one, mod 2^w. Mirror image of gen_dec (roles of 0 and 1
// exchanged): scans upward clearing set bits while the carry runs, sets the
// first clear bit and exits. Length 5w + 3; the same written-bits caveat as
// gen_dec applies to disjoint destinations.
InstructionSequence gen_inc(std::uint32_t w, const WordRef& src, const WordRef& dst);

// Test on not-equal against a constant: control leaves at the first
// following instruction iff the source word differs from `constant`.
// Length 3w + 1. Writes nothing. With an all-zero constant the emitted
// sequence is identical to gen_tstnz(w, src).
InstructionSequence gen_tstne(std::uint32_t w, const WordRef& src, const BitWord& constant);

// Schoolbook multiplier whose per-bit work is folded into loops over
// indexed references, giving a length logarithmic in n: one outer loop over
// the multiplier bits (counter width floor(log2 n) + 1) and inner per-bit
// loops at fixed operand width 2n (position counter width
// floor(log2(2n-1)) + 1). Requires the executor's indexed extension.
InstructionSequence gen_lmul4(std::uint32_t n);

// len(gen_lmul4(n)) = a*(floor(log2 n)+1) + b*(floor(log2(2n-1))+1) + raw
// exactly, for every n >= 1. In regressor form:
// len = a*floor(log2 n) + b*floor(log2(2n-1)) + c with c = a + b + raw.
struct AffineLogFit {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;

    std::uint64_t eval(std::uint64_t n) const;
};

// Fitted from generated lengths at n = 2, 3, 4.
AffineLogFit lmul4_length_fit();

} // namespace isq
