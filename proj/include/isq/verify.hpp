#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "isq/bitword.hpp"
#include "isq/instr.hpp"
#include "isq/lmul.hpp"

namespace isq {

// Word-operation generators known to the differential verifier.
enum class GadgetKind : std::uint8_t {
    tstnz, tstne, dec, inc, shl, shr, add, set, mov, zpad,
};

std::string_view to_string(GadgetKind kind);
std::optional<GadgetKind> gadget_kind_from_string(std::string_view name);

struct VerifyOptions {
    bool exhaustive = true;
    std::uint64_t samples = 0; // sampled mode: number of drawn cases
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

struct Counterexample {
    BitWord input;        // the operand bits that exposed the mismatch
    std::string expected; // oracle value
    std::string actual;   // observed value
};

struct VerifyReport {
    bool pass = true;
    std::uint64_t cases = 0;
    std::optional<Counterexample> counterexample;
};

// Differential check of a generated multiplier against native integer
// multiplication, over all 2^(2n) factor pairs (ascending, lowest pair
// reported on failure) or a seeded sample. Exhaustive mode requires
// 2n <= 24. Runs are budgeted so that variants 1 and 2 must finish within
// their own length.
VerifyReport verify_lmul(LmulVariant variant, std::uint32_t n, const VerifyOptions& opts = {});

// Differential check of one word gadget against its arithmetic oracle.
//
// Probes are self-contained sequences built around the gadget and run with
// budget equal to their length (they are forward-only):
//   - value gadgets, spread operands: sources in input registers,
//     destination in output registers;
//   - value gadgets, in_place: operands copied to auxiliary registers, the
//     gadget applied with source = destination, result copied out;
//   - dec/inc spread probes first copy the source word over the
//     destination, matching the gadgets' written-bits contract;
//   - zpad probes load the destination word first, then zero-extend it;
//   - test gadgets (tstnz/tstne) are followed by exactly
//     out:1.set:1 ; out:2.set:1 ; ! so the landing position is visible in
//     out:1 (1 = the test held) while out:2 = 1 confirms a sane exit;
//   - set/tstne enumerate the baked-in constant as part of the case space
//     (a reported tstne case word carries the operand in its low half and
//     the constant in its high half).
//
// `m` is the shift distance for shl/shr/zpad and ignored otherwise.
VerifyReport verify_gadget(GadgetKind kind, std::uint32_t n, std::uint32_t m,
                           bool in_place, const VerifyOptions& opts = {});

} // namespace isq
