#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "isq/bitword.hpp"
#include "isq/instr.hpp"
#include "isq/machine.hpp"

namespace isq {

// Verdict of the bounded halting decider.
struct HaltsReport {
    bool halts = false;
    std::uint64_t steps = 0; // meaningful when halts
    std::uint64_t bound = 0; // step bound that was applied
};

// Decides halting by exhausting the finite state space: a run longer than
// (length + 1) * 2^(writable registers) must have repeated a state. Inaction
// counts as not halting. Forward-only sequences are decided with bound
// length (the program counter only moves forward). Throws BoundError when
// the bound does not fit in 64 bits, ValidationError for sequences that
// write input registers.
HaltsReport decide_halts(const InstructionSequence& seq, const BitWord& inputs,
                         const ExecOptions& opts = {});

struct EquivWitness {
    BitWord input;
    std::string lhs; // outcome descriptor of the first sequence
    std::string rhs; // outcome descriptor of the second sequence
};

struct EquivReport {
    bool equivalent = true;
    std::uint64_t cases = 0;
    std::optional<EquivWitness> witness;
};

struct EquivOptions {
    bool exhaustive = true;
    std::uint64_t samples = 0; // sampled mode: number of drawn inputs
    std::uint64_t seed = 0;    // sampled mode: generator seed
    unsigned jobs = 1;
    ExecOptions exec;
};

// Compares the input/output behaviour of two sequences over n input bits
// and m output bits. Non-terminating outcomes compare as distinguished
// values ("inaction", "budget-exceeded"); all inaction outcomes are equated
// regardless of where they occur. Exhaustive mode enumerates all 2^n inputs
// in ascending value order and reports the lowest-valued counterexample;
// it requires n <= 24.
EquivReport io_equivalent(const InstructionSequence& x, const InstructionSequence& y,
                          unsigned n, unsigned m, std::uint64_t budget,
                          const EquivOptions& opts = {});

// "out=BITS" for terminated runs, otherwise the outcome name.
std::string outcome_descriptor(const InstructionSequence& seq, const BitWord& inputs,
                               std::size_t out_width, std::uint64_t budget,
                               const ExecOptions& opts = {});

} // namespace isq
