#pragma once

#include <cstdint>
#include <variant>

#include "isq/bitword.hpp"
#include "isq/errors.hpp"
#include "isq/instr.hpp"
#include "isq/registers.hpp"

namespace isq {

enum class OutcomeKind : std::uint8_t {
    terminated,      // a '!' was executed
    inaction,        // jump distance 0, control left [1, length], or fall-through
    budget_exceeded, // the step budget ran out before a terminal outcome
};

std::string_view to_string(OutcomeKind kind);

struct ExecutionOutcome {
    OutcomeKind kind = OutcomeKind::terminated;
    std::uint64_t steps = 0;          // executed primitive instructions
    std::uint64_t pc_at_failure = 0;  // inaction only: the position execution
                                      // could not proceed from (0 = before the
                                      // first instruction)
    std::uint64_t budget = 0;         // budget_exceeded only
    RegisterFile registers;
};

struct MachineState {
    std::uint64_t pc = 1; // 1-based position of the next instruction
    std::uint64_t steps = 0;
    RegisterFile registers;
};

struct ExecOptions {
    bool allow_indexed = true; // reject indexed references when false
};

// Optional probe: counts how often the instruction at `pc` is executed.
struct PcHitCounter {
    std::uint64_t pc = 0;
    std::uint64_t hits = 0;
};

// One transition. Either returns the successor state or, when the
// instruction terminates or strands execution, the terminal outcome.
std::variant<MachineState, ExecutionOutcome>
step(const InstructionSequence& seq, MachineState state, const ExecOptions& opts = {});

// Loads `inputs` into in:1..in:n (everything else 0), starts at position 1,
// and steps until a terminal outcome or until `budget` instructions have
// been executed. budget must be at least 1.
ExecutionOutcome run(const InstructionSequence& seq, const BitWord& inputs,
                     std::uint64_t budget, const ExecOptions& opts = {},
                     PcHitCounter* counter = nullptr);

// Raised by compute() when the run does not terminate; carries the outcome.
struct ComputeError : Error {
    ComputeError(const ExecutionOutcome& o);
    ExecutionOutcome outcome;
};

// run() followed by reading out:1..out:m; throws ComputeError unless the
// run terminated.
BitWord compute(const InstructionSequence& seq, const BitWord& inputs,
                std::size_t out_width, std::uint64_t budget,
                const ExecOptions& opts = {});

} // namespace isq
