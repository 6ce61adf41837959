#include "isq/machine.hpp"

#include "isq/indexed.hpp"

namespace isq {

std::string_view to_string(OutcomeKind kind) {
    switch (kind) {
    case OutcomeKind::terminated: return "terminated";
    case OutcomeKind::inaction: return "inaction";
    case OutcomeKind::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

enum class Transition : std::uint8_t { advanced, terminated, inaction };

bool exec_basic(const BasicInstruction& b, RegisterFile& regs, const ExecOptions& opts) {
    const RegisterRef& r = b.target;
    RegisterKind kind = r.kind;
    std::uint64_t number = r.base;
    if (r.indexed()) {
        if (!opts.allow_indexed)
            throw ConfigError("indexed register reference with the indexed extension disabled");
        EffectiveAddress ea = resolve_address(r, regs);
        kind = ea.kind;
        number = ea.number;
    }
    switch (b.command) {
    case Command::get:
        return regs.get(kind, number);
    case Command::set0:
        regs.set(kind, number, false);
        return false;
    case Command::set1:
        regs.set(kind, number, true);
        return true;
    }
    return false;
}

// Executes the instruction at state.pc, counting it as a step. On inaction,
// `inaction_pc` receives the position execution could not proceed from: the
// jump's own position for a distance-0 jump, otherwise the unreachable
// target (0 when the target lies before the first instruction).
Transition step_once(const InstructionSequence& seq, std::uint64_t& pc, std::uint64_t& steps,
                     RegisterFile& regs, const ExecOptions& opts, std::uint64_t& inaction_pc) {
    const Instruction& ins = seq.at(pc);
    ++steps;
    std::uint64_t next = 0;
    switch (ins.op) {
    case Opcode::halt:
        return Transition::terminated;
    case Opcode::fwd_jump:
        if (ins.distance == 0) {
            inaction_pc = pc;
            return Transition::inaction;
        }
        next = pc + ins.distance;
        break;
    case Opcode::bwd_jump:
        if (ins.distance == 0) {
            inaction_pc = pc;
            return Transition::inaction;
        }
        if (ins.distance >= pc) {
            inaction_pc = 0; // target lies before the first instruction
            return Transition::inaction;
        }
        next = pc - ins.distance;
        break;
    case Opcode::plain:
        exec_basic(ins.basic, regs, opts);
        next = pc + 1;
        break;
    case Opcode::pos_test:
        next = pc + (exec_basic(ins.basic, regs, opts) ? 1 : 2);
        break;
    case Opcode::neg_test:
        next = pc + (exec_basic(ins.basic, regs, opts) ? 2 : 1);
        break;
    }
    if (next > seq.length()) {
        inaction_pc = next;
        return Transition::inaction;
    }
    pc = next;
    return Transition::advanced;
}

} // namespace

std::variant<MachineState, ExecutionOutcome> step(const InstructionSequence& seq,
                                                  MachineState state, const ExecOptions& opts) {
    if (state.pc < 1 || state.pc > seq.length())
        throw ValidationError("machine position " + std::to_string(state.pc) +
                              " outside 1.." + std::to_string(seq.length()));
    std::uint64_t inaction_pc = 0;
    switch (step_once(seq, state.pc, state.steps, state.registers, opts, inaction_pc)) {
    case Transition::advanced:
        return state;
    case Transition::terminated:
        return ExecutionOutcome{OutcomeKind::terminated, state.steps, 0, 0,
                                std::move(state.registers)};
    case Transition::inaction:
        return ExecutionOutcome{OutcomeKind::inaction, state.steps, inaction_pc, 0,
                                std::move(state.registers)};
    }
    return state;
}

ExecutionOutcome run(const InstructionSequence& seq, const BitWord& inputs,
                     std::uint64_t budget, const ExecOptions& opts, PcHitCounter* counter) {
    if (budget == 0)
        throw ValidationError("step budget must be at least 1");
    RegisterFile regs;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        regs.set(RegisterKind::input, i + 1, inputs.bit(i));

    std::uint64_t pc = 1;
    std::uint64_t steps = 0;
    std::uint64_t inaction_pc = 0;
    while (true) {
        if (steps == budget)
            return ExecutionOutcome{OutcomeKind::budget_exceeded, steps, 0, budget, std::move(regs)};
        if (counter && pc == counter->pc)
            ++counter->hits;
        switch (step_once(seq, pc, steps, regs, opts, inaction_pc)) {
        case Transition::advanced:
            break;
        case Transition::terminated:
            return ExecutionOutcome{OutcomeKind::terminated, steps, 0, 0, std::move(regs)};
        case Transition::inaction:
            return ExecutionOutcome{OutcomeKind::inaction, steps, inaction_pc, 0, std::move(regs)};
        }
    }
}

ComputeError::ComputeError(const ExecutionOutcome& o)
    : Error("run did not terminate: " + std::string(to_string(o.kind))), outcome(o) {}

BitWord compute(const InstructionSequence& seq, const BitWord& inputs, std::size_t out_width,
                std::uint64_t budget, const ExecOptions& opts) {
    ExecutionOutcome outcome = run(seq, inputs, budget, opts);
    if (outcome.kind != OutcomeKind::terminated)
        throw ComputeError(outcome);
    return outcome.registers.read_word(RegisterKind::output, 1, out_width);
}

} // namespace isq
