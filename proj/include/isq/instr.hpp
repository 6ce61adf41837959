#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isq/errors.hpp"

namespace isq {

// The three kinds of Boolean registers. Input registers carry the argument
// bits when execution starts, output registers carry the result bits when
// execution terminates, auxiliary registers are scratch space.
enum class RegisterKind : std::uint8_t { input = 0, output = 1, aux = 2 };

std::string_view kind_token(RegisterKind k); // "in" / "out" / "aux"
std::optional<RegisterKind> kind_from_token(std::string_view token);

// Index word attached to a register reference: the contents of `width`
// successive auxiliary registers starting at aux:`start`, read LSB-first,
// are added to the base number when the reference is resolved.
struct IndexBlock {
    std::uint32_t start = 1;
    std::uint32_t width = 1;

    bool operator==(const IndexBlock&) const = default;
};

// Name of one Boolean register, either direct (kind:base) or indexed
// (kind:base plus an auxiliary index word). Base numbers start at 1.
struct RegisterRef {
    RegisterKind kind = RegisterKind::aux;
    std::uint32_t base = 1;
    std::optional<IndexBlock> index;

    static RegisterRef in(std::uint32_t number);
    static RegisterRef out(std::uint32_t number);
    static RegisterRef aux(std::uint32_t number);

    // Same kind, base shifted up by `j`, direct.
    RegisterRef offset(std::uint32_t j) const;

    // Copy of this reference with an index block attached.
    RegisterRef with_index(std::uint32_t start, std::uint32_t width) const;

    bool indexed() const { return index.has_value(); }

    bool operator==(const RegisterRef&) const = default;
};

// A register command: read the content, or overwrite it with a constant.
// get replies the register content; set:b replies b.
enum class Command : std::uint8_t { get, set0, set1 };

struct BasicInstruction {
    RegisterRef target;
    Command command = Command::get;

    bool operator==(const BasicInstruction&) const = default;
};

BasicInstruction basic_get(const RegisterRef& r);
BasicInstruction basic_set(const RegisterRef& r, bool bit);

enum class Opcode : std::uint8_t {
    plain,     // execute the basic instruction, continue with the next one
    pos_test,  // execute; skip the next instruction when the reply is 0
    neg_test,  // execute; skip the next instruction when the reply is 1
    fwd_jump,  // continue with the distance-th next instruction
    bwd_jump,  // continue with the distance-th previous instruction
    halt,      // terminate
};

// One primitive instruction. `basic` is meaningful for the three basic
// opcodes, `distance` for the two jumps. A jump distance of 0 is
// representable and means guaranteed inaction at run time.
struct Instruction {
    Opcode op = Opcode::halt;
    BasicInstruction basic;
    std::uint64_t distance = 0;

    static Instruction plain(BasicInstruction b);
    static Instruction pos_test(BasicInstruction b);
    static Instruction neg_test(BasicInstruction b);
    static Instruction fwd_jump(std::uint64_t distance);
    static Instruction bwd_jump(std::uint64_t distance);
    static Instruction halt();

    bool has_basic() const {
        return op == Opcode::plain || op == Opcode::pos_test || op == Opcode::neg_test;
    }
    bool is_jump() const { return op == Opcode::fwd_jump || op == Opcode::bwd_jump; }

    bool operator==(const Instruction& other) const;
};

// The smallest instruction dialect a sequence fits in. Ordered: a level
// covers everything the previous ones do.
enum class FeatureLevel : std::uint8_t {
    forward_only = 0,
    with_backward_jumps = 1,
    with_indexed_addressing = 2,
};

std::string_view to_string(FeatureLevel level);

// A nonempty, immutable, 1-indexed sequence of primitive instructions.
// Values are freely shareable across threads once constructed.
class InstructionSequence {
public:
    explicit InstructionSequence(std::vector<Instruction> items);

    std::uint64_t length() const { return items_.size(); }

    // 1-based access, bounds-checked.
    const Instruction& at(std::uint64_t position) const;

    std::span<const Instruction> items() const { return items_; }

    FeatureLevel feature_level() const;

    bool operator==(const InstructionSequence&) const = default;

private:
    std::vector<Instruction> items_;
};

InstructionSequence concat(const InstructionSequence& x, const InstructionSequence& y);

// x concatenated with itself n times; n must be at least 1.
InstructionSequence power(const InstructionSequence& x, std::uint64_t n);

// Smallest register-file sizes that cover every reference in the sequence.
// A direct reference contributes its base; an indexed reference contributes
// base + (2^width - 1) to its own kind and start + width - 1 to aux.
struct RequiredRegisters {
    std::uint64_t max_in = 0;
    std::uint64_t max_out = 0;
    std::uint64_t max_aux = 0;
};

RequiredRegisters required_registers(const InstructionSequence& seq);

// The basic-instruction set contains no set on input registers and no get on
// output registers. Returns a description of the first violation, or nullopt.
std::optional<std::string> well_formedness_violation(const InstructionSequence& seq);

} // namespace isq
