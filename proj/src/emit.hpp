#pragma once

// Internal code-emission helpers shared by the generators. Not installed.

#include <cstdint>
#include <utility>
#include <vector>

#include "isq/instr.hpp"

namespace isq::detail {

// Append-only instruction buffer. Generators measure sub-sequences with
// size() and derive every jump distance from those measurements.
class SeqBuilder {
public:
    void put(Instruction ins) { items_.push_back(std::move(ins)); }

    void append(const InstructionSequence& seq) {
        items_.insert(items_.end(), seq.items().begin(), seq.items().end());
    }

    void append(SeqBuilder&& other) {
        items_.insert(items_.end(), std::make_move_iterator(other.items_.begin()),
                      std::make_move_iterator(other.items_.end()));
        other.items_.clear();
    }

    std::uint64_t size() const { return items_.size(); }

    InstructionSequence take() && { return InstructionSequence(std::move(items_)); }

private:
    std::vector<Instruction> items_;
};

// dst := src, one bit, 4 instructions. A set source bit routes through the
// #2 to the trailing set:1; a clear one lands on +dst.set:0, whose 0-reply
// skips that same set:1. Both paths leave at the instruction after the
// block.
void emit_copy_bit(SeqBuilder& b, const RegisterRef& src, const RegisterRef& dst);

// Full adder over one bit position: d := s1 + s2 + carry (mod 2), carry :=
// majority. 26 instructions; every path reads before it writes, so d may
// name the same register as s1 or s2. Control leaves at the instruction
// after the block.
void emit_full_adder_bit(SeqBuilder& b, const RegisterRef& s1, const RegisterRef& s2,
                         const RegisterRef& d, const RegisterRef& carry);

} // namespace isq::detail
