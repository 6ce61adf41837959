#pragma once

#include <string>
#include <string_view>

#include "isq/instr.hpp"

namespace isq {

// Canonical text form, one instruction per ';'-separated token:
//
//   sequence := instr (';' instr)*
//   instr    := '+' basic | '-' basic | basic | '#' nat | '\' nat | '!'
//   basic    := ref '.' cmd
//   cmd      := 'get' | 'set:0' | 'set:1'
//   ref      := kind ':' posnat [ '(' 'aux' ':' posnat ':' posnat ')' ]
//   kind     := 'in' | 'out' | 'aux'
//
// Whitespace and newlines may appear around instructions. A '#' starts a
// jump only when a digit follows it immediately at an instruction position;
// a '#' followed by anything else starts a comment running to the end of the
// line, and must itself be preceded by whitespace, ';', or the start of the
// input. serialize() emits the canonical form: tokens joined by ';' with no
// whitespace.
std::string serialize(const Instruction& instr);
std::string serialize(const InstructionSequence& seq);

InstructionSequence parse(std::string_view text);

// Parses a single direct or indexed register reference ("in:3",
// "out:1(aux:9:2)"); used for command-line operands.
RegisterRef parse_register_ref(std::string_view text);

} // namespace isq
