#include "isq/instr.hpp"

#include <algorithm>

namespace isq {

std::string_view kind_token(RegisterKind k) {
    switch (k) {
    case RegisterKind::input: return "in";
    case RegisterKind::output: return "out";
    case RegisterKind::aux: return "aux";
    }
    return "?";
}

std::optional<RegisterKind> kind_from_token(std::string_view token) {
    if (token == "in") return RegisterKind::input;
    if (token == "out") return RegisterKind::output;
    if (token == "aux") return RegisterKind::aux;
    return std::nullopt;
}

namespace {

RegisterRef make_ref(RegisterKind kind, std::uint32_t number) {
    if (number == 0)
        throw ValidationError("register numbers are positive");
    return RegisterRef{kind, number, std::nullopt};
}

} // namespace

RegisterRef RegisterRef::in(std::uint32_t number) { return make_ref(RegisterKind::input, number); }
RegisterRef RegisterRef::out(std::uint32_t number) { return make_ref(RegisterKind::output, number); }
RegisterRef RegisterRef::aux(std::uint32_t number) { return make_ref(RegisterKind::aux, number); }

RegisterRef RegisterRef::offset(std::uint32_t j) const {
    return RegisterRef{kind, base + j, std::nullopt};
}

RegisterRef RegisterRef::with_index(std::uint32_t start, std::uint32_t width) const {
    if (start == 0 || width == 0)
        throw ValidationError("index block start and width are positive");
    return RegisterRef{kind, base, IndexBlock{start, width}};
}

BasicInstruction basic_get(const RegisterRef& r) { return BasicInstruction{r, Command::get}; }

BasicInstruction basic_set(const RegisterRef& r, bool bit) {
    return BasicInstruction{r, bit ? Command::set1 : Command::set0};
}

Instruction Instruction::plain(BasicInstruction b) { return Instruction{Opcode::plain, b, 0}; }
Instruction Instruction::pos_test(BasicInstruction b) { return Instruction{Opcode::pos_test, b, 0}; }
Instruction Instruction::neg_test(BasicInstruction b) { return Instruction{Opcode::neg_test, b, 0}; }
Instruction Instruction::fwd_jump(std::uint64_t distance) {
    return Instruction{Opcode::fwd_jump, BasicInstruction{}, distance};
}
Instruction Instruction::bwd_jump(std::uint64_t distance) {
    return Instruction{Opcode::bwd_jump, BasicInstruction{}, distance};
}
Instruction Instruction::halt() { return Instruction{Opcode::halt, BasicInstruction{}, 0}; }

bool Instruction::operator==(const Instruction& other) const {
    if (op != other.op)
        return false;
    if (has_basic())
        return basic == other.basic;
    if (is_jump())
        return distance == other.distance;
    return true; // halt
}

std::string_view to_string(FeatureLevel level) {
    switch (level) {
    case FeatureLevel::forward_only: return "forward-only";
    case FeatureLevel::with_backward_jumps: return "with-backward-jumps";
    case FeatureLevel::with_indexed_addressing: return "with-indexed-addressing";
    }
    return "?";
}

InstructionSequence::InstructionSequence(std::vector<Instruction> items)
    : items_(std::move(items)) {
    if (items_.empty())
        throw ValidationError("instruction sequences are nonempty");
}

const Instruction& InstructionSequence::at(std::uint64_t position) const {
    if (position < 1 || position > items_.size())
        throw ValidationError("position " + std::to_string(position) + " out of range 1.." +
                              std::to_string(items_.size()));
    return items_[position - 1];
}

FeatureLevel InstructionSequence::feature_level() const {
    FeatureLevel level = FeatureLevel::forward_only;
    for (const Instruction& ins : items_) {
        if (ins.has_basic() && ins.basic.target.indexed())
            return FeatureLevel::with_indexed_addressing;
        if (ins.op == Opcode::bwd_jump)
            level = FeatureLevel::with_backward_jumps;
    }
    return level;
}

InstructionSequence concat(const InstructionSequence& x, const InstructionSequence& y) {
    std::vector<Instruction> items;
    items.reserve(x.length() + y.length());
    items.insert(items.end(), x.items().begin(), x.items().end());
    items.insert(items.end(), y.items().begin(), y.items().end());
    return InstructionSequence(std::move(items));
}

InstructionSequence power(const InstructionSequence& x, std::uint64_t n) {
    if (n == 0)
        throw ValidationError("power requires n >= 1");
    std::vector<Instruction> items;
    items.reserve(x.length() * n);
    for (std::uint64_t i = 0; i < n; ++i)
        items.insert(items.end(), x.items().begin(), x.items().end());
    return InstructionSequence(std::move(items));
}

RequiredRegisters required_registers(const InstructionSequence& seq) {
    RequiredRegisters req;
    auto bump = [&](RegisterKind kind, std::uint64_t number) {
        switch (kind) {
        case RegisterKind::input: req.max_in = std::max(req.max_in, number); break;
        case RegisterKind::output: req.max_out = std::max(req.max_out, number); break;
        case RegisterKind::aux: req.max_aux = std::max(req.max_aux, number); break;
        }
    };
    for (const Instruction& ins : seq.items()) {
        if (!ins.has_basic())
            continue;
        const RegisterRef& r = ins.basic.target;
        if (!r.indexed()) {
            bump(r.kind, r.base);
            continue;
        }
        const IndexBlock& ix = *r.index;
        if (ix.width >= 63)
            throw ValidationError("index width " + std::to_string(ix.width) + " too large");
        bump(r.kind, r.base + ((std::uint64_t{1} << ix.width) - 1));
        bump(RegisterKind::aux, std::uint64_t{ix.start} + ix.width - 1);
    }
    return req;
}

std::optional<std::string> well_formedness_violation(const InstructionSequence& seq) {
    for (std::uint64_t pos = 1; pos <= seq.length(); ++pos) {
        const Instruction& ins = seq.at(pos);
        if (!ins.has_basic())
            continue;
        const BasicInstruction& b = ins.basic;
        if (b.target.kind == RegisterKind::input && b.command != Command::get)
            return "instruction " + std::to_string(pos) + ": set on an input register";
        if (b.target.kind == RegisterKind::output && b.command == Command::get)
            return "instruction " + std::to_string(pos) + ": get on an output register";
    }
    return std::nullopt;
}

} // namespace isq
