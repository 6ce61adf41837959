#include "isq/text.hpp"

#include <cctype>
#include <limits>

namespace isq {

namespace {

std::string serialize_ref(const RegisterRef& r) {
    std::string s{kind_token(r.kind)};
    s += ':';
    s += std::to_string(r.base);
    if (r.indexed()) {
        s += "(aux:";
        s += std::to_string(r.index->start);
        s += ':';
        s += std::to_string(r.index->width);
        s += ')';
    }
    return s;
}

std::string serialize_basic(const BasicInstruction& b) {
    std::string s = serialize_ref(b.target);
    switch (b.command) {
    case Command::get: s += ".get"; break;
    case Command::set0: s += ".set:0"; break;
    case Command::set1: s += ".set:1"; break;
    }
    return s;
}

// Cursor over the input with 1-based instruction counting for diagnostics.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    InstructionSequence read_sequence() {
        std::vector<Instruction> items;
        skip_blank();
        if (at_end())
            fail("empty sequence");
        items.push_back(read_instruction());
        while (true) {
            skip_blank();
            if (at_end())
                break;
            if (peek() != ';')
                fail(std::string("expected ';' before '") + peek() + "'");
            ++pos_;
            ++instruction_;
            skip_blank();
            if (at_end())
                fail("expected an instruction after ';'");
            items.push_back(read_instruction());
        }
        return InstructionSequence(std::move(items));
    }

    RegisterRef read_ref_only() {
        RegisterRef r = read_ref();
        if (!at_end())
            fail("trailing characters after register reference");
        return r;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(instruction_, message);
    }

    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
    }

    // Skips whitespace and '#'-to-end-of-line comments. A '#' immediately
    // followed by a digit is left in place (it is a jump token); a comment
    // '#' must sit at the start of the input or right after whitespace or
    // ';', otherwise it is left for the caller to reject.
    void skip_blank() {
        while (!at_end()) {
            if (is_space(peek())) {
                ++pos_;
                continue;
            }
            if (peek() == '#' && !std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
                bool at_boundary = pos_ == 0 || is_space(text_[pos_ - 1]) || text_[pos_ - 1] == ';';
                if (!at_boundary)
                    return;
                while (!at_end() && peek() != '\n')
                    ++pos_;
                continue;
            }
            return;
        }
    }

    std::uint64_t read_number(const char* what) {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected ") + what);
        std::uint64_t v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
                fail(std::string(what) + " out of range");
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }

    std::uint32_t read_register_number(const char* what) {
        std::uint64_t v = read_number(what);
        if (v == 0)
            fail(std::string(what) + " must be positive");
        if (v > 0x7fffffffu)
            fail(std::string(what) + " too large");
        return static_cast<std::uint32_t>(v);
    }

    bool try_consume(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    RegisterKind read_kind() {
        if (try_consume("in"))
            return RegisterKind::input;
        if (try_consume("out"))
            return RegisterKind::output;
        if (try_consume("aux"))
            return RegisterKind::aux;
        fail("expected register kind 'in', 'out', or 'aux'");
    }

    RegisterRef read_ref() {
        RegisterKind kind = read_kind();
        if (!try_consume(":"))
            fail("expected ':' after register kind");
        std::uint32_t base = read_register_number("register number");
        RegisterRef r{kind, base, std::nullopt};
        if (!at_end() && peek() == '(') {
            ++pos_;
            if (!try_consume("aux:"))
                fail("expected 'aux:' in index block");
            std::uint32_t start = read_register_number("index start");
            if (!try_consume(":"))
                fail("expected ':' between index start and width");
            std::uint32_t width = read_register_number("index width");
            if (!try_consume(")"))
                fail("expected ')' after index block");
            r.index = IndexBlock{start, width};
        }
        return r;
    }

    BasicInstruction read_basic() {
        RegisterRef r = read_ref();
        if (!try_consume("."))
            fail("expected '.' after register reference");
        if (try_consume("get"))
            return basic_get(r);
        if (try_consume("set:0"))
            return basic_set(r, false);
        if (try_consume("set:1"))
            return basic_set(r, true);
        fail("expected command 'get', 'set:0', or 'set:1'");
    }

    Instruction read_instruction() {
        char c = peek();
        if (c == '!') {
            ++pos_;
            return Instruction::halt();
        }
        if (c == '#') {
            ++pos_;
            return Instruction::fwd_jump(read_number("jump distance"));
        }
        if (c == '\\') {
            ++pos_;
            return Instruction::bwd_jump(read_number("jump distance"));
        }
        if (c == '+') {
            ++pos_;
            return Instruction::pos_test(read_basic());
        }
        if (c == '-') {
            ++pos_;
            return Instruction::neg_test(read_basic());
        }
        return Instruction::plain(read_basic());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t instruction_ = 1;
};

} // namespace

std::string serialize(const Instruction& instr) {
    switch (instr.op) {
    case Opcode::plain: return serialize_basic(instr.basic);
    case Opcode::pos_test: return "+" + serialize_basic(instr.basic);
    case Opcode::neg_test: return "-" + serialize_basic(instr.basic);
    case Opcode::fwd_jump: return "#" + std::to_string(instr.distance);
    case Opcode::bwd_jump: return "\\" + std::to_string(instr.distance);
    case Opcode::halt: return "!";
    }
    return "";
}

std::string serialize(const InstructionSequence& seq) {
    std::string out;
    bool first = true;
    for (const Instruction& ins : seq.items()) {
        if (!first)
            out += ';';
        out += serialize(ins);
        first = false;
    }
    return out;
}

InstructionSequence parse(std::string_view text) {
    return Reader(text).read_sequence();
}

RegisterRef parse_register_ref(std::string_view text) {
    return Reader(text).read_ref_only();
}

} // namespace isq
