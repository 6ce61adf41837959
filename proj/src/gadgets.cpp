#include "isq/gadgets.hpp"

#include <string>

#include "emit.hpp"

namespace isq {

using detail::SeqBuilder;

namespace {

std::string word_desc(const WordRef& w) {
    return std::string(kind_token(w.ref.kind)) + ":" + std::to_string(w.ref.base) + " width " +
           std::to_string(w.width);
}

void require_direct(const WordRef& w) {
    if (w.ref.indexed())
        throw ValidationError("word operands are direct register references");
    if (w.width == 0)
        throw ValidationError("word width must be at least 1");
}

bool contains_register(const WordRef& w, const RegisterRef& r) {
    return w.ref.kind == r.kind && w.ref.base <= r.base && r.base < w.ref.base + w.width;
}

void require_source_kind(const WordRef& w) {
    if (w.ref.kind == RegisterKind::output)
        throw ValidationError("source word " + word_desc(w) + " must be input or auxiliary");
}

void require_dest_kind(const WordRef& w) {
    if (w.ref.kind == RegisterKind::input)
        throw ValidationError("destination word " + word_desc(w) + " must be auxiliary or output");
}

} // namespace

Overlap classify_overlap(const WordRef& a, const WordRef& b) {
    if (a.width != b.width)
        throw ValidationError("overlap classification is defined for equal-width words");
    if (a.ref.kind != b.ref.kind)
        return Overlap::disjoint;
    if (a.ref.base == b.ref.base)
        return Overlap::fully_coinciding;
    std::uint32_t delta = a.ref.base > b.ref.base ? a.ref.base - b.ref.base : b.ref.base - a.ref.base;
    return delta < a.width ? Overlap::partially_coinciding : Overlap::disjoint;
}

void validate_operands(const WordRef& dst, std::span<const WordRef> srcs) {
    require_direct(dst);
    require_dest_kind(dst);
    for (const WordRef& src : srcs) {
        require_direct(src);
        require_source_kind(src);
        if (classify_overlap(dst, src) == Overlap::partially_coinciding)
            throw ValidationError("partially coinciding words: destination " + word_desc(dst) +
                                  " vs source " + word_desc(src));
    }
}

RegisterRef carry_register() { return RegisterRef::aux(1); }

namespace detail {

void emit_copy_bit(SeqBuilder& b, const RegisterRef& src, const RegisterRef& dst) {
    b.put(Instruction::pos_test(basic_get(src)));
    b.put(Instruction::fwd_jump(2));
    b.put(Instruction::pos_test(basic_set(dst, false)));
    b.put(Instruction::plain(basic_set(dst, true)));
}

void emit_full_adder_bit(SeqBuilder& b, const RegisterRef& s1, const RegisterRef& s2,
                         const RegisterRef& d, const RegisterRef& carry) {
    // Three carry tests suffice: the s1/s2 tests merge the (0,1) and (1,0)
    // cases. Relative layout (jump targets in brackets):
    //   1  +s1.get          5  #6  -> 11       9  #7  -> 16      13 #12 -> 25
    //   2  #4  -> 6         6  +s2.get        10  #12 -> 22      14 +c.get
    //   3  +s2.get          7  #7  -> 14      11  +c.get         15 #4  -> 19
    //   4  #4  -> 8         8  +c.get         12  #10 -> 22      16..26 write tails
    // Tails: 16 {d:=0,c:=1}, 19 {d:=1,c:=1}, 22 {d:=1,c:=0}, 25 {d:=0}.
    // Every tail exits at relative position 27, the instruction after the
    // block.
    b.put(Instruction::pos_test(basic_get(s1)));
    b.put(Instruction::fwd_jump(4));
    b.put(Instruction::pos_test(basic_get(s2)));
    b.put(Instruction::fwd_jump(4));
    b.put(Instruction::fwd_jump(6));
    b.put(Instruction::pos_test(basic_get(s2)));
    b.put(Instruction::fwd_jump(7));
    b.put(Instruction::pos_test(basic_get(carry)));
    b.put(Instruction::fwd_jump(7));
    b.put(Instruction::fwd_jump(12));
    b.put(Instruction::pos_test(basic_get(carry)));
    b.put(Instruction::fwd_jump(10));
    b.put(Instruction::fwd_jump(12));
    b.put(Instruction::pos_test(basic_get(carry)));
    b.put(Instruction::fwd_jump(4));
    b.put(Instruction::plain(basic_set(d, false)));   // sum 2: d 0, carry 1
    b.put(Instruction::plain(basic_set(carry, true)));
    b.put(Instruction::fwd_jump(9));
    b.put(Instruction::plain(basic_set(d, true)));    // sum 3: d 1, carry 1
    b.put(Instruction::plain(basic_set(carry, true)));
    b.put(Instruction::fwd_jump(6));
    b.put(Instruction::plain(basic_set(d, true)));    // sum 1: d 1, carry 0
    b.put(Instruction::plain(basic_set(carry, false)));
    b.put(Instruction::fwd_jump(3));
    b.put(Instruction::plain(basic_set(d, false)));   // sum 0: d 0, carry untouched
    b.put(Instruction::fwd_jump(1));
}

} // namespace detail

InstructionSequence gen_tstnz(std::uint32_t n, const WordRef& src) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    require_direct(src);
    require_source_kind(src);
    if (src.width != n)
        throw ValidationError("source width does not match the gadget width");
    SeqBuilder b;
    // One block per bit. A set bit enters the #3 cascade, which strides over
    // the later blocks' #3 slots and leaves at the first instruction after
    // the gadget; a clear bit walks on to the next block. After n clear bits
    // the trailing #2 leaves at the second following instruction.
    for (std::uint32_t i = 0; i < n; ++i) {
        b.put(Instruction::pos_test(basic_get(src.ref.offset(i))));
        b.put(Instruction::fwd_jump(3));
        b.put(Instruction::fwd_jump(1));
    }
    b.put(Instruction::fwd_jump(2));
    return std::move(b).take();
}

InstructionSequence gen_dec(std::uint32_t n, const WordRef& src, const WordRef& dst) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    if (src.width != n || dst.width != n)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src};
    validate_operands(dst, srcs);
    SeqBuilder b;
    // Borrow scan from the LSB: clear bits become 1, the lowest set bit
    // becomes 0, then the #5 cascade strides over the later blocks and
    // leaves the gadget. Three trailing #1s make the all-clear path exit at
    // the same place the cascade does.
    for (std::uint32_t i = 0; i < n; ++i) {
        b.put(Instruction::neg_test(basic_get(src.ref.offset(i))));
        b.put(Instruction::fwd_jump(3));
        b.put(Instruction::plain(basic_set(dst.ref.offset(i), false)));
        b.put(Instruction::fwd_jump(5));
        b.put(Instruction::plain(basic_set(dst.ref.offset(i), true)));
    }
    b.put(Instruction::fwd_jump(1));
    b.put(Instruction::fwd_jump(1));
    b.put(Instruction::fwd_jump(1));
    return std::move(b).take();
}

namespace {

void check_shift(std::uint32_t n, std::uint32_t m) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    if (m == 0 || m > n)
        throw ValidationError("shift distance " + std::to_string(m) + " out of range for width " +
                              std::to_string(n));
}

} // namespace

InstructionSequence gen_shl(std::uint32_t n, std::uint32_t m, const WordRef& src,
                            const WordRef& dst) {
    check_shift(n, m);
    if (src.width != n || dst.width != n)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src};
    validate_operands(dst, srcs);
    SeqBuilder b;
    // Copy descending from the top so an in-place shift never reads a
    // position it has already written, then zero the vacated low positions.
    for (std::uint32_t i = 0; i + m < n; ++i)
        detail::emit_copy_bit(b, src.ref.offset(n - 1 - m - i), dst.ref.offset(n - 1 - i));
    for (std::uint32_t i = 0; i < m; ++i)
        b.put(Instruction::plain(basic_set(dst.ref.offset(m - 1 - i), false)));
    return std::move(b).take();
}

InstructionSequence gen_shr(std::uint32_t n, std::uint32_t m, const WordRef& src,
                            const WordRef& dst) {
    check_shift(n, m);
    if (src.width != n || dst.width != n)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src};
    validate_operands(dst, srcs);
    SeqBuilder b;
    for (std::uint32_t i = 0; i + m < n; ++i)
        detail::emit_copy_bit(b, src.ref.offset(m + i), dst.ref.offset(i));
    for (std::uint32_t i = 0; i < m; ++i)
        b.put(Instruction::plain(basic_set(dst.ref.offset(n - m + i), false)));
    return std::move(b).take();
}

InstructionSequence gen_add(std::uint32_t n, const WordRef& src1, const WordRef& src2,
                            const WordRef& dst) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    if (src1.width != n || src2.width != n || dst.width != n)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src1, src2};
    validate_operands(dst, srcs);
    RegisterRef carry = carry_register();
    for (const WordRef& w : {src1, src2, dst})
        if (contains_register(w, carry))
            throw ValidationError("operand word " + word_desc(w) + " contains the carry register");
    SeqBuilder b;
    b.put(Instruction::plain(basic_set(carry, false)));
    for (std::uint32_t i = 0; i < n; ++i)
        detail::emit_full_adder_bit(b, src1.ref.offset(i), src2.ref.offset(i), dst.ref.offset(i),
                                    carry);
    return std::move(b).take();
}

InstructionSequence gen_set(const BitWord& constant, const WordRef& dst) {
    require_direct(dst);
    require_dest_kind(dst);
    if (constant.size() != dst.width)
        throw ValidationError("constant width " + std::to_string(constant.size()) +
                              " does not match destination width " + std::to_string(dst.width));
    SeqBuilder b;
    for (std::size_t i = 0; i < constant.size(); ++i)
        b.put(Instruction::plain(basic_set(dst.ref.offset(static_cast<std::uint32_t>(i)),
                                           constant.bit(i))));
    return std::move(b).take();
}

InstructionSequence gen_mov(std::uint32_t n, const WordRef& src, const WordRef& dst) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    if (src.width != n || dst.width != n)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src};
    validate_operands(dst, srcs);
    SeqBuilder b;
    for (std::uint32_t i = 0; i < n; ++i)
        detail::emit_copy_bit(b, src.ref.offset(i), dst.ref.offset(i));
    return std::move(b).take();
}

InstructionSequence gen_zpad(std::uint32_t n, std::uint32_t m, const WordRef& dst) {
    if (m == 0 || m >= n)
        throw ValidationError("zero padding requires 0 < m < n");
    if (dst.width != n)
        throw ValidationError("destination width does not match the padded width");
    require_direct(dst);
    require_dest_kind(dst);
    return gen_set(BitWord::repeat(false, n - m), word(dst.ref.offset(m), n - m));
}

} // namespace isq
