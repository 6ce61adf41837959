#include "isq/indexed.hpp"

#include <bit>

#include "emit.hpp"
#include "isq/lmul.hpp"

namespace isq {

using detail::SeqBuilder;

EffectiveAddress resolve_address(const RegisterRef& ref, const RegisterFile& registers) {
    if (!ref.indexed())
        return EffectiveAddress{ref.kind, ref.base};
    const IndexBlock& ix = *ref.index;
    if (ix.width >= 63)
        throw ValidationError("index width " + std::to_string(ix.width) + " too large");
    std::uint64_t value = 0;
    for (std::uint32_t i = 0; i < ix.width; ++i)
        if (registers.get(RegisterKind::aux, std::uint64_t{ix.start} + i))
            value |= std::uint64_t{1} << i;
    return EffectiveAddress{ref.kind, ref.base + value};
}

InstructionSequence gen_inc(std::uint32_t w, const WordRef& src, const WordRef& dst) {
    if (w == 0)
        throw ValidationError("width must be at least 1");
    if (src.width != w || dst.width != w)
        throw ValidationError("operand widths do not match the gadget width");
    const WordRef srcs[] = {src};
    validate_operands(dst, srcs);
    SeqBuilder b;
    // Carry scan from the LSB: set bits become 0, the lowest clear bit
    // becomes 1, then the #5 cascade leaves the gadget. Mirror image of
    // gen_dec.
    for (std::uint32_t i = 0; i < w; ++i) {
        b.put(Instruction::pos_test(basic_get(src.ref.offset(i))));
        b.put(Instruction::fwd_jump(3));
        b.put(Instruction::plain(basic_set(dst.ref.offset(i), true)));
        b.put(Instruction::fwd_jump(5));
        b.put(Instruction::plain(basic_set(dst.ref.offset(i), false)));
    }
    b.put(Instruction::fwd_jump(1));
    b.put(Instruction::fwd_jump(1));
    b.put(Instruction::fwd_jump(1));
    return std::move(b).take();
}

InstructionSequence gen_tstne(std::uint32_t w, const WordRef& src, const BitWord& constant) {
    if (w == 0)
        throw ValidationError("width must be at least 1");
    if (src.width != w || constant.size() != w)
        throw ValidationError("source and constant widths must equal the gadget width");
    if (src.ref.indexed())
        throw ValidationError("word operands are direct register references");
    if (src.ref.kind == RegisterKind::output)
        throw ValidationError("source word must be input or auxiliary");
    SeqBuilder b;
    // Per-bit blocks as in gen_tstnz, with the test polarity chosen so the
    // #3 cascade is entered exactly when the source bit differs from the
    // constant bit.
    for (std::uint32_t i = 0; i < w; ++i) {
        BasicInstruction probe = basic_get(src.ref.offset(i));
        b.put(constant.bit(i) ? Instruction::neg_test(probe) : Instruction::pos_test(probe));
        b.put(Instruction::fwd_jump(3));
        b.put(Instruction::fwd_jump(1));
    }
    b.put(Instruction::fwd_jump(2));
    return std::move(b).take();
}

namespace {

std::uint32_t counter_width(std::uint64_t n) { return std::bit_width(n); }

// Register plan for the loop-based multiplier, width n:
//   aux:1                 ripple carry
//   aux:2      .. 2n+1    A, the shifted multiplicand (2n bits)
//   aux:2n+2   .. 4n+1    P, the running product (2n bits)
//   aux:8n+2   ..         outer counter i, w1 = bit_width(n) bits
//   aux:8n+2+w1 ..        position counter j, w2 = bit_width(2n-1) bits
// The counters sit above every word the classic layout assigns, so no
// operand pair can partially coincide.
struct Lmul4Plan {
    std::uint32_t n;
    std::uint32_t w1;
    std::uint32_t w2;
    std::uint32_t i_base;
    std::uint32_t j_base;

    explicit Lmul4Plan(std::uint32_t n_)
        : n(n_), w1(counter_width(n_)), w2(counter_width(2 * std::uint64_t{n_} - 1)),
          i_base(8 * n_ + 2), j_base(8 * n_ + 2 + w1) {}

    WordRef counter_i() const { return word(RegisterRef::aux(i_base), w1); }
    WordRef counter_j() const { return word(RegisterRef::aux(j_base), w2); }

    // References resolved through the position counter j.
    RegisterRef a_at_j() const { return RegisterRef::aux(2).with_index(j_base, w2); }
    RegisterRef a_at_j_minus_1() const { return RegisterRef::aux(1).with_index(j_base, w2); }
    RegisterRef p_at_j() const { return RegisterRef::aux(2 * n + 2).with_index(j_base, w2); }
    RegisterRef in1_at_j() const { return RegisterRef::in(1).with_index(j_base, w2); }
    RegisterRef out_at_j() const { return RegisterRef::out(1).with_index(j_base, w2); }

    // Multiplier bit selected by the outer counter i.
    RegisterRef in2_at_i() const { return RegisterRef::in(n + 1).with_index(i_base, w1); }
};

// j := start, then { body; j -= 1 } until j reaches 0. Runs the body for
// j = start .. 1; position 0, when needed, is handled with direct
// references after the loop.
template <typename Body>
void emit_countdown_loop(SeqBuilder& b, const WordRef& counter, std::uint64_t start, Body body) {
    b.append(gen_set(BitWord::from_value(start, counter.width), counter));
    std::uint64_t loop_head = b.size(); // instructions emitted before the body
    body(b);
    b.append(gen_dec(counter.width, counter, counter));
    b.append(gen_tstnz(counter.width, counter));
    b.put(Instruction::bwd_jump(b.size() - loop_head)); // nonzero: back to the body
}

// j := 0, then { body; if j == bound stop; j += 1 } — runs the body for
// j = 0 .. bound. The bound itself must be representable at the counter
// width, which is why the exit test precedes the increment.
template <typename Body>
void emit_countup_loop(SeqBuilder& b, const WordRef& counter, std::uint64_t bound, Body body) {
    InstructionSequence inc = gen_inc(counter.width, counter, counter);
    b.append(gen_set(BitWord::repeat(false, counter.width), counter));
    std::uint64_t loop_head = b.size();
    body(b);
    b.append(gen_tstne(counter.width, counter, BitWord::from_value(bound, counter.width)));
    b.put(Instruction::fwd_jump(2));                // not yet at the bound: increment
    b.put(Instruction::fwd_jump(inc.length() + 2)); // at the bound: leave the loop
    b.append(inc);
    b.put(Instruction::bwd_jump(b.size() - loop_head));
}

} // namespace

InstructionSequence gen_lmul4(std::uint32_t n) {
    if (n == 0)
        throw ValidationError("operand width must be at least 1");
    Lmul4Plan plan(n);
    SeqBuilder b;

    // A := 0, P := 0 over all 2n positions (j = 2n-1..1 looped, 0 direct).
    emit_countdown_loop(b, plan.counter_j(), 2 * std::uint64_t{n} - 1, [&](SeqBuilder& s) {
        s.put(Instruction::plain(basic_set(plan.a_at_j(), false)));
        s.put(Instruction::plain(basic_set(plan.p_at_j(), false)));
    });
    b.put(Instruction::plain(basic_set(RegisterRef::aux(2), false)));
    b.put(Instruction::plain(basic_set(RegisterRef::aux(2 * n + 2), false)));

    // A[0..n-1] := the multiplicand.
    emit_countup_loop(b, plan.counter_j(), std::uint64_t{n} - 1, [&](SeqBuilder& s) {
        detail::emit_copy_bit(s, plan.in1_at_j(), plan.a_at_j());
    });

    // For each multiplier bit i: if set, P += A (full width); then A <<= 1.
    b.append(gen_set(BitWord::repeat(false, plan.w1), plan.counter_i()));
    std::uint64_t outer_head = b.size();
    {
        SeqBuilder add_loop;
        add_loop.put(Instruction::plain(basic_set(carry_register(), false)));
        emit_countup_loop(add_loop, plan.counter_j(), 2 * std::uint64_t{n} - 1,
                          [&](SeqBuilder& s) {
                              detail::emit_full_adder_bit(s, plan.a_at_j(), plan.p_at_j(),
                                                          plan.p_at_j(), carry_register());
                          });
        b.put(Instruction::neg_test(basic_get(plan.in2_at_i())));
        b.put(Instruction::fwd_jump(add_loop.size() + 1)); // bit clear: skip the add loop
        b.append(std::move(add_loop));
    }
    emit_countdown_loop(b, plan.counter_j(), 2 * std::uint64_t{n} - 1, [&](SeqBuilder& s) {
        detail::emit_copy_bit(s, plan.a_at_j_minus_1(), plan.a_at_j());
    });
    b.put(Instruction::plain(basic_set(RegisterRef::aux(2), false))); // vacated bit 0
    b.append(gen_inc(plan.w1, plan.counter_i(), plan.counter_i()));
    b.append(gen_tstne(plan.w1, plan.counter_i(), BitWord::from_value(n, plan.w1)));
    b.put(Instruction::bwd_jump(b.size() - outer_head)); // i != n: next multiplier bit

    // out := P.
    emit_countdown_loop(b, plan.counter_j(), 2 * std::uint64_t{n} - 1, [&](SeqBuilder& s) {
        detail::emit_copy_bit(s, plan.p_at_j(), plan.out_at_j());
    });
    detail::emit_copy_bit(b, RegisterRef::aux(2 * n + 2), RegisterRef::out(1));
    b.put(Instruction::halt());
    return std::move(b).take();
}

std::uint64_t AffineLogFit::eval(std::uint64_t n) const {
    std::uint64_t w1 = counter_width(n);
    std::uint64_t w2 = counter_width(2 * n - 1);
    return a * (w1 - 1) + b * (w2 - 1) + c;
}

AffineLogFit lmul4_length_fit() {
    std::uint64_t l2 = gen_lmul4(2).length(); // w1=2, w2=2
    std::uint64_t l3 = gen_lmul4(3).length(); // w1=2, w2=3
    std::uint64_t l4 = gen_lmul4(4).length(); // w1=3, w2=3
    std::uint64_t b = l3 - l2;
    std::uint64_t a = l4 - l3;
    // In width form len = a*w1 + b*w2 + raw; with w = floor(log2 .) + 1 the
    // regressor-form constant term is raw + a + b.
    std::uint64_t raw = l2 - 2 * a - 2 * b;
    return AffineLogFit{a, b, raw + a + b};
}

} // namespace isq
