#include "isq/lmul.hpp"

#include <bit>

#include "emit.hpp"
#include "isq/indexed.hpp"
#include "isq/machine.hpp"

namespace isq {

using detail::SeqBuilder;

namespace {

void check_n(std::uint32_t n) {
    if (n == 0)
        throw ValidationError("operand width must be at least 1");
}

// Number of bits in the shortest binary representation of n (n >= 1).
std::uint32_t counter_width(std::uint64_t n) { return std::bit_width(n); }

struct Lmul3Build {
    InstructionSequence seq;
    Lmul3Markers markers;
};

Lmul3Build build_lmul3(std::uint32_t n) {
    check_n(n);
    RegisterLayout lay = layout(n);
    std::uint32_t w = counter_width(n);
    WordRef t1 = word(lay.temp(1), 2 * n);
    WordRef t2n = word(lay.temp(2), n);
    WordRef t3 = word(lay.temp(3), 2 * n);
    WordRef t4 = word(lay.temp(4), w);

    SeqBuilder b;
    b.append(gen_mov(n, word(lay.input1(), n), word(lay.temp(1), n)));
    b.append(gen_zpad(2 * n, n, t1));
    b.append(gen_mov(n, word(lay.input2(), n), t2n));
    b.append(gen_set(BitWord::repeat(false, 2 * n), t3));
    b.append(gen_set(BitWord::from_value(n, w), t4));

    std::uint64_t body_first_pc = b.size() + 1;
    SeqBuilder body;
    InstructionSequence add = gen_add(2 * n, t1, t3, t3);
    body.put(Instruction::neg_test(basic_get(lay.temp_bit(2, 0))));
    body.put(Instruction::fwd_jump(add.length() + 1)); // multiplier bit 0: skip the add
    body.append(add);
    body.append(gen_shl(2 * n, 1, t1, t1));
    body.append(gen_shr(n, 1, t2n, t2n)); // n == 1 degenerates to a zero fill
    body.append(gen_dec(w, t4, t4));
    body.append(gen_tstnz(w, t4));
    std::uint64_t body_len = body.size();
    b.append(std::move(body));

    std::uint64_t backjump_pc = b.size() + 1;
    b.put(Instruction::bwd_jump(body_len)); // counter still nonzero: repeat the round
    b.append(gen_mov(2 * n, word(lay.temp(3), 2 * n), word(lay.output(), 2 * n)));
    b.put(Instruction::halt());
    return Lmul3Build{std::move(b).take(), Lmul3Markers{body_first_pc, backjump_pc}};
}

} // namespace

RegisterRef RegisterLayout::input1() const { return RegisterRef::in(1); }
RegisterRef RegisterLayout::input2() const { return RegisterRef::in(n + 1); }
RegisterRef RegisterLayout::output() const { return RegisterRef::out(1); }

RegisterRef RegisterLayout::temp(std::uint32_t i) const {
    if (i < 1 || i > 4)
        throw ValidationError("scratch words are numbered 1..4");
    return RegisterRef::aux(2 * n * (i - 1) + 2);
}

RegisterRef RegisterLayout::carry() const { return carry_register(); }

RegisterRef RegisterLayout::input_bit(std::uint32_t i, std::uint32_t j) const {
    if (i < 1 || i > 2 || j >= n)
        throw ValidationError("input bit out of range");
    return RegisterRef::in((i - 1) * n + j + 1);
}

RegisterRef RegisterLayout::temp_bit(std::uint32_t i, std::uint32_t j) const {
    if (i < 1 || i > 4 || j >= 2 * n)
        throw ValidationError("scratch bit out of range");
    return RegisterRef::aux(2 * (i - 1) * n + j + 2);
}

RegisterLayout layout(std::uint32_t n) {
    check_n(n);
    return RegisterLayout{n};
}

InstructionSequence gen_lmul1(std::uint32_t n) {
    check_n(n);
    RegisterLayout lay = layout(n);
    WordRef t1_full = word(lay.temp(1), 2 * n);

    SeqBuilder b;
    b.append(gen_mov(n, word(lay.input1(), n), word(lay.temp(1), n)));
    b.append(gen_zpad(2 * n, n, t1_full));
    b.append(gen_set(BitWord::repeat(false, 2 * n), word(lay.temp(2), 2 * n)));
    // One add/shift pair per multiplier bit, at width n+i+1: wide enough for
    // the running partial product, one position of headroom for the shift.
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t width = n + i + 1;
        WordRef t1 = word(lay.temp(1), width);
        WordRef t2 = word(lay.temp(2), width);
        InstructionSequence add = gen_add(width, t1, t2, t2);
        b.put(Instruction::neg_test(basic_get(lay.input_bit(2, i))));
        b.put(Instruction::fwd_jump(add.length() + 1));
        b.append(add);
        b.append(gen_shl(width, 1, t1, t1));
    }
    b.append(gen_mov(2 * n, word(lay.temp(2), 2 * n), word(lay.output(), 2 * n)));
    b.put(Instruction::halt());
    return std::move(b).take();
}

InstructionSequence gen_lmul2(std::uint32_t n) {
    check_n(n);
    RegisterLayout lay = layout(n);
    WordRef t1 = word(lay.temp(1), 2 * n);
    WordRef t2 = word(lay.temp(2), n);
    WordRef t3 = word(lay.temp(3), 2 * n);

    SeqBuilder b;
    b.append(gen_mov(n, word(lay.input1(), n), word(lay.temp(1), n)));
    b.append(gen_zpad(2 * n, n, t1));
    b.append(gen_mov(n, word(lay.input2(), n), t2));
    b.append(gen_set(BitWord::repeat(false, 2 * n), t3));

    // The round body tests multiplier bit 0, then shifts the multiplier
    // right so the next round sees the next bit at position 0.
    SeqBuilder round;
    InstructionSequence add = gen_add(2 * n, t1, t3, t3);
    round.put(Instruction::neg_test(basic_get(lay.temp_bit(2, 0))));
    round.put(Instruction::fwd_jump(add.length() + 1));
    round.append(add);
    round.append(gen_shl(2 * n, 1, t1, t1));
    round.append(gen_shr(n, 1, t2, t2)); // n == 1 degenerates to a zero fill
    b.append(power(std::move(round).take(), n));

    b.append(gen_mov(2 * n, word(lay.temp(3), 2 * n), word(lay.output(), 2 * n)));
    b.put(Instruction::halt());
    return std::move(b).take();
}

InstructionSequence gen_lmul3(std::uint32_t n) { return build_lmul3(n).seq; }

Lmul3Markers lmul3_markers(std::uint32_t n) { return build_lmul3(n).markers; }

BitWord multiply(LmulVariant variant, std::uint32_t n, const BitWord& a, const BitWord& b) {
    check_n(n);
    if (a.size() != n || b.size() != n)
        throw ValidationError("factor widths must equal the generator width");
    InstructionSequence seq = [&] {
        switch (variant) {
        case LmulVariant::lmul1: return gen_lmul1(n);
        case LmulVariant::lmul2: return gen_lmul2(n);
        case LmulVariant::lmul3: return gen_lmul3(n);
        case LmulVariant::lmul4: return gen_lmul4(n);
        }
        throw ValidationError("unknown multiplier variant");
    }();
    return compute(seq, concat(a, b), 2 * n, multiply_step_budget(variant, n));
}

std::uint64_t multiply_step_budget(LmulVariant variant, std::uint32_t n) {
    check_n(n);
    LengthModel model;
    std::uint64_t len = model.length(variant, n);
    switch (variant) {
    case LmulVariant::lmul1:
    case LmulVariant::lmul2:
        // Forward-only: a run never takes more steps than the length.
        return 4 * len;
    case LmulVariant::lmul3:
        // The round body runs n times.
        return 4 * len * (std::uint64_t{n} + 1);
    case LmulVariant::lmul4: {
        // Two 2n-iteration loops per outer round plus three setup/teardown
        // loops; each iteration runs a bounded number of instructions.
        std::uint64_t w2 = counter_width(2 * std::uint64_t{n} - 1);
        std::uint64_t per_iter = 8 * w2 + 48;
        std::uint64_t iterations = 4 * std::uint64_t{n} * n + 8 * std::uint64_t{n} + 8;
        return 4 * (iterations * per_iter + 64 * (w2 + 8));
    }
    }
    throw ValidationError("unknown multiplier variant");
}

namespace {

template <typename Gen>
std::uint64_t memoized(std::unordered_map<std::uint64_t, std::uint64_t>& memo,
                       std::uint64_t width, Gen gen) {
    auto it = memo.find(width);
    if (it != memo.end())
        return it->second;
    std::uint64_t len = gen(static_cast<std::uint32_t>(width)).length();
    memo.emplace(width, len);
    return len;
}

} // namespace

std::uint64_t LengthModel::add_len(std::uint64_t width) {
    return memoized(add_memo_, width, [](std::uint32_t w) {
        return gen_add(w, word(RegisterRef::in(1), w), word(RegisterRef::in(w + 1), w),
                       word(RegisterRef::out(1), w));
    });
}

std::uint64_t LengthModel::shl1_len(std::uint64_t width) {
    return memoized(shl1_memo_, width, [](std::uint32_t w) {
        return gen_shl(w, 1, word(RegisterRef::aux(2), w), word(RegisterRef::aux(2), w));
    });
}

std::uint64_t LengthModel::shr1_len(std::uint64_t width) {
    return memoized(shr1_memo_, width, [](std::uint32_t w) {
        return gen_shr(w, 1, word(RegisterRef::aux(2), w), word(RegisterRef::aux(2), w));
    });
}

std::uint64_t LengthModel::mov_len(std::uint64_t width) {
    return memoized(mov_memo_, width, [](std::uint32_t w) {
        return gen_mov(w, word(RegisterRef::in(1), w), word(RegisterRef::out(1), w));
    });
}

std::uint64_t LengthModel::length(LmulVariant variant, std::uint64_t n) {
    if (n == 0)
        throw ValidationError("operand width must be at least 1");
    auto n32 = static_cast<std::uint32_t>(n);
    switch (variant) {
    case LmulVariant::lmul1: {
        std::uint64_t len = mov_len(n);
        len += n;     // zero padding to 2n
        len += 2 * n; // clear the accumulator
        for (std::uint64_t i = 0; i < n; ++i)
            len += 2 + add_len(n + i + 1) + shl1_len(n + i + 1);
        len += mov_len(2 * n) + 1;
        return len;
    }
    case LmulVariant::lmul2: {
        std::uint64_t round = 2 + add_len(2 * n) + shl1_len(2 * n) + shr1_len(n);
        return mov_len(n) + n + mov_len(n) + 2 * n + n * round + mov_len(2 * n) + 1;
    }
    case LmulVariant::lmul3: {
        std::uint64_t w = counter_width(n);
        std::uint64_t round = 2 + add_len(2 * n) + shl1_len(2 * n) + shr1_len(n) +
                              gen_dec(static_cast<std::uint32_t>(w),
                                      word(RegisterRef::aux(2), w), word(RegisterRef::aux(2), w))
                                  .length() +
                              gen_tstnz(static_cast<std::uint32_t>(w),
                                        word(RegisterRef::aux(2), w))
                                  .length();
        return mov_len(n) + n + mov_len(n) + 2 * n + w + round + 1 + mov_len(2 * n) + 1;
    }
    case LmulVariant::lmul4:
        return gen_lmul4(n32).length();
    }
    throw ValidationError("unknown multiplier variant");
}

std::uint64_t nominal_length(LmulVariant variant, std::uint64_t n) {
    switch (variant) {
    case LmulVariant::lmul1: return 45 * n * n + 30 * n + 1;
    case LmulVariant::lmul2: return 64 * n * n + 16 * n + 1;
    case LmulVariant::lmul3: return 83 * n + 9 * (counter_width(n) - 1) + 12;
    case LmulVariant::lmul4: break;
    }
    throw ValidationError("no closed-form length for this variant");
}

} // namespace isq
