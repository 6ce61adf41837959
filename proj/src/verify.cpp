#include "isq/verify.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "isq/gadgets.hpp"
#include "isq/indexed.hpp"
#include "isq/machine.hpp"

namespace isq {

std::string_view to_string(GadgetKind kind) {
    switch (kind) {
    case GadgetKind::tstnz: return "tstnz";
    case GadgetKind::tstne: return "tstne";
    case GadgetKind::dec: return "dec";
    case GadgetKind::inc: return "inc";
    case GadgetKind::shl: return "shl";
    case GadgetKind::shr: return "shr";
    case GadgetKind::add: return "add";
    case GadgetKind::set: return "set";
    case GadgetKind::mov: return "mov";
    case GadgetKind::zpad: return "zpad";
    }
    return "?";
}

std::optional<GadgetKind> gadget_kind_from_string(std::string_view name) {
    for (GadgetKind k : {GadgetKind::tstnz, GadgetKind::tstne, GadgetKind::dec, GadgetKind::inc,
                         GadgetKind::shl, GadgetKind::shr, GadgetKind::add, GadgetKind::set,
                         GadgetKind::mov, GadgetKind::zpad})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

namespace {

template <typename Check>
std::optional<std::pair<std::uint64_t, Counterexample>>
scan_lowest_failure(std::uint64_t count, unsigned jobs, Check check) {
    if (jobs <= 1 || count < 64) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (auto c = check(i))
                return std::make_pair(i, std::move(*c));
        return std::nullopt;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
    std::vector<std::optional<std::pair<std::uint64_t, Counterexample>>> found(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        threads.emplace_back([&, t] {
            std::uint64_t lo = count * t / workers;
            std::uint64_t hi = count * (t + 1) / workers;
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (auto c = check(i)) {
                    found[t] = std::make_pair(i, std::move(*c));
                    return;
                }
            }
        });
    }
    for (auto& th : threads)
        th.join();
    std::optional<std::pair<std::uint64_t, Counterexample>> best;
    for (auto& f : found)
        if (f && (!best || f->first < best->first))
            best = std::move(f);
    return best;
}

// Case indices, either the whole space in ascending order or a seeded
// sample of it.
struct CaseSpace {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> sampled; // empty in exhaustive mode

    std::uint64_t index(std::uint64_t i) const { return sampled.empty() ? i : sampled[i]; }
};

CaseSpace make_case_space(unsigned bits, const VerifyOptions& opts) {
    if (opts.exhaustive) {
        if (bits > 24)
            throw ValidationError("exhaustive verification is limited to 24 case bits");
        return CaseSpace{std::uint64_t{1} << bits, {}};
    }
    if (bits > 62)
        throw ValidationError("sampled verification is limited to 62 case bits");
    CaseSpace space;
    space.count = opts.samples;
    space.sampled.reserve(opts.samples);
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << bits) - 1);
    for (std::uint64_t i = 0; i < opts.samples; ++i)
        space.sampled.push_back(dist(rng));
    return space;
}

struct Probe {
    InstructionSequence seq;
    unsigned in_bits;  // operand bits loaded into in:1..
    unsigned out_bits; // result bits read from out:1..
};

// Self-contained wrapper around one gadget instantiation; see the header
// comment on verify_gadget for the conventions.
Probe make_value_probe(GadgetKind kind, std::uint32_t n, std::uint32_t m, bool in_place,
                       std::uint64_t constant) {
    WordRef in1 = word(RegisterRef::in(1), n);
    WordRef in2 = word(RegisterRef::in(n + 1), n);
    WordRef out1 = word(RegisterRef::out(1), n);
    WordRef scratch1 = word(RegisterRef::aux(2), n);
    WordRef scratch2 = word(RegisterRef::aux(n + 2), n);

    std::vector<Instruction> items;
    auto append = [&items](const InstructionSequence& s) {
        items.insert(items.end(), s.items().begin(), s.items().end());
    };

    unsigned in_bits = n;
    switch (kind) {
    case GadgetKind::dec:
    case GadgetKind::inc: {
        auto gen = kind == GadgetKind::dec ? gen_dec : gen_inc;
        if (in_place) {
            append(gen_mov(n, in1, scratch1));
            append(gen(n, scratch1, scratch1));
            append(gen_mov(n, scratch1, out1));
        } else {
            // The spread forms write nothing above the borrow/carry end, so
            // the destination starts as a copy of the source word.
            append(gen_mov(n, in1, out1));
            append(gen(n, in1, out1));
        }
        break;
    }
    case GadgetKind::shl:
    case GadgetKind::shr: {
        auto gen = kind == GadgetKind::shl ? gen_shl : gen_shr;
        if (in_place) {
            append(gen_mov(n, in1, scratch1));
            append(gen(n, m, scratch1, scratch1));
            append(gen_mov(n, scratch1, out1));
        } else {
            append(gen(n, m, in1, out1));
        }
        break;
    }
    case GadgetKind::mov:
        if (in_place) {
            append(gen_mov(n, in1, scratch1));
            append(gen_mov(n, scratch1, scratch1));
            append(gen_mov(n, scratch1, out1));
        } else {
            append(gen_mov(n, in1, out1));
        }
        break;
    case GadgetKind::zpad:
        if (in_place) {
            append(gen_mov(n, in1, scratch1));
            append(gen_zpad(n, m, scratch1));
            append(gen_mov(n, scratch1, out1));
        } else {
            append(gen_mov(n, in1, out1));
            append(gen_zpad(n, m, out1));
        }
        break;
    case GadgetKind::add:
        in_bits = 2 * n;
        if (in_place) {
            append(gen_mov(n, in1, scratch1));
            append(gen_mov(n, in2, scratch2));
            append(gen_add(n, scratch1, scratch2, scratch2));
            append(gen_mov(n, scratch2, out1));
        } else {
            append(gen_add(n, in1, in2, out1));
        }
        break;
    case GadgetKind::set: {
        in_bits = 0;
        BitWord value = BitWord::from_value(constant, n);
        if (in_place) {
            append(gen_set(value, scratch1));
            append(gen_mov(n, scratch1, out1));
        } else {
            append(gen_set(value, out1));
        }
        break;
    }
    case GadgetKind::tstnz:
    case GadgetKind::tstne: {
        InstructionSequence test =
            kind == GadgetKind::tstnz
                ? gen_tstnz(n, in_place ? scratch1 : in1)
                : gen_tstne(n, in_place ? scratch1 : in1, BitWord::from_value(constant, n));
        if (in_place)
            append(gen_mov(n, in1, scratch1));
        append(test);
        // Landing probe: the first trailing instruction runs only when the
        // test held, the second runs on both exits.
        items.push_back(Instruction::plain(basic_set(RegisterRef::out(1), true)));
        items.push_back(Instruction::plain(basic_set(RegisterRef::out(2), true)));
        items.push_back(Instruction::halt());
        return Probe{InstructionSequence(std::move(items)), n, 2};
    }
    }
    items.push_back(Instruction::halt());
    return Probe{InstructionSequence(std::move(items)), in_bits, n};
}

std::uint64_t mask_of(std::uint32_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Arithmetic reference for the value gadgets.
std::uint64_t value_oracle(GadgetKind kind, std::uint32_t n, std::uint32_t m, std::uint64_t a,
                           std::uint64_t b_or_const) {
    std::uint64_t mask = mask_of(n);
    switch (kind) {
    case GadgetKind::dec: return (a + mask) & mask; // a - 1 mod 2^n
    case GadgetKind::inc: return (a + 1) & mask;
    case GadgetKind::shl: return (a << m) & mask;
    case GadgetKind::shr: return a >> m;
    case GadgetKind::mov: return a;
    case GadgetKind::zpad: return a & mask_of(m);
    case GadgetKind::add: return (a + b_or_const) & mask;
    case GadgetKind::set: return b_or_const & mask;
    default: throw ValidationError("not a value gadget");
    }
}

} // namespace

VerifyReport verify_gadget(GadgetKind kind, std::uint32_t n, std::uint32_t m, bool in_place,
                           const VerifyOptions& opts) {
    if (n == 0)
        throw ValidationError("width must be at least 1");
    bool per_case_probe = kind == GadgetKind::set || kind == GadgetKind::tstne;
    bool test_gadget = kind == GadgetKind::tstnz || kind == GadgetKind::tstne;
    unsigned case_bits = n;
    if (kind == GadgetKind::add || kind == GadgetKind::tstne)
        case_bits = 2 * n;

    CaseSpace space = make_case_space(case_bits, opts);
    std::optional<Probe> fixed;
    if (!per_case_probe)
        fixed = make_value_probe(kind, n, m, in_place, 0);

    std::uint64_t value_mask = mask_of(n);
    auto check = [&](std::uint64_t i) -> std::optional<Counterexample> {
        std::uint64_t idx = space.index(i);
        std::uint64_t operand = idx & value_mask;  // low bits: the word under test
        std::uint64_t high = idx >> n;             // add: second operand; tstne/set: constant
        std::uint64_t constant = kind == GadgetKind::set ? idx : high;

        std::optional<Probe> local;
        if (per_case_probe)
            local = make_value_probe(kind, n, m, in_place, constant);
        const Probe& probe = per_case_probe ? *local : *fixed;
        BitWord input = BitWord::from_value(idx, probe.in_bits);
        BitWord expected;
        if (test_gadget) {
            bool holds = kind == GadgetKind::tstnz ? operand != 0 : operand != constant;
            expected = BitWord::from_value(holds ? 3 : 2, 2); // out:1 = held, out:2 = 1
        } else {
            expected = BitWord::from_value(value_oracle(kind, n, m, operand, constant), n);
        }

        // Probes are forward-only, so their own length budgets every run.
        ExecutionOutcome outcome = run(probe.seq, input, std::max<std::uint64_t>(probe.seq.length(), 1));
        BitWord case_word = BitWord::from_value(idx, case_bits);
        if (outcome.kind != OutcomeKind::terminated)
            return Counterexample{case_word, expected.str(), std::string(to_string(outcome.kind))};
        BitWord actual = outcome.registers.read_word(RegisterKind::output, 1, expected.size());
        if (actual != expected)
            return Counterexample{case_word, expected.str(), actual.str()};
        return std::nullopt;
    };

    auto failure = scan_lowest_failure(space.count, opts.jobs, check);
    VerifyReport report;
    report.cases = space.count;
    if (failure) {
        report.pass = false;
        report.counterexample = std::move(failure->second);
    }
    return report;
}

VerifyReport verify_lmul(LmulVariant variant, std::uint32_t n, const VerifyOptions& opts) {
    if (n == 0)
        throw ValidationError("operand width must be at least 1");
    if (n > 31)
        throw ValidationError("the multiplication oracle is limited to 31-bit factors");
    InstructionSequence seq = [&] {
        switch (variant) {
        case LmulVariant::lmul1: return gen_lmul1(n);
        case LmulVariant::lmul2: return gen_lmul2(n);
        case LmulVariant::lmul3: return gen_lmul3(n);
        case LmulVariant::lmul4: return gen_lmul4(n);
        }
        throw ValidationError("unknown multiplier variant");
    }();
    // Forward-only variants must finish within their own length; the loop
    // variants get the generic budget.
    std::uint64_t budget = seq.feature_level() == FeatureLevel::forward_only
                               ? seq.length()
                               : multiply_step_budget(variant, n);

    CaseSpace space = make_case_space(2 * n, opts);
    std::uint64_t factor_mask = mask_of(n);
    auto check = [&](std::uint64_t i) -> std::optional<Counterexample> {
        std::uint64_t idx = space.index(i);
        std::uint64_t a = idx & factor_mask;
        std::uint64_t b = idx >> n;
        BitWord input = BitWord::from_value(idx, 2 * n); // a in in:1.., b in in:n+1..
        BitWord expected = BitWord::from_value(a * b, 2 * n);
        ExecutionOutcome outcome = run(seq, input, budget);
        if (outcome.kind != OutcomeKind::terminated)
            return Counterexample{input, expected.str(), std::string(to_string(outcome.kind))};
        BitWord actual = outcome.registers.read_word(RegisterKind::output, 1, 2 * n);
        if (actual != expected)
            return Counterexample{input, expected.str(), actual.str()};
        return std::nullopt;
    };

    auto failure = scan_lowest_failure(space.count, opts.jobs, check);
    VerifyReport report;
    report.cases = space.count;
    if (failure) {
        report.pass = false;
        report.counterexample = std::move(failure->second);
    }
    return report;
}

} // namespace isq
