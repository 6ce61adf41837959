#include <doctest.h>

#include <random>
#include <set>

#include "test_support.hpp"

using namespace isq;

namespace {

// Independent overlap oracle: materialize both register-number sets.
Overlap overlap_by_enumeration(const WordRef& a, const WordRef& b) {
    std::set<std::pair<int, std::uint64_t>> ra, rb;
    for (std::uint32_t i = 0; i < a.width; ++i)
        ra.insert({static_cast<int>(a.ref.kind), a.ref.base + i});
    for (std::uint32_t i = 0; i < b.width; ++i)
        rb.insert({static_cast<int>(b.ref.kind), b.ref.base + i});
    if (ra == rb)
        return Overlap::fully_coinciding;
    for (const auto& r : ra)
        if (rb.count(r))
            return Overlap::partially_coinciding;
    return Overlap::disjoint;
}

} // namespace

TEST_CASE("overlap classification") {
    CHECK(classify_overlap(ts::aux_word(4, 2), ts::aux_word(4, 2)) == Overlap::fully_coinciding);
    CHECK(classify_overlap(ts::aux_word(4, 2), ts::aux_word(4, 4)) == Overlap::partially_coinciding);
    CHECK(classify_overlap(ts::out_word(4), ts::in_word(4)) == Overlap::disjoint);
    CHECK(classify_overlap(ts::aux_word(4, 2), ts::aux_word(4, 6)) == Overlap::disjoint);
    CHECK_THROWS_AS(classify_overlap(ts::aux_word(3, 1), ts::aux_word(4, 1)), ValidationError);
}

TEST_CASE("operand validation") {
    WordRef dst = ts::aux_word(4, 2);
    // Fully coinciding destination/source is fine.
    WordRef same[] = {ts::aux_word(4, 2)};
    CHECK_NOTHROW(validate_operands(dst, same));
    // Partial overlap is rejected.
    WordRef shifted[] = {ts::aux_word(4, 4)};
    CHECK_THROWS_AS(validate_operands(dst, shifted), ValidationError);
    // Different kinds cannot overlap.
    WordRef crossed[] = {ts::in_word(4)};
    CHECK_NOTHROW(validate_operands(ts::out_word(4), crossed));
    // Kind constraints.
    WordRef out_src[] = {ts::out_word(4, 9)};
    CHECK_THROWS_AS(validate_operands(dst, out_src), ValidationError);
    WordRef in_dst_src[] = {ts::aux_word(4, 12)};
    CHECK_THROWS_AS(validate_operands(ts::in_word(4), in_dst_src), ValidationError);
}

TEST_CASE("operand validation agrees with the enumeration oracle") {
    std::mt19937_64 rng(20240817);
    int rejected = 0;
    for (int i = 0; i < 10000; ++i) {
        auto kind = [&rng] {
            switch (rng() % 3) {
            case 0: return RegisterKind::input;
            case 1: return RegisterKind::output;
            default: return RegisterKind::aux;
            }
        };
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 16);
        RegisterKind dst_kind = rng() % 2 ? RegisterKind::aux : RegisterKind::output;
        RegisterKind src_kind = kind();
        if (src_kind == RegisterKind::output)
            src_kind = RegisterKind::input;
        WordRef dst{RegisterRef{dst_kind, 1 + static_cast<std::uint32_t>(rng() % 40), {}}, n};
        WordRef src{RegisterRef{src_kind, 1 + static_cast<std::uint32_t>(rng() % 40), {}}, n};

        Overlap expected = overlap_by_enumeration(dst, src);
        CHECK(classify_overlap(dst, src) == expected);

        WordRef srcs[] = {src};
        bool threw = false;
        try {
            validate_operands(dst, srcs);
        } catch (const ValidationError&) {
            threw = true;
        }
        CHECK(threw == (expected == Overlap::partially_coinciding));
        if (threw)
            ++rejected;
    }
    CHECK(rejected > 100); // the generator actually hits the rejection region
}

TEST_CASE("pinned gadget lengths") {
    CHECK(gen_tstnz(2, ts::aux_word(2, 5)).length() == 7);
    CHECK(gen_dec(2, ts::in_word(2), ts::out_word(2)).length() == 13);
    CHECK(gen_shl(4, 1, ts::in_word(4), ts::out_word(4)).length() == 13);
    CHECK(gen_shr(8, 3, ts::in_word(8), ts::out_word(8)).length() == 23);
    CHECK(gen_add(2, ts::in_word(2), ts::in_word(2, 3), ts::out_word(2)).length() == 53);
    CHECK(gen_set(BitWord::repeat(false, 6), ts::out_word(6)).length() == 6);
    CHECK(gen_mov(8, ts::in_word(8), ts::out_word(8)).length() == 32);
    CHECK(gen_zpad(8, 3, ts::out_word(8)).length() == 5);
}

TEST_CASE("gadget lengths match their closed forms up to width 64") {
    for (std::uint32_t n = 1; n <= 64; ++n) {
        WordRef src = ts::in_word(n);
        WordRef src2 = ts::in_word(n, n + 1);
        WordRef dst = ts::out_word(n);
        CHECK(gen_tstnz(n, src).length() == 3 * n + 1);
        CHECK(gen_dec(n, src, dst).length() == 5 * n + 3);
        CHECK(gen_inc(n, src, dst).length() == 5 * n + 3);
        CHECK(gen_add(n, src, src2, dst).length() == 26 * n + 1);
        CHECK(gen_set(BitWord::repeat(true, n), dst).length() == n);
        CHECK(gen_mov(n, src, dst).length() == 4 * n);
        CHECK(gen_tstne(n, src, BitWord::from_value(n, n)).length() == 3 * n + 1);
        for (std::uint32_t m = 1; m <= n; ++m) {
            CHECK(gen_shl(n, m, src, dst).length() == 4 * n - 3 * m);
            CHECK(gen_shr(n, m, src, dst).length() == 4 * n - 3 * m);
        }
        for (std::uint32_t m = 1; m < n; ++m)
            CHECK(gen_zpad(n, m, dst).length() == n - m);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(gen_tstnz(0, ts::in_word(1)), ValidationError);
    CHECK_THROWS_AS(gen_shl(4, 0, ts::in_word(4), ts::out_word(4)), ValidationError);
    CHECK_THROWS_AS(gen_shl(4, 5, ts::in_word(4), ts::out_word(4)), ValidationError);
    CHECK_THROWS_AS(gen_zpad(4, 4, ts::out_word(4)), ValidationError);
    CHECK_THROWS_AS(gen_zpad(4, 0, ts::out_word(4)), ValidationError);
    CHECK_THROWS_AS(gen_set(ts::bits("10"), ts::out_word(3)), ValidationError);
    CHECK_THROWS_AS(gen_dec(4, ts::aux_word(4, 6), ts::aux_word(4, 3)), ValidationError);
    CHECK_NOTHROW(gen_dec(4, ts::in_word(4), ts::aux_word(4, 3))); // kinds differ: disjoint
    // ADD operands must keep clear of the carry register aux:1.
    CHECK_THROWS_AS(gen_add(2, ts::aux_word(2, 1), ts::in_word(2), ts::aux_word(2, 4)),
                    ValidationError);
    CHECK_THROWS_AS(gen_add(2, ts::aux_word(2, 4), ts::in_word(2), ts::aux_word(2, 1)),
                    ValidationError);
    CHECK_NOTHROW(gen_add(2, ts::aux_word(2, 2), ts::in_word(2), ts::aux_word(2, 4)));
}

TEST_CASE("decrement examples") {
    // In place: load, decrement, read back.
    auto probe = [&](std::uint64_t v) {
        std::vector<Instruction> items;
        for (const auto& part :
             {gen_mov(2, ts::in_word(2), ts::aux_word(2, 2)),
              gen_dec(2, ts::aux_word(2, 2), ts::aux_word(2, 2)),
              gen_mov(2, ts::aux_word(2, 2), ts::out_word(2))})
            items.insert(items.end(), part.items().begin(), part.items().end());
        items.push_back(Instruction::halt());
        return ts::run_value(InstructionSequence(std::move(items)), v, 2, 2);
    };
    CHECK(probe(0) == 3); // 00 -> 11
    CHECK(probe(1) == 0); // 10 -> 00
    CHECK(probe(2) == 1);
    CHECK(probe(3) == 2);
}

TEST_CASE("shift examples") {
    auto shl = ts::append_halt(gen_shl(4, 1, ts::in_word(4), ts::out_word(4)));
    CHECK(ts::run_value(shl, 5, 4, 4) == 10); // 1010 -> 0101

    auto shr = ts::append_halt(gen_shr(4, 2, ts::in_word(4), ts::out_word(4)));
    CHECK(ts::run_value(shr, 12, 4, 4) == 3); // 0011 -> 1100

    auto shr2 = ts::append_halt(gen_shr(2, 1, ts::in_word(2), ts::out_word(2)));
    CHECK(ts::run_value(shr2, 3, 2, 2) == 1); // 11 -> 10

    // In-place left shift: 1000 -> 0100.
    std::vector<Instruction> items;
    for (const auto& part :
         {gen_mov(4, ts::in_word(4), ts::aux_word(4, 2)),
          gen_shl(4, 1, ts::aux_word(4, 2), ts::aux_word(4, 2)),
          gen_mov(4, ts::aux_word(4, 2), ts::out_word(4))})
        items.insert(items.end(), part.items().begin(), part.items().end());
    items.push_back(Instruction::halt());
    CHECK(ts::run_value(InstructionSequence(std::move(items)), 1, 4, 4) == 2);

    // The m == n boundary degenerates to a zero fill of length n.
    auto full = gen_shr(3, 3, ts::in_word(3), ts::out_word(3));
    CHECK(full.length() == 3);
    CHECK(ts::run_value(ts::append_halt(full), 7, 3, 3) == 0);
}

TEST_CASE("addition examples") {
    auto add3 = ts::append_halt(gen_add(3, ts::in_word(3), ts::in_word(3, 4), ts::out_word(3)));
    CHECK(ts::run_value(add3, 3 | (2 << 3), 6, 3) == 5); // 110 + 010 -> 101

    auto add2 = ts::append_halt(gen_add(2, ts::in_word(2), ts::in_word(2, 3), ts::out_word(2)));
    CHECK(ts::run_value(add2, 2 | (2 << 2), 4, 2) == 0); // 01 + 01 wraps to 00

    // The carry chain must clear on a 0+0+carry column: 1 + 1 at width 3.
    auto add3b = ts::append_halt(gen_add(3, ts::in_word(3), ts::in_word(3, 4), ts::out_word(3)));
    CHECK(ts::run_value(add3b, 1 | (1 << 3), 6, 3) == 2);
}

TEST_CASE("set and move examples") {
    std::vector<Instruction> items;
    for (const auto& part : {gen_set(ts::bits("101"), ts::aux_word(3, 4)),
                             gen_mov(3, ts::aux_word(3, 4), ts::out_word(3))})
        items.insert(items.end(), part.items().begin(), part.items().end());
    items.push_back(Instruction::halt());
    auto out = run(InstructionSequence(std::move(items)), {}, 100);
    CHECK(out.registers.get(RegisterKind::aux, 4));
    CHECK(!out.registers.get(RegisterKind::aux, 5));
    CHECK(out.registers.get(RegisterKind::aux, 6));
    CHECK(out.registers.read_word(RegisterKind::output, 1, 3).str() == "101");

    CHECK(ts::run_value(ts::append_halt(gen_set(ts::bits("0"), ts::out_word(1))), 0, 0, 1) == 0);

    auto mov = ts::append_halt(gen_mov(4, ts::in_word(4), ts::out_word(4)));
    CHECK(ts::run_value(mov, 11, 4, 4) == 11);

    // Fully coinciding copy leaves the word unchanged.
    std::vector<Instruction> same;
    for (const auto& part : {gen_mov(3, ts::in_word(3), ts::aux_word(3, 2)),
                             gen_mov(3, ts::aux_word(3, 2), ts::aux_word(3, 2)),
                             gen_mov(3, ts::aux_word(3, 2), ts::out_word(3))})
        same.insert(same.end(), part.items().begin(), part.items().end());
    same.push_back(Instruction::halt());
    CHECK(ts::run_value(InstructionSequence(std::move(same)), 5, 3, 3) == 5);
}

TEST_CASE("zero padding example") {
    std::vector<Instruction> items;
    for (const auto& part : {gen_mov(2, ts::in_word(2), ts::aux_word(2, 2)),
                             gen_zpad(2, 1, ts::aux_word(2, 2)),
                             gen_mov(2, ts::aux_word(2, 2), ts::out_word(2))})
        items.insert(items.end(), part.items().begin(), part.items().end());
    items.push_back(Instruction::halt());
    CHECK(ts::run_value(InstructionSequence(std::move(items)), 3, 2, 2) == 1); // 11 -> 10
}

TEST_CASE("test-on-nonzero landing positions") {
    // Harness: gadget ; out:1.set:1 ; out:2.set:1 ; !
    auto probe = [&](std::uint32_t n, std::uint64_t v) {
        std::vector<Instruction> items;
        auto g = gen_tstnz(n, ts::in_word(n));
        items.insert(items.end(), g.items().begin(), g.items().end());
        items.push_back(Instruction::plain(basic_set(RegisterRef::out(1), true)));
        items.push_back(Instruction::plain(basic_set(RegisterRef::out(2), true)));
        items.push_back(Instruction::halt());
        auto out = run(InstructionSequence(std::move(items)), BitWord::from_value(v, n), 1000);
        REQUIRE(out.kind == OutcomeKind::terminated);
        REQUIRE(out.registers.get(RegisterKind::output, 2));
        return out.registers.get(RegisterKind::output, 1);
    };
    CHECK(!probe(2, 0)); // zero word: the first following instruction is skipped
    CHECK(probe(2, 1));  // 10
    CHECK(probe(2, 2));  // 01
    CHECK(probe(2, 3));
    for (std::uint32_t n = 1; n <= 6; ++n)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
            CHECK(probe(n, v) == (v != 0));
}

TEST_CASE("gadgets leave everything but their destination untouched") {
    std::mt19937_64 rng(99);
    auto check_banks = [](const ExecutionOutcome& out, std::uint32_t dst_width, bool add_carry) {
        // Destination lives in out:1..dst_width; nothing else may change
        // from the all-zero initial state except (for add) the carry.
        const auto& aux = out.registers.bank(RegisterKind::aux);
        for (std::size_t i = 0; i < aux.size(); ++i)
            if (!(add_carry && i == 0))
                CHECK(aux[i] == 0);
        const auto& outs = out.registers.bank(RegisterKind::output);
        CHECK(outs.size() <= dst_width);
    };
    for (int round = 0; round < 50; ++round) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 6);
        std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % n);
        std::uint64_t a = rng() & ((std::uint64_t{1} << n) - 1);
        std::uint64_t b = rng() & ((std::uint64_t{1} << n) - 1);
        BitWord in_a = BitWord::from_value(a, n);
        BitWord in_ab = BitWord::from_value(a | (b << n), 2 * n);

        auto single_src = {
            gen_mov(n, ts::in_word(n), ts::out_word(n)),
            gen_shl(n, m, ts::in_word(n), ts::out_word(n)),
            gen_shr(n, m, ts::in_word(n), ts::out_word(n)),
            gen_dec(n, ts::in_word(n), ts::out_word(n)),
            gen_inc(n, ts::in_word(n), ts::out_word(n)),
            gen_set(BitWord::from_value(b, n), ts::out_word(n)),
        };
        for (const auto& g : single_src) {
            auto s = ts::append_halt(g);
            check_banks(run(s, in_a, s.length()), n, false);
        }

        auto add = ts::append_halt(gen_add(n, ts::in_word(n), ts::in_word(n, n + 1), ts::out_word(n)));
        check_banks(run(add, in_ab, add.length()), n, true);

        // The test gadgets write nothing at all.
        auto tst = ts::append_halt(gen_tstnz(n, ts::in_word(n)));
        auto out = run(tst, in_a, tst.length() + 1);
        CHECK(out.registers.bank(RegisterKind::aux).empty());
        CHECK(out.registers.bank(RegisterKind::output).empty());
        auto tne = ts::append_halt(gen_tstne(n, ts::in_word(n), BitWord::from_value(b, n)));
        out = run(tne, in_a, tne.length() + 1);
        CHECK(out.registers.bank(RegisterKind::aux).empty());
        CHECK(out.registers.bank(RegisterKind::output).empty());
    }
}

TEST_CASE("every gadget emits forward-only direct-addressing code") {
    for (std::uint32_t n : {1u, 3u, 6u}) {
        std::vector<InstructionSequence> all = {
            gen_tstnz(n, ts::in_word(n)),
            gen_tstne(n, ts::in_word(n), BitWord::repeat(true, n)),
            gen_dec(n, ts::in_word(n), ts::out_word(n)),
            gen_inc(n, ts::in_word(n), ts::out_word(n)),
            gen_add(n, ts::in_word(n), ts::in_word(n, n + 1), ts::out_word(n)),
            gen_set(BitWord::repeat(true, n), ts::out_word(n)),
            gen_mov(n, ts::in_word(n), ts::out_word(n)),
            gen_shl(n, 1, ts::in_word(n), ts::out_word(n)),
            gen_shr(n, 1, ts::in_word(n), ts::out_word(n)),
        };
        if (n >= 2)
            all.push_back(gen_zpad(n, 1, ts::out_word(n)));
        for (const auto& s : all) {
            CHECK(s.feature_level() == FeatureLevel::forward_only);
            CHECK(!well_formedness_violation(s));
        }
    }
}

TEST_CASE("exhaustive oracle sweeps at small widths") {
    for (std::uint32_t n = 1; n <= 5; ++n) {
        for (bool in_place : {false, true}) {
            CAPTURE(n);
            CAPTURE(in_place);
            for (GadgetKind kind : {GadgetKind::tstnz, GadgetKind::dec, GadgetKind::inc,
                                    GadgetKind::set, GadgetKind::mov}) {
                auto report = verify_gadget(kind, n, 1, in_place);
                CAPTURE(to_string(kind));
                CHECK(report.pass);
                CHECK(report.cases == (std::uint64_t{1} << n));
            }
            auto tne = verify_gadget(GadgetKind::tstne, n, 1, in_place);
            CHECK(tne.pass);
            CHECK(tne.cases == (std::uint64_t{1} << (2 * n)));
            for (std::uint32_t m = 1; m <= n; ++m) {
                CHECK(verify_gadget(GadgetKind::shl, n, m, in_place).pass);
                CHECK(verify_gadget(GadgetKind::shr, n, m, in_place).pass);
                if (m < n)
                    CHECK(verify_gadget(GadgetKind::zpad, n, m, in_place).pass);
            }
        }
    }
    for (std::uint32_t n = 1; n <= 4; ++n) {
        auto report = verify_gadget(GadgetKind::add, n, 1, false);
        CHECK(report.pass);
        CHECK(report.cases == (std::uint64_t{1} << (2 * n)));
        CHECK(verify_gadget(GadgetKind::add, n, 1, true).pass);
    }
}

TEST_CASE("parallel sweeps agree with single-threaded ones") {
    for (unsigned jobs : {1u, 2u, 4u}) {
        VerifyOptions opts;
        opts.jobs = jobs;
        auto report = verify_gadget(GadgetKind::add, 3, 1, false, opts);
        CHECK(report.pass);
        CHECK(report.cases == 64);
    }
    VerifyOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 2000;
    sampled.seed = 42;
    sampled.jobs = 2;
    auto a = verify_gadget(GadgetKind::add, 8, 1, false, sampled);
    auto b = verify_gadget(GadgetKind::add, 8, 1, false, sampled);
    CHECK(a.pass);
    CHECK(a.cases == 2000);
    CHECK(b.pass == a.pass);
}
