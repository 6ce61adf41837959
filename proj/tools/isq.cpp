// Command-line front end: generate, execute, measure, and verify
// instruction sequences over Boolean registers.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isq/analysis.hpp"
#include "isq/gadgets.hpp"
#include "isq/indexed.hpp"
#include "isq/lmul.hpp"
#include "isq/machine.hpp"
#include "isq/text.hpp"
#include "isq/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_inaction = 2;
constexpr int exit_budget = 3;
constexpr int exit_witness = 4;
constexpr int exit_bound = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw isq::Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw isq::Error("cannot write '" + path + "'");
    out << contents;
}

isq::InstructionSequence load_sequence(const std::string& path) {
    return isq::parse(read_file(path));
}

struct ModeFlags {
    std::vector<std::string> mode; // "exhaustive" or "sample [K]"
    std::uint64_t k = 10000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

void add_mode_flags(CLI::App* cmd, ModeFlags& flags) {
    cmd->add_option("--mode", flags.mode,
                    "exhaustive (default) or sample, optionally followed by the sample count")
        ->expected(1, 2);
    cmd->add_option("--k", flags.k, "sample count for sampled mode");
    cmd->add_option("--seed", flags.seed, "sample generator seed (64-bit unsigned)");
    cmd->add_option("--jobs", flags.jobs, "worker threads");
}

isq::VerifyOptions make_verify_options(const ModeFlags& flags) {
    isq::VerifyOptions opts;
    opts.seed = flags.seed;
    opts.jobs = flags.jobs;
    if (!flags.mode.empty() && flags.mode[0] == "sample") {
        opts.exhaustive = false;
        opts.samples = flags.mode.size() > 1 ? std::stoull(flags.mode[1]) : flags.k;
    } else if (!flags.mode.empty() && flags.mode[0] != "exhaustive") {
        throw isq::ValidationError("mode must be 'exhaustive' or 'sample'");
    }
    return opts;
}

isq::LmulVariant variant_from(int v) {
    if (v < 1 || v > 4)
        throw isq::ValidationError("variant must be 1, 2, 3, or 4");
    return static_cast<isq::LmulVariant>(v);
}

void emit_generated(const isq::InstructionSequence& seq, const std::string& out_path) {
    std::string info = "length=" + std::to_string(seq.length()) +
                       " feature=" + std::string(isq::to_string(seq.feature_level()));
    if (out_path.empty()) {
        std::cout << isq::serialize(seq) << "\n";
        std::cerr << info << "\n";
    } else {
        write_file(out_path, isq::serialize(seq) + "\n");
        std::cout << info << "\n";
    }
}

struct GenGadgetArgs {
    std::string kind;
    std::uint32_t n = 0;
    std::uint32_t m = 1;
    std::string src, src1, src2, dst, word_bits;
    std::string out_path;
};

isq::InstructionSequence build_gadget(const GenGadgetArgs& a) {
    using isq::word;
    auto kind = isq::gadget_kind_from_string(a.kind);
    if (!kind)
        throw isq::ValidationError("unknown gadget kind '" + a.kind + "'");
    auto ref = [&](const std::string& text, const char* fallback) {
        return isq::parse_register_ref(text.empty() ? fallback : text);
    };
    std::uint32_t n = a.n;
    if (n == 0 && (*kind == isq::GadgetKind::set || *kind == isq::GadgetKind::tstne))
        n = static_cast<std::uint32_t>(a.word_bits.size());
    if (n == 0)
        throw isq::ValidationError("--n is required");

    switch (*kind) {
    case isq::GadgetKind::tstnz:
        return isq::gen_tstnz(n, word(ref(a.src, "in:1"), n));
    case isq::GadgetKind::tstne:
        return isq::gen_tstne(n, word(ref(a.src, "in:1"), n), isq::BitWord::from_string(a.word_bits));
    case isq::GadgetKind::dec:
        return isq::gen_dec(n, word(ref(a.src, "in:1"), n), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::inc:
        return isq::gen_inc(n, word(ref(a.src, "in:1"), n), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::shl:
        return isq::gen_shl(n, a.m, word(ref(a.src, "in:1"), n), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::shr:
        return isq::gen_shr(n, a.m, word(ref(a.src, "in:1"), n), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::add: {
        std::string fallback2 = "in:" + std::to_string(n + 1);
        return isq::gen_add(n, word(ref(a.src1.empty() ? a.src : a.src1, "in:1"), n),
                            word(ref(a.src2, fallback2.c_str()), n), word(ref(a.dst, "out:1"), n));
    }
    case isq::GadgetKind::set:
        return isq::gen_set(isq::BitWord::from_string(a.word_bits), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::mov:
        return isq::gen_mov(n, word(ref(a.src, "in:1"), n), word(ref(a.dst, "out:1"), n));
    case isq::GadgetKind::zpad:
        return isq::gen_zpad(n, a.m, word(ref(a.dst, "out:1"), n));
    }
    throw isq::ValidationError("unknown gadget kind");
}

int do_run(const std::string& path, const std::string& in_bits, std::int64_t m_flag,
           std::uint64_t budget, bool no_indexed, bool force) {
    isq::InstructionSequence seq = load_sequence(path);
    if (auto violation = isq::well_formedness_violation(seq))
        throw isq::ValidationError(*violation);
    isq::BitWord inputs = isq::BitWord::from_string(in_bits);
    isq::RequiredRegisters req = isq::required_registers(seq);
    // For indexed sequences the requirement is an upper bound over all index
    // values, so any shorter input word is acceptable there.
    bool indexed = seq.feature_level() == isq::FeatureLevel::with_indexed_addressing;
    bool size_ok = indexed ? inputs.size() <= req.max_in : inputs.size() == req.max_in;
    if (!force && !size_ok)
        throw isq::ValidationError("sequence reads " + (indexed ? "up to " : std::string()) +
                                   std::to_string(req.max_in) + " input bits but " +
                                   std::to_string(inputs.size()) +
                                   " were supplied (--force to run anyway)");
    std::size_t m = m_flag >= 0 ? static_cast<std::size_t>(m_flag) : req.max_out;
    isq::ExecOptions opts{!no_indexed};
    isq::ExecutionOutcome outcome = isq::run(seq, inputs, budget, opts);
    switch (outcome.kind) {
    case isq::OutcomeKind::terminated:
        std::cout << "outcome=terminated steps=" << outcome.steps << " out="
                  << outcome.registers.read_word(isq::RegisterKind::output, 1, m).str() << "\n";
        return exit_ok;
    case isq::OutcomeKind::inaction:
        std::cout << "outcome=inaction pc=" << outcome.pc_at_failure
                  << " steps=" << outcome.steps << "\n";
        return exit_inaction;
    case isq::OutcomeKind::budget_exceeded:
        std::cout << "outcome=budget-exceeded budget=" << outcome.budget << "\n";
        return exit_budget;
    }
    return exit_error;
}

int report_verify(const std::string& header, const isq::VerifyReport& report,
                  std::chrono::steady_clock::time_point started) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cout << header << " cases=" << report.cases
              << " result=" << (report.pass ? "pass" : "fail");
    if (report.counterexample)
        std::cout << " input=" << report.counterexample->input.str()
                  << " expected=" << report.counterexample->expected
                  << " actual=" << report.counterexample->actual;
    std::cout << "\n";
    std::cerr << "wall_time_ms=" << elapsed << "\n";
    return report.pass ? exit_ok : exit_error;
}

struct LenArgs {
    std::string n_range = "1..16";
    std::string variants = "1,2,3";
    bool csv = false;
    bool check = false;
};

int do_len(const LenArgs& args) {
    auto dots = args.n_range.find("..");
    std::uint64_t lo, hi;
    if (dots == std::string::npos) {
        lo = hi = std::stoull(args.n_range);
    } else {
        lo = std::stoull(args.n_range.substr(0, dots));
        hi = std::stoull(args.n_range.substr(dots + 2));
    }
    if (lo == 0 || hi < lo)
        throw isq::ValidationError("bad range '" + args.n_range + "'");

    std::vector<int> variants;
    for (std::size_t pos = 0; pos < args.variants.size();) {
        auto comma = args.variants.find(',', pos);
        std::string item = args.variants.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
        variants.push_back(std::stoi(item));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    auto has = [&](int v) { return std::find(variants.begin(), variants.end(), v) != variants.end(); };

    isq::LengthModel model;
    isq::AffineLogFit fit;
    if (has(4))
        fit = isq::lmul4_length_fit();

    const char* sep = args.csv ? "," : "  ";
    std::cout << "n";
    for (int v : variants)
        std::cout << sep << "len" << v;
    if (has(1) && has(2))
        std::cout << sep << "len2_gt_len1";
    if (has(1) && has(3))
        std::cout << sep << "len3_lt_len1";
    if (has(3) && has(4))
        std::cout << sep << "len4_lt_len3";
    std::cout << "\n";

    bool ok = true;
    auto complain = [&ok](const std::string& msg) {
        std::cout << "check-failure: " << msg << "\n";
        ok = false;
    };
    for (std::uint64_t n = lo; n <= hi; ++n) {
        std::uint64_t len[5] = {0, 0, 0, 0, 0};
        for (int v : variants)
            len[v] = model.length(variant_from(v), n);
        std::cout << n;
        for (int v : variants)
            std::cout << sep << len[v];
        if (has(1) && has(2))
            std::cout << sep << (len[2] > len[1] ? 1 : 0);
        if (has(1) && has(3))
            std::cout << sep << (len[3] < len[1] ? 1 : 0);
        if (has(3) && has(4))
            std::cout << sep << (len[4] < len[3] ? 1 : 0);
        std::cout << "\n";

        if (args.check) {
            for (int v : {1, 2, 3})
                if (has(v) && len[v] != isq::nominal_length(variant_from(v), n))
                    complain("len" + std::to_string(v) + "(" + std::to_string(n) +
                             ") != " + std::to_string(isq::nominal_length(variant_from(v), n)));
            if (has(1) && has(2) && !(len[2] > len[1]))
                complain("len2 <= len1 at n=" + std::to_string(n));
            if (has(1) && has(3) && n >= 2 && !(len[3] < len[1]))
                complain("len3 >= len1 at n=" + std::to_string(n));
            if (has(1) && has(3) && n == 1 && !(len[3] > len[1]))
                complain("len3 <= len1 at n=1");
            if (has(4) && len[4] != fit.eval(n))
                complain("len4(" + std::to_string(n) + ") is not affine in the log terms");
            if (has(3) && has(4) && n >= 6 && !(len[4] < len[3]))
                complain("len4 >= len3 at n=" + std::to_string(n));
        }
    }
    if (has(4))
        std::cout << "lmul4_constants a=" << fit.a << " b=" << fit.b << " c=" << fit.c << "\n";
    if (args.check)
        std::cout << "check=" << (ok ? "ok" : "failed") << "\n";
    return ok ? exit_ok : exit_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"instruction sequences over Boolean registers: generate, run, verify, measure"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instruction sequence");
    gen->require_subcommand(1);

    auto* gen_lmul_cmd = gen->add_subcommand("lmul", "generate a multiplier");
    int gl_variant = 1;
    std::uint32_t gl_n = 0;
    std::string gl_out;
    gen_lmul_cmd->add_option("--variant", gl_variant, "multiplier variant 1..4")->required();
    gen_lmul_cmd->add_option("--n", gl_n, "factor width in bits")->required();
    gen_lmul_cmd->add_option("--out", gl_out, "output file (stdout when absent)");

    auto* gen_gadget_cmd = gen->add_subcommand("gadget", "generate a word-operation gadget");
    GenGadgetArgs gg;
    gen_gadget_cmd->add_option("--kind", gg.kind, "tstnz|tstne|dec|inc|shl|shr|add|set|mov|zpad")
        ->required();
    gen_gadget_cmd->add_option("--n", gg.n, "word width in bits");
    gen_gadget_cmd->add_option("--m", gg.m, "shift distance (shl/shr/zpad)");
    gen_gadget_cmd->add_option("--src", gg.src, "source word base register (default in:1)");
    gen_gadget_cmd->add_option("--src1", gg.src1, "first source word base register");
    gen_gadget_cmd->add_option("--src2", gg.src2, "second source word base register");
    gen_gadget_cmd->add_option("--dst", gg.dst, "destination word base register (default out:1)");
    gen_gadget_cmd->add_option("--word", gg.word_bits, "constant bits, LSB first (set/tstne)");
    gen_gadget_cmd->add_option("--out", gg.out_path, "output file (stdout when absent)");

    // --- run ---------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "execute a sequence file");
    std::string run_path, run_in;
    std::int64_t run_m = -1;
    std::uint64_t run_budget = 10000000;
    bool run_no_indexed = false, run_force = false;
    run_cmd->add_option("file", run_path, "sequence file")->required();
    run_cmd->add_option("--in", run_in, "input bits, LSB first (in:1 is the leftmost character)");
    run_cmd->add_option("--m", run_m, "output bits to report (default: every referenced one)");
    run_cmd->add_option("--budget", run_budget, "step budget");
    run_cmd->add_flag("--no-indexed{true},--indexed{false}", run_no_indexed,
                      "reject / allow indexed references (allowed by default)");
    run_cmd->add_flag("--force", run_force, "run even if the input width does not match");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "compare generated code against its oracle");
    verify->require_subcommand(1);

    auto* verify_lmul_cmd = verify->add_subcommand("lmul", "verify a multiplier");
    int vl_variant = 1;
    std::uint32_t vl_n = 0;
    ModeFlags vl_mode;
    verify_lmul_cmd->add_option("--variant", vl_variant)->required();
    verify_lmul_cmd->add_option("--n", vl_n)->required();
    add_mode_flags(verify_lmul_cmd, vl_mode);

    auto* verify_gadget_cmd = verify->add_subcommand("gadget", "verify a word gadget");
    std::string vg_kind;
    std::uint32_t vg_n = 0, vg_m = 1;
    bool vg_in_place = false;
    ModeFlags vg_mode;
    verify_gadget_cmd->add_option("--kind", vg_kind)->required();
    verify_gadget_cmd->add_option("--n", vg_n)->required();
    verify_gadget_cmd->add_option("--m", vg_m, "shift distance (shl/shr/zpad)");
    verify_gadget_cmd->add_flag("--in-place", vg_in_place, "apply the gadget in place");
    add_mode_flags(verify_gadget_cmd, vg_mode);

    // --- len ---------------------------------------------------------------
    auto* len_cmd = app.add_subcommand("len", "tabulate generated sequence lengths");
    std::string len_target = "lmul";
    LenArgs len_args;
    len_cmd->add_option("target", len_target, "only 'lmul' is supported")
        ->check(CLI::IsMember({"lmul"}));
    len_cmd->add_option("--n-range", len_args.n_range, "A..B, inclusive");
    len_cmd->add_option("--variants", len_args.variants, "comma list out of 1,2,3,4");
    len_cmd->add_flag("--csv", len_args.csv, "comma-separated output");
    len_cmd->add_flag("--check", len_args.check,
                      "validate closed forms and orderings; nonzero exit on failure");

    // --- equiv -------------------------------------------------------------
    auto* equiv_cmd = app.add_subcommand("equiv", "compare the I/O behaviour of two sequences");
    std::string eq_a, eq_b;
    unsigned eq_n = 0, eq_m = 0;
    std::uint64_t eq_budget = 10000000;
    bool eq_no_indexed = false;
    ModeFlags eq_mode;
    equiv_cmd->add_option("a", eq_a, "first sequence file")->required();
    equiv_cmd->add_option("b", eq_b, "second sequence file")->required();
    equiv_cmd->add_option("--n", eq_n, "input bits")->required();
    equiv_cmd->add_option("--m", eq_m, "output bits")->required();
    equiv_cmd->add_option("--budget", eq_budget, "step budget per run");
    equiv_cmd->add_flag("--no-indexed{true},--indexed{false}", eq_no_indexed,
                        "reject / allow indexed references (allowed by default)");
    add_mode_flags(equiv_cmd, eq_mode);

    // --- halts -------------------------------------------------------------
    auto* halts_cmd = app.add_subcommand("halts", "bounded halting decision");
    std::string ha_path, ha_in;
    bool ha_no_indexed = false;
    halts_cmd->add_option("file", ha_path, "sequence file")->required();
    halts_cmd->add_option("--in", ha_in, "input bits, LSB first");
    halts_cmd->add_flag("--no-indexed{true},--indexed{false}", ha_no_indexed,
                        "reject / allow indexed references (allowed by default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_lmul_cmd->parsed()) {
            auto variant = variant_from(gl_variant);
            isq::InstructionSequence seq = [&] {
                switch (variant) {
                case isq::LmulVariant::lmul1: return isq::gen_lmul1(gl_n);
                case isq::LmulVariant::lmul2: return isq::gen_lmul2(gl_n);
                case isq::LmulVariant::lmul3: return isq::gen_lmul3(gl_n);
                case isq::LmulVariant::lmul4: return isq::gen_lmul4(gl_n);
                }
                throw isq::ValidationError("unknown multiplier variant");
            }();
            emit_generated(seq, gl_out);
            return exit_ok;
        }
        if (gen_gadget_cmd->parsed()) {
            emit_generated(build_gadget(gg), gg.out_path);
            return exit_ok;
        }
        if (run_cmd->parsed())
            return do_run(run_path, run_in, run_m, run_budget, run_no_indexed, run_force);
        if (verify_lmul_cmd->parsed()) {
            auto started = std::chrono::steady_clock::now();
            isq::VerifyReport report =
                isq::verify_lmul(variant_from(vl_variant), vl_n, make_verify_options(vl_mode));
            std::string header = "verify target=lmul variant=" + std::to_string(vl_variant) +
                                 " n=" + std::to_string(vl_n) +
                                 " mode=" + (make_verify_options(vl_mode).exhaustive ? "exhaustive"
                                                                                     : "sample");
            return report_verify(header, report, started);
        }
        if (verify_gadget_cmd->parsed()) {
            auto kind = isq::gadget_kind_from_string(vg_kind);
            if (!kind)
                throw isq::ValidationError("unknown gadget kind '" + vg_kind + "'");
            auto started = std::chrono::steady_clock::now();
            isq::VerifyReport report =
                isq::verify_gadget(*kind, vg_n, vg_m, vg_in_place, make_verify_options(vg_mode));
            std::string header = "verify target=gadget kind=" + vg_kind +
                                 " n=" + std::to_string(vg_n) +
                                 " mode=" + (make_verify_options(vg_mode).exhaustive ? "exhaustive"
                                                                                     : "sample");
            return report_verify(header, report, started);
        }
        if (len_cmd->parsed())
            return do_len(len_args);
        if (equiv_cmd->parsed()) {
            isq::InstructionSequence a = load_sequence(eq_a);
            isq::InstructionSequence b = load_sequence(eq_b);
            isq::EquivOptions opts;
            opts.exec.allow_indexed = !eq_no_indexed;
            opts.jobs = eq_mode.jobs;
            opts.seed = eq_mode.seed;
            if (!eq_mode.mode.empty() && eq_mode.mode[0] == "sample") {
                opts.exhaustive = false;
                opts.samples = eq_mode.mode.size() > 1 ? std::stoull(eq_mode.mode[1]) : eq_mode.k;
            }
            isq::EquivReport report = isq::io_equivalent(a, b, eq_n, eq_m, eq_budget, opts);
            if (report.equivalent) {
                std::cout << "result=equivalent cases=" << report.cases << "\n";
                return exit_ok;
            }
            std::cout << "result=witness input=" << report.witness->input.str()
                      << " lhs=" << report.witness->lhs << " rhs=" << report.witness->rhs << "\n";
            return exit_witness;
        }
        if (halts_cmd->parsed()) {
            isq::InstructionSequence seq = load_sequence(ha_path);
            isq::ExecOptions opts{!ha_no_indexed};
            try {
                isq::HaltsReport report =
                    isq::decide_halts(seq, isq::BitWord::from_string(ha_in), opts);
                if (report.halts)
                    std::cout << "result=halts steps=" << report.steps
                              << " bound=" << report.bound << "\n";
                else
                    std::cout << "result=never-halts bound=" << report.bound << "\n";
                return exit_ok;
            } catch (const isq::BoundError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return exit_bound;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
