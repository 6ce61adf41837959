#include "isq/analysis.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

namespace isq {

HaltsReport decide_halts(const InstructionSequence& seq, const BitWord& inputs,
                         const ExecOptions& opts) {
    if (auto violation = well_formedness_violation(seq))
        throw ValidationError("halting analysis requires a well-formed sequence: " + *violation);

    std::uint64_t bound;
    if (seq.feature_level() == FeatureLevel::forward_only) {
        // The position only moves forward, so any run is over within
        // length(seq) steps.
        bound = seq.length();
    } else {
        // A run longer than (length + 1) * 2^(writable registers) revisits a
        // (position, registers) pair and therefore never halts. Inputs are
        // read-only in a well-formed sequence and do not enter the count.
        RequiredRegisters req = required_registers(seq);
        std::uint64_t writable = req.max_out + req.max_aux;
        std::uint64_t states = seq.length() + 1;
        if (writable >= 63 || states > (std::uint64_t{1} << (63 - writable)))
            throw BoundError("(" + std::to_string(states) + ") * 2^" + std::to_string(writable));
        bound = states << writable;
    }

    ExecutionOutcome outcome = run(seq, inputs, bound, opts);
    if (outcome.kind == OutcomeKind::terminated)
        return HaltsReport{true, outcome.steps, bound};
    // Inaction is divergence, not termination; exceeding the bound means a
    // state repeated.
    return HaltsReport{false, 0, bound};
}

std::string outcome_descriptor(const InstructionSequence& seq, const BitWord& inputs,
                               std::size_t out_width, std::uint64_t budget,
                               const ExecOptions& opts) {
    ExecutionOutcome outcome = run(seq, inputs, budget, opts);
    switch (outcome.kind) {
    case OutcomeKind::terminated:
        return "out=" + outcome.registers.read_word(RegisterKind::output, 1, out_width).str();
    case OutcomeKind::inaction:
        return "inaction";
    case OutcomeKind::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

namespace {

// Runs check(i) for i in [0, count) across `jobs` workers and returns the
// lowest failing index with its payload. Chunked statically so the result
// does not depend on scheduling.
template <typename Check>
std::optional<std::pair<std::uint64_t, EquivWitness>>
scan_lowest_failure(std::uint64_t count, unsigned jobs, Check check) {
    if (jobs <= 1 || count < 64) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (auto w = check(i))
                return std::make_pair(i, std::move(*w));
        return std::nullopt;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
    std::vector<std::optional<std::pair<std::uint64_t, EquivWitness>>> found(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        threads.emplace_back([&, t] {
            std::uint64_t lo = count * t / workers;
            std::uint64_t hi = count * (t + 1) / workers;
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (auto w = check(i)) {
                    found[t] = std::make_pair(i, std::move(*w));
                    return;
                }
            }
        });
    }
    for (auto& th : threads)
        th.join();
    std::optional<std::pair<std::uint64_t, EquivWitness>> best;
    for (auto& f : found)
        if (f && (!best || f->first < best->first))
            best = std::move(f);
    return best;
}

BitWord random_word(std::mt19937_64& rng, unsigned n) {
    BitWord w;
    for (unsigned i = 0; i < n; ++i)
        w.push_back((rng() & 1) != 0);
    return w;
}

} // namespace

EquivReport io_equivalent(const InstructionSequence& x, const InstructionSequence& y,
                          unsigned n, unsigned m, std::uint64_t budget,
                          const EquivOptions& opts) {
    std::vector<BitWord> sampled;
    std::uint64_t count;
    if (opts.exhaustive) {
        if (n > 24)
            throw ValidationError("exhaustive comparison is limited to 24 input bits");
        count = std::uint64_t{1} << n;
    } else {
        std::mt19937_64 rng(opts.seed);
        sampled.reserve(opts.samples);
        for (std::uint64_t i = 0; i < opts.samples; ++i)
            sampled.push_back(random_word(rng, n));
        count = sampled.size();
    }

    auto input_at = [&](std::uint64_t i) {
        return opts.exhaustive ? BitWord::from_value(i, n) : sampled[i];
    };
    auto check = [&](std::uint64_t i) -> std::optional<EquivWitness> {
        BitWord input = input_at(i);
        std::string lhs = outcome_descriptor(x, input, m, budget, opts.exec);
        std::string rhs = outcome_descriptor(y, input, m, budget, opts.exec);
        if (lhs == rhs)
            return std::nullopt;
        return EquivWitness{std::move(input), std::move(lhs), std::move(rhs)};
    };

    auto failure = scan_lowest_failure(count, opts.jobs, check);
    EquivReport report;
    report.cases = count;
    if (failure) {
        report.equivalent = false;
        report.witness = std::move(failure->second);
    }
    return report;
}

} // namespace isq
