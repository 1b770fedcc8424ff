#ifndef QELONG_PIPELINE_HPP
#define QELONG_PIPELINE_HPP

// Replay of the dissection derivations: each script walks a chain of
// congruent series, asserting every intermediate step before moving on.
// Steps operate on an actual modular q-series, so a transcription error in
// any displayed expression fails loudly at a small exponent.

#include "congruence.hpp"
#include "expr.hpp"

namespace qelong {

struct PipelineStep {
    enum class Action {
        start,        // current := eval(expr)
        assert_eq,    // assert current == eval(expr), then current := eval(expr)
        extract,      // current := extract(current, m, r)
        assert_zero,  // assert current == 0 to its precision
        extract_zero, // assert extract(current, m, r) == 0 for each listed r
        support_mod   // assert current is supported on exponents == 0 (mod m)
    };

    Action action = Action::assert_eq;
    ExprPtr expr;                     // start / assert_eq
    long long m = 0;                  // extract / extract_zero / support_mod
    long long r = 0;                  // extract
    std::vector<long long> residues;  // extract_zero
    std::string note;                 // citation id for reporting
};

struct PipelineScript {
    std::string id;
    std::uint64_t modulus = 5;
    bool uses_c = false;
    std::vector<PipelineStep> steps;
};

struct PipelineStepResult {
    std::string note;
    bool pass = true;
    long long checked_to = 0;
    std::optional<long long> first_mismatch;
};

struct PipelineReport {
    std::string id;
    std::optional<long long> c;
    bool pass = true;
    std::vector<PipelineStepResult> steps;
    long long precision_used = 0;
    double wall_seconds = 0.0;
};

// Executes the script mod its modulus at precision budget N.  Comparisons
// use the full provable window of the running series; a window shrinking
// below min_evidence terms is a precision error, never a silent pass.
inline PipelineReport replay_pipeline(const PipelineScript& script, long long N,
                                      const EvalContext& ctx = {},
                                      long long min_evidence = 16) {
    auto t0 = std::chrono::steady_clock::now();
    PipelineReport rep;
    rep.id = script.id;
    rep.c = script.uses_c ? ctx.c : std::nullopt;
    if (script.uses_c && !ctx.c)
        throw std::invalid_argument("pipeline " + script.id +
                                    " needs a value for the parameter c");
    // Every dissection divides the provable window by its modulus; raise the
    // starting precision so the deepest slice still spans min_evidence terms.
    long long shrink = 1;
    for (const auto& step : script.steps) {
        if (step.action == PipelineStep::Action::extract ||
            step.action == PipelineStep::Action::extract_zero)
            shrink *= step.m;
    }
    N = std::max(N, (min_evidence + 4) * shrink);
    rep.precision_used = N;
    ModRing ring(script.modulus);
    std::optional<Series<ModRing>> cur;
    for (const auto& step : script.steps) {
        PipelineStepResult res;
        res.note = step.note;
        switch (step.action) {
        case PipelineStep::Action::start:
            cur = eval_expr(*step.expr, N, ring, ctx);
            res.checked_to = cur->precision();
            break;
        case PipelineStep::Action::assert_eq: {
            if (!cur) throw std::logic_error("pipeline step before start");
            long long target = cur->precision();
            if (target < min_evidence)
                throw insufficient_precision("pipeline " + script.id +
                                             " window shrank below evidence threshold");
            Series<ModRing> rhs = eval_expr(*step.expr, target, ring, ctx);
            res.checked_to = target;
            res.first_mismatch = first_difference(*cur, rhs, target);
            res.pass = !res.first_mismatch.has_value();
            cur = rhs.precision() > target ? rhs.truncated(target) : rhs;
            break;
        }
        case PipelineStep::Action::extract:
            if (!cur) throw std::logic_error("pipeline step before start");
            cur = extract(*cur, step.m, step.r);
            res.checked_to = cur->precision();
            break;
        case PipelineStep::Action::assert_zero: {
            if (!cur) throw std::logic_error("pipeline step before start");
            long long target = cur->precision();
            if (target < min_evidence)
                throw insufficient_precision("pipeline " + script.id +
                                             " window shrank below evidence threshold");
            auto zero = Series<ModRing>::zero(ring, target);
            res.checked_to = target;
            res.first_mismatch = first_difference(*cur, zero, target);
            res.pass = !res.first_mismatch.has_value();
            break;
        }
        case PipelineStep::Action::extract_zero: {
            if (!cur) throw std::logic_error("pipeline step before start");
            for (long long r : step.residues) {
                Series<ModRing> slice = extract(*cur, step.m, r);
                long long target = slice.precision();
                if (target < min_evidence)
                    throw insufficient_precision(
                        "pipeline " + script.id +
                        " window shrank below evidence threshold");
                auto zero = Series<ModRing>::zero(ring, target);
                if (!res.first_mismatch)
                    res.first_mismatch = first_difference(slice, zero, target);
                res.checked_to = std::max(res.checked_to, target);
            }
            res.pass = !res.first_mismatch.has_value();
            break;
        }
        case PipelineStep::Action::support_mod: {
            if (!cur) throw std::logic_error("pipeline step before start");
            for (long long n = cur->valuation(); n < cur->precision(); ++n)
                if (cur->coeff(n) != 0 && ((n % step.m) + step.m) % step.m != 0) {
                    res.first_mismatch = n;
                    break;
                }
            res.checked_to = cur->precision();
            res.pass = !res.first_mismatch.has_value();
            break;
        }
        }
        rep.steps.push_back(res);
        if (!res.pass) {
            rep.pass = false;
            break;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace qelong

#endif
