#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foldkit/errors.hpp"
#include "foldkit/learning.hpp"
#include "foldkit/logic.hpp"
#include "foldkit/refinement.hpp"
#include "foldkit/render.hpp"

namespace foldkit {

// Binding counts behind the information-gain heuristic. For unary targets on
// tabular data bindings coincide with covered examples: p/n count examples,
// t counts positives that survive adding the literal.
struct GainStats {
    double p0 = 0;  // positives covered by the current rule
    double n0 = 0;  // negatives covered by the current rule
    double p1 = 0;  // positives covered after adding the literal
    double n1 = 0;  // negatives covered after adding the literal
    double t = 0;   // positive bindings surviving the addition
};

// Weighted information gain. Zero-coverage candidates score 0 by convention;
// a rule covering no positives at all is a caller bug.
inline double information_gain(const GainStats& stats) {
    if (stats.p0 < 0 || stats.n0 < 0 || stats.p1 < 0 || stats.n1 < 0 || stats.t < 0)
        throw ContractError("information_gain: negative count");
    if (stats.p1 <= 0 || stats.t <= 0) return 0.0;
    if (stats.p0 <= 0)
        throw ContractError("information_gain: current rule covers no positive example");
    if (stats.t > std::min(stats.p0, stats.p1))
        throw ContractError("information_gain: t exceeds min(p0, p1)");
    const double after = std::log2(stats.p1 / (stats.p1 + stats.n1));
    const double before = std::log2(stats.p0 / (stats.p0 + stats.n0));
    return stats.t * (after - before);
}

struct ScoredClause {
    Clause clause;
    double gain = 0.0;
};

// Max-gain refinement of `clause` over the candidate list, ties broken by
// candidate order (first maximum wins). An empty candidate list returns the
// input with gain 0.
inline ScoredClause best_literal_in(const CoverageContext& ctx, const LearnPolicy& policy,
                                    const Clause& clause, const std::set<Atom>& positives,
                                    const std::set<Atom>& negatives,
                                    const std::vector<PredicateSignature>& language,
                                    RefinementMode mode, bool exception_phase = false) {
    const std::set<Atom> base_pos =
        covered_positives(ctx, policy, clause, positives, exception_phase);
    const std::set<Atom> base_neg = ctx.covered(clause, negatives);

    ScoredClause best{clause, 0.0};
    bool found = false;
    for (Clause& candidate : refine_candidates(clause, language, mode)) {
        const std::set<Atom> cand_pos =
            covered_positives(ctx, policy, candidate, positives, exception_phase);
        const std::set<Atom> cand_neg = ctx.covered(candidate, negatives);

        GainStats stats;
        stats.p0 = static_cast<double>(base_pos.size());
        stats.n0 = static_cast<double>(base_neg.size());
        stats.p1 = static_cast<double>(cand_pos.size());
        stats.n1 = static_cast<double>(cand_neg.size());
        std::size_t surviving = 0;
        for (const Atom& example : cand_pos) surviving += base_pos.count(example);
        stats.t = static_cast<double>(surviving);

        const double gain = information_gain(stats);
        if (!found || gain > best.gain) {
            best = {std::move(candidate), gain};
            found = true;
        }
    }
    return best;
}

// Spec-level convenience entry point; builds a one-shot context.
inline ScoredClause best_literal(const Clause& clause, const std::set<Atom>& positives,
                                 const std::set<Atom>& negatives, const BackgroundTheory& theory,
                                 const std::vector<PredicateSignature>& language,
                                 RefinementMode mode) {
    CoverageContext ctx(theory, positives, negatives);
    PlainPolicy policy(language);
    return best_literal_in(ctx, policy, clause, positives, negatives, language, mode);
}

struct FoilConfig {
    std::size_t max_clause_length = 6;
    std::size_t max_clauses = 64;
    RefinementMode mode = RefinementMode::WithNegation;
};

// Sequential covering with greedy information-gain literal selection. The
// inner loop may pick NAF literals (naively, as literal twins); zero-gain
// deadlocks emit the clause as-is with a warning.
inline Hypothesis foil_learn(const std::string& target, const BackgroundTheory& theory,
                             const std::set<Atom>& positives, const std::set<Atom>& negatives,
                             const FoilConfig& config = {},
                             LearnDiagnostics* diagnostics = nullptr) {
    LearnDiagnostics local;
    LearnDiagnostics& diag = diagnostics ? *diagnostics : local;

    for (const std::set<Atom>* examples : {&positives, &negatives})
        for (const Atom& example : *examples)
            if (example.predicate != target)
                throw ContractError("foil_learn: example predicate '" + example.predicate +
                                    "' does not match target '" + target + "'");
    for (const Atom& example : positives)
        if (negatives.count(example))
            throw ContractError("foil_learn: positive and negative examples overlap");

    Hypothesis hypothesis;
    if (positives.empty()) return hypothesis;

    const std::size_t arity = positives.begin()->arity();
    CoverageContext ctx(theory, positives, negatives);
    PlainPolicy policy(background_language(theory, target));
    const std::vector<PredicateSignature> language = background_language(theory, target);

    std::set<Atom> remaining = positives;
    while (!remaining.empty()) {
        if (hypothesis.defaults.size() >= config.max_clauses) {
            diag.warn("clause cap reached with " + std::to_string(remaining.size()) +
                      " positives uncovered; returning partial hypothesis");
            diag.converged = false;
            break;
        }

        Clause clause = most_general_clause(target, arity);
        std::set<Atom> covered_neg = ctx.covered(clause, negatives);
        while (!covered_neg.empty() && clause.length() < config.max_clause_length) {
            ScoredClause refined =
                best_literal_in(ctx, policy, clause, remaining, covered_neg, language, config.mode);
            if (refined.gain <= 0.0) {
                diag.warn("no candidate literal has positive gain; emitting '" +
                          render_clause(clause) + "' while " + std::to_string(covered_neg.size()) +
                          " negatives remain covered");
                diag.converged = false;
                break;
            }
            clause = std::move(refined.clause);
            covered_neg = ctx.covered(clause, covered_neg);
        }
        if (!covered_neg.empty() && clause.length() >= config.max_clause_length) {
            diag.warn("max clause length reached with " + std::to_string(covered_neg.size()) +
                      " negatives still covered");
            diag.converged = false;
        }

        const std::set<Atom> covered_pos = ctx.covered(clause, remaining);
        if (covered_pos.empty()) {
            diag.warn("learned clause covers no remaining positive; stopping with " +
                      std::to_string(remaining.size()) + " uncovered");
            diag.converged = false;
            break;
        }
        hypothesis.defaults.push_back(clause);
        for (const Atom& example : covered_pos) remaining.erase(example);
    }
    return hypothesis;
}

}  // namespace foldkit
