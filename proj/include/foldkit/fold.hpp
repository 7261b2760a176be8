#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foldkit/foil.hpp"
#include "foldkit/learning.hpp"
#include "foldkit/logic.hpp"
#include "foldkit/render.hpp"

namespace foldkit {

// Mints ab0, ab1, ... skipping names already taken by the background
// language.
class AbCounter {
public:
    explicit AbCounter(const BackgroundTheory& theory) {
        for (const PredicateSignature& signature : theory.language()) taken_.insert(signature.name);
    }

    std::string mint() {
        for (;;) {
            std::string name = "ab" + std::to_string(next_index_++);
            if (!taken_.count(name)) return name;
        }
    }

    std::size_t next_index() const { return next_index_; }

private:
    std::size_t next_index_ = 0;
    std::set<std::string> taken_;
};

struct FoldConfig {
    std::size_t max_rule_length = 6;
    std::size_t max_clauses = 64;
    std::size_t exception_depth_cap = 3;
    bool mdl_enabled = false;
};

// Residual noise handling: unexplained examples become ground unit clauses,
// so learning always has a converging base case.
inline std::vector<Clause> enumerate_as_facts(const std::set<Atom>& residual) {
    std::vector<Clause> out;
    out.reserve(residual.size());
    for (const Atom& example : residual) out.push_back(Clause{example, {}});
    return out;
}

// Description length of a clause set under the unit cost model: one unit per
// clause plus one per body literal. Ground facts cost exactly one unit.
inline std::size_t description_length(const std::vector<Clause>& clauses) {
    std::size_t units = 0;
    for (const Clause& clause : clauses) units += 1 + clause.length();
    return units;
}

// Negative-mode enumeration: the covered negatives become ground abnormality
// facts and the clause is guarded with the negated abnormality.
struct EnumeratedException {
    Clause guarded;
    std::vector<Clause> ab_facts;
};

inline EnumeratedException enumerate_negative_exception(Clause clause,
                                                        const std::set<Atom>& covered_negatives,
                                                        const std::string& ab_name) {
    EnumeratedException out;
    for (const Atom& example : covered_negatives)
        out.ab_facts.push_back(Clause{Atom{ab_name, example.args}, {}});
    clause.body.push_back(Literal{Atom{ab_name, clause.head.args}, true});
    out.guarded = std::move(clause);
    return out;
}

// MDL guard: stop and enumerate when the clauses under consideration cost
// more than writing every residual example down as a ground fact.
inline bool mdl_prefers_enumeration(std::size_t added_units, std::size_t residual_count) {
    return added_units > residual_count;
}

namespace detail {

class FoldLearner {
public:
    FoldLearner(std::string target, const BackgroundTheory& theory, const std::set<Atom>& positives,
                const std::set<Atom>& negatives, const FoldConfig& config,
                const LearnPolicy& policy, LearnDiagnostics& diag)
        : target_(std::move(target)),
          config_(config),
          policy_(policy),
          diag_(diag),
          ctx_(theory, positives, negatives),
          counter_(theory) {}

    Hypothesis run(const std::set<Atom>& positives, const std::set<Atom>& negatives) {
        Hypothesis hypothesis;
        hypothesis.defaults = fold(positives, negatives, 0, false);
        hypothesis.abnormalities = ab_clauses_;
        return hypothesis;
    }

private:
    // The recursive FOLD function. Returns the clause set learned for this
    // (sub)problem; abnormality clauses go to the shared AB set.
    std::vector<Clause> fold(std::set<Atom> positives, const std::set<Atom>& negatives, int depth,
                             bool exception_phase) {
        std::vector<Clause> clauses;
        while (!positives.empty()) {
            if (clauses.size() >= config_.max_clauses) {
                diag_.warn("clause cap reached; enumerating " + std::to_string(positives.size()) +
                           " residual positives");
                diag_.converged = false;
                for (Clause& fact : enumerate_as_facts(positives)) clauses.push_back(std::move(fact));
                break;
            }

            const CoverageContext::Snapshot snap = ctx_.snapshot();
            const std::size_t ab_mark = ab_clauses_.size();
            Clause clause = most_general_clause(target_, positives.begin()->arity());
            clause = specialize(std::move(clause), positives, negatives, depth, exception_phase);

            if (config_.mdl_enabled) {
                std::vector<Clause> added(ab_clauses_.begin() + ab_mark, ab_clauses_.end());
                added.push_back(clause);
                if (mdl_prefers_enumeration(description_length(added), positives.size())) {
                    std::vector<Clause> dropped(ab_clauses_.begin() + ab_mark, ab_clauses_.end());
                    ab_clauses_.resize(ab_mark);
                    ctx_.rollback(snap, dropped);
                    for (Clause& fact : enumerate_as_facts(positives))
                        clauses.push_back(std::move(fact));
                    positives.clear();
                    break;
                }
            }

            const std::set<Atom> covered =
                covered_positives(ctx_, policy_, clause, positives, exception_phase);
            if (covered.empty()) {
                // abandon the clause along with any abnormalities minted for it
                std::vector<Clause> dropped(ab_clauses_.begin() + ab_mark, ab_clauses_.end());
                ab_clauses_.resize(ab_mark);
                ctx_.rollback(snap, dropped);
                diag_.warn("specialized clause covers no remaining positive; enumerating " +
                           std::to_string(positives.size()) + " residual positives");
                for (Clause& fact : enumerate_as_facts(positives)) clauses.push_back(std::move(fact));
                break;
            }
            clauses.push_back(clause);
            for (const Atom& example : covered) positives.erase(example);
        }
        return clauses;
    }

    // SPECIALIZE: grow the clause with positive literals while the gain is
    // positive; otherwise learn an exception (positives and negatives
    // swapped) or enumerate the covered negatives as ground abnormality facts.
    Clause specialize(Clause clause, std::set<Atom> positives, std::set<Atom> negatives, int depth,
                      bool exception_phase) {
        const std::set<Atom> original_positives = positives;
        negatives = ctx_.covered(clause, negatives);

        while (!negatives.empty() && clause.length() < config_.max_rule_length) {
            const std::set<Atom> protected_positives =
                covered_positives(ctx_, policy_, clause, original_positives, exception_phase);
            const std::vector<PredicateSignature> language =
                policy_.language(protected_positives, negatives, exception_phase);

            ScoredClause refined = best_literal_in(ctx_, policy_, clause, positives, negatives,
                                                   language, RefinementMode::PositiveOnly,
                                                   exception_phase);
            if (refined.gain > 0.0) {
                clause = std::move(refined.clause);
            } else {
                std::optional<Clause> guarded =
                    exception(clause, negatives, protected_positives, depth, exception_phase);
                if (guarded.has_value()) {
                    clause = std::move(*guarded);
                } else {
                    clause = attach_enumerated_exception(std::move(clause), negatives);
                }
            }

            const std::set<Atom> covered =
                covered_positives(ctx_, policy_, clause, positives, exception_phase);
            for (const Atom& example : covered) positives.erase(example);
            negatives = ctx_.covered(clause, negatives);
        }

        if (!negatives.empty()) {
            diag_.warn("max rule length reached; '" + render_clause(clause) + "' still covers " +
                       std::to_string(negatives.size()) + " negatives");
            diag_.converged = false;
        }
        return clause;
    }

    // EXCEPTION: when the swapped problem has a gainful positive literal,
    // learn it recursively, mint an abnormality predicate, translate the
    // learned clauses into abnormality clauses, and guard the defended
    // clause with the negated abnormality.
    std::optional<Clause> exception(const Clause& defended, const std::set<Atom>& swapped_positives,
                                    const std::set<Atom>& swapped_negatives, int depth,
                                    bool exception_phase) {
        if (depth + 1 > static_cast<int>(config_.exception_depth_cap)) {
            diag_.warn("exception depth cap reached; enumerating instead of recursing");
            return std::nullopt;
        }
        const std::vector<PredicateSignature> language =
            policy_.language(swapped_positives, swapped_negatives, !exception_phase);
        ScoredClause probe =
            best_literal_in(ctx_, policy_, defended, swapped_positives, swapped_negatives, language,
                            RefinementMode::PositiveOnly, !exception_phase);
        if (probe.gain <= 0.0) return std::nullopt;

        const std::vector<Clause> learned =
            fold(swapped_positives, swapped_negatives, depth + 1, !exception_phase);
        if (learned.empty()) return std::nullopt;

        const std::string ab_name = counter_.mint();
        for (const Clause& clause : learned) {
            Clause ab_clause{Atom{ab_name, clause.head.args}, clause.body};
            ab_clauses_.push_back(ab_clause);
            ctx_.add_ab_clause(ab_clause);
        }

        Clause guarded = defended;
        guarded.body.push_back(Literal{Atom{ab_name, defended.head.args}, true});
        return guarded;
    }

    // Exception learning failed: the covered negatives are noise. Enumerate
    // them as ground abnormality facts and guard the clause.
    Clause attach_enumerated_exception(Clause clause, const std::set<Atom>& covered_negatives) {
        EnumeratedException enumerated =
            enumerate_negative_exception(std::move(clause), covered_negatives, counter_.mint());
        for (Clause& fact : enumerated.ab_facts) {
            ab_clauses_.push_back(fact);
            ctx_.add_ab_clause(fact);
        }
        return std::move(enumerated.guarded);
    }

    std::string target_;
    FoldConfig config_;
    const LearnPolicy& policy_;
    LearnDiagnostics& diag_;
    CoverageContext ctx_;
    AbCounter counter_;
    std::vector<Clause> ab_clauses_;
};

}  // namespace detail

namespace detail {

inline void validate_examples(const std::string& caller, const std::string& target,
                              const std::set<Atom>& positives, const std::set<Atom>& negatives) {
    for (const std::set<Atom>* examples : {&positives, &negatives})
        for (const Atom& example : *examples)
            if (example.predicate != target)
                throw ContractError(caller + ": example predicate '" + example.predicate +
                                    "' does not match target '" + target + "'");
    for (const Atom& example : positives)
        if (negatives.count(example))
            throw ContractError(caller + ": positive and negative examples overlap");
}

}  // namespace detail

inline Hypothesis fold_learn_with_policy(const std::string& target, const BackgroundTheory& theory,
                                         const std::set<Atom>& positives,
                                         const std::set<Atom>& negatives, const FoldConfig& config,
                                         const LearnPolicy& policy,
                                         LearnDiagnostics* diagnostics = nullptr) {
    LearnDiagnostics local;
    LearnDiagnostics& diag = diagnostics ? *diagnostics : local;
    detail::validate_examples("fold_learn", target, positives, negatives);
    if (positives.empty()) return {};

    detail::FoldLearner learner(target, theory, positives, negatives, config, policy, diag);
    return learner.run(positives, negatives);
}

// FOLD: learn defaults with positive literals only, recursing on swapped
// example sets for exceptions; residual noise is enumerated as ground facts.
inline Hypothesis fold_learn(const std::string& target, const BackgroundTheory& theory,
                             const std::set<Atom>& positives, const std::set<Atom>& negatives,
                             const FoldConfig& config = {},
                             LearnDiagnostics* diagnostics = nullptr) {
    PlainPolicy policy(background_language(theory, target));
    return fold_learn_with_policy(target, theory, positives, negatives, config, policy,
                                  diagnostics);
}

}  // namespace foldkit
