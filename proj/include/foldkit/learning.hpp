#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foldkit/logic.hpp"
#include "foldkit/model.hpp"

namespace foldkit {

// Learner-side view of the background theory. Accumulates invented
// abnormality clauses next to the base program and keeps the deduced model
// cached; the cache is invalidated whenever the theory grows.
class CoverageContext {
public:
    CoverageContext(const BackgroundTheory& base, const std::set<Atom>& positives,
                    const std::set<Atom>& negatives)
        : working_(base) {
        std::set<std::string> constants = base.constants();
        auto scan = [&constants](const std::set<Atom>& examples) {
            for (const Atom& example : examples)
                for (const Term& t : example.args)
                    if (!t.is_var()) constants.insert(t.name);
        };
        scan(positives);
        scan(negatives);
        universe_.assign(constants.begin(), constants.end());
    }

    void add_ab_clause(const Clause& clause) {
        if (clause.is_fact())
            working_.facts.insert(clause.head);
        else
            working_.clauses.push_back(clause);
        model_.reset();
    }

    // Drops abnormality clauses added after a snapshot (MDL rollback).
    struct Snapshot {
        std::size_t clause_count;
        std::size_t fact_count;
    };
    Snapshot snapshot() const { return {working_.clauses.size(), working_.facts.size()}; }
    void rollback(const Snapshot& snap, const std::vector<Clause>& dropped) {
        working_.clauses.resize(snap.clause_count);
        for (const Clause& clause : dropped)
            if (clause.is_fact()) working_.facts.erase(clause.head);
        model_.reset();
    }

    const Model& model() const {
        if (!model_) model_ = deduce(working_, {universe_.begin(), universe_.end()});
        return *model_;
    }

    const std::vector<std::string>& universe() const { return universe_; }
    const BackgroundTheory& working_theory() const { return working_; }

    bool satisfies(const Clause& clause, const Atom& example) const {
        return clause_covers_example(clause, example, model(), universe_);
    }

    std::set<Atom> covered(const Clause& clause, const std::set<Atom>& examples) const {
        std::set<Atom> out;
        for (const Atom& example : examples)
            if (satisfies(clause, example)) out.insert(example);
        return out;
    }

private:
    BackgroundTheory working_;
    std::vector<std::string> universe_;
    mutable std::optional<Model> model_;
};

// Hook pair that LIME-FOLD uses to restrict the search; the plain learners
// use the defaults. `exception_phase` flips on each positive/negative swap.
class LearnPolicy {
public:
    virtual ~LearnPolicy() = default;

    // Candidate predicates for refining a clause, given the positives it
    // currently covers and the negatives still covered.
    virtual std::vector<PredicateSignature> language(const std::set<Atom>& covered_positives,
                                                     const std::set<Atom>& covered_negatives,
                                                     bool exception_phase) const = 0;

    // Extra admission test for counting a positive example as covered.
    virtual bool counts_positive(const Clause& clause, const Atom& example,
                                 bool exception_phase) const = 0;

    virtual bool restricts() const { return false; }
};

class PlainPolicy final : public LearnPolicy {
public:
    explicit PlainPolicy(std::vector<PredicateSignature> language)
        : language_(std::move(language)) {}

    std::vector<PredicateSignature> language(const std::set<Atom>&, const std::set<Atom>&,
                                             bool) const override {
        return language_;
    }

    bool counts_positive(const Clause&, const Atom&, bool) const override { return true; }

private:
    std::vector<PredicateSignature> language_;
};

// Positive-example coverage under a policy: body satisfaction plus the
// policy's admission test.
inline std::set<Atom> covered_positives(const CoverageContext& ctx, const LearnPolicy& policy,
                                        const Clause& clause, const std::set<Atom>& examples,
                                        bool exception_phase) {
    std::set<Atom> out;
    for (const Atom& example : examples)
        if (policy.counts_positive(clause, example, exception_phase) &&
            ctx.satisfies(clause, example))
            out.insert(example);
    return out;
}

inline std::vector<PredicateSignature> background_language(const BackgroundTheory& theory,
                                                           const std::string& target) {
    return theory.language({target});
}

// Diagnostics accumulated across a learning run. `converged` is false when a
// cap was hit or a clause had to be emitted while still covering negatives.
struct LearnDiagnostics {
    std::vector<std::string> warnings;
    bool converged = true;

    void warn(std::string message) {
        warnings.push_back(std::move(message));
    }
};

}  // namespace foldkit
