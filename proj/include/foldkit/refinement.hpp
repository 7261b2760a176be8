#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "foldkit/logic.hpp"
#include "foldkit/subsumption.hpp"

namespace foldkit {

enum class RefinementMode {
    PositiveOnly,   // FOLD's SPECIALIZE: positive literals only
    WithNegation,   // FOIL: every positive candidate also yields its NAF twin
};

namespace detail {

// Argument tuples over existing clause variables plus at most one fresh
// variable, in lexicographic order (existing variables by first appearance,
// the fresh variable last). Tuples using no existing variable are dropped:
// the new literal must stay linked to the clause.
inline std::vector<std::vector<Term>> binding_patterns(const std::vector<std::string>& vars,
                                                       const std::string& fresh,
                                                       std::size_t arity) {
    std::vector<std::vector<Term>> out;
    std::vector<std::size_t> choice(arity, 0);
    const std::size_t options = vars.size() + 1;  // index vars.size() = fresh
    for (;;) {
        bool uses_existing = false;
        for (std::size_t position : choice)
            if (position < vars.size()) uses_existing = true;
        if (uses_existing) {
            std::vector<Term> args;
            args.reserve(arity);
            for (std::size_t position : choice)
                args.push_back(Term::var(position < vars.size() ? vars[position] : fresh));
            out.push_back(std::move(args));
        }
        // odometer increment
        std::size_t i = arity;
        while (i > 0) {
            --i;
            if (++choice[i] < options) break;
            choice[i] = 0;
            if (i == 0) return out;
        }
        if (arity == 0) return out;
    }
}

inline bool redundant_extension(const Clause& base, const Clause& extended) {
    // `extended` is base plus one literal, so base always subsumes it; the
    // extension is vacuous iff the subsumption also holds the other way.
    return theta_subsumes(extended, base).has_value();
}

}  // namespace detail

// One-literal specializations of `clause` under theta-subsumption. Each
// candidate adds a literal sharing at least one variable with the clause and
// introducing at most one fresh variable. Candidates theta-equivalent to the
// input are excluded. Order: in WithNegation mode all NAF candidates first,
// then all positive ones; within each block by predicate name then binding
// pattern. FOIL's gain ties resolve to the first candidate, which makes the
// naive NAF handling prefer negated literals exactly where constructive ones
// offer no advantage.
inline std::vector<Clause> refine_candidates(const Clause& clause,
                                             const std::vector<PredicateSignature>& language,
                                             RefinementMode mode) {
    const std::vector<std::string> vars = clause.variables();
    const std::string fresh = fresh_variable_name(vars);

    std::vector<PredicateSignature> ordered = language;
    std::sort(ordered.begin(), ordered.end());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    std::vector<Clause> positives;
    for (const PredicateSignature& signature : ordered) {
        if (signature.arity == 0) continue;  // propositional literal cannot link
        for (std::vector<Term>& args : detail::binding_patterns(vars, fresh, signature.arity)) {
            Clause candidate = clause;
            candidate.body.push_back(Literal{Atom{signature.name, std::move(args)}, false});
            if (!detail::redundant_extension(clause, candidate)) positives.push_back(std::move(candidate));
        }
    }

    if (mode == RefinementMode::PositiveOnly) return positives;

    std::vector<Clause> out;
    for (const Clause& candidate : positives) {
        Clause twin = candidate;
        twin.body.back().negated = true;
        if (!detail::redundant_extension(clause, twin)) out.push_back(std::move(twin));
    }
    out.insert(out.end(), positives.begin(), positives.end());
    return out;
}

}  // namespace foldkit
