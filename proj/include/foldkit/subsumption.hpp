#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foldkit/logic.hpp"

namespace foldkit {

// Substitution mapping variables of the more general clause to terms of the
// more specific one.
using Substitution = std::map<std::string, Term>;

namespace detail {

// One-way matching: extend theta so that pattern*theta == target. Variables
// of `target` act as constants.
inline bool match_atom(const Atom& pattern, const Atom& target, Substitution& theta) {
    if (pattern.predicate != target.predicate || pattern.arity() != target.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& from = pattern.args[i];
        const Term& to = target.args[i];
        if (!from.is_var()) {
            if (from != to) return false;
            continue;
        }
        auto it = theta.find(from.name);
        if (it == theta.end())
            theta.emplace(from.name, to);
        else if (it->second != to)
            return false;
    }
    return true;
}

inline bool subsume_body(const std::vector<Literal>& body_c, std::size_t index,
                         const std::vector<Literal>& body_d, Substitution& theta) {
    if (index == body_c.size()) return true;
    const Literal& lit = body_c[index];
    for (const Literal& candidate : body_d) {
        if (candidate.negated != lit.negated) continue;
        Substitution extended = theta;
        if (!match_atom(lit.atom, candidate.atom, extended)) continue;
        if (subsume_body(body_c, index + 1, body_d, extended)) {
            theta = std::move(extended);
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Clause c theta-subsumes clause d iff some substitution maps head(c) onto
// head(d) and body(c) into body(d). Backtracking over body literal matchings;
// returns the witnessing substitution on success.
inline std::optional<Substitution> theta_subsumes(const Clause& c, const Clause& d) {
    Substitution theta;
    if (!detail::match_atom(c.head, d.head, theta)) return std::nullopt;
    if (!detail::subsume_body(c.body, 0, d.body, theta)) return std::nullopt;
    return theta;
}

}  // namespace foldkit
