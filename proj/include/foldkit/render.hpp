#pragma once

#include <string>

#include "foldkit/logic.hpp"

namespace foldkit {

inline std::string render_atom(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i > 0) out += ", ";
            out += atom.args[i].name;
        }
        out += ')';
    }
    return out;
}

inline std::string render_literal(const Literal& lit) {
    return lit.negated ? "not " + render_atom(lit.atom) : render_atom(lit.atom);
}

inline std::string render_clause(const Clause& clause) {
    std::string out = render_atom(clause.head);
    if (!clause.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < clause.body.size(); ++i) {
            if (i > 0) out += ", ";
            out += render_literal(clause.body[i]);
        }
    }
    out += '.';
    return out;
}

// One clause per line, defaults first then abnormalities, insertion order
// preserved. parse_program() accepts the output unchanged.
inline std::string render_asp(const Hypothesis& hypothesis) {
    std::string out;
    for (const Clause& clause : hypothesis.defaults) {
        out += render_clause(clause);
        out += '\n';
    }
    for (const Clause& clause : hypothesis.abnormalities) {
        out += render_clause(clause);
        out += '\n';
    }
    return out;
}

inline std::string render_theory(const BackgroundTheory& theory) {
    std::string out;
    for (const Clause& clause : theory.clauses) {
        out += render_clause(clause);
        out += '\n';
    }
    for (const Atom& fact : theory.facts) {
        out += render_atom(fact);
        out += ".\n";
    }
    return out;
}

}  // namespace foldkit
