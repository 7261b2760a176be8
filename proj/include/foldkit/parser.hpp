#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "foldkit/errors.hpp"
#include "foldkit/logic.hpp"

namespace foldkit {

// Recursive-descent parser for the program surface syntax:
//
//   head :- lit1, not lit2.     % clause with NAF
//   penguin(polly).             % fact
//   p :- not q.                 % propositional atoms allowed
//
// Variables are capitalized identifiers, constants and predicates lowercase
// (constants may start with a digit). `true` as the whole body means an empty
// body. `%` starts a comment.
class ProgramParser {
public:
    explicit ProgramParser(std::string_view text) : text_(text) {}

    BackgroundTheory parse() {
        BackgroundTheory theory;
        skip_space();
        while (!at_end()) {
            Clause clause = parse_clause();
            note_arity(clause.head);
            for (const Literal& lit : clause.body) note_arity(lit.atom);
            if (clause.is_fact())
                theory.facts.insert(std::move(clause.head));
            else
                theory.clauses.push_back(std::move(clause));
            skip_space();
        }
        return theory;
    }

private:
    Clause parse_clause() {
        Clause clause;
        clause.head = parse_atom();
        skip_space();
        if (try_consume(":-")) {
            skip_space();
            if (peek_word("true")) {
                consume_word("true");
            } else {
                clause.body.push_back(parse_literal());
                skip_space();
                while (try_consume(",")) {
                    skip_space();
                    clause.body.push_back(parse_literal());
                    skip_space();
                }
            }
            skip_space();
        }
        if (!try_consume(".")) fail("expected '.' at end of clause");
        return clause;
    }

    Literal parse_literal() {
        Literal lit;
        if (peek_word("not")) {
            consume_word("not");
            skip_space();
            lit.negated = true;
        }
        lit.atom = parse_atom();
        return lit;
    }

    Atom parse_atom() {
        skip_space();
        if (at_end()) fail("expected atom");
        Atom atom;
        if (!std::islower(static_cast<unsigned char>(peek())))
            fail("predicate must start with a lowercase letter");
        atom.predicate = parse_identifier();
        skip_space();
        if (try_consume("(")) {
            skip_space();
            atom.args.push_back(parse_term());
            skip_space();
            while (try_consume(",")) {
                skip_space();
                atom.args.push_back(parse_term());
                skip_space();
            }
            if (!try_consume(")")) fail("expected ')'");
        }
        return atom;
    }

    Term parse_term() {
        if (at_end()) fail("expected term");
        const char c = peek();
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_')
            return Term::var(parse_identifier());
        if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)))
            return Term::constant(parse_identifier());
        fail("expected variable or constant");
        return {};
    }

    std::string parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                advance();
            else
                break;
        }
        if (pos_ == start) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    void note_arity(const Atom& atom) {
        auto [it, inserted] = arities_.emplace(atom.predicate, atom.arity());
        if (!inserted && it->second != atom.arity())
            fail("predicate '" + atom.predicate + "' used with arity " + std::to_string(atom.arity()) +
                 " but earlier with arity " + std::to_string(it->second));
    }

    bool peek_word(std::string_view word) const {
        if (text_.compare(pos_, word.size(), word) != 0) return false;
        const std::size_t after = pos_ + word.size();
        if (after < text_.size()) {
            const char c = text_[after];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
        }
        return true;
    }

    void consume_word(std::string_view word) {
        for (std::size_t i = 0; i < word.size(); ++i) advance();
    }

    bool try_consume(std::string_view token) {
        if (text_.compare(pos_, token.size(), token) != 0) return false;
        for (std::size_t i = 0; i < token.size(); ++i) advance();
        return true;
    }

    void skip_space() {
        while (!at_end()) {
            const char c = peek();
            if (c == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, column_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::map<std::string, std::size_t> arities_;
};

inline BackgroundTheory parse_program(std::string_view text) {
    return ProgramParser(text).parse();
}

// Example files hold one ground atom per line (trailing '.' optional).
inline std::set<Atom> parse_ground_atoms(std::string_view text) {
    std::string normalized;
    normalized.reserve(text.size() + 16);
    for (std::size_t i = 0; i < text.size(); ++i) {
        normalized.push_back(text[i]);
        if (text[i] == '\n') {
            // Ensure each nonblank line ends in '.' so the program parser accepts it.
            std::size_t back = normalized.size();
            while (back > 0 && std::isspace(static_cast<unsigned char>(normalized[back - 1]))) --back;
            if (back > 0 && normalized[back - 1] != '.') normalized.insert(back, ".");
        }
    }
    std::size_t back = normalized.size();
    while (back > 0 && std::isspace(static_cast<unsigned char>(normalized[back - 1]))) --back;
    if (back > 0 && normalized[back - 1] != '.') normalized.insert(back, ".");

    BackgroundTheory parsed = parse_program(normalized);
    if (!parsed.clauses.empty())
        throw ParseError("example files may only contain ground atoms");
    return parsed.facts;
}

}  // namespace foldkit
