// Reader and writer for the statement language.
//
//   concept bird.                 declarations
//   role moves_by.
//   bird < animal.                specialization axiom
//   flying_object = (all moves_by flying).
//   pcond bird -> flying_object : [0.95, 1].
//   pcond bird -> antarctic_bird : 0.20.
//
// Statements end with '.', comments run from '#' to end of line.
// Probabilities are decimals (converted exactly) or rationals a/b.
// Parsing never aborts mid-file: on error it reports a diagnostic and
// resumes at the next statement terminator.

#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"
#include "palc/kb.hpp"
#include "palc/rational.hpp"
#include "palc/terminology.hpp"

namespace palc {

enum class Severity : std::uint8_t { Error, Warning };

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
};

struct Diagnostic {
    Severity severity;
    SourceSpan span;
    std::string message;
};

inline std::string format_diagnostic(const Diagnostic& d) {
    return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
           (d.severity == Severity::Error ? ": error: " : ": warning: ") + d.message;
}

struct ParseResult {
    Terminology terminology;
    std::vector<PConditioning> conditionings;
    std::vector<Diagnostic> diagnostics;

    bool ok() const {
        for (const Diagnostic& d : diagnostics)
            if (d.severity == Severity::Error) return false;
        return true;
    }
};

namespace detail {

enum class Tok : std::uint8_t {
    Ident,
    Keyword,
    Number,
    Dot,
    Less,
    Equals,
    Arrow,
    Colon,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Slash,
    End,
    Bad,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

inline bool is_keyword(const std::string& s) {
    static const char* kw[] = {"concept", "role", "pcond", "top",  "bottom",
                               "and",     "or",   "not",   "all",  "some"};
    for (const char* k : kw)
        if (s == k) return true;
    return false;
}

inline std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diagnostics) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourceSpan span{line, col, 1};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            span.length = static_cast<int>(word.size());
            out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Ident, word, span});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            std::string num = text.substr(i, j - i);
            span.length = static_cast<int>(num.size());
            out.push_back({Tok::Number, num, span});
            advance(j - i);
            continue;
        }
        switch (c) {
            case '.': out.push_back({Tok::Dot, ".", span}); advance(1); continue;
            case '<': out.push_back({Tok::Less, "<", span}); advance(1); continue;
            case '=': out.push_back({Tok::Equals, "=", span}); advance(1); continue;
            case ':': out.push_back({Tok::Colon, ":", span}); advance(1); continue;
            case '[': out.push_back({Tok::LBracket, "[", span}); advance(1); continue;
            case ']': out.push_back({Tok::RBracket, "]", span}); advance(1); continue;
            case '(': out.push_back({Tok::LParen, "(", span}); advance(1); continue;
            case ')': out.push_back({Tok::RParen, ")", span}); advance(1); continue;
            case ',': out.push_back({Tok::Comma, ",", span}); advance(1); continue;
            case '/': out.push_back({Tok::Slash, "/", span}); advance(1); continue;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    span.length = 2;
                    out.push_back({Tok::Arrow, "->", span});
                    advance(2);
                    continue;
                }
                [[fallthrough]];
            default:
                diagnostics.push_back({Severity::Error, span,
                                       std::string("unexpected character '") + c + "'"});
                advance(1);
                continue;
        }
    }
    out.push_back({Tok::End, "", {line, col, 0}});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, ParseResult& result)
        : toks_(std::move(tokens)), result_(result) {}

    void parse_document() {
        while (peek().kind != Tok::End) parse_statement();
    }

    // Parses one concept expression; used standalone for query arguments.
    std::optional<Concept> parse_concept_only() {
        auto c = parse_concept();
        if (c && peek().kind != Tok::End)
            error(peek(), "unexpected input after concept expression");
        return c;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void error(const Token& at, std::string message) {
        result_.diagnostics.push_back({Severity::Error, at.span, std::move(message)});
    }

    void recover_to_dot() {
        while (peek().kind != Tok::End) {
            if (next().kind == Tok::Dot) return;
        }
    }

    bool expect(Tok kind, const char* what) {
        if (peek().kind == kind) {
            next();
            return true;
        }
        describe_unexpected(what);
        return false;
    }

    void describe_unexpected(const char* what) {
        const Token& t = peek();
        if (t.kind == Tok::End)
            error(t, std::string("unexpected end of input, expected ") + what);
        else if (t.kind == Tok::Keyword)
            error(t, "'" + t.text + "' is a reserved word, expected " + what);
        else
            error(t, std::string("expected ") + what + ", found '" + t.text + "'");
    }

    std::optional<std::string> parse_ident(const char* what) {
        if (peek().kind == Tok::Ident) return next().text;
        describe_unexpected(what);
        return std::nullopt;
    }

    void parse_statement() {
        const Token& t = peek();
        if (t.kind == Tok::Keyword && (t.text == "concept" || t.text == "role")) {
            bool is_role = t.text == "role";
            next();
            auto name = parse_ident("an identifier");
            if (!name || !expect(Tok::Dot, "'.'")) return recover_to_dot();
            try {
                if (is_role)
                    result_.terminology.declare_role(*name);
                else
                    result_.terminology.declare_concept(*name);
            } catch (const TerminologyError& e) {
                result_.diagnostics.push_back({Severity::Error, t.span, e.what()});
            }
            return;
        }
        if (t.kind == Tok::Keyword && t.text == "pcond") {
            next();
            parse_pcond();
            return;
        }
        if (t.kind == Tok::Ident) {
            std::string lhs = next().text;
            AxiomKind kind;
            if (peek().kind == Tok::Less)
                kind = AxiomKind::Specialization;
            else if (peek().kind == Tok::Equals)
                kind = AxiomKind::Definition;
            else {
                describe_unexpected("'<' or '=' after the axiom's left side");
                return recover_to_dot();
            }
            next();
            auto rhs = parse_concept();
            if (!rhs || !expect(Tok::Dot, "'.'")) return recover_to_dot();
            try {
                result_.terminology.add_axiom({kind, std::move(lhs), std::move(*rhs)});
            } catch (const TerminologyError& e) {
                result_.diagnostics.push_back({Severity::Error, t.span, e.what()});
            }
            return;
        }
        describe_unexpected("a statement (declaration, axiom, or pcond)");
        recover_to_dot();
    }

    void parse_pcond() {
        auto antecedent = parse_concept();
        if (!antecedent || !expect(Tok::Arrow, "'->'")) return recover_to_dot();
        auto consequent = parse_concept();
        if (!consequent || !expect(Tok::Colon, "':'")) return recover_to_dot();
        auto range = parse_range();
        if (!range || !expect(Tok::Dot, "'.'")) return recover_to_dot();
        result_.conditionings.push_back(
            {std::move(*antecedent), std::move(*consequent), *range});
    }

    std::optional<Concept> parse_concept() {
        const Token& t = peek();
        if (t.kind == Tok::Ident) return Concept::symbol(next().text);
        if (t.kind == Tok::Keyword && t.text == "top") {
            next();
            return Concept::top();
        }
        if (t.kind == Tok::Keyword && t.text == "bottom") {
            next();
            return Concept::bottom();
        }
        if (t.kind == Tok::LParen) {
            next();
            const Token& op = peek();
            if (op.kind != Tok::Keyword ||
                !(op.text == "and" || op.text == "or" || op.text == "not" || op.text == "all" ||
                  op.text == "some")) {
                describe_unexpected("an operator (and, or, not, all, some)");
                return std::nullopt;
            }
            std::string name = next().text;
            std::optional<Concept> result;
            if (name == "and" || name == "or") {
                auto a = parse_concept();
                if (!a) return std::nullopt;
                auto b = parse_concept();
                if (!b) return std::nullopt;
                result = name == "and" ? Concept::conjunction(std::move(*a), std::move(*b))
                                       : Concept::disjunction(std::move(*a), std::move(*b));
            } else if (name == "not") {
                auto a = parse_concept();
                if (!a) return std::nullopt;
                result = Concept::negation(std::move(*a));
            } else {
                auto role = parse_ident("a role name");
                if (!role) return std::nullopt;
                auto a = parse_concept();
                if (!a) return std::nullopt;
                result = name == "all" ? Concept::forall(std::move(*role), std::move(*a))
                                       : Concept::exists(std::move(*role), std::move(*a));
            }
            if (!expect(Tok::RParen, "')'")) return std::nullopt;
            return result;
        }
        describe_unexpected("a concept expression");
        return std::nullopt;
    }

    std::optional<Rat> parse_number() {
        if (peek().kind != Tok::Number) {
            describe_unexpected("a number");
            return std::nullopt;
        }
        Token first = next();
        if (peek().kind == Tok::Slash) {
            next();
            if (peek().kind != Tok::Number) {
                describe_unexpected("a denominator");
                return std::nullopt;
            }
            Token second = next();
            if (first.text.find('.') != std::string::npos ||
                second.text.find('.') != std::string::npos) {
                error(first, "rational parts must be integers");
                return std::nullopt;
            }
            BigInt den(second.text);
            if (den == 0) {
                error(second, "zero denominator");
                return std::nullopt;
            }
            return Rat(BigInt(first.text), den);
        }
        auto value = rat_from_decimal(first.text);
        if (!value) {
            error(first, "malformed number '" + first.text + "'");
            return std::nullopt;
        }
        return value;
    }

    std::optional<Interval> parse_range() {
        Rat lo, hi;
        Token at = peek();
        if (peek().kind == Tok::LBracket) {
            next();
            auto a = parse_number();
            if (!a || !expect(Tok::Comma, "','")) return std::nullopt;
            auto b = parse_number();
            if (!b || !expect(Tok::RBracket, "']'")) return std::nullopt;
            lo = *a;
            hi = *b;
        } else {
            auto a = parse_number();
            if (!a) return std::nullopt;
            lo = hi = *a;
        }
        bool bad = false;
        if (lo < 0 || lo > 1 || hi < 0 || hi > 1) {
            error(at, "interval out of bounds: probabilities must lie in [0, 1]");
            bad = true;
        }
        if (lo > hi) {
            error(at, "interval lo > hi");
            bad = true;
        }
        if (bad) return std::nullopt;
        return Interval(lo, hi);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseResult& result_;
};

}  // namespace detail

inline ParseResult parse_kb(const std::string& text) {
    ParseResult result;
    auto tokens = detail::lex(text, result.diagnostics);
    detail::Parser parser(std::move(tokens), result);
    parser.parse_document();
    return result;
}

// Parses a single concept expression, e.g. a query argument.
inline std::optional<Concept> parse_concept_text(const std::string& text,
                                                 std::vector<Diagnostic>& diagnostics) {
    ParseResult scratch;
    auto tokens = detail::lex(text, scratch.diagnostics);
    detail::Parser parser(std::move(tokens), scratch);
    auto c = parser.parse_concept_only();
    diagnostics.insert(diagnostics.end(), scratch.diagnostics.begin(),
                       scratch.diagnostics.end());
    if (!scratch.ok()) return std::nullopt;
    return c;
}

inline std::string serialize_interval(const Interval& r) {
    if (r.is_point()) return rat_to_string(r.lo);
    return "[" + rat_to_string(r.lo) + ", " + rat_to_string(r.hi) + "]";
}

inline std::string serialize_kb(const KnowledgeBase& kb) {
    std::string out;
    const Terminology& t = kb.terminology();
    for (const std::string& name : t.concept_names()) out += "concept " + name + ".\n";
    for (const std::string& name : t.role_names()) out += "role " + name + ".\n";
    for (const Axiom& ax : t.axioms())
        out += ax.lhs + (ax.kind == AxiomKind::Specialization ? " < " : " = ") +
               to_text(ax.rhs) + ".\n";
    for (const PConditioning& pc : kb.conditionings())
        out += "pcond " + to_text(pc.antecedent) + " -> " + to_text(pc.consequent) + " : " +
               serialize_interval(pc.range) + ".\n";
    return out;
}

}  // namespace palc
