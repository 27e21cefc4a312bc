// ============================================================================
// parser.cpp: Recursive-descent parser for the formula grammar
// ============================================================================
//
//   formula := iff
//   iff     := imp ("<->" imp)*
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "<" coal ">" unary | "[" coal "]" unary
//            | "box" unary | "dia" unary | atom
//   atom    := "true" | "false" | ident | "(" formula ")"
//   coal    := "{" (ident ("," ident)*)? "}"
//
// Sugar is lowered as soon as it is recognised.
// ============================================================================

#include "mcl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace mcl {

ParseError::ParseError(const std::string& msg, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + msg),
      position_(position) {}

namespace {

enum class Tok {
    End, Ident, LParen, RParen, LAngle, RAngle, LBracket, RBracket,
    LBrace, RBrace, Comma, Tilde, Amp, Bar, Arrow, DoubleArrow
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        auto single = [&](Tok k) {
            toks.push_back({k, std::string(1, c), start});
            ++i;
        };
        if (ident_start(c)) {
            while (i < text.size() && ident_char(text[i])) ++i;
            toks.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
        } else if (text.substr(i, 3) == "<->") {
            toks.push_back({Tok::DoubleArrow, "<->", start});
            i += 3;
        } else if (text.substr(i, 2) == "->") {
            toks.push_back({Tok::Arrow, "->", start});
            i += 2;
        } else {
            switch (c) {
                case '(': single(Tok::LParen); break;
                case ')': single(Tok::RParen); break;
                case '<': single(Tok::LAngle); break;
                case '>': single(Tok::RAngle); break;
                case '[': single(Tok::LBracket); break;
                case ']': single(Tok::RBracket); break;
                case '{': single(Tok::LBrace); break;
                case '}': single(Tok::RBrace); break;
                case ',': single(Tok::Comma); break;
                case '~': single(Tok::Tilde); break;
                case '&': single(Tok::Amp); break;
                case '|': single(Tok::Bar); break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", start);
            }
        }
    }
    toks.push_back({Tok::End, "", text.size()});
    return toks;
}

bool is_keyword(const std::string& s) {
    return s == "true" || s == "false" || s == "box" || s == "dia";
}

class Parser {
public:
    Parser(std::vector<Token> toks, const AgentUniverse& universe)
        : toks_(std::move(toks)), universe_(universe) {}

    Formula parse_all() {
        if (peek().kind == Tok::End) throw ParseError("empty input", 0);
        Formula f = parse_iff();
        if (peek().kind != Tok::End) {
            throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        }
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) {
            const auto& t = peek();
            throw ParseError(std::string("expected ") + what +
                                 (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"),
                             t.pos);
        }
    }

    Formula parse_iff() {
        Formula f = parse_imp();
        while (accept(Tok::DoubleArrow)) f = Formula::iff(f, parse_imp());
        return f;
    }

    Formula parse_imp() {
        Formula f = parse_or();
        if (accept(Tok::Arrow)) return Formula::implies(f, parse_imp());
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (accept(Tok::Bar)) f = Formula::disj(f, parse_and());
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (accept(Tok::Amp)) f = Formula::conj(f, parse_unary());
        return f;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Tilde:
                take();
                return Formula::neg(parse_unary());
            case Tok::LAngle: {
                take();
                Coalition c = parse_coalition();
                expect(Tok::RAngle, "'>'");
                return Formula::can(c, parse_unary());
            }
            case Tok::LBracket: {
                take();
                Coalition c = parse_coalition();
                expect(Tok::RBracket, "']'");
                return Formula::dual(c, parse_unary());
            }
            case Tok::Ident:
                if (t.text == "box") {
                    take();
                    return Formula::box(parse_unary());
                }
                if (t.text == "dia") {
                    take();
                    return Formula::dia(parse_unary());
                }
                return parse_atom();
            default:
                return parse_atom();
        }
    }

    Formula parse_atom() {
        const Token t = peek();
        if (t.kind == Tok::LParen) {
            take();
            Formula f = parse_iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident) {
            take();
            if (t.text == "true") return Formula::top();
            if (t.text == "false") return Formula::bot();
            if (is_keyword(t.text)) throw ParseError("keyword '" + t.text + "' needs an operand", t.pos);
            return Formula::atom(t.text);
        }
        if (t.kind == Tok::End) throw ParseError("unexpected end of input", t.pos);
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }

    Coalition parse_coalition() {
        expect(Tok::LBrace, "'{'");
        Coalition c;
        if (accept(Tok::RBrace)) return c;
        do {
            const Token t = peek();
            if (t.kind != Tok::Ident) {
                throw ParseError("expected agent name", t.pos);
            }
            take();
            auto idx = universe_.index_of(t.text);
            if (!idx) throw ParseError("unknown agent '" + t.text + "'", t.pos);
            c = c.with(*idx);
        } while (accept(Tok::Comma));
        expect(Tok::RBrace, "'}'");
        return c;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const AgentUniverse& universe_;
};

}  // namespace

Formula parse(std::string_view text, const AgentUniverse& universe) {
    return Parser(tokenize(text), universe).parse_all();
}

std::vector<std::string> scan_agent_names(std::string_view text) {
    std::vector<std::string> names;
    bool in_braces = false;
    for (const Token& t : tokenize(text)) {
        if (t.kind == Tok::LBrace) in_braces = true;
        else if (t.kind == Tok::RBrace) in_braces = false;
        else if (in_braces && t.kind == Tok::Ident) {
            if (std::find(names.begin(), names.end(), t.text) == names.end()) names.push_back(t.text);
        }
    }
    return names;
}

}  // namespace mcl
