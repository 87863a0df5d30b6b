#pragma once

#include "error.hpp"
#include "program.hpp"
#include "sorts.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncomp {

struct Token {
    enum class Kind : std::uint8_t { Ident, Variable, Number, Punct, End };

    Kind          kind = Kind::End;
    std::string   text;
    std::int64_t  number = 0;
    std::optional<Sort> sort_prefix; // from `int:` / `gen:`
    int           line = 1;
    int           column = 1;
};

namespace detail {

// Unicode operators accepted in formulas, mapped to their ASCII spelling.
inline constexpr std::pair<std::string_view, std::string_view> unicode_ops[] = {
    {"∀", "forall"}, {"∃", "exists"}, {"¬", "~"},  {"∧", "&"},  {"∨", "|"},     {"→", "->"},
    {"↔", "<->"},    {"≤", "<="},     {"≥", ">="}, {"≠", "!="}, {"⊤", "true"}, {"⊥", "false"},
};

// Longest match first.
inline constexpr std::string_view ascii_puncts[] = {
    "<->", ":-", "..", "->", "!=", "<>", "<=", ">=", "==", "**", "(", ")", "{", "}", "[", "]", ",", ".", ":",
    ";",   "=",  "<",  ">",  "+",  "-",  "*",  "/",  "\\", "&", "|", "~", "#", "@", "_", "\"", "?", "$", "^",
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line   = line_;
            t.column = col_;
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string word = take_word();
                if ((word == "int" || word == "gen") && peek(0) == ':' && std::isupper(static_cast<unsigned char>(peek(1)))) {
                    advance(1);
                    t.sort_prefix = word == "int" ? Sort::Integer : Sort::General;
                    word          = take_word();
                }
                t.kind = std::isupper(static_cast<unsigned char>(word[0])) ? Token::Kind::Variable : Token::Kind::Ident;
                if (t.sort_prefix && t.kind != Token::Kind::Variable) error(t, "sort prefix must precede a variable");
                t.text = std::move(word);
            }
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
                t.kind = Token::Kind::Number;
                t.text = std::string(text_.substr(start, pos_ - start));
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
                if (ec != std::errc{}) error(t, "integer literal out of range: " + t.text);
            }
            else {
                t.text = take_punct(t);
                t.kind = std::isalpha(static_cast<unsigned char>(t.text[0])) ? Token::Kind::Ident : Token::Kind::Punct;
            }
            out.push_back(std::move(t));
        }
    }

private:
    [[noreturn]] void error(const Token& t, const std::string& msg) const {
        throw ParseError(SourceSpan{file_, t.line, t.column}, msg);
    }
    char peek(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(text_[pos_++]);
            if (c == '\n') {
                ++line_;
                col_ = 1;
            }
            else if ((c & 0xC0) != 0x80) {
                ++col_;
            }
        }
    }
    void skip_space() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
            if (peek(0) == '%' && peek(1) == '*') {
                advance(2);
                while (pos_ < text_.size() && !(peek(0) == '*' && peek(1) == '%')) advance(1);
                advance(2);
                continue;
            }
            if (peek(0) == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
                continue;
            }
            return;
        }
    }
    std::string take_word() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') advance(1);
            else break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string take_punct(const Token& t) {
        auto rest = text_.substr(pos_);
        for (const auto& [u, a] : unicode_ops) {
            if (rest.starts_with(u)) {
                advance(u.size());
                return std::string(a);
            }
        }
        for (auto p : ascii_puncts) {
            if (rest.starts_with(p)) {
                advance(p.size());
                return std::string(p);
            }
        }
        error(t, "unexpected character '" + std::string(1, rest[0]) + "'");
    }

    std::string_view text_;
    std::string      file_;
    std::size_t      pos_  = 0;
    int              line_ = 1;
    int              col_  = 1;
};

inline std::optional<Rel> relation_of(const Token& t) {
    if (t.kind != Token::Kind::Punct) return std::nullopt;
    const auto& s = t.text;
    if (s == "=" || s == "==") return Rel::Eq;
    if (s == "!=" || s == "<>") return Rel::Ne;
    if (s == "<") return Rel::Lt;
    if (s == ">") return Rel::Gt;
    if (s == "<=") return Rel::Le;
    if (s == ">=") return Rel::Ge;
    return std::nullopt;
}

class ParserBase {
public:
    ParserBase(std::string_view text, std::string file) : file_(file), toks_(Lexer(text, std::move(file)).run()) {}

    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool         at_end() const { return cur().kind == Token::Kind::End; }
    bool         is(std::string_view p) const { return cur().kind == Token::Kind::Punct && cur().text == p; }
    bool         is_word(std::string_view w) const { return cur().kind == Token::Kind::Ident && cur().text == w; }
    bool         accept(std::string_view p) {
        if (!is(p)) return false;
        ++pos_;
        return true;
    }
    SourceSpan span(const Token& t) const { return {file_, t.line, t.column}; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(span(cur()), msg); }
    [[noreturn]] void non_regular(const std::string& msg) const { throw NonRegularError(span(cur()), msg); }

    void expect(std::string_view p) {
        if (!accept(p)) fail("expected '" + std::string(p) + "' but found " + describe(cur()));
    }
    static std::string describe(const Token& t) {
        if (t.kind == Token::Kind::End) return "end of input";
        return "'" + t.text + "'";
    }

    // Punctuation that marks a construct outside the regular fragment.
    void reject_extended_syntax() const {
        static constexpr std::string_view bad[][2] = {
            {"/", "division"},          {"\\", "modulo"},           {"**", "exponentiation"},
            {"#", "directive or aggregate"}, {"@", "external function"}, {"_", "anonymous variable"},
            {"\"", "string"},           {"?", "unsupported symbol"}, {"$", "unsupported symbol"},
            {"^", "xor"},               {"[", "weight"},
        };
        if (cur().kind != Token::Kind::Punct) return;
        for (const auto& b : bad) {
            if (cur().text == b[0]) non_regular(std::string(b[1]) + " '" + cur().text + "'");
        }
    }

    std::string        file_;
    std::vector<Token> toks_;
    std::size_t        pos_ = 0;
};

class ProgramParser : ParserBase {
public:
    using ParserBase::ParserBase;

    Program parse() {
        Program p;
        while (!at_end()) p.rules.push_back(rule());
        return p;
    }

private:
    Rule rule() {
        reject_extended_syntax();
        Rule r;
        if (accept(":-")) {
            r.head_kind = Rule::Head::None;
            r.body      = body();
        }
        else {
            if (cur().kind == Token::Kind::Number && ahead(1).kind == Token::Kind::Punct && ahead(1).text == "{") {
                non_regular("cardinality bound on choice");
            }
            if (accept("{")) {
                if (is("}")) fail("empty choice");
                r.head_kind = Rule::Head::Choice;
                r.head      = atom();
                if (is(";") || is(",") || is(":")) non_regular("choice with several elements or conditions");
                expect("}");
                if (cur().kind == Token::Kind::Number) non_regular("cardinality bound on choice");
            }
            else {
                r.head_kind = Rule::Head::Basic;
                if (cur().kind != Token::Kind::Ident) fail("expected rule head but found " + describe(cur()));
                r.head = atom();
            }
            if (is("|") || is(";")) non_regular("disjunctive head");
            if (is(":")) non_regular("conditional literal");
            if (accept(":-")) r.body = body();
        }
        if (is("..")) non_regular("interval outside a comparison");
        expect(".");
        return r;
    }

    std::vector<BodyLiteral> body() {
        std::vector<BodyLiteral> out;
        if (is(".")) fail("empty body");
        for (;;) {
            out.push_back(literal());
            if (is(";")) non_regular("disjunctive body or pool");
            if (is(":")) non_regular("conditional literal");
            if (!accept(",")) break;
        }
        return out;
    }

    BodyLiteral literal() {
        reject_extended_syntax();
        if (is_word("not")) {
            ++pos_;
            if (is_word("not")) non_regular("double negation");
            if (cur().kind != Token::Kind::Ident) fail("expected atom after 'not'");
            return BodyLiteral::negated(atom());
        }
        if (cur().kind == Token::Kind::Ident && !relation_of(ahead(1)) && !(ahead(1).kind == Token::Kind::Punct &&
                                                                            (ahead(1).text == "+" || ahead(1).text == "-" || ahead(1).text == "*"))) {
            return BodyLiteral::positive(atom());
        }
        return BodyLiteral::comparison(comparison());
    }

    Comparison comparison() {
        Token start = cur();
        Term  lhs   = arg_term();
        if (is("..")) non_regular("interval outside the right side of '='");
        auto rel = relation_of(cur());
        if (!rel) fail("expected comparison operator but found " + describe(cur()));
        ++pos_;
        Term rhs = arg_term();
        if (accept("..")) {
            if (*rel != Rel::Eq) non_regular("interval with relation other than '='");
            Term hi = arg_term();
            if (!is_regular(lhs) || !is_regular(rhs) || !is_regular(hi)) {
                throw NonRegularError(span(start), "symbolic constant in interval comparison");
            }
            return Comparison::interval(std::move(lhs), std::move(rhs), std::move(hi));
        }
        if (relation_of(cur())) non_regular("chained comparison in rule body");
        return Comparison::relational(std::move(lhs), *rel, std::move(rhs));
    }

    Atom atom() {
        if (cur().kind != Token::Kind::Ident) fail("expected atom but found " + describe(cur()));
        if (cur().text == "not") fail("unexpected 'not'");
        Atom a;
        a.predicate = cur().text;
        ++pos_;
        if (accept("(")) {
            if (is(")")) {
                ++pos_;
                return a;
            }
            for (;;) {
                a.args.push_back(arg_term());
                if (is("..")) non_regular("interval in atom argument");
                if (is(";")) non_regular("pool in atom argument");
                if (!accept(",")) break;
            }
            expect(")");
        }
        return a;
    }

    // A symbolic constant or a regular term.
    Term arg_term() {
        if (cur().kind == Token::Kind::Ident && !(ahead(1).kind == Token::Kind::Punct &&
                                                  (ahead(1).text == "+" || ahead(1).text == "-" || ahead(1).text == "*" || ahead(1).text == "("))) {
            return Term::constant(toks_[pos_++].text);
        }
        return additive();
    }

    Term additive() {
        Term t = multiplicative();
        for (;;) {
            reject_extended_syntax();
            if (accept("+")) t = Term::binary(BinOp::Add, std::move(t), multiplicative());
            else if (accept("-")) t = Term::binary(BinOp::Sub, std::move(t), multiplicative());
            else return t;
        }
    }

    Term multiplicative() {
        Term t = unary();
        for (;;) {
            reject_extended_syntax();
            if (accept("*")) t = Term::binary(BinOp::Mul, std::move(t), unary());
            else return t;
        }
    }

    Term unary() {
        if (is("-")) {
            if (ahead(1).kind != Token::Kind::Number) fail("unary minus is only allowed on integer literals");
            ++pos_;
            return Term::numeral(-toks_[pos_++].number);
        }
        return primary();
    }

    Term primary() {
        reject_extended_syntax();
        const Token& t = cur();
        switch (t.kind) {
            case Token::Kind::Number: ++pos_; return Term::numeral(t.number);
            case Token::Kind::Variable:
                if (t.sort_prefix) fail("sort prefixes are not allowed in programs");
                ++pos_;
                return Term::variable(t.text);
            case Token::Kind::Ident:
                if (ahead(1).kind == Token::Kind::Punct && ahead(1).text == "(") non_regular("function term");
                non_regular("symbolic constant '" + t.text + "' under arithmetic");
            case Token::Kind::Punct:
                if (accept("(")) {
                    Term inner = additive();
                    if (is(",")) non_regular("tuple term");
                    expect(")");
                    return inner;
                }
                if (is("|")) non_regular("absolute value");
                break;
            case Token::Kind::End: break;
        }
        fail("expected term but found " + describe(t));
    }
};

class FormulaParser : ParserBase {
public:
    using ParserBase::ParserBase;

    Formula parse_one() {
        Formula f = formula();
        accept(".");
        if (!at_end()) fail("unexpected " + describe(cur()) + " after formula");
        return checked(std::move(f));
    }

    std::vector<Formula> parse_all() {
        std::vector<Formula> out;
        while (!at_end()) {
            Formula f = formula();
            expect(".");
            out.push_back(checked(std::move(f)));
        }
        return out;
    }

private:
    static Formula checked(Formula f) {
        if (auto e = check_sorts(f)) throw *e;
        return f;
    }

    Formula formula() { return iff(); }

    Formula iff() {
        Formula l = implication();
        if (accept("<->")) return fo::iff(std::move(l), iff());
        return l;
    }

    Formula implication() {
        Formula l = disjunction();
        if (accept("->")) return fo::implies(std::move(l), implication());
        return l;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (accept("|")) parts.push_back(conjunction());
        return parts.size() == 1 ? std::move(parts[0]) : fo::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (accept("&")) parts.push_back(unary());
        return parts.size() == 1 ? std::move(parts[0]) : fo::conj(std::move(parts));
    }

    Formula unary() {
        if (accept("~")) return fo::neg(unary());
        if (is_word("forall") || is_word("exists")) {
            bool             all = cur().text == "forall";
            std::vector<Var> vars;
            ++pos_;
            while (cur().kind == Token::Kind::Variable) {
                vars.push_back(Var{cur().text, cur().sort_prefix.value_or(conventional_sort(cur().text))});
                ++pos_;
            }
            if (vars.empty()) fail("expected variable after quantifier");
            auto mark = scope_.size();
            scope_.insert(scope_.end(), vars.begin(), vars.end());
            Formula body = formula();
            scope_.resize(mark);
            return all ? fo::forall(std::move(vars), std::move(body)) : fo::exists(std::move(vars), std::move(body));
        }
        return primary();
    }

    Formula primary() {
        if (is_word("true")) return ++pos_, fo::top();
        if (is_word("false")) return ++pos_, fo::bottom();
        if (is("(")) {
            auto save = pos_;
            try {
                return comparison_chain();
            }
            catch (const ParseError&) {
                pos_ = save;
            }
            expect("(");
            Formula f = formula();
            expect(")");
            return f;
        }
        if (cur().kind == Token::Kind::Ident) {
            bool term_follows = ahead(1).kind == Token::Kind::Punct &&
                                (relation_of(ahead(1)) || ahead(1).text == "+" || ahead(1).text == "-" || ahead(1).text == "*");
            if (!term_follows) return atom();
        }
        return comparison_chain();
    }

    Formula atom() {
        std::string       name = cur().text;
        std::vector<Term> args;
        ++pos_;
        if (accept("(")) {
            if (!accept(")")) {
                for (;;) {
                    args.push_back(term());
                    if (!accept(",")) break;
                }
                expect(")");
            }
        }
        return fo::atom(std::move(name), std::move(args));
    }

    // t1 rel t2 rel t3 ... abbreviates the conjunction of adjacent comparisons.
    Formula comparison_chain() {
        Term                 l = term();
        std::vector<Formula> parts;
        while (auto rel = relation_of(cur())) {
            ++pos_;
            Term r = term();
            parts.push_back(fo::compare(l, *rel, r));
            l = std::move(r);
        }
        if (parts.empty()) fail("expected comparison operator but found " + describe(cur()));
        return fo::conj(std::move(parts));
    }

    Term term() {
        Term t = product();
        for (;;) {
            reject_extended_syntax();
            if (accept("+")) t = Term::binary(BinOp::Add, std::move(t), product());
            else if (accept("-")) t = Term::binary(BinOp::Sub, std::move(t), product());
            else return t;
        }
    }

    Term product() {
        Term t = factor();
        for (;;) {
            reject_extended_syntax();
            if (accept("*")) t = Term::binary(BinOp::Mul, std::move(t), factor());
            else return t;
        }
    }

    Term factor() {
        reject_extended_syntax();
        const Token& t = cur();
        if (is("-")) {
            if (ahead(1).kind != Token::Kind::Number) fail("unary minus is only allowed on integer literals");
            ++pos_;
            return Term::numeral(-toks_[pos_++].number);
        }
        if (t.kind == Token::Kind::Number) return ++pos_, Term::numeral(t.number);
        if (t.kind == Token::Kind::Ident) {
            if (ahead(1).kind == Token::Kind::Punct && ahead(1).text == "(") fail("function terms are not supported");
            ++pos_;
            return Term::constant(t.text);
        }
        if (t.kind == Token::Kind::Variable) {
            ++pos_;
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
                if (it->name == t.text) {
                    if (t.sort_prefix && *t.sort_prefix != it->sort) {
                        throw ParseError(span(t), "sort prefix of " + t.text + " disagrees with its quantifier");
                    }
                    return Term::variable(*it);
                }
            }
            return Term::variable(t.text, t.sort_prefix.value_or(conventional_sort(t.text)));
        }
        if (accept("(")) {
            Term inner = term();
            expect(")");
            return inner;
        }
        fail("expected term but found " + describe(t));
    }

    std::vector<Var> scope_;
};

} // namespace detail

/// Parses a program in clingo-style concrete syntax (`%` comments, rules end
/// with `.`). Constructs outside the regular fragment raise NonRegularError.
inline Program parse_program(std::string_view text, std::string file = {}) {
    return detail::ProgramParser(text, std::move(file)).parse();
}

/// Parses one formula (an optional trailing `.` is accepted). The result is
/// sort-checked; violations are thrown as SortError.
inline Formula parse_formula(std::string_view text, std::string file = {}) {
    return detail::FormulaParser(text, std::move(file)).parse_one();
}

/// Parses an axiom file: a sequence of `.`-terminated formulas.
inline std::vector<Formula> parse_formulas(std::string_view text, std::string file = {}) {
    return detail::FormulaParser(text, std::move(file)).parse_all();
}

} // namespace ncomp
