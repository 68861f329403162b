#include "kemja/logic/parser.hpp"

#include <vector>

namespace kemja {

namespace {

enum class Tok { Ident, Top, Bot, Not, And, Or, Xor, Implies, Iff, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (i_ >= s_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            const int l = line_, c = col_;
            const char ch = s_[i_];
            if (is_start(ch)) {
                std::size_t j = i_;
                while (j < s_.size() && is_part(s_[j])) ++j;
                std::string word(s_.substr(i_, j - i_));
                advance(j - i_);
                Tok k = word == "top" ? Tok::Top : word == "bot" ? Tok::Bot : Tok::Ident;
                out.push_back({k, std::move(word), l, c});
                continue;
            }
            auto emit = [&](Tok k, std::size_t n) {
                out.push_back({k, std::string(s_.substr(i_, n)), l, c});
                advance(n);
            };
            switch (ch) {
            case '~': emit(Tok::Not, 1); continue;
            case '&': emit(Tok::And, 1); continue;
            case '|': emit(Tok::Or, 1); continue;
            case '^': emit(Tok::Xor, 1); continue;
            case '(': emit(Tok::LParen, 1); continue;
            case ')': emit(Tok::RParen, 1); continue;
            case '-':
                if (s_.substr(i_, 2) == "->") {
                    emit(Tok::Implies, 2);
                    continue;
                }
                break;
            case '<':
                if (s_.substr(i_, 3) == "<->") {
                    emit(Tok::Iff, 3);
                    continue;
                }
                break;
            default: break;
            }
            throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
    }

private:
    static bool is_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
    static bool is_part(char c) { return is_start(c) || (c >= '0' && c <= '9') || c == '\''; }

    void skip_space() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r'))
            advance(1);
    }
    void advance(std::size_t n) {
        for (; n > 0; --n, ++i_) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> t) : t_(std::move(t)) {}

    Formula parse() {
        Formula f = iff();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return t_[i_]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++i_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().col);
    }

    Formula iff() {
        Formula f = imp();
        while (accept(Tok::Iff)) f = Formula::make_iff(f, imp());
        return f;
    }
    Formula imp() {
        Formula f = chain(Tok::Xor);
        if (accept(Tok::Implies)) return Formula::make_implies(f, imp());
        return f;
    }
    Formula chain(Tok op) {
        auto next = [&]() {
            if (op == Tok::Xor) return chain(Tok::Or);
            if (op == Tok::Or) return chain(Tok::And);
            return unary();
        };
        std::vector<Formula> xs{next()};
        while (accept(op)) xs.push_back(next());
        if (xs.size() == 1) return xs[0];
        if (op == Tok::Xor) return Formula::make_xor(std::move(xs));
        if (op == Tok::Or) return Formula::make_or(std::move(xs));
        return Formula::make_and(std::move(xs));
    }
    Formula unary() {
        if (accept(Tok::Not)) return Formula::make_not(unary());
        return atom();
    }
    Formula atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: ++i_; return Formula::var(t.text);
        case Tok::Top: ++i_; return Formula::top();
        case Tok::Bot: ++i_; return Formula::bot();
        case Tok::LParen: {
            ++i_;
            Formula f = iff();
            if (!accept(Tok::RParen)) fail("expected ')'");
            return f;
        }
        case Tok::End: fail("unexpected end of input");
        default: fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

}  // namespace kemja
