#include "apzeta/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace apzeta {

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int bits;

    explicit Parser(const std::string& t, int b) : text(t), bits(b) {}

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("expression error at offset " + std::to_string(pos) + ": " +
                                    what + " in \"" + text + "\"");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Real expr() {
        Real v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    Real term() {
        Real v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/')) {
                Real d = factor();
                if (d.sign() == 0) fail("division by zero");
                v = v / d;
            } else
                return v;
        }
    }

    Real factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        Real base = primary();
        if (eat('^')) {
            Real e = factor();  // right associative
            return Real::pow(base, e);
        }
        return base;
    }

    Real primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
        if (eat('(')) {
            Real v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        fail("unexpected character");
    }

    Real number() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t save = pos++;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
            } else {
                pos = save;  // the 'e' was the constant, not an exponent
            }
        }
        return Real(text.substr(start, pos - start), bits);
    }

    Real ident() {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (peek() == '(') {
            eat('(');
            Real arg = expr();
            if (!eat(')')) fail("missing ')' after " + name);
            if (name == "log" || name == "ln") {
                if (!(arg > 0.0)) fail("log of a nonpositive value");
                return Real::log(arg);
            }
            if (name == "exp") return Real::exp(arg);
            if (name == "sqrt") {
                if (arg.sign() < 0) fail("sqrt of a negative value");
                return Real::sqrt(arg);
            }
            if (name == "cos") return Real::cos(arg);
            if (name == "sin") return Real::sin(arg);
            if (name == "abs") return Real::abs(arg);
            fail("unknown function '" + name + "'");
        }
        if (name == "pi") return Real::pi(bits);
        if (name == "e") return Real::exp(Real(1.0, bits));
        if (name == "gamma") return Real::euler_gamma(bits);
        fail("unknown identifier '" + name + "'");
    }
};

}  // namespace

Real eval_expr(const std::string& text, int bits) {
    Parser p(text, bits > 0 ? bits : default_precision_bits());
    Real v = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return v;
}

}  // namespace apzeta
