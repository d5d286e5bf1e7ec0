#include "btexp/symbols.hpp"

#include <cctype>

namespace btexp {

SymbolScope coordinate_scope(int n, Bidegree cap)
{
    SymbolScope s;
    s.n = n;
    s.cap = cap;
    for (int j = 0; j < n; ++j) {
        s.variables["z" + std::to_string(j + 1)] = Jet::z(n, j);
        s.variables["zbar" + std::to_string(j + 1)] = Jet::zbar(n, j);
    }
    if (n == 1) {
        s.variables["z"] = Jet::z(1, 0);
        s.variables["zbar"] = Jet::zbar(1, 0);
    }
    return s;
}

namespace {

bool exact(const Jet& a) { return a.trunc().hol >= kUnbounded && a.trunc().anti >= kUnbounded; }

bool is_constant(const Jet& a)
{
    for (const auto& [k, c] : a.terms())
        if (k != 0) return false;
    return exact(a);
}

class Parser {
public:
    Parser(const std::string& text, const SymbolScope& scope) : s_(text), scope_(scope) {}

    Jet run()
    {
        Jet v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw SchemaError("symbol '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Jet capped(const Jet& a) const { return jet_truncate(a, scope_.cap); }

    Jet expr()
    {
        Jet v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    Jet term()
    {
        Jet v = unary();
        for (;;) {
            if (eat('*'))
                v = v * unary();
            else if (eat('/'))
                v = divide(v, unary());
            else
                return v;
        }
    }

    Jet unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Jet power()
    {
        Jet base = primary();
        if (!eat('^')) return base;
        const bool paren = eat('(');
        const bool neg = eat('-');
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        if (pos_ - start > 3) fail("exponent too large");
        const int e = std::stoi(s_.substr(start, pos_ - start));
        if (paren && !eat(')')) fail("expected ')'");
        if (!neg) return exact(base) ? jet_pow(base, e) : capped(jet_pow(base, e));
        return capped(jet_pow(invert(base), e));
    }

    Jet invert(const Jet& a)
    {
        if (is_constant(a)) {
            const PiScalar c = a.constant_term();
            if (!c.is_monomial()) fail("constant divisor is not invertible (only c*pi^m is)");
            return Jet::constant(scope_.n, c.inverse());
        }
        const PiScalar c = a.constant_term();
        if (!c.is_monomial()) fail("divisor must have an invertible constant term");
        return jet_inverse(capped(a));
    }

    Jet divide(const Jet& a, const Jet& b)
    {
        const Jet inv = invert(b);
        return exact(inv) ? a * inv : capped(a * inv);
    }

    Jet number()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Rational v(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (fs == pos_) fail("expected digits after '.'");
            Rational frac(s_.substr(fs, pos_ - fs));
            mpz_class den = 1;
            for (std::size_t i = fs; i < pos_; ++i) den *= 10;
            v += frac / Rational(den);
            v.canonicalize();
        }
        return Jet::constant(scope_.n, PiScalar(v));
    }

    Jet call(const std::string& name)
    {
        Jet a = expr();
        if (!eat(')')) fail("expected ')'");
        if (name == "conj") return jet_conj(a);
        if (name == "exp") {
            if (!a.constant_term().is_zero()) fail("exp needs an argument vanishing at 0");
            return jet_exp(capped(a));
        }
        if (a.constant_term() != PiScalar(1L)) fail("log needs an argument equal to 1 at 0");
        return jet_log(capped(a));
    }

    Jet primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Jet v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "exp" || name == "log" || name == "conj") {
                if (!eat('(')) fail("expected '(' after " + name);
                return call(name);
            }
            if (name == "pi") return Jet::constant(scope_.n, PiScalar::pi(1));
            if (name == "i") return Jet::constant(scope_.n, PiScalar::imag_unit());
            auto it = scope_.variables.find(name);
            if (it == scope_.variables.end()) {
                pos_ = start;
                fail("unknown name '" + name + "'");
            }
            return it->second;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const SymbolScope& scope_;
    std::size_t pos_ = 0;
};

} // namespace

Jet parse_symbol(const std::string& text, const SymbolScope& scope)
{
    if (scope.n < 1 || scope.n > kMaxVars) throw DomainError("parse_symbol: dimension out of range");
    return Parser(text, scope).run();
}

std::vector<PiScalar> parse_univariate(const std::string& text, const std::string& name)
{
    SymbolScope scope;
    scope.n = 1;
    scope.variables[name] = Jet::z(1, 0);
    const Jet p = parse_symbol(text, scope);
    if (p.trunc().hol < kUnbounded) throw SchemaError("symbol '" + text + "': not a polynomial in " + name);
    std::vector<PiScalar> out;
    for (const auto& [k, c] : p.terms()) {
        if (key_anti_degree(k) != 0) throw SchemaError("symbol '" + text + "': not a polynomial in " + name);
        const int d = key_hol_degree(k);
        if (static_cast<int>(out.size()) <= d) out.resize(static_cast<std::size_t>(d + 1));
        out[static_cast<std::size_t>(d)] = c;
    }
    if (out.empty()) out.push_back(PiScalar());
    return out;
}

} // namespace btexp
