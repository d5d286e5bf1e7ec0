#include "btexp/piscalar.hpp"

#include "btexp/errors.hpp"

#include <algorithm>
#include <mpfr.h>
#include <ostream>
#include <sstream>

namespace btexp {

std::string to_string(const Bidegree& b)
{
    auto part = [](int v) { return v >= (1 << 20) ? std::string("inf") : std::to_string(v); };
    return "(" + part(b.hol) + "," + part(b.anti) + ")";
}

TruncationError::TruncationError(const std::string& where, Bidegree required, Bidegree available)
    : Error(where + ": needs truncation " + to_string(required) + ", have " + to_string(available)),
      required_(required), available_(available)
{
}

namespace {

void gauss_mul(const Gauss& a, const Gauss& b, Gauss& out)
{
    if (sgn(a.im) == 0 && sgn(b.im) == 0) {
        out.re = a.re * b.re;
        out.im = 0;
        return;
    }
    out.re = a.re * b.re - a.im * b.im;
    out.im = a.re * b.im + a.im * b.re;
}

} // namespace

PiScalar::PiScalar(long v)
{
    if (v != 0)
        terms_.push_back({0, Gauss{Rational(v), Rational(0)}});
}

PiScalar::PiScalar(const Rational& v)
{
    if (sgn(v) != 0) {
        terms_.push_back({0, Gauss{v, Rational(0)}});
        terms_.back().second.re.canonicalize();
    }
}

PiScalar::PiScalar(const Gauss& c, int pi_exp)
{
    if (!c.is_zero()) {
        terms_.push_back({pi_exp, c});
        terms_.back().second.re.canonicalize();
        terms_.back().second.im.canonicalize();
    }
}

PiScalar PiScalar::pi(int exp) { return PiScalar(Gauss{Rational(1), Rational(0)}, exp); }

PiScalar PiScalar::imag_unit() { return PiScalar(Gauss{Rational(0), Rational(1)}, 0); }

PiScalar PiScalar::ratio(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return PiScalar(r);
}

bool PiScalar::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return sgn(t.second.im) == 0; });
}

Gauss PiScalar::coeff(int m) const
{
    for (const auto& t : terms_)
        if (t.first == m)
            return t.second;
    return Gauss{};
}

PiScalar PiScalar::conj() const
{
    PiScalar r = *this;
    for (auto& t : r.terms_)
        t.second.im = -t.second.im;
    return r;
}

PiScalar PiScalar::real_part() const
{
    PiScalar r;
    for (const auto& t : terms_)
        if (sgn(t.second.re) != 0)
            r.terms_.push_back({t.first, Gauss{t.second.re, Rational(0)}});
    return r;
}

PiScalar PiScalar::imag_part() const
{
    PiScalar r;
    for (const auto& t : terms_)
        if (sgn(t.second.im) != 0)
            r.terms_.push_back({t.first, Gauss{t.second.im, Rational(0)}});
    return r;
}

PiScalar PiScalar::inverse() const
{
    if (terms_.size() != 1)
        throw DomainError("PiScalar " + str() + " is not invertible (only c*pi^m is a unit)");
    const Gauss& c = terms_[0].second;
    Rational norm = c.re * c.re + c.im * c.im;
    return PiScalar(Gauss{c.re / norm, -c.im / norm}, -terms_[0].first);
}

PiScalar PiScalar::pow(int e) const
{
    if (e < 0)
        return inverse().pow(-e);
    PiScalar result(1L), base = *this;
    while (e > 0) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

void PiScalar::add_term(int m, const Gauss& c, bool negate)
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, int key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) {
        if (negate) {
            it->second.re -= c.re;
            it->second.im -= c.im;
        } else {
            it->second.re += c.re;
            it->second.im += c.im;
        }
        if (it->second.is_zero())
            terms_.erase(it);
    } else if (negate) {
        terms_.insert(it, {m, Gauss{-c.re, -c.im}});
    } else {
        terms_.insert(it, {m, c});
    }
}

PiScalar& PiScalar::operator+=(const PiScalar& o)
{
    for (const auto& t : o.terms_)
        add_term(t.first, t.second, false);
    return *this;
}

PiScalar& PiScalar::operator-=(const PiScalar& o)
{
    for (const auto& t : o.terms_)
        add_term(t.first, t.second, true);
    return *this;
}

PiScalar operator*(const PiScalar& a, const PiScalar& b)
{
    PiScalar r;
    r.addmul(a, b);
    return r;
}

PiScalar& PiScalar::operator*=(const PiScalar& o)
{
    *this = *this * o;
    return *this;
}

PiScalar& PiScalar::operator*=(const Rational& q)
{
    if (sgn(q) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) {
        t.second.re *= q;
        t.second.im *= q;
    }
    return *this;
}

void PiScalar::addmul(const PiScalar& a, const PiScalar& b)
{
    Gauss prod;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            gauss_mul(ta.second, tb.second, prod);
            add_term(ta.first + tb.first, prod, false);
        }
}

PiScalar PiScalar::operator-() const
{
    PiScalar r = *this;
    for (auto& t : r.terms_) {
        t.second.re = -t.second.re;
        t.second.im = -t.second.im;
    }
    return r;
}

std::string rational_str(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0)
        throw SchemaError("not a rational: \"" + s + "\"");
    q.canonicalize();
    return q;
}

namespace {

std::string coeff_str(const Gauss& c)
{
    auto plain = [](const Rational& q) { return q.get_str(); };
    if (sgn(c.im) == 0)
        return plain(c.re);
    std::string im = (c.im == 1) ? "i" : (c.im == -1) ? "-i" : plain(c.im) + "*i";
    if (sgn(c.re) == 0)
        return im;
    std::string s = "(" + plain(c.re);
    if (sgn(c.im) < 0)
        s += " - " + (c.im == -1 ? std::string("i") : plain(Rational(-c.im)) + "*i");
    else
        s += " + " + im;
    return s + ")";
}

} // namespace

std::string PiScalar::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& [m, c] = terms_[k];
        std::string cs = coeff_str(c);
        std::string piece;
        if (m == 0)
            piece = cs;
        else {
            std::string p = (m == 1) ? "pi" : "pi^" + std::to_string(m);
            if (cs == "1")
                piece = p;
            else if (cs == "-1")
                piece = "-" + p;
            else
                piece = cs + " * " + p;
        }
        if (k == 0)
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out;
}

namespace {

// Real and imaginary parts as MPFR numbers at the given precision.
void evaluate(const std::vector<PiScalar::Term>& terms, mpfr_t re, mpfr_t im, mpfr_prec_t prec)
{
    mpfr_t pi, pw, tmp;
    mpfr_inits2(prec, pi, pw, tmp, (mpfr_ptr)nullptr);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    for (const auto& [m, c] : terms) {
        mpfr_pow_si(pw, pi, m, MPFR_RNDN);
        mpfr_set_q(tmp, c.re.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(tmp, tmp, pw, MPFR_RNDN);
        mpfr_add(re, re, tmp, MPFR_RNDN);
        mpfr_set_q(tmp, c.im.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(tmp, tmp, pw, MPFR_RNDN);
        mpfr_add(im, im, tmp, MPFR_RNDN);
    }
    mpfr_clears(pi, pw, tmp, (mpfr_ptr)nullptr);
}

std::string mpfr_str(mpfr_t x, int digits)
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

} // namespace

std::string PiScalar::decimal(int digits) const
{
    mpfr_t re, im;
    mpfr_inits2(256, re, im, (mpfr_ptr)nullptr);
    evaluate(terms_, re, im, 256);
    std::string out = mpfr_str(re, digits);
    if (!is_real()) {
        bool neg = mpfr_sgn(im) < 0;
        mpfr_abs(im, im, MPFR_RNDN);
        out += (neg ? " - " : " + ") + mpfr_str(im, digits) + "*i";
    }
    mpfr_clears(re, im, (mpfr_ptr)nullptr);
    return out;
}

std::complex<double> PiScalar::to_complex() const
{
    mpfr_t re, im;
    mpfr_inits2(128, re, im, (mpfr_ptr)nullptr);
    evaluate(terms_, re, im, 128);
    std::complex<double> z(mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN));
    mpfr_clears(re, im, (mpfr_ptr)nullptr);
    return z;
}

int PiScalar::real_sign() const
{
    if (terms_.empty()) return 0;
    mpfr_t re, im;
    mpfr_inits2(256, re, im, (mpfr_ptr)nullptr);
    evaluate(terms_, re, im, 256);
    int s = mpfr_sgn(re);
    mpfr_clears(re, im, (mpfr_ptr)nullptr);
    return s;
}

std::optional<PiScalar> exact_sqrt(const PiScalar& x)
{
    if (!x.is_monomial() || !x.is_real()) return std::nullopt;
    const auto& [m, c] = x.terms().front();
    if (m % 2 != 0 || sgn(c.re) <= 0) return std::nullopt;
    mpz_class num = c.re.get_num();
    mpz_class den = c.re.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return PiScalar(Gauss{Rational(rn, rd), Rational(0)}, m / 2);
}

namespace {

Rational approx_impl(const PiScalar& x, int bits, bool take_sqrt)
{
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 64);
    mpfr_t re, im;
    mpfr_inits2(prec, re, im, (mpfr_ptr)nullptr);
    evaluate(x.terms(), re, im, prec);
    if (take_sqrt) {
        if (mpfr_sgn(re) <= 0) {
            mpfr_clears(re, im, (mpfr_ptr)nullptr);
            throw DomainError("approx_sqrt: argument is not positive");
        }
        mpfr_sqrt(re, re, MPFR_RNDN);
    }
    mpfr_prec_round(re, static_cast<mpfr_prec_t>(bits), MPFR_RNDN);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), re);
    mpfr_clears(re, im, (mpfr_ptr)nullptr);
    return q;
}

} // namespace

Rational approx_sqrt(const PiScalar& x, int bits) { return approx_impl(x, bits, true); }

Rational approx_real(const PiScalar& x, int bits) { return approx_impl(x, bits, false); }

std::ostream& operator<<(std::ostream& os, const PiScalar& x) { return os << x.str(); }

} // namespace btexp
