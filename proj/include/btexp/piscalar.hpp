#pragma once

#include <complex>
#include <gmpxx.h>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace btexp {

using Rational = mpq_class;

// Gaussian rational re + i*im.
struct Gauss {
    Rational re;
    Rational im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
};

// Exact scalar: a finite sum of c_m * pi^m with Gaussian-rational c_m.
// Terms are kept sorted by exponent with no zero coefficients, so equality
// is structural.
class PiScalar {
public:
    using Term = std::pair<int, Gauss>;

    PiScalar() = default;
    PiScalar(long v);
    PiScalar(const Rational& v);
    PiScalar(const Gauss& c, int pi_exp = 0);

    static PiScalar pi(int exp = 1);
    static PiScalar imag_unit();
    static PiScalar ratio(long p, long q);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // Coefficient of pi^m.
    Gauss coeff(int m) const;

    PiScalar conj() const;
    PiScalar real_part() const;
    PiScalar imag_part() const;
    // Only monomials c*pi^m are units of this ring.
    PiScalar inverse() const;
    PiScalar pow(int e) const;

    PiScalar& operator+=(const PiScalar& o);
    PiScalar& operator-=(const PiScalar& o);
    PiScalar& operator*=(const PiScalar& o);
    PiScalar& operator*=(const Rational& q);
    // *this += a*b without temporaries for the common monomial case.
    void addmul(const PiScalar& a, const PiScalar& b);

    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator*(const PiScalar& a, const PiScalar& b);
    friend PiScalar operator*(PiScalar a, const Rational& q) { return a *= q; }
    friend PiScalar operator*(const Rational& q, PiScalar a) { return a *= q; }
    friend PiScalar operator/(const PiScalar& a, const PiScalar& b) { return a * b.inverse(); }
    PiScalar operator-() const;
    friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    // "1/2 * pi^-2", "(1/2 + 3*i) * pi", "0".
    std::string str() const;
    // Numeric value with the given number of significant digits.
    std::string decimal(int digits = 30) const;
    std::complex<double> to_complex() const;
    // Sign of the real part, evaluated at 256 bits.
    int real_sign() const;

private:
    void add_term(int m, const Gauss& c, bool negate);
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const PiScalar& x);

// sqrt(x) when x = q * pi^(2m) with q the square of a positive rational.
std::optional<PiScalar> exact_sqrt(const PiScalar& x);
// Dyadic rational within 2^-bits (relative) of sqrt(Re x); x must be positive.
Rational approx_sqrt(const PiScalar& x, int bits = 96);
// Dyadic rational within 2^-bits (relative) of Re x.
Rational approx_real(const PiScalar& x, int bits = 96);

// Parses "p/q" or "p".
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

} // namespace btexp
