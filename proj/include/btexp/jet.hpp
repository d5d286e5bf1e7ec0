#pragma once

#include "btexp/errors.hpp"
#include "btexp/piscalar.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace btexp {

constexpr int kMaxVars = 4;
// Truncation value meaning "every coefficient in this grading is known".
constexpr int kUnbounded = 1 << 20;

using MultiIndex = std::vector<int>;

// (alpha, beta) packed one byte per exponent: alpha in bytes 0..3, beta in 4..7.
using Key = std::uint64_t;

Key make_key(const MultiIndex& alpha, const MultiIndex& beta);
inline int key_alpha(Key k, int j) { return static_cast<int>((k >> (8 * j)) & 0xffu); }
inline int key_beta(Key k, int j) { return static_cast<int>((k >> (8 * (j + kMaxVars))) & 0xffu); }
int key_hol_degree(Key k);
int key_anti_degree(Key k);
inline Key key_conj(Key k) { return (k >> 32) | (k << 32); }
MultiIndex key_alpha_index(Key k, int n);
MultiIndex key_beta_index(Key k, int n);

enum class Var { Z, Zbar };

// Truncated power series in z_1..z_n, zbar_1..zbar_n at the origin.
//
// trunc = (P,Q): every coefficient with |alpha| <= P and |beta| <= Q is known
// (zero if absent); nothing is known outside that box.  val = (v,w) is a
// declared lower bound valid for all terms, known or not; products use it
// to extend the known box (min(P_a + v_b, P_b + v_a)).
class Jet {
public:
    using Term = std::pair<Key, PiScalar>;

    Jet() = default;
    explicit Jet(int n, Bidegree trunc = {kUnbounded, kUnbounded});

    // Exact zero: every coefficient known, valuation unbounded.
    static Jet zero(int n);
    static Jet constant(int n, const PiScalar& c, Bidegree trunc = {kUnbounded, kUnbounded});
    static Jet z(int n, int j);
    static Jet zbar(int n, int j);
    static Jet monomial(int n, const MultiIndex& alpha, const MultiIndex& beta, const PiScalar& c);
    // Builds from (key, coefficient) pairs, summing duplicates and dropping
    // everything outside trunc.
    static Jet from_terms(int n, Bidegree trunc, std::vector<Term> terms, Bidegree val = {0, 0});

    int n() const { return n_; }
    Bidegree trunc() const { return trunc_; }
    Bidegree val() const { return val_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool has_no_terms() const { return terms_.empty(); }

    // Coefficient of z^alpha zbar^beta; throws TruncationError outside trunc.
    PiScalar coeff(Key k) const;
    PiScalar coeff(const MultiIndex& alpha, const MultiIndex& beta) const;
    PiScalar constant_term() const;
    bool knows(Key k) const;

    // Asserts that every term (known or not) has bidegree >= v.
    Jet& declare_valuation(Bidegree v);

    friend bool operator==(const Jet& a, const Jet& b)
    {
        return a.n_ == b.n_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    std::string str() const;

private:
    int n_ = 0;
    Bidegree trunc_{kUnbounded, kUnbounded};
    Bidegree val_{0, 0};
    std::vector<Term> terms_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_neg(const Jet& a);
Jet jet_scale(const Jet& a, const PiScalar& c);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_pow(const Jet& a, int e);
Jet jet_diff(const Jet& a, Var which, int j);
Jet jet_conj(const Jet& a);
Jet jet_truncate(const Jet& a, Bidegree trunc);
// 1/a; the constant term must be a unit of the scalar ring.
Jet jet_inverse(const Jet& a);
// log(a / a(0)): the constant log a(0) is dropped (it is transcendental in
// general and only derivatives of logs are ever used).
Jet jet_log(const Jet& a);
// Requires a(0) = 0.
Jet jet_exp(const Jet& a);
// Multiplies the coefficient of each monomial by its total degree.
Jet jet_euler(const Jet& a);
// a(map(w), conj(map(w))); map components holomorphic with zero constant term.
Jet jet_substitute(const Jet& a, const std::vector<Jet>& map);
// Pure (alpha,0) part, exact in the antiholomorphic grading.
Jet jet_holomorphic_part(const Jet& a);
// Pure (0,beta) part.
Jet jet_antiholomorphic_part(const Jet& a);

// (d/dz)^alpha (d/dzbar)^beta a at 0, with variable lists given as indices
// (repetition allowed): deriv0(a, {0,0}, {1}) = d^3 a / dz_0^2 dzbar_1.
PiScalar deriv0(const Jet& a, std::initializer_list<int> hol, std::initializer_list<int> anti);
PiScalar deriv0(const Jet& a, const std::vector<int>& hol, const std::vector<int>& anti);

bool is_real(const Jet& a);
bool is_holomorphic(const Jet& a);
bool is_antiholomorphic(const Jet& a);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator-(const Jet& a) { return jet_neg(a); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator*(const PiScalar& c, const Jet& a) { return jet_scale(a, c); }
inline Jet operator*(const Jet& a, const PiScalar& c) { return jet_scale(a, c); }

Bidegree min_bidegree(Bidegree a, Bidegree b);

// Square or rectangular matrix of jets, row-major.
class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(int rows, int cols, int n);

    static JetMatrix identity(int size, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int n() const { return n_; }
    Jet& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    const Jet& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }

    friend bool operator==(const JetMatrix& a, const JetMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    int n_ = 0;
    std::vector<Jet> entries_;
};

JetMatrix jet_matmul(const JetMatrix& a, const JetMatrix& b);
JetMatrix jet_transpose(const JetMatrix& a);
JetMatrix jet_conj_transpose(const JetMatrix& a);
JetMatrix jet_truncate(const JetMatrix& a, Bidegree trunc);
Jet jet_det(const JetMatrix& m);
JetMatrix jet_matrix_inverse(const JetMatrix& m);
bool is_hermitian(const JetMatrix& m);

// All multi-indices in n variables with |alpha| <= d, ordered by degree.
std::vector<MultiIndex> multi_indices_upto(int n, int d);

} // namespace btexp
