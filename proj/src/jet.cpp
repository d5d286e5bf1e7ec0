#include "btexp/jet.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <map>
#include <sstream>

namespace btexp {

namespace {

int sat_add(int a, int b)
{
    if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
    return std::min(a + b, kUnbounded);
}

void check_dim(int n)
{
    if (n < 1 || n > kMaxVars) throw DomainError("jet dimension must be in 1.." + std::to_string(kMaxVars));
}

void check_same(const Jet& a, const Jet& b, const char* op)
{
    if (a.n() != b.n())
        throw DomainError(std::string(op) + ": dimension mismatch (" + std::to_string(a.n()) + " vs "
                          + std::to_string(b.n()) + ")");
}

bool inside(Key k, Bidegree t) { return key_hol_degree(k) <= t.hol && key_anti_degree(k) <= t.anti; }

using Accum = std::map<Key, PiScalar>;

std::vector<Jet::Term> drain(Accum& acc)
{
    std::vector<Jet::Term> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.emplace_back(k, std::move(c));
    return out;
}

// Bound on the degree in one grading that a series in u can reach.
int effective_bound(int trunc, bool all_zero_degree, const char* op)
{
    if (trunc < kUnbounded) return std::max(trunc, 0);
    if (all_zero_degree) return 0;
    throw DomainError(std::string(op) + ": infinite series needs a finite truncation");
}

// Number of powers of u (u(0)=0) that can reach the known box of a.
int series_length(const Jet& a, const char* op)
{
    bool hol0 = true;
    bool anti0 = true;
    for (const auto& [k, c] : a.terms()) {
        if (key_hol_degree(k) > 0) hol0 = false;
        if (key_anti_degree(k) > 0) anti0 = false;
    }
    return effective_bound(a.trunc().hol, hol0, op) + effective_bound(a.trunc().anti, anti0, op);
}

// Horner evaluation of sum_{m=0}^{M} coef[m] u^m.
Jet horner(const Jet& u, const std::vector<PiScalar>& coef)
{
    const int n = u.n();
    Jet acc = Jet::constant(n, coef.back());
    for (int m = static_cast<int>(coef.size()) - 2; m >= 0; --m)
        acc = jet_add(jet_mul(u, acc), Jet::constant(n, coef[static_cast<std::size_t>(m)]));
    return acc;
}

// a/a(0) - 1, with a(0) required to be a unit.
std::pair<Jet, PiScalar> normalized_tail(const Jet& a, const char* op)
{
    if (a.trunc().hol < 0 || a.trunc().anti < 0)
        throw TruncationError(op, {0, 0}, a.trunc());
    PiScalar a0 = a.constant_term();
    if (a0.is_zero()) throw DomainError(std::string(op) + ": zero constant term");
    PiScalar inv = a0.inverse();
    Jet u = jet_sub(jet_scale(a, inv), Jet::constant(a.n(), PiScalar(1L)));
    return {u, a0};
}

} // namespace

Key make_key(const MultiIndex& alpha, const MultiIndex& beta)
{
    if (alpha.size() > kMaxVars || beta.size() > kMaxVars) throw DomainError("multi-index longer than 4");
    Key k = 0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] < 0 || alpha[j] > 127) throw DomainError("multi-index entry out of range");
        k |= static_cast<Key>(alpha[j]) << (8 * j);
    }
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] < 0 || beta[j] > 127) throw DomainError("multi-index entry out of range");
        k |= static_cast<Key>(beta[j]) << (8 * (j + kMaxVars));
    }
    return k;
}

int key_hol_degree(Key k)
{
    int d = 0;
    for (int j = 0; j < kMaxVars; ++j) d += key_alpha(k, j);
    return d;
}

int key_anti_degree(Key k)
{
    int d = 0;
    for (int j = 0; j < kMaxVars; ++j) d += key_beta(k, j);
    return d;
}

MultiIndex key_alpha_index(Key k, int n)
{
    MultiIndex a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = key_alpha(k, j);
    return a;
}

MultiIndex key_beta_index(Key k, int n)
{
    MultiIndex b(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(j)] = key_beta(k, j);
    return b;
}

Bidegree min_bidegree(Bidegree a, Bidegree b) { return {std::min(a.hol, b.hol), std::min(a.anti, b.anti)}; }

// ---------------------------------------------------------------------------

Jet::Jet(int n, Bidegree trunc) : n_(n), trunc_(trunc)
{
    check_dim(n);
    if (trunc_.hol >= kUnbounded && trunc_.anti >= kUnbounded) val_ = {kUnbounded, kUnbounded};
}

Jet Jet::zero(int n) { return Jet(n); }

Jet Jet::constant(int n, const PiScalar& c, Bidegree trunc)
{
    return from_terms(n, trunc, {{Key{0}, c}});
}

Jet Jet::z(int n, int j)
{
    MultiIndex a(static_cast<std::size_t>(n), 0);
    if (j < 0 || j >= n) throw DomainError("variable index out of range");
    a[static_cast<std::size_t>(j)] = 1;
    return monomial(n, a, MultiIndex(static_cast<std::size_t>(n), 0), PiScalar(1L));
}

Jet Jet::zbar(int n, int j) { return jet_conj(z(n, j)); }

Jet Jet::monomial(int n, const MultiIndex& alpha, const MultiIndex& beta, const PiScalar& c)
{
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
        throw DomainError("monomial: multi-index length differs from n");
    return from_terms(n, {kUnbounded, kUnbounded}, {{make_key(alpha, beta), c}});
}

Jet Jet::from_terms(int n, Bidegree trunc, std::vector<Term> terms, Bidegree val)
{
    Jet j(n, trunc);
    j.val_ = val;
    Accum acc;
    for (auto& [k, c] : terms) {
        for (int v = n; v < kMaxVars; ++v)
            if (key_alpha(k, v) != 0 || key_beta(k, v) != 0) throw DomainError("key uses a variable beyond n");
        if (!inside(k, trunc)) continue;
        auto it = acc.find(k);
        if (it == acc.end())
            acc.emplace(k, std::move(c));
        else
            it->second += c;
    }
    j.terms_ = drain(acc);
    if (trunc.hol >= kUnbounded && trunc.anti >= kUnbounded) {
        Bidegree v{kUnbounded, kUnbounded};
        for (const auto& [k, c] : j.terms_) v = min_bidegree(v, {key_hol_degree(k), key_anti_degree(k)});
        j.val_ = {std::max(v.hol, val.hol), std::max(v.anti, val.anti)};
    }
    return j;
}

bool Jet::knows(Key k) const { return inside(k, trunc_); }

PiScalar Jet::coeff(Key k) const
{
    if (!knows(k)) throw TruncationError("coefficient", {key_hol_degree(k), key_anti_degree(k)}, trunc_);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, Key key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return PiScalar();
}

PiScalar Jet::coeff(const MultiIndex& alpha, const MultiIndex& beta) const
{
    if (static_cast<int>(alpha.size()) != n_ || static_cast<int>(beta.size()) != n_)
        throw DomainError("coeff: multi-index length differs from n");
    return coeff(make_key(alpha, beta));
}

PiScalar Jet::constant_term() const { return coeff(Key{0}); }

Jet& Jet::declare_valuation(Bidegree v)
{
    for (const auto& [k, c] : terms_)
        if (key_hol_degree(k) < v.hol || key_anti_degree(k) < v.anti)
            throw DomainError("declared valuation " + to_string(v) + " violated by a stored term");
    val_ = {std::max(val_.hol, v.hol), std::max(val_.anti, v.anti)};
    return *this;
}

std::string Jet::str() const
{
    std::ostringstream os;
    if (terms_.empty()) os << "0";
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (int j = 0; j < n_; ++j) {
            auto factor = [&](const char* base, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += base + std::to_string(j + 1);
                if (e > 1) mono += "^" + std::to_string(e);
            };
            factor("z", key_alpha(k, j));
            factor("zb", key_beta(k, j));
        }
        std::string cs = c.str();
        bool compound = cs.front() != '(' && cs.find(' ') != std::string::npos;
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << (compound ? "(" + cs + ")" : cs) << "*" << mono;
    }
    os << " [trunc " << to_string(trunc_) << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

Jet jet_add(const Jet& a, const Jet& b)
{
    check_same(a, b, "jet_add");
    Bidegree t = min_bidegree(a.trunc(), b.trunc());
    std::vector<Jet::Term> out;
    out.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            if (inside(ia->first, t)) out.push_back(*ia);
            ++ia;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            if (inside(ib->first, t)) out.push_back(*ib);
            ++ib;
        } else {
            if (inside(ia->first, t)) {
                PiScalar s = ia->second + ib->second;
                if (!s.is_zero()) out.emplace_back(ia->first, std::move(s));
            }
            ++ia;
            ++ib;
        }
    }
    return Jet::from_terms(a.n(), t, std::move(out), min_bidegree(a.val(), b.val()));
}

Jet jet_neg(const Jet& a) { return jet_scale(a, PiScalar(-1L)); }

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_neg(b)); }

Jet jet_scale(const Jet& a, const PiScalar& c)
{
    if (c.is_zero()) return Jet::zero(a.n());
    std::vector<Jet::Term> out;
    out.reserve(a.terms().size());
    for (const auto& [k, v] : a.terms()) out.emplace_back(k, v * c);
    return Jet::from_terms(a.n(), a.trunc(), std::move(out), a.val());
}

Jet jet_mul(const Jet& a, const Jet& b)
{
    check_same(a, b, "jet_mul");
    Bidegree t{std::min(sat_add(a.trunc().hol, b.val().hol), sat_add(b.trunc().hol, a.val().hol)),
               std::min(sat_add(a.trunc().anti, b.val().anti), sat_add(b.trunc().anti, a.val().anti))};
    Bidegree v{sat_add(a.val().hol, b.val().hol), sat_add(a.val().anti, b.val().anti)};

    std::vector<std::pair<int, int>> bdeg;
    bdeg.reserve(b.terms().size());
    for (const auto& [k, c] : b.terms()) bdeg.emplace_back(key_hol_degree(k), key_anti_degree(k));

    Accum acc;
    for (const auto& [ka, ca] : a.terms()) {
        const int ha = key_hol_degree(ka);
        const int aa = key_anti_degree(ka);
        for (std::size_t i = 0; i < b.terms().size(); ++i) {
            const int h = ha + bdeg[i].first;
            const int an = aa + bdeg[i].second;
            if (h > t.hol || an > t.anti) continue;
            if (h > 127 || an > 127) throw DomainError("jet_mul: degree exceeds 127");
            acc[ka + b.terms()[i].first].addmul(ca, b.terms()[i].second);
        }
    }
    return Jet::from_terms(a.n(), t, drain(acc), v);
}

Jet jet_pow(const Jet& a, int e)
{
    if (e < 0) return jet_pow(jet_inverse(a), -e);
    Jet result = Jet::constant(a.n(), PiScalar(1L));
    Jet base = a;
    while (e > 0) {
        if (e & 1) result = jet_mul(result, base);
        e >>= 1;
        if (e > 0) base = jet_mul(base, base);
    }
    return result;
}

Jet jet_diff(const Jet& a, Var which, int j)
{
    if (j < 0 || j >= a.n()) throw DomainError("jet_diff: variable index out of range");
    const int shift = which == Var::Z ? 8 * j : 8 * (j + kMaxVars);
    std::vector<Jet::Term> out;
    for (const auto& [k, c] : a.terms()) {
        const int e = static_cast<int>((k >> shift) & 0xffu);
        if (e == 0) continue;
        out.emplace_back(k - (Key{1} << shift), c * Rational(e));
    }
    Bidegree t = a.trunc();
    Bidegree v = a.val();
    int& tg = which == Var::Z ? t.hol : t.anti;
    int& vg = which == Var::Z ? v.hol : v.anti;
    if (tg < kUnbounded) tg = std::max(tg - 1, -1);
    if (vg < kUnbounded) vg = std::max(vg - 1, 0);
    return Jet::from_terms(a.n(), t, std::move(out), v);
}

Jet jet_conj(const Jet& a)
{
    std::vector<Jet::Term> out;
    out.reserve(a.terms().size());
    for (const auto& [k, c] : a.terms()) out.emplace_back(key_conj(k), c.conj());
    std::sort(out.begin(), out.end(), [](const Jet::Term& x, const Jet::Term& y) { return x.first < y.first; });
    Bidegree t{a.trunc().anti, a.trunc().hol};
    Bidegree v{a.val().anti, a.val().hol};
    return Jet::from_terms(a.n(), t, std::move(out), v);
}

Jet jet_truncate(const Jet& a, Bidegree trunc)
{
    std::vector<Jet::Term> out = a.terms();
    return Jet::from_terms(a.n(), min_bidegree(a.trunc(), trunc), std::move(out), a.val());
}

Jet jet_inverse(const Jet& a)
{
    auto [u, a0] = normalized_tail(a, "jet_inverse");
    const int m = series_length(u, "jet_inverse");
    std::vector<PiScalar> coef(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i) coef[static_cast<std::size_t>(i)] = PiScalar(i % 2 == 0 ? 1L : -1L);
    return jet_truncate(jet_scale(horner(u, coef), a0.inverse()), a.trunc());
}

Jet jet_log(const Jet& a)
{
    auto [u, a0] = normalized_tail(a, "jet_log");
    const int m = series_length(u, "jet_log");
    std::vector<PiScalar> coef(static_cast<std::size_t>(m + 1));
    for (int i = 1; i <= m; ++i) coef[static_cast<std::size_t>(i)] = PiScalar::ratio(i % 2 == 1 ? 1 : -1, i);
    if (m == 0) return jet_truncate(Jet::zero(a.n()), a.trunc());
    return jet_truncate(horner(u, coef), a.trunc());
}

Jet jet_exp(const Jet& a)
{
    if (a.trunc().hol < 0 || a.trunc().anti < 0) throw TruncationError("jet_exp", {0, 0}, a.trunc());
    if (!a.constant_term().is_zero()) throw DomainError("jet_exp: constant term must vanish");
    const int m = series_length(a, "jet_exp");
    std::vector<PiScalar> coef(static_cast<std::size_t>(m + 1));
    Rational fact = 1;
    for (int i = 0; i <= m; ++i) {
        if (i > 0) fact *= i;
        coef[static_cast<std::size_t>(i)] = PiScalar(Rational(1) / fact);
    }
    return jet_truncate(horner(a, coef), a.trunc());
}

Jet jet_euler(const Jet& a)
{
    std::vector<Jet::Term> out;
    for (const auto& [k, c] : a.terms()) {
        const int d = key_hol_degree(k) + key_anti_degree(k);
        if (d != 0) out.emplace_back(k, c * Rational(d));
    }
    return Jet::from_terms(a.n(), a.trunc(), std::move(out), a.val());
}

Jet jet_substitute(const Jet& a, const std::vector<Jet>& map)
{
    const int n = a.n();
    if (static_cast<int>(map.size()) != n) throw DomainError("jet_substitute: map needs n components");
    std::vector<Jet> zs;
    std::vector<Jet> zbs;
    for (const Jet& comp : map) {
        check_same(a, comp, "jet_substitute");
        if (!is_holomorphic(comp)) throw DomainError("jet_substitute: map component is not holomorphic");
        if (comp.trunc().hol < 0) throw TruncationError("jet_substitute", {0, 0}, comp.trunc());
        if (!comp.constant_term().is_zero())
            throw DomainError("jet_substitute: map component has a nonzero constant term");
        std::vector<Jet::Term> terms = comp.terms();
        Jet z = Jet::from_terms(n, {comp.trunc().hol, kUnbounded}, std::move(terms), {1, 0});
        zbs.push_back(jet_conj(z));
        zs.push_back(std::move(z));
    }
    const Bidegree cap = a.trunc();

    // value(k) = value(k - e_v) * W_v, where v is the lowest variable present in k
    // and W_v is Z_j or conj(Z_j).
    std::unordered_map<Key, Jet> cache;
    cache.emplace(Key{0}, Jet::constant(n, PiScalar(1L)));
    std::function<const Jet&(Key)> value = [&](Key k) -> const Jet& {
        if (auto it = cache.find(k); it != cache.end()) return it->second;
        int v = 0;
        while (((k >> (8 * v)) & 0xffu) == 0) ++v;
        const Jet& base = v < kMaxVars ? zs[static_cast<std::size_t>(v)] : zbs[static_cast<std::size_t>(v - kMaxVars)];
        Jet r = jet_truncate(jet_mul(value(k - (Key{1} << (8 * v))), base), cap);
        return cache.emplace(k, std::move(r)).first->second;
    };

    Bidegree t = cap;
    Accum acc;
    for (const auto& [k, c] : a.terms()) {
        const Jet& prod = value(k);
        t = min_bidegree(t, prod.trunc());
        for (const auto& [kp, cp] : prod.terms()) acc[kp].addmul(c, cp);
    }
    std::vector<Jet::Term> terms;
    for (auto& [k, c] : drain(acc))
        if (inside(k, t)) terms.emplace_back(k, std::move(c));
    return Jet::from_terms(n, t, std::move(terms), a.val());
}

Jet jet_holomorphic_part(const Jet& a)
{
    if (a.trunc().anti < 0) throw TruncationError("jet_holomorphic_part", {a.trunc().hol, 0}, a.trunc());
    std::vector<Jet::Term> out;
    for (const auto& [k, c] : a.terms())
        if (key_anti_degree(k) == 0) out.emplace_back(k, c);
    return Jet::from_terms(a.n(), {a.trunc().hol, kUnbounded}, std::move(out), {a.val().hol, 0});
}

Jet jet_antiholomorphic_part(const Jet& a) { return jet_conj(jet_holomorphic_part(jet_conj(a))); }

PiScalar deriv0(const Jet& a, const std::vector<int>& hol, const std::vector<int>& anti)
{
    MultiIndex alpha(static_cast<std::size_t>(a.n()), 0);
    MultiIndex beta(static_cast<std::size_t>(a.n()), 0);
    for (int j : hol) {
        if (j < 0 || j >= a.n()) throw DomainError("deriv0: index out of range");
        ++alpha[static_cast<std::size_t>(j)];
    }
    for (int j : anti) {
        if (j < 0 || j >= a.n()) throw DomainError("deriv0: index out of range");
        ++beta[static_cast<std::size_t>(j)];
    }
    Rational fact = 1;
    for (int e : alpha)
        for (int i = 2; i <= e; ++i) fact *= i;
    for (int e : beta)
        for (int i = 2; i <= e; ++i) fact *= i;
    return a.coeff(alpha, beta) * fact;
}

PiScalar deriv0(const Jet& a, std::initializer_list<int> hol, std::initializer_list<int> anti)
{
    return deriv0(a, std::vector<int>(hol), std::vector<int>(anti));
}

bool is_real(const Jet& a)
{
    for (const auto& [k, c] : a.terms()) {
        Key m = key_conj(k);
        if (!a.knows(m)) continue;
        if (a.coeff(m) != c.conj()) return false;
    }
    return true;
}

bool is_holomorphic(const Jet& a)
{
    return std::all_of(a.terms().begin(), a.terms().end(),
                       [](const Jet::Term& t) { return key_anti_degree(t.first) == 0; });
}

bool is_antiholomorphic(const Jet& a)
{
    return std::all_of(a.terms().begin(), a.terms().end(),
                       [](const Jet::Term& t) { return key_hol_degree(t.first) == 0; });
}

// ---------------------------------------------------------------------------

JetMatrix::JetMatrix(int rows, int cols, int n)
    : rows_(rows), cols_(cols), n_(n), entries_(static_cast<std::size_t>(rows * cols), Jet::zero(n))
{
}

JetMatrix JetMatrix::identity(int size, int n)
{
    JetMatrix m(size, size, n);
    for (int i = 0; i < size; ++i) m(i, i) = Jet::constant(n, PiScalar(1L));
    return m;
}

JetMatrix jet_matmul(const JetMatrix& a, const JetMatrix& b)
{
    if (a.cols() != b.rows()) throw DomainError("jet_matmul: shape mismatch");
    JetMatrix c(a.rows(), b.cols(), a.n());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Jet s = Jet::zero(a.n());
            for (int k = 0; k < a.cols(); ++k) s = jet_add(s, jet_mul(a(i, k), b(k, j)));
            c(i, j) = std::move(s);
        }
    return c;
}

JetMatrix jet_transpose(const JetMatrix& a)
{
    JetMatrix t(a.cols(), a.rows(), a.n());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

JetMatrix jet_conj_transpose(const JetMatrix& a)
{
    JetMatrix t(a.cols(), a.rows(), a.n());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = jet_conj(a(i, j));
    return t;
}

JetMatrix jet_truncate(const JetMatrix& a, Bidegree trunc)
{
    JetMatrix t = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(i, j) = jet_truncate(a(i, j), trunc);
    return t;
}

namespace {

Jet det_rec(const JetMatrix& m, std::vector<int>& cols, int row)
{
    const int size = m.rows();
    if (row == size) return Jet::constant(m.n(), PiScalar(1L));
    Jet total = Jet::zero(m.n());
    int sign = 1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const int c = cols[i];
        if (!m(row, c).has_no_terms() || m(row, c).trunc() != Bidegree{kUnbounded, kUnbounded}) {
            std::vector<int> rest = cols;
            rest.erase(rest.begin() + static_cast<long>(i));
            Jet term = jet_mul(m(row, c), det_rec(m, rest, row + 1));
            total = sign > 0 ? jet_add(total, term) : jet_sub(total, term);
        }
        sign = -sign;
    }
    return total;
}

} // namespace

Jet jet_det(const JetMatrix& m)
{
    if (m.rows() != m.cols()) throw DomainError("jet_det: matrix is not square");
    std::vector<int> cols(static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.cols(); ++i) cols[static_cast<std::size_t>(i)] = i;
    return det_rec(m, cols, 0);
}

JetMatrix jet_matrix_inverse(const JetMatrix& m)
{
    if (m.rows() != m.cols()) throw DomainError("jet_matrix_inverse: matrix is not square");
    const int size = m.rows();
    Jet d = jet_det(m);
    if (d.trunc().hol < 0 || d.trunc().anti < 0 || d.constant_term().is_zero())
        throw DomainError("jet_matrix_inverse: singular constant term");
    Jet dinv = jet_inverse(d);
    JetMatrix inv(size, size, m.n());
    if (size == 1) {
        inv(0, 0) = dinv;
        return inv;
    }
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            JetMatrix minor(size - 1, size - 1, m.n());
            for (int r = 0, rr = 0; r < size; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < size; ++c) {
                    if (c == i) continue;
                    minor(rr, cc) = m(r, c);
                    ++cc;
                }
                ++rr;
            }
            Jet cof = jet_mul(jet_det(minor), dinv);
            inv(i, j) = (i + j) % 2 == 0 ? cof : jet_neg(cof);
        }
    return inv;
}

bool is_hermitian(const JetMatrix& m)
{
    if (m.rows() != m.cols()) return false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j)
            if (m(i, j) != jet_conj(m(j, i))) return false;
    return true;
}

std::vector<MultiIndex> multi_indices_upto(int n, int d)
{
    std::vector<MultiIndex> out;
    for (int deg = 0; deg <= d; ++deg) {
        MultiIndex a(static_cast<std::size_t>(n), 0);
        // enumerate compositions of deg into n parts, lexicographically descending
        std::vector<MultiIndex> level;
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == n - 1) {
                a[static_cast<std::size_t>(pos)] = left;
                level.push_back(a);
                return;
            }
            for (int e = left; e >= 0; --e) {
                a[static_cast<std::size_t>(pos)] = e;
                self(self, pos + 1, left - e);
            }
        };
        rec(rec, 0, deg);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace btexp
