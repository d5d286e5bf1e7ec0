#include "btexp/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace btexp {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Rational factorial(int k)
{
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

Rational k_power(long k, int e)
{
    Rational r = 1;
    const Rational base(k);
    for (int i = 0; i < std::abs(e); ++i) r *= base;
    return e >= 0 ? r : Rational(1) / r;
}

int degree(const MultiIndex& a)
{
    int d = 0;
    for (int x : a) d += x;
    return d;
}

void require_polynomial(const Jet& f, int n, const char* where)
{
    if (f.n() != n) throw DomainError(std::string(where) + ": symbol dimension does not match lambda");
    if (f.trunc().hol < kUnbounded || f.trunc().anti < kUnbounded)
        throw DomainError(std::string(where) + ": symbol must be a polynomial (not integrable as a truncated jet)");
}

void check_lambda(const std::vector<PiScalar>& lambda)
{
    if (lambda.empty() || lambda.size() > static_cast<std::size_t>(kMaxVars))
        throw DomainError("fock: dimension out of range");
    for (const auto& l : lambda)
        if (!l.is_monomial() || !l.is_real() || l.real_sign() <= 0)
            throw DomainError("fock: lambda must be a positive rational multiple of a power of pi");
}

MultiIndex sum(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

KRational from_powers(const std::map<int, PiScalar>& terms)
{
    KRational r;
    if (terms.empty()) {
        r.num = {PiScalar()};
        return r;
    }
    const int emin = std::min(0, terms.begin()->first);
    const int emax = terms.rbegin()->first;
    r.num.assign(u(emax - emin + 1), PiScalar());
    for (const auto& [e, c] : terms) r.num[u(e - emin)] += c;
    r.den.assign(u(-emin + 1), Rational(0));
    r.den[u(-emin)] = 1;
    return r;
}

int top(const std::vector<PiScalar>& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[u(i)].is_zero()) return i;
    return -1;
}

int top(const std::vector<Rational>& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (sgn(p[u(i)]) != 0) return i;
    return -1;
}

} // namespace

PiScalar KRational::at(long k) const
{
    PiScalar n;
    for (std::size_t i = 0; i < num.size(); ++i) n += num[i] * k_power(k, static_cast<int>(i));
    Rational d = 0;
    for (std::size_t i = 0; i < den.size(); ++i) d += den[i] * k_power(k, static_cast<int>(i));
    if (sgn(d) == 0) throw DomainError("KRational: pole at k = " + std::to_string(k));
    return n * (Rational(1) / d);
}

std::vector<PiScalar> KRational::expansion(int n, int J) const
{
    std::vector<PiScalar> out(u(J + 1));
    const int dn = top(num);
    const int dd = top(den);
    if (dd < 0) throw DomainError("KRational: zero denominator");
    if (dn < 0) return out;
    // num/den = k^{dn-dd} * N(x) / D(x), x = 1/k, D(0) = 1 after scaling.
    const Rational lead = den[u(dd)];
    const int need = dn - dd - n + J;
    std::vector<PiScalar> q;
    for (int m = 0; m <= need; ++m) {
        PiScalar c = m <= dn ? num[u(dn - m)] : PiScalar();
        for (int i = 1; i <= std::min(m, dd); ++i) c -= q[u(m - i)] * (den[u(dd - i)] / lead);
        q.push_back(c);
    }
    for (int j = 0; j <= J; ++j) {
        const int m = dn - dd - n + j;
        if (m >= 0) out[u(j)] = q[u(m)] * (Rational(1) / lead);
    }
    return out;
}

std::pair<PiScalar, int> fock_norm2(const std::vector<PiScalar>& lambda, const MultiIndex& a)
{
    PiScalar c(1L);
    int e = 0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        const PiScalar two_l = PiScalar(2L) * lambda[j];
        c *= PiScalar(2L) * PiScalar::pi(1) * factorial(a[j]) * two_l.pow(a[j] + 1).inverse();
        e -= a[j] + 1;
    }
    return {c, e};
}

KRational fock_toeplitz_series(const std::vector<PiScalar>& lambda, const Jet& f)
{
    check_lambda(lambda);
    const int n = static_cast<int>(lambda.size());
    require_polynomial(f, n, "fock_toeplitz_series");
    const auto [one, e1] = fock_norm2(lambda, MultiIndex(u(n), 0));
    const PiScalar inv_one2 = (one * one).inverse();
    std::map<int, PiScalar> terms;
    for (const auto& [key, c] : f.terms()) {
        const MultiIndex a = key_alpha_index(key, n);
        if (a != key_beta_index(key, n)) continue;
        const auto [na, ea] = fock_norm2(lambda, a);
        terms[ea - 2 * e1] += c * na * inv_one2;
    }
    return from_powers(terms);
}

KRational fock_compose_series(const std::vector<PiScalar>& lambda, const Jet& f, const Jet& g)
{
    check_lambda(lambda);
    const int n = static_cast<int>(lambda.size());
    require_polynomial(f, n, "fock_compose_series");
    require_polynomial(g, n, "fock_compose_series");
    const auto [one, e1] = fock_norm2(lambda, MultiIndex(u(n), 0));
    const PiScalar inv_one2 = (one * one).inverse();
    // sum_c <f z^c, 1> <g, z^c> / (||z^c||^2 ||1||^4)
    std::map<int, PiScalar> terms;
    for (const auto& [kf, cf] : f.terms()) {
        const MultiIndex a = key_alpha_index(kf, n);
        const MultiIndex b = key_beta_index(kf, n);
        MultiIndex c(u(n));
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            c[u(j)] = b[u(j)] - a[u(j)];
            ok = ok && c[u(j)] >= 0;
        }
        if (!ok) continue;
        const auto [nb, eb] = fock_norm2(lambda, b);
        const auto [nc, ec] = fock_norm2(lambda, c);
        for (const auto& [kg, cg] : g.terms()) {
            const MultiIndex a2 = key_alpha_index(kg, n);
            if (a2 != sum(key_beta_index(kg, n), c)) continue;
            const auto [na, ea] = fock_norm2(lambda, a2);
            terms[eb + ea - ec - 2 * e1] += cf * cg * nb * na * nc.inverse() * inv_one2;
        }
    }
    return from_powers(terms);
}

PiScalar fock_toeplitz_exact(const std::vector<PiScalar>& lambda, const Jet& f, long k)
{
    if (k < 1) throw DomainError("fock_toeplitz_exact: k must be positive");
    return fock_toeplitz_series(lambda, f).at(k);
}

PiScalar fock_compose_exact(const std::vector<PiScalar>& lambda, const Jet& f, const Jet& g, long k)
{
    if (k < 1) throw DomainError("fock_compose_exact: k must be positive");
    return fock_compose_series(lambda, f, g).at(k);
}

ScalarGrid fock_operator_matrix(const std::vector<PiScalar>& lambda, const Jet& f, long k, int deg)
{
    check_lambda(lambda);
    const int n = static_cast<int>(lambda.size());
    require_polynomial(f, n, "fock_operator_matrix");
    const auto basis = multi_indices_upto(n, deg);
    std::map<MultiIndex, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    auto norm_at = [&](const MultiIndex& a) {
        const auto [c, e] = fock_norm2(lambda, a);
        return c * k_power(k, e);
    };
    ScalarGrid A(basis.size(), std::vector<PiScalar>(basis.size()));
    // <f z^b, z^a> with f = c z^al zbar^be is nonzero iff al + b = be + a.
    for (std::size_t bi = 0; bi < basis.size(); ++bi)
        for (const auto& [key, c] : f.terms()) {
            const MultiIndex top_index = sum(key_alpha_index(key, n), basis[bi]);
            const MultiIndex be = key_beta_index(key, n);
            MultiIndex a(u(n));
            bool ok = true;
            for (int j = 0; j < n; ++j) {
                a[u(j)] = top_index[u(j)] - be[u(j)];
                ok = ok && a[u(j)] >= 0;
            }
            if (!ok || degree(a) > deg) continue;
            A[index.at(a)][bi] += c * norm_at(top_index) * norm_at(a).inverse();
        }
    return A;
}

ScalarGrid grid_mul(const ScalarGrid& a, const ScalarGrid& b)
{
    const std::size_t m = a.size();
    ScalarGrid r(m, std::vector<PiScalar>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) r[i][j].addmul(a[i][l], b[l][j]);
        }
    return r;
}

PiScalar fock_kernel_at0(const std::vector<PiScalar>& lambda, const ScalarGrid& a, long k)
{
    const auto [c, e] = fock_norm2(lambda, MultiIndex(lambda.size(), 0));
    return a.at(0).at(0) * (c * k_power(k, e)).inverse();
}

KRational cp1_toeplitz_series(const std::vector<PiScalar>& coeffs)
{
    // T_{t^p}(0) = (k+1)^2 p! k! / (k+p+1)! = (k+1) p! / prod_{i=2}^{p+1} (k+i)
    const int P = std::max(0, static_cast<int>(coeffs.size()) - 1);
    auto times_linear = [](std::vector<Rational> p, long c) {
        p.push_back(Rational(0));
        for (std::size_t i = p.size() - 1; i > 0; --i) p[i] = p[i - 1] + p[i] * c;
        p[0] *= c;
        return p;
    };
    std::vector<Rational> den{Rational(1)};
    for (int i = 2; i <= P + 1; ++i) den = times_linear(den, i);
    KRational r;
    r.den = den;
    r.num.assign(u(P + 2), PiScalar());
    for (int p = 0; p <= P && p < static_cast<int>(coeffs.size()); ++p) {
        if (coeffs[u(p)].is_zero()) continue;
        std::vector<Rational> poly = times_linear({factorial(p)}, 1);
        for (int i = p + 2; i <= P + 1; ++i) poly = times_linear(poly, i);
        for (std::size_t i = 0; i < poly.size(); ++i) r.num[i] += coeffs[u(p)] * poly[i];
    }
    return r;
}

PiScalar cp1_density_exact(const std::vector<PiScalar>& coeffs, long k)
{
    if (k < 0) throw DomainError("cp1_density_exact: k must be non-negative");
    return cp1_toeplitz_series(coeffs).at(k);
}

namespace {

QuadratureRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& off, double mu0)
{
    const int m = static_cast<int>(diag.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = diag[u(i)];
    for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = off[u(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    QuadratureRule r;
    for (int i = 0; i < m; ++i) {
        r.nodes.push_back(es.eigenvalues()(i));
        const double v = es.eigenvectors()(0, i);
        r.weights.push_back(mu0 * v * v);
    }
    return r;
}

} // namespace

QuadratureRule gauss_laguerre(int m, double alpha)
{
    if (m < 1 || alpha <= -1) throw DomainError("gauss_laguerre: bad parameters");
    std::vector<double> d, o;
    for (int i = 0; i < m; ++i) d.push_back(2.0 * i + 1 + alpha);
    for (int i = 1; i < m; ++i) o.push_back(std::sqrt(i * (i + alpha)));
    return golub_welsch(d, o, std::tgamma(alpha + 1));
}

QuadratureRule gauss_jacobi(int m, double a, double b)
{
    if (m < 1 || a <= -1 || b <= -1) throw DomainError("gauss_jacobi: bad parameters");
    std::vector<double> d, o;
    const double s = a + b;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            d.push_back((b - a) / (s + 2));
        else
            d.push_back((b * b - a * a) / ((2 * i + s) * (2 * i + s + 2)));
    }
    for (int i = 1; i < m; ++i) {
        const double t = 2 * i + s;
        o.push_back(std::sqrt(4.0 * i * (i + a) * (i + b) * (i + s) / (t * t * (t + 1) * (t - 1))));
    }
    const double mu0 = std::exp((s + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(s + 2));
    return golub_welsch(d, o, mu0);
}

namespace {

template <class F>
double refine(F&& integral, double tol)
{
    double prev = integral(4);
    for (int m = 8; m <= 256; m *= 2) {
        const double cur = integral(m);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw Error("quadrature did not converge");
}

} // namespace

std::complex<double> fock_toeplitz_float(const std::vector<double>& lambda, const Jet& f, long k, double tol)
{
    const int n = static_cast<int>(lambda.size());
    require_polynomial(f, n, "fock_toeplitz_float");
    // <z^a zbar^a, 1> = prod 2 pi / (2 k lambda)^{a+1} int s^a e^{-s} ds
    auto moment = [&](int a) {
        return refine(
            [a](int m) {
                const QuadratureRule q = gauss_laguerre(m);
                double s = 0;
                for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], a);
                return s;
            },
            tol);
    };
    auto inner = [&](const MultiIndex& a) {
        double v = 1;
        for (int j = 0; j < n; ++j) {
            const double c = 2.0 * static_cast<double>(k) * lambda[u(j)];
            v *= 2 * M_PI * moment(a[u(j)]) / std::pow(c, a[u(j)] + 1);
        }
        return v;
    };
    const double one = inner(MultiIndex(u(n), 0));
    std::complex<double> total = 0;
    for (const auto& [key, c] : f.terms()) {
        const MultiIndex a = key_alpha_index(key, n);
        if (a != key_beta_index(key, n)) continue;
        total += c.to_complex() * inner(a);
    }
    return total / (one * one);
}

double cp1_density_float(const std::vector<double>& coeffs, long k, double tol)
{
    // <t^p, 1> = int_0^1 v^p (1-v)^k dv = 2^{-p-k-1} int (1-x)^k (1+x)^p dx
    auto beta = [&](int p) {
        return refine(
            [&](int m) {
                const QuadratureRule q = gauss_jacobi(m, static_cast<double>(k), 0.0);
                double s = 0;
                for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(1 + q.nodes[i], p);
                return s * std::pow(2.0, -p - static_cast<double>(k) - 1);
            },
            tol);
    };
    const double one = beta(0);
    double total = 0;
    for (std::size_t p = 0; p < coeffs.size(); ++p)
        if (coeffs[p] != 0) total += coeffs[p] * beta(static_cast<int>(p));
    return total / (one * one);
}

namespace {

struct LsqFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd stderr_;
    double condition = 0;
    double residual = 0;
};

LsqFit least_squares(const std::vector<std::pair<long, double>>& samples, int n, int terms)
{
    const int m = static_cast<int>(samples.size());
    double kref = 0;
    for (const auto& s : samples) kref = std::max(kref, static_cast<double>(s.first));
    Eigen::MatrixXd A(m, terms);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        const double x = static_cast<double>(samples[u(i)].first) / kref;
        for (int j = 0; j < terms; ++j) A(i, j) = std::pow(x, n - j);
        y(i) = samples[u(i)].second;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    LsqFit r;
    r.condition = sv(0) / sv(sv.size() - 1);
    const Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd res = A * beta - y;
    r.residual = res.norm();
    const double dof = std::max(1, m - terms);
    const double sigma2 = res.squaredNorm() / dof;
    const Eigen::MatrixXd V = svd.matrixV();
    r.coef.resize(terms);
    r.stderr_.resize(terms);
    for (int j = 0; j < terms; ++j) {
        double var = 0;
        for (int l = 0; l < sv.size(); ++l) var += V(j, l) * V(j, l) / (sv(l) * sv(l));
        const double scale = std::pow(kref, n - j);
        r.coef(j) = beta(j) / scale;
        r.stderr_(j) = std::sqrt(sigma2 * var) / scale;
    }
    return r;
}

} // namespace

FitResult fit_expansion(const std::vector<std::pair<long, double>>& samples, int n, int J, int extra)
{
    if (J < 0 || extra < 0) throw DomainError("fit_expansion: negative order");
    std::vector<long> ks;
    for (const auto& s : samples) ks.push_back(s.first);
    std::sort(ks.begin(), ks.end());
    const long distinct = std::unique(ks.begin(), ks.end()) - ks.begin();
    if (distinct < J + 2) throw DomainError("fit_expansion: need at least J+2 distinct k values");
    if (ks.front() <= 0) throw DomainError("fit_expansion: k must be positive");
    extra = static_cast<int>(std::min<long>(extra, distinct - J - 2));
    const int terms = J + 1 + extra;
    const LsqFit main = least_squares(samples, n, terms);
    if (!(main.condition < 1e13)) {
        std::ostringstream os;
        os << "fit_expansion: ill-conditioned sample set (condition number " << main.condition << ")";
        throw DomainError(os.str());
    }
    std::optional<LsqFit> coarse;
    if (extra > 0) coarse = least_squares(samples, n, terms - 1);
    FitResult r;
    r.condition = main.condition;
    r.residual = main.residual;
    for (int j = 0; j <= J; ++j) {
        FitCoefficient c;
        c.j = j;
        c.value = main.coef(j);
        c.error = main.stderr_(j);
        if (coarse) c.error = std::max(c.error, std::abs(main.coef(j) - coarse->coef(j)));
        r.coeffs.push_back(c);
    }
    return r;
}

namespace {

std::vector<std::pair<long, double>> sample(const KRational& v, long kmin, long kmax)
{
    if (kmin < 1 || kmax < kmin) throw DomainError("oracle: need 1 <= kmin <= kmax");
    std::vector<std::pair<long, double>> s;
    for (long k = kmin; k <= kmax; ++k) s.emplace_back(k, v.at(k).to_complex().real());
    return s;
}

void fill(OracleSeries& o, const KRational& v, long kmin, long kmax, int J)
{
    o.exact_value = v;
    o.exact_coeffs = v.expansion(o.n, J);
    o.samples = sample(v, kmin, kmax);
    if (kmax - kmin + 1 >= J + 2) o.fitted = fit_expansion(o.samples, o.n, J);
}

} // namespace

OracleSeries fock_series(const std::vector<PiScalar>& lambda, const Jet& f, const std::optional<Jet>& g, long kmin,
                         long kmax, int J, const std::string& label)
{
    OracleSeries o;
    o.model = OracleModel::Fock;
    o.n = static_cast<int>(lambda.size());
    o.symbol = label;
    fill(o, g ? fock_compose_series(lambda, f, *g) : fock_toeplitz_series(lambda, f), kmin, kmax, J);
    return o;
}

OracleSeries cp1_series(const std::vector<PiScalar>& coeffs, long kmin, long kmax, int J, const std::string& label)
{
    OracleSeries o;
    o.model = OracleModel::Cp1;
    o.n = 1;
    o.symbol = label;
    fill(o, cp1_toeplitz_series(coeffs), kmin, kmax, J);
    return o;
}

} // namespace btexp
