#include "btexp/normal_form.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace btexp {

namespace {

using Cld = std::complex<long double>;
using CMatrix = Eigen::Matrix<Cld, Eigen::Dynamic, Eigen::Dynamic>;

ScalarMatrix zeros(int n) { return ScalarMatrix(static_cast<std::size_t>(n), std::vector<PiScalar>(static_cast<std::size_t>(n))); }

ScalarMatrix eye(int n)
{
    ScalarMatrix m = zeros(n);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = PiScalar(1L);
    return m;
}

ScalarMatrix matmul(const ScalarMatrix& a, const ScalarMatrix& b)
{
    const std::size_t n = a.size();
    ScalarMatrix c = zeros(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j].addmul(a[i][k], b[k][j]);
        }
    return c;
}

ScalarMatrix adjoint(const ScalarMatrix& a)
{
    const std::size_t n = a.size();
    ScalarMatrix c = zeros(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[j][i] = a[i][j].conj();
    return c;
}

ScalarMatrix conjugate(const ScalarMatrix& a)
{
    ScalarMatrix c = a;
    for (auto& row : c)
        for (auto& x : row) x = x.conj();
    return c;
}

bool is_diagonal(const ScalarMatrix& a)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j && !a[i][j].is_zero()) return false;
    return true;
}

PiScalar scalar_det(const ScalarMatrix& m)
{
    const std::size_t n = m.size();
    if (n == 0) return PiScalar(1L);
    if (n == 1) return m[0][0];
    PiScalar total;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        ScalarMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<PiScalar> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(row);
        }
        PiScalar t = m[0][c] * scalar_det(minor);
        if (c % 2 == 0)
            total += t;
        else
            total -= t;
    }
    return total;
}

// Leading principal minors positive.
bool positive_definite(const ScalarMatrix& m)
{
    for (std::size_t k = 1; k <= m.size(); ++k) {
        ScalarMatrix sub;
        for (std::size_t r = 0; r < k; ++r) sub.emplace_back(m[r].begin(), m[r].begin() + static_cast<long>(k));
        PiScalar d = scalar_det(sub);
        if (!d.is_real() || d.real_sign() <= 0) return false;
    }
    return true;
}

ScalarMatrix constant_matrix(const JetMatrix& m)
{
    ScalarMatrix out = zeros(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j).trunc().hol < 0 || m(i, j).trunc().anti < 0)
                throw TruncationError("theta(0)", {0, 0}, m(i, j).trunc());
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j).constant_term();
        }
    return out;
}

std::vector<Jet> linear_map(const ScalarMatrix& a, int n)
{
    std::vector<Jet> map;
    for (int j = 0; j < n; ++j) {
        Jet zj = Jet::zero(n);
        for (int k = 0; k < n; ++k) {
            const PiScalar& c = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (!c.is_zero()) zj = zj + jet_scale(Jet::z(n, k), c);
        }
        map.push_back(zj);
    }
    return map;
}

FramedInput pull_back(const FramedInput& in, const std::vector<Jet>& map)
{
    FramedInput out;
    out.n = in.n;
    out.phi = jet_substitute(in.phi, map);
    out.theta = pull_back_form(in.theta, map);
    if (in.f) out.f = jet_substitute(*in.f, map);
    if (in.g) out.g = jet_substitute(*in.g, map);
    return out;
}

Jet quadratic_part(const std::vector<PiScalar>& lambda, int n)
{
    Jet q = Jet::zero(n);
    for (int j = 0; j < n; ++j)
        q = q + jet_scale(jet_mul(Jet::z(n, j), Jet::zbar(n, j)), lambda[static_cast<std::size_t>(j)]);
    return q;
}

Key mixed_key(int n, int j, int k)
{
    MultiIndex a(static_cast<std::size_t>(n), 0);
    MultiIndex b(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(j)] = 1;
    b[static_cast<std::size_t>(k)] = 1;
    return make_key(a, b);
}

// Dyadic rational close to x (about 64 significant bits).
Rational rational_from(long double x)
{
    double hi = static_cast<double>(x);
    double lo = static_cast<double>(x - static_cast<long double>(hi));
    return Rational(hi) + Rational(lo);
}

// Continued-fraction approximation with bounded denominator.
Rational simplest_rational(long double x, long max_den)
{
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    long double r = x;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(r);
        if (std::fabs(a) > 1e15L) break;
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0;
        long q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        long double frac = r - a;
        if (frac < 1e-18L) break;
        r = 1.0L / frac;
    }
    Rational q(p1, q1);
    q.canonicalize();
    return q;
}

// Null space of a Gaussian-rational matrix (entries PiScalar with pi^0).
std::vector<std::vector<PiScalar>> null_space(ScalarMatrix m)
{
    const std::size_t n = m.size();
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < n; ++c) {
        std::size_t p = row;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) continue;
        std::swap(m[p], m[row]);
        PiScalar inv = m[row][c].inverse();
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            PiScalar factor = m[r][c];
            for (std::size_t cc = 0; cc < n; ++cc) m[r][cc] -= factor * m[row][cc];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    std::vector<std::vector<PiScalar>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
        std::vector<PiScalar> v(n);
        v[free] = PiScalar(1L);
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<std::size_t>(pivot_col[r])] = -m[r][free];
        basis.push_back(v);
    }
    return basis;
}

PiScalar inner(const std::vector<PiScalar>& a, const std::vector<PiScalar>& b)
{
    PiScalar s;
    for (std::size_t i = 0; i < a.size(); ++i) s.addmul(a[i].conj(), b[i]);
    return s;
}

// Exact unitary U with U^* m U diagonal, if the eigensystem of m is
// Gaussian-rational with rational-square eigenvector norms.
std::optional<ScalarMatrix> exact_unitary(const ScalarMatrix& m, const Eigen::Matrix<long double, Eigen::Dynamic, 1>& evals)
{
    const std::size_t n = m.size();
    std::vector<std::vector<PiScalar>> columns;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        const long double scale = std::max(1.0L, std::fabs(evals(static_cast<long>(i))));
        while (j < n && std::fabs(evals(static_cast<long>(j)) - evals(static_cast<long>(i))) < 1e-9L * scale) ++j;
        long double mean = 0;
        for (std::size_t t = i; t < j; ++t) mean += evals(static_cast<long>(t));
        mean /= static_cast<long double>(j - i);
        PiScalar mu(simplest_rational(mean, 1000000));
        ScalarMatrix shifted = m;
        for (std::size_t t = 0; t < n; ++t) shifted[t][t] -= mu;
        auto basis = null_space(shifted);
        if (basis.size() != j - i) return std::nullopt;
        std::vector<std::vector<PiScalar>> ortho;
        for (auto v : basis) {
            for (const auto& u : ortho) {
                PiScalar c = inner(u, v);
                for (std::size_t t = 0; t < n; ++t) v[t] -= c * u[t];
            }
            auto norm = exact_sqrt(inner(v, v));
            if (!norm) return std::nullopt;
            PiScalar inv = norm->inverse();
            for (auto& x : v) x *= inv;
            ortho.push_back(v);
        }
        for (auto& v : ortho) columns.push_back(std::move(v));
        i = j;
    }
    ScalarMatrix u = zeros(static_cast<int>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u[r][c] = columns[c][r];
    if (matmul(adjoint(u), u) != eye(static_cast<int>(n))) return std::nullopt;
    if (!is_diagonal(matmul(matmul(adjoint(u), m), u))) return std::nullopt;
    return u;
}

// Eigen step on a Hermitian matrix m = pi^e * (Gaussian-rational matrix).
ScalarMatrix diagonalizing_unitary(const ScalarMatrix& m, bool& approximate)
{
    const std::size_t n = m.size();
    std::optional<int> exponent;
    for (const auto& row : m)
        for (const auto& x : row) {
            if (x.is_zero()) continue;
            if (!x.is_monomial() || (exponent && *exponent != x.terms().front().first))
                throw DomainError("linear_normalize: Hessian entries must share one pi exponent for the eigen step");
            exponent = x.terms().front().first;
        }
    const int e = exponent.value_or(0);
    ScalarMatrix mr = m;
    CMatrix num(static_cast<long>(n), static_cast<long>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            mr[r][c] = m[r][c] * PiScalar::pi(-e);
            Gauss g = mr[r][c].coeff(0);
            num(static_cast<long>(r), static_cast<long>(c)) = Cld(g.re.get_d(), g.im.get_d());
        }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(num);
    if (solver.info() != Eigen::Success) throw DomainError("linear_normalize: eigen solver failed");
    if (auto u = exact_unitary(mr, solver.eigenvalues())) return *u;

    approximate = true;
    ScalarMatrix u = zeros(static_cast<int>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Cld x = solver.eigenvectors()(static_cast<long>(r), static_cast<long>(c));
            u[r][c] = PiScalar(Gauss{rational_from(x.real()), rational_from(x.imag())});
        }
    return u;
}

} // namespace

ScalarMatrix mixed_hessian(const Jet& phi)
{
    const int n = phi.n();
    ScalarMatrix h = zeros(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            h[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = phi.coeff(mixed_key(n, j, k));
    return h;
}

std::vector<Jet> NormalTransform::composite() const
{
    const int n = static_cast<int>(higher.size());
    std::vector<Jet> z;
    for (int j = 0; j < n; ++j) {
        Jet zj = Jet::zero(n);
        for (int a = 0; a < n; ++a) {
            const PiScalar& c = linear[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
            if (!c.is_zero()) zj = zj + jet_scale(higher[static_cast<std::size_t>(a)], c);
        }
        z.push_back(zj);
    }
    return z;
}

JetMatrix pull_back_form(const JetMatrix& theta, const std::vector<Jet>& map)
{
    const int n = static_cast<int>(map.size());
    if (theta.rows() != n || theta.cols() != n) throw DomainError("pull_back_form: shape mismatch");
    JetMatrix jac(n, n, n);
    JetMatrix jac_bar(n, n, n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) {
            jac(j, a) = jet_diff(map[static_cast<std::size_t>(j)], Var::Z, a);
            jac_bar(j, a) = jet_conj(jac(j, a));
        }
    JetMatrix moved(n, n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) moved(j, k) = jet_substitute(theta(j, k), map);
    // Theta'_{ab} = sum_{jk} J_{ja} Theta_{jk}(Z) conj(J_{kb})
    return jet_matmul(jet_matmul(jet_transpose(jac), moved), jac_bar);
}

void check_framed_input(const FramedInput& in)
{
    const int n = in.n;
    if (n < 1 || n > kMaxVars) throw SchemaError("dimension n must be in 1..4");
    if (in.phi.n() != n) throw SchemaError("phi has dimension " + std::to_string(in.phi.n()) + ", expected " + std::to_string(n));
    if (in.theta.rows() != n || in.theta.cols() != n || in.theta.n() != n) throw SchemaError("theta must be an n x n matrix of n-variable jets");
    if (in.f && in.f->n() != n) throw SchemaError("f has the wrong dimension");
    if (in.g && in.g->n() != n) throw SchemaError("g has the wrong dimension");
    if (in.phi.trunc().hol < 1 || in.phi.trunc().anti < 1) throw TruncationError("phi Hessian", {1, 1}, in.phi.trunc());
    if (!is_real(in.phi)) throw DomainError("phi is not real");
    if (!is_hermitian(in.theta)) throw DomainError("theta is not Hermitian");
    if (!positive_definite(mixed_hessian(in.phi))) throw DomainError("mixed Hessian of phi is not positive definite");
    if (!positive_definite(constant_matrix(in.theta))) throw DomainError("theta(0) is not positive definite");
}

std::pair<Jet, Jet> gauge_reduce(const Jet& phi)
{
    const int n = phi.n();
    if (phi.trunc().hol < 0 || phi.trunc().anti < 0) throw TruncationError("gauge_reduce", {0, 0}, phi.trunc());
    Jet g = jet_holomorphic_part(phi) - Jet::constant(n, phi.constant_term() * Rational(1, 2));
    Jet reduced = phi - g - jet_conj(g);
    return {reduced, g};
}

LinearStep linear_normalize(const FramedInput& in)
{
    const int n = in.n;
    LinearStep out;
    ScalarMatrix t = constant_matrix(in.theta);
    ScalarMatrix h = mixed_hessian(in.phi);

    // Theta(0) = L D L^*
    ScalarMatrix l = eye(n);
    std::vector<PiScalar> d(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        PiScalar di = t[i][i];
        for (std::size_t k = 0; k < i; ++k) di -= l[i][k] * d[k] * l[i][k].conj();
        if (!di.is_monomial()) throw DomainError("linear_normalize: Theta(0) pivot " + di.str() + " is not a unit");
        d[i] = di;
        PiScalar inv = di.inverse();
        for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
            PiScalar s = t[j][i];
            for (std::size_t k = 0; k < i; ++k) s -= l[j][k] * d[k] * l[i][k].conj();
            l[j][i] = s * inv;
        }
    }
    // L^{-1} by forward substitution
    ScalarMatrix linv = eye(n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            PiScalar s;
            for (std::size_t k = j; k < i; ++k) s.addmul(l[i][k], linv[k][j]);
            linv[i][j] = -s;
        }
    ScalarMatrix scale = zeros(n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        if (auto r = exact_sqrt(d[i])) {
            scale[i][i] = r->inverse();
        } else {
            out.approximate = true;
            scale[i][i] = PiScalar(Rational(1) / approx_sqrt(d[i]));
        }
    }
    ScalarMatrix b = matmul(adjoint(linv), scale);
    ScalarMatrix m = matmul(matmul(adjoint(b), h), b);
    if (!is_diagonal(m)) {
        ScalarMatrix u = diagonalizing_unitary(m, out.approximate);
        b = matmul(b, u);
        m = matmul(matmul(adjoint(b), h), b);
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        const PiScalar& li = m[i][i];
        if (!li.is_monomial() || !li.is_real() || li.real_sign() <= 0)
            throw DomainError("linear_normalize: eigenvalue " + li.str() + " is not a positive unit");
        out.lambda.push_back(li);
    }
    out.matrix = conjugate(b);
    out.data = pull_back(in, linear_map(out.matrix, n));
    if (out.approximate) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet& e = out.data.theta(j, k);
                PiScalar target = j == k ? PiScalar(1L) : PiScalar();
                e = e + Jet::constant(n, target - e.constant_term());
                Key key = mixed_key(n, j, k);
                PiScalar want = j == k ? out.lambda[static_cast<std::size_t>(j)] : PiScalar();
                out.data.phi = out.data.phi + Jet::from_terms(n, {kUnbounded, kUnbounded}, {{key, want - out.data.phi.coeff(key)}});
            }
    }
    return out;
}

NormalFrame higher_normalize(const LinearStep& lin)
{
    const int n = lin.data.n;
    const Bidegree pt = lin.data.phi.trunc();
    if (pt.hol >= kUnbounded || pt.anti >= kUnbounded)
        throw DomainError("higher_normalize: phi needs a finite truncation");
    int depth = pt.hol;
    auto widen = [&](const Jet& a) {
        if (a.trunc().hol < kUnbounded) depth = std::max(depth, a.trunc().hol + 1);
    };
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) widen(lin.data.theta(j, k));
    if (lin.data.f) widen(*lin.data.f);
    if (lin.data.g) widen(*lin.data.g);

    // Only the part of phi with antiholomorphic degree <= 1 decides the map, and a
    // holomorphic substitution preserves that truncation.
    Jet low = gauge_reduce(jet_truncate(lin.data.phi, {pt.hol, 1})).first;
    std::vector<Jet> h;
    for (int j = 0; j < n; ++j) h.push_back(Jet::z(n, j));

    for (int d = 3; d <= pt.hol + 1; ++d) {
        std::vector<std::vector<Jet::Term>> q(static_cast<std::size_t>(n));
        bool any = false;
        for (const auto& [key, c] : low.terms()) {
            if (key_hol_degree(key) != d - 1 || key_anti_degree(key) != 1) continue;
            int k = 0;
            while (key_beta(key, k) == 0) ++k;
            Key alpha = key & 0xffffffffu;
            q[static_cast<std::size_t>(k)].emplace_back(alpha, -(c * lin.lambda[static_cast<std::size_t>(k)].inverse()));
            any = true;
        }
        if (!any) continue;
        std::vector<Jet> step;
        for (int j = 0; j < n; ++j)
            step.push_back(Jet::z(n, j) + Jet::from_terms(n, {kUnbounded, kUnbounded}, q[static_cast<std::size_t>(j)]));
        low = gauge_reduce(jet_substitute(low, step)).first;
        for (auto& hj : h) hj = jet_truncate(jet_substitute(hj, step), {depth, kUnbounded});
    }

    FramedInput cur = pull_back(lin.data, h);
    auto [reduced, gauge] = gauge_reduce(cur.phi);

    NormalFrame fr;
    fr.n = n;
    fr.lambda = lin.lambda;
    fr.approximate = lin.approximate;
    Jet quad = quadratic_part(lin.lambda, n);
    fr.phi1 = reduced - quad;
    for (const auto& [key, c] : fr.phi1.terms())
        if (key_hol_degree(key) <= 1 || key_anti_degree(key) <= 1)
            throw Error("higher_normalize: internal elimination left a low-order term");
    fr.phi1.declare_valuation({2, 2});
    fr.theta = cur.theta;
    fr.f = cur.f;
    fr.g = cur.g;
    fr.transform.linear = lin.matrix;
    fr.transform.higher = h;
    fr.transform.gauge = gauge;
    return fr;
}

NormalFrame normalize(const FramedInput& in)
{
    check_framed_input(in);
    auto [phi_g, g0] = gauge_reduce(in.phi);
    FramedInput reduced = in;
    reduced.phi = phi_g;
    LinearStep lin = linear_normalize(reduced);
    NormalFrame fr = higher_normalize(lin);
    fr.transform.gauge = fr.transform.gauge + jet_substitute(g0, fr.transform.composite());
    return fr;
}

std::vector<Violation> validate_normal_frame(const NormalFrame& frame)
{
    std::vector<Violation> out;
    const int n = frame.n;
    if (static_cast<int>(frame.lambda.size()) != n) out.push_back({"lambda has the wrong length", {}, {}});
    for (std::size_t j = 0; j < frame.lambda.size(); ++j) {
        const PiScalar& l = frame.lambda[j];
        if (!l.is_monomial() || !l.is_real() || l.real_sign() <= 0)
            out.push_back({"lambda_" + std::to_string(j + 1) + " is not a positive unit", {}, {}});
    }
    for (const auto& [key, c] : frame.phi1.terms())
        if (key_hol_degree(key) <= 1 || key_anti_degree(key) <= 1)
            out.push_back({"phi1 coefficient must vanish", key_alpha_index(key, n), key_beta_index(key, n)});
    if (!is_real(frame.phi1)) out.push_back({"phi1 is not real", {}, {}});
    if (frame.theta.rows() != n || frame.theta.cols() != n) {
        out.push_back({"theta has the wrong shape", {}, {}});
        return out;
    }
    if (!is_hermitian(frame.theta)) out.push_back({"theta is not Hermitian", {}, {}});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const Jet& e = frame.theta(j, k);
            PiScalar want = j == k ? PiScalar(1L) : PiScalar();
            if (e.trunc().hol < 0 || e.trunc().anti < 0 || e.constant_term() != want)
                out.push_back({"theta(0) differs from the identity at (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")", {}, {}});
        }
    return out;
}

FramedInput frame_as_input(const NormalFrame& frame)
{
    FramedInput in;
    in.n = frame.n;
    in.phi = quadratic_part(frame.lambda, frame.n) + frame.phi1;
    in.theta = frame.theta;
    in.f = frame.f;
    in.g = frame.g;
    return in;
}

} // namespace btexp
