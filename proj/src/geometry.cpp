#include "btexp/geometry.hpp"

namespace btexp {

namespace {

constexpr Bidegree kPhiNeed{3, 3};
constexpr Bidegree kThetaNeed{2, 2};

bool covers(Bidegree have, Bidegree need) { return have.hol >= need.hol && have.anti >= need.anti; }

void require(const Jet& a, Bidegree need, const char* where)
{
    if (!covers(a.trunc(), need)) throw TruncationError(where, need, a.trunc());
}

std::size_t u(int i) { return static_cast<std::size_t>(i); }

ScalarMatrix zeros(int n) { return ScalarMatrix(u(n), std::vector<PiScalar>(u(n))); }

PiScalar pi_pow(int e) { return PiScalar::pi(e); }

// Lower bound on the truncation of a matrix of jets.
Bidegree matrix_trunc(const JetMatrix& m)
{
    Bidegree t{kUnbounded, kUnbounded};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t = min_bidegree(t, m(i, j).trunc());
    return t;
}

ScalarMatrix value_at0(const JetMatrix& m)
{
    ScalarMatrix out = zeros(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[u(i)][u(j)] = m(i, j).constant_term();
    return out;
}

struct Point {
    int n;
    std::vector<PiScalar> inv; // 1/lambda_j
    Jet phi;
    Jet log_vt;

    const PiScalar& il(int j) const { return inv[u(j)]; }
};

Point make_point(const NormalFrame& frame, const MetricJets& m)
{
    Point p{frame.n, {}, full_weight(frame), m.log_V_theta};
    for (const auto& l : frame.lambda) p.inv.push_back(l.inverse());
    return p;
}

// (Delta_0 u) differentiated once more at 0: d/dz_s (hol) or d/dzbar_s.
PiScalar d_laplace0_at0(const Point& p, const Jet& a, int s, bool hol)
{
    PiScalar t;
    for (int j = 0; j < p.n; ++j) {
        PiScalar d = hol ? deriv0(a, {j, s}, {j}) : deriv0(a, {j}, {j, s});
        t.addmul(p.il(j), d);
    }
    return t;
}

// Contraction of two (1,1)-form coefficient matrices with ginv = omega(0)^{-1}:
// sum A[s][t] conj(B[s'][t']) ginv[s][s'] ginv[t'][t].
PiScalar form_inner(const ScalarMatrix& A, const ScalarMatrix& B, const ScalarMatrix& ginv)
{
    const std::size_t n = A.size();
    PiScalar total;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (A[s][t].is_zero()) continue;
            for (std::size_t s2 = 0; s2 < n; ++s2) {
                if (ginv[s][s2].is_zero()) continue;
                for (std::size_t t2 = 0; t2 < n; ++t2) {
                    if (ginv[t2][t].is_zero()) continue;
                    total += A[s][t] * B[s2][t2].conj() * ginv[s][s2] * ginv[t2][t];
                }
            }
        }
    return total;
}

} // namespace

Jet full_weight(const NormalFrame& frame)
{
    const int n = frame.n;
    std::vector<Jet::Term> terms;
    for (int j = 0; j < n; ++j) {
        MultiIndex e(u(n), 0);
        e[u(j)] = 1;
        terms.emplace_back(make_key(e, e), frame.lambda[u(j)]);
    }
    return Jet::from_terms(n, {kUnbounded, kUnbounded}, std::move(terms)) + frame.phi1;
}

MetricJets metric_jets(const NormalFrame& frame)
{
    const int n = frame.n;
    MetricJets m;
    const Jet phi = jet_truncate(full_weight(frame), kPhiNeed);
    const PiScalar inv_pi = pi_pow(-1);
    m.omega = JetMatrix(n, n, n);
    m.h = JetMatrix(n, n, n);
    for (int j = 0; j < n; ++j) {
        const Jet dj = jet_diff(phi, Var::Z, j);
        for (int k = 0; k < n; ++k) m.omega(j, k) = jet_scale(jet_diff(dj, Var::Zbar, k), inv_pi);
    }
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m.h(j, k) = m.omega(k, j);
    m.h_inv = jet_matrix_inverse(m.h);
    m.a = JetMatrix(n, n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m.a(j, k) = jet_conj(m.h_inv(k, j));
    m.V_omega = jet_det(m.omega);
    m.V_theta = jet_det(jet_truncate(frame.theta, kThetaNeed));
    m.log_V_omega = jet_log(m.V_omega);
    m.log_V_theta = jet_log(m.V_theta);
    return m;
}

Jet laplace0_apply(const NormalFrame& frame, const Jet& a, int power)
{
    if (power < 0) throw DomainError("laplace0_apply: negative power");
    require(a, {power, power}, "laplace0_apply");
    Jet cur = a;
    for (int p = 0; p < power; ++p) {
        Jet next = jet_truncate(Jet::zero(a.n()), {kUnbounded, kUnbounded});
        bool first = true;
        for (int j = 0; j < frame.n; ++j) {
            Jet t = jet_scale(jet_diff(jet_diff(cur, Var::Z, j), Var::Zbar, j), frame.lambda[u(j)].inverse());
            next = first ? t : next + t;
            first = false;
        }
        cur = next;
    }
    return cur;
}

PiScalar laplace0_at0(const std::vector<PiScalar>& lambda, const Jet& a, int power)
{
    require(a, {power, power}, "laplace0_at0");
    const int n = a.n();
    // Delta_0^nu (z^alpha zbar^alpha) at 0 = nu! alpha! / lambda^alpha for |alpha| = nu.
    Rational nu_fact = 1;
    for (int i = 2; i <= power; ++i) nu_fact *= i;
    PiScalar total;
    for (const auto& [k, c] : a.terms()) {
        if (key_hol_degree(k) != power || key_anti_degree(k) != power) continue;
        bool diagonal = true;
        for (int j = 0; j < n && diagonal; ++j) diagonal = key_alpha(k, j) == key_beta(k, j);
        if (!diagonal) continue;
        PiScalar w(nu_fact);
        for (int j = 0; j < n; ++j) {
            const int e = key_alpha(k, j);
            Rational f = 1;
            for (int i = 2; i <= e; ++i) f *= i;
            w *= f;
            if (e > 0) w *= lambda[u(j)].pow(-e);
        }
        total.addmul(w, c);
    }
    return total;
}

Jet laplace_omega_apply(const MetricJets& m, const Jet& a)
{
    require(a, {1, 1}, "laplace_omega_apply");
    const int n = a.n();
    Jet total;
    bool first = true;
    for (int j = 0; j < n; ++j) {
        const Jet dj = jet_diff(a, Var::Z, j);
        for (int k = 0; k < n; ++k) {
            Jet t = jet_mul(m.h_inv(j, k), jet_diff(dj, Var::Zbar, k));
            total = first ? t : total + t;
            first = false;
        }
    }
    return jet_scale(total, PiScalar(-2L));
}

Jet laplace_omega_apply(const NormalFrame& frame, const Jet& a) { return laplace_omega_apply(metric_jets(frame), a); }

std::vector<Jet> del(const Jet& f)
{
    std::vector<Jet> out;
    for (int j = 0; j < f.n(); ++j) out.push_back(jet_diff(f, Var::Z, j));
    return out;
}

std::vector<Jet> delbar(const Jet& f)
{
    std::vector<Jet> out;
    for (int j = 0; j < f.n(); ++j) out.push_back(jet_diff(f, Var::Zbar, j));
    return out;
}

namespace {

Jet pair_with(const JetMatrix& g, const std::vector<Jet>& a, const std::vector<Jet>& b, bool transpose)
{
    const int n = g.rows();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw DomainError("form_pairing_jet: component count must equal n");
    std::vector<Jet> bc;
    for (const Jet& x : b) bc.push_back(jet_conj(x));
    Jet total = Jet::zero(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const Jet& w = transpose ? g(k, j) : g(j, k);
            total = total + jet_mul(jet_mul(a[u(j)], bc[u(k)]), w);
        }
    return total;
}

} // namespace

Jet form_pairing_jet(const MetricJets& m, const std::vector<Jet>& a, const std::vector<Jet>& b)
{
    return pair_with(m.h_inv, a, b, false);
}

Jet form_pairing_jet_anti(const MetricJets& m, const std::vector<Jet>& a, const std::vector<Jet>& b)
{
    // <dzbar_j, dzbar_k> = a_kj.
    return pair_with(m.a, a, b, true);
}

CurvatureReport curvature_report(const NormalFrame& frame, CurvatureMode mode)
{
    return curvature_report(frame, metric_jets(frame), mode);
}

CurvatureReport curvature_report(const NormalFrame& frame, const MetricJets& m, CurvatureMode mode)
{
    require(frame.phi1, kPhiNeed, "curvature_report: phi1");
    for (int i = 0; i < frame.n; ++i)
        for (int j = 0; j < frame.n; ++j) require(frame.theta(i, j), kThetaNeed, "curvature_report: theta");

    const int n = frame.n;
    const Point p = make_point(frame, m);
    const PiScalar pi = pi_pow(1);
    const PiScalar pi2 = pi_pow(2);

    CurvatureReport rep;
    rep.mode = mode;
    rep.n = n;
    rep.lambda = frame.lambda;
    rep.r_jet = jet_truncate(laplace_omega_apply(m, m.log_V_omega), {1, 1});
    rep.rhat_jet = jet_truncate(laplace_omega_apply(m, m.log_V_theta), {1, 1});
    rep.ric0 = zeros(n);
    rep.rdet0 = zeros(n);

    if (mode == CurvatureMode::PointFormula) {
        rep.detR = PiScalar(1L);
        for (const auto& l : frame.lambda) rep.detR *= PiScalar(2L) * l;
        auto phi4 = [&](std::initializer_list<int> hol, std::initializer_list<int> anti) {
            return deriv0(p.phi, hol, anti);
        };
        // |R^TX|^2 = pi^2 sum |phi_{jbar k sbar t}|^2 / (lambda_j lambda_k lambda_s lambda_t)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int s = 0; s < n; ++s)
                    for (int t = 0; t < n; ++t) {
                        PiScalar d = phi4({k, t}, {j, s});
                        if (d.is_zero()) continue;
                        rep.norm_RTX2 += d * d.conj() * p.il(j) * p.il(k) * p.il(s) * p.il(t);
                    }
        rep.norm_RTX2 *= pi2;
        // Ric(0)_{sbar t} = -sum_j (1/lambda_j) phi_{jbar j sbar t}
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                PiScalar c;
                for (int j = 0; j < n; ++j) c.addmul(p.il(j), phi4({j, t}, {j, s}));
                rep.ric0[u(s)][u(t)] = -c;
            }
        // R^det(0)_{sbar t} = -d^2 log det Theta / dzbar_s dz_t, expanded with Theta(0) = I:
        // tr(d dbar Theta) - tr(dbar Theta . d Theta).
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                PiScalar c;
                for (int j = 0; j < n; ++j) {
                    c += deriv0(frame.theta(j, j), {t}, {s});
                    for (int k = 0; k < n; ++k)
                        c -= deriv0(frame.theta(j, k), {}, {s}) * deriv0(frame.theta(k, j), {t}, {});
                }
                rep.rdet0[u(s)][u(t)] = -c;
            }
        rep.r0 = -PiScalar(2L) * pi * laplace0_at0(frame.lambda, p.phi, 2);
        rep.rhat0 = -PiScalar(2L) * pi * laplace0_at0(frame.lambda, p.log_vt, 1);
        // |Ric|^2 = pi^2 sum phi_{sbar s tbar k} phi_{jbar j t kbar} / (lambda_t lambda_s lambda_j lambda_k)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        PiScalar a = phi4({s, k}, {s, t});
                        if (a.is_zero()) continue;
                        rep.norm_Ric2 += a * phi4({j, t}, {j, k}) * p.il(s) * p.il(t) * p.il(j) * p.il(k);
                    }
        rep.norm_Ric2 *= pi2;
        // |R^det|^2 = pi^2 sum |d_s dbar_t log V_Theta|^2 / (lambda_s lambda_t)
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                PiScalar d = deriv0(p.log_vt, {s}, {t});
                rep.norm_Rdet2 += d * d.conj() * p.il(s) * p.il(t);
            }
        rep.norm_Rdet2 *= pi2;
        // <R^det, Ric> = pi^2 sum phi_{jbar j kbar s} d_k dbar_s log V_Theta / (lambda_j lambda_k lambda_s)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int s = 0; s < n; ++s) {
                    PiScalar a = phi4({j, s}, {j, k});
                    if (a.is_zero()) continue;
                    rep.pair_Ric_Rdet += a * deriv0(p.log_vt, {k}, {s}) * p.il(j) * p.il(k) * p.il(s);
                }
        rep.pair_Ric_Rdet *= pi2;
        // Delta r(0) = 4 pi^2 Delta_0^3 phi(0) - 8 |Ric|^2 - 4 |R^TX|^2
        rep.lap_r0 = PiScalar(4L) * pi2 * laplace0_at0(frame.lambda, p.phi, 3) - PiScalar(8L) * rep.norm_Ric2 -
                     PiScalar(4L) * rep.norm_RTX2;
        // Delta rhat(0) = 4 pi^2 Delta_0^2 log V_Theta(0) - 4 <R^det, Ric>
        rep.lap_rhat0 =
            PiScalar(4L) * pi2 * laplace0_at0(frame.lambda, p.log_vt, 2) - PiScalar(4L) * rep.pair_Ric_Rdet;
        return rep;
    }

    // Direct: Chern connection theta = h^{-1} d h, curvature dbar theta, and the
    // contractions with omega(0).
    const ScalarMatrix G = value_at0(m.omega);
    const ScalarMatrix hinv0 = value_at0(m.h_inv);
    ScalarMatrix ginv = zeros(n); // (omega(0)^{-1})_{jk}
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) ginv[u(j)][u(k)] = hinv0[u(k)][u(j)];

    rep.detR = PiScalar(2L).pow(n) * pi_pow(n) * m.V_omega.constant_term() / m.V_theta.constant_term();

    // T[j][k][s][t] = dbar_s theta_{jk,t}(0), theta_{jk,t} = sum_l h^{jl} d_t h_{lk}.
    std::vector<PiScalar> T(u(n * n * n * n));
    auto idx = [n](int j, int k, int s, int t) { return u(((j * n + k) * n + s) * n + t); };
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int t = 0; t < n; ++t) {
                Jet th = Jet::zero(n);
                for (int l = 0; l < n; ++l)
                    th = th + jet_mul(jet_truncate(m.h_inv(j, l), {1, 1}),
                                      jet_truncate(jet_diff(m.h(l, k), Var::Z, t), {1, 1}));
                for (int s = 0; s < n; ++s) T[idx(j, k, s, t)] = deriv0(th, {}, {s});
            }
    // Lowered: R[l][k][s][t] = <R(dbar_s, d_t) d_k, d_l> = sum_j T^j_{k s t} G_{jl}.
    std::vector<PiScalar> R(T.size());
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    PiScalar c;
                    for (int j = 0; j < n; ++j) c.addmul(T[idx(j, k, s, t)], G[u(j)][u(l)]);
                    R[idx(l, k, s, t)] = c;
                }
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    const PiScalar& a = R[idx(l, k, s, t)];
                    if (a.is_zero()) continue;
                    for (int l2 = 0; l2 < n; ++l2)
                        for (int k2 = 0; k2 < n; ++k2)
                            for (int s2 = 0; s2 < n; ++s2)
                                for (int t2 = 0; t2 < n; ++t2) {
                                    const PiScalar w = ginv[u(l)][u(l2)] * ginv[u(k2)][u(k)] *
                                                       ginv[u(s)][u(s2)] * ginv[u(t2)][u(t)];
                                    if (w.is_zero()) continue;
                                    rep.norm_RTX2 += a * R[idx(l2, k2, s2, t2)].conj() * w;
                                }
                }
    // Ric(dbar_s, d_t) = -sum_j T^j_{t s j}.
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            PiScalar c;
            for (int j = 0; j < n; ++j) c += T[idx(j, t, s, j)];
            rep.ric0[u(s)][u(t)] = -c;
        }
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) rep.rdet0[u(s)][u(t)] = -deriv0(m.log_V_theta, {t}, {s});
    rep.r0 = rep.r_jet.constant_term();
    rep.rhat0 = rep.rhat_jet.constant_term();
    rep.norm_Ric2 = form_inner(rep.ric0, rep.ric0, ginv);
    rep.norm_Rdet2 = form_inner(rep.rdet0, rep.rdet0, ginv);
    rep.pair_Ric_Rdet = form_inner(rep.rdet0, rep.ric0, ginv);
    rep.lap_r0 = laplace_omega_apply(m, rep.r_jet).constant_term();
    rep.lap_rhat0 = laplace_omega_apply(m, rep.rhat_jet).constant_term();
    return rep;
}

SymbolReport symbol_report(const NormalFrame& frame, const Jet& f, const std::optional<Jet>& g)
{
    require(frame.phi1, kPhiNeed, "symbol_report: phi1");
    require(f, {2, 2}, "symbol_report: f");
    if (g) require(*g, {2, 2}, "symbol_report: g");
    const MetricJets m = metric_jets(frame);
    const Point p = make_point(frame, m);
    const int n = frame.n;
    const PiScalar pi = pi_pow(1);
    const PiScalar pi2 = pi_pow(2);
    auto D = [](const Jet& a, std::initializer_list<int> hol, std::initializer_list<int> anti) {
        return deriv0(a, hol, anti);
    };

    // <dbar d u, Ric> = -pi^2 sum phi_{jbar j kbar s} d_k dbar_s u / (lambda_j lambda_k lambda_s)
    auto dd_ric = [&](const Jet& a) {
        PiScalar t;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int s = 0; s < n; ++s) {
                    PiScalar c = D(p.phi, {j, s}, {j, k});
                    if (c.is_zero()) continue;
                    t += c * D(a, {k}, {s}) * p.il(j) * p.il(k) * p.il(s);
                }
        return -pi2 * t;
    };
    // <dbar d u, R^det> = -pi^2 sum dbar_s d_t u d_s dbar_t log V_Theta / (lambda_s lambda_t)
    auto dd_rdet = [&](const Jet& a) {
        PiScalar t;
        for (int s = 0; s < n; ++s)
            for (int tt = 0; tt < n; ++tt) t += D(a, {tt}, {s}) * D(p.log_vt, {s}, {tt}) * p.il(s) * p.il(tt);
        return -pi2 * t;
    };
    auto lap0 = [&](const Jet& a) { return -PiScalar(2L) * pi * laplace0_at0(frame.lambda, a, 1); };
    auto lap2 = [&](const Jet& a) {
        return PiScalar(4L) * pi2 * laplace0_at0(frame.lambda, a, 2) + PiScalar(4L) * dd_ric(a);
    };

    SymbolReport r;
    r.f0 = f.constant_term();
    r.lap_f0 = lap0(f);
    r.ddf_Ric = dd_ric(f);
    r.ddf_Rdet = dd_rdet(f);
    r.lap2_f0 = lap2(f);
    // <d f, d r> = -2 pi^2 sum phi_{jbar j kbar k sbar} d_s f / (lambda_j lambda_k lambda_s), and the dbar analogue.
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int s = 0; s < n; ++s) {
                const PiScalar w = p.il(j) * p.il(k) * p.il(s);
                r.df_dr += D(p.phi, {j, k}, {j, k, s}) * D(f, {s}, {}) * w;
                r.dbf_dbr += D(p.phi, {j, k, s}, {j, k}) * D(f, {}, {s}) * w;
            }
    r.df_dr *= -PiScalar(2L) * pi2;
    r.dbf_dbr *= -PiScalar(2L) * pi2;
    // <d f, d rhat> = -2 pi^2 sum (1/lambda_s) d_s f dbar_s(Delta_0 log V_Theta)(0)
    for (int s = 0; s < n; ++s) {
        r.df_drhat += p.il(s) * D(f, {s}, {}) * d_laplace0_at0(p, p.log_vt, s, false);
        r.dbf_dbrhat += p.il(s) * D(f, {}, {s}) * d_laplace0_at0(p, p.log_vt, s, true);
    }
    r.df_drhat *= -PiScalar(2L) * pi2;
    r.dbf_dbrhat *= -PiScalar(2L) * pi2;
    if (!g) return r;

    const Jet& G = *g;
    r.has_g = true;
    r.g0 = G.constant_term();
    r.lap_g0 = lap0(G);
    r.ddg_Ric = dd_ric(G);
    r.ddg_Rdet = dd_rdet(G);
    r.lap2_g0 = lap2(G);
    for (int j = 0; j < n; ++j) {
        r.df_dgbar += p.il(j) * D(f, {j}, {}) * D(G, {}, {j});
        r.dbf_dbgbar += p.il(j) * D(f, {}, {j}) * D(G, {j}, {});
        r.dg_dfbar += p.il(j) * D(G, {j}, {}) * D(f, {}, {j});
        r.dbg_dbfbar += p.il(j) * D(G, {}, {j}) * D(f, {j}, {});
    }
    r.df_dgbar *= pi;
    r.dbf_dbgbar *= pi;
    r.dg_dfbar *= pi;
    r.dbg_dbfbar *= pi;
    // <dbar v ^ d u, Ric> = -pi^2 sum phi_{jbar k s sbar} d_j u dbar_k v / (lambda_j lambda_k lambda_s)
    // <dbar v ^ d u, R^det> = -pi^2 sum d_j u dbar_k v d_k dbar_j log V_Theta / (lambda_j lambda_k)
    auto wedge = [&](const Jet& a, const Jet& b, PiScalar& ric, PiScalar& rdet) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const PiScalar ab = D(a, {j}, {}) * D(b, {}, {k});
                if (ab.is_zero()) continue;
                PiScalar c;
                for (int s = 0; s < n; ++s) c.addmul(p.il(s), D(p.phi, {k, s}, {j, s}));
                ric += ab * c * p.il(j) * p.il(k);
                rdet += ab * D(p.log_vt, {k}, {j}) * p.il(j) * p.il(k);
            }
        ric *= -pi2;
        rdet *= -pi2;
    };
    wedge(f, G, r.dbg_df_Ric, r.dbg_df_Rdet);
    wedge(G, f, r.dbf_dg_Ric, r.dbf_dg_Rdet);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const PiScalar w = p.il(j) * p.il(k);
            r.ddf_ddgbar += D(f, {k}, {j}) * D(G, {j}, {k}) * w;
            r.D10_f_gbar += D(f, {j, k}, {}) * D(G, {}, {j, k}) * w;
            r.D01_f_gbar += D(f, {}, {j, k}) * D(G, {j, k}, {}) * w;
            r.dlapf_dgbar += D(f, {j, k}, {j}) * D(G, {}, {k}) * w;
            r.dblapf_dbgbar += D(f, {j}, {j, k}) * D(G, {k}, {}) * w;
            r.dlapg_dfbar += D(G, {j, k}, {j}) * D(f, {}, {k}) * w;
            r.dblapg_dbfbar += D(G, {j}, {j, k}) * D(f, {k}, {}) * w;
            r.dbf_dblapgbar += D(f, {}, {j}) * D(G, {j, k}, {k}) * w;
        }
    r.ddf_ddgbar *= pi2;
    r.D10_f_gbar *= pi2;
    r.D01_f_gbar *= pi2;
    const PiScalar m2pi2 = -PiScalar(2L) * pi2;
    r.dlapf_dgbar *= m2pi2;
    r.dblapf_dbgbar *= m2pi2;
    r.dlapg_dfbar *= m2pi2;
    r.dblapg_dbfbar *= m2pi2;
    r.dbf_dblapgbar *= m2pi2;
    return r;
}

bool is_polarized(const NormalFrame& frame, const MetricJets& m)
{
    const Bidegree t = min_bidegree(matrix_trunc(frame.theta), matrix_trunc(m.omega));
    for (int i = 0; i < frame.n; ++i)
        for (int j = 0; j < frame.n; ++j)
            if (jet_truncate(frame.theta(i, j), t) != jet_truncate(m.omega(i, j), t)) return false;
    return true;
}

} // namespace btexp
