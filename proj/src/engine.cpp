#include "btexp/engine.hpp"

#include <string>

namespace btexp {

std::string to_string(ExpansionKind k)
{
    switch (k) {
    case ExpansionKind::Toeplitz: return "toeplitz";
    case ExpansionKind::Compose: return "compose";
    case ExpansionKind::Star: return "star";
    }
    return "?";
}

namespace {

constexpr Bidegree kPhiNeed{3, 3};

Rational factorial(int k)
{
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

void check_order(int J, const char* where)
{
    if (J < 0 || J > kMaxOrder)
        throw DomainError(std::string(where) + ": order must be in [0, " + std::to_string(kMaxOrder) + "]");
}

// A constant standing for b_j(0,z) (anti = true) or b_j(z,0) when only its value at 0 is known.
Jet side_constant(int n, const PiScalar& c, bool anti)
{
    return Jet::constant(n, c, anti ? Bidegree{kUnbounded, 0} : Bidegree{0, kUnbounded});
}

Jet cut(const Jet& a, int nu) { return jet_truncate(a, {nu, nu}); }

} // namespace

PhaseData phase_data(const NormalFrame& frame)
{
    const PiScalar two_i = PiScalar(Gauss{0, 2});
    PhaseData p;
    p.F = jet_scale(full_weight(frame), two_i);
    p.h_rem = jet_scale(frame.phi1, two_i);
    PiScalar detR(1L);
    for (const auto& l : frame.lambda) detR *= PiScalar(2L) * l;
    p.hessian_factor = PiScalar::pi(frame.n) * detR.inverse();
    return p;
}

PiScalar stationary_phase_sum(const EngineContext& ctx, const std::vector<Jet>& left, const std::vector<Jet>& right,
                              const Jet& weight, int j)
{
    const int n = ctx.frame.n;
    PiScalar total;
    try {
        for (int m = 0; m <= j; ++m) {
            const int rest = j - m;
            for (int mu = 0; mu <= m; ++mu) {
                const int nu = m + mu;
                Jet pair = Jet::zero(n);
                for (int s = 0; s <= rest; ++s) {
                    const int t = rest - s;
                    pair = pair + cut(left.at(static_cast<std::size_t>(s)), nu) *
                                      cut(right.at(static_cast<std::size_t>(t)), nu);
                }
                Jet prod = cut(ctx.metric.V_theta, nu) * cut(weight, nu) * cut(pair, nu);
                for (int e = 0; e < mu; ++e) prod = cut(ctx.phi1, nu) * cut(prod, nu);
                Rational c = Rational(1) / (factorial(nu) * factorial(mu));
                c /= Rational(1 << m);
                if (mu % 2 == 1) c = -c;
                total += laplace0_at0(ctx.frame.lambda, prod, nu) * c;
            }
        }
    } catch (const TruncationError& e) {
        throw TruncationError("stationary_phase_sum(j=" + std::to_string(j) + ")", e.required(), e.available());
    }
    return ctx.prefactor * total;
}

std::pair<Jet, Jet> offdiagonal_extend(const Jet& diag)
{
    return {jet_holomorphic_part(diag), jet_antiholomorphic_part(diag)};
}

ExpansionTable diagonal_bootstrap(const EngineContext& ctx, int J)
{
    check_order(J, "diagonal_bootstrap");
    const int n = ctx.frame.n;
    const Jet one = Jet::constant(n, PiScalar(1L));
    ExpansionTable t;
    t.diag_jets.push_back(jet_truncate(ctx.metric.V_omega * jet_inverse(ctx.metric.V_theta), {2, 2}));
    const PiScalar inv4pi = PiScalar::ratio(1, 4) * PiScalar::pi(-1);
    const PiScalar inv8pi = PiScalar::ratio(1, 8) * PiScalar::pi(-1);
    t.diag_jets.push_back(
        jet_truncate(t.diag_jets[0] * (jet_scale(ctx.rhat_jet, inv4pi) - jet_scale(ctx.r_jet, inv8pi)), {1, 1}));

    // j = 0: S = prefactor * b_0(0,0)^2 must reproduce b_0(0,0).
    t.diag_values.push_back(ctx.prefactor.inverse());
    for (int j = 1; j <= J; ++j) {
        // S(x) is affine in the unknown x = b_j(0,0): S(x) = S(0) + c x.
        auto trial = [&](const PiScalar& x) {
            std::vector<Jet> left(t.anti.begin(), t.anti.begin() + j);
            std::vector<Jet> right(t.hol.begin(), t.hol.begin() + j);
            left.push_back(side_constant(n, x, true));
            right.push_back(side_constant(n, x, false));
            return stationary_phase_sum(ctx, left, right, one, j);
        };
        if (static_cast<int>(t.hol.size()) < j) {
            auto [h, a] = offdiagonal_extend(t.diag_jets[static_cast<std::size_t>(j - 1)]);
            t.hol.push_back(h);
            t.anti.push_back(a);
        }
        const PiScalar s0 = trial(PiScalar());
        const PiScalar c = trial(PiScalar(1L)) - s0;
        // S(x) = x with c a rational number (c = 2 for any frame).
        const PiScalar denom = PiScalar(1L) - c;
        if (!denom.is_monomial()) throw Error("diagonal_bootstrap: degenerate linear equation");
        t.diag_values.push_back(s0 / denom);
    }
    if (t.hol.empty()) {
        auto [h, a] = offdiagonal_extend(t.diag_jets[0]);
        t.hol.push_back(h);
        t.anti.push_back(a);
    }
    while (static_cast<int>(t.hol.size()) <= J) {
        const std::size_t j = t.hol.size();
        if (j < t.diag_jets.size()) {
            auto [h, a] = offdiagonal_extend(t.diag_jets[j]);
            t.hol.push_back(h);
            t.anti.push_back(a);
        } else {
            t.hol.push_back(side_constant(n, t.diag_values[j], false));
            t.anti.push_back(side_constant(n, t.diag_values[j], true));
        }
    }
    return t;
}

EngineContext engine_context(const NormalFrame& frame, int J)
{
    check_order(J, "engine_context");
    EngineContext ctx;
    ctx.frame = frame;
    ctx.metric = metric_jets(frame);
    if (frame.phi1.trunc().hol < kPhiNeed.hol || frame.phi1.trunc().anti < kPhiNeed.anti)
        throw TruncationError("engine_context: phi1", kPhiNeed, frame.phi1.trunc());
    ctx.phi1 = jet_truncate(frame.phi1, kPhiNeed);
    const CurvatureReport curv = curvature_report(frame, ctx.metric, CurvatureMode::PointFormula);
    ctx.r_jet = curv.r_jet;
    ctx.rhat_jet = curv.rhat_jet;
    ctx.detR = curv.detR;
    ctx.prefactor = PiScalar(2L).pow(frame.n) * PiScalar::pi(frame.n) * ctx.detR.inverse();
    ctx.table = diagonal_bootstrap(ctx, J);
    return ctx;
}

Jet symbol_b1_jet(const EngineContext& ctx, const Jet& f)
{
    const PiScalar inv4pi = PiScalar::ratio(1, 4) * PiScalar::pi(-1);
    const PiScalar inv8pi = PiScalar::ratio(1, 8) * PiScalar::pi(-1);
    const Jet f11 = jet_truncate(f, {1, 1});
    const Jet curv = jet_scale(ctx.rhat_jet, inv4pi) - jet_scale(ctx.r_jet, inv8pi);
    const Jet lap = jet_truncate(laplace_omega_apply(ctx.metric, f), {1, 1});
    return jet_truncate(ctx.table.diag_jets[0] * (f11 * curv - jet_scale(lap, inv4pi)), {1, 1});
}

ExpansionResult toeplitz_coeffs(const EngineContext& ctx, const Jet& f, int J)
{
    check_order(J, "toeplitz_coeffs");
    if (static_cast<int>(ctx.table.hol.size()) <= J) throw DomainError("toeplitz_coeffs: context built for lower order");
    ExpansionResult r;
    r.kind = ExpansionKind::Toeplitz;
    for (int j = 0; j <= J; ++j) r.coeffs.push_back(stationary_phase_sum(ctx, ctx.table.anti, ctx.table.hol, f, j));
    return r;
}

ExpansionResult compose_coeffs(const EngineContext& ctx, const Jet& f, const Jet& g, int J)
{
    check_order(J, "compose_coeffs");
    const int n = ctx.frame.n;
    std::vector<Jet> left;
    std::vector<Jet> right;
    left.push_back(jet_antiholomorphic_part(jet_truncate(ctx.table.diag_jets[0] * f, {J, J})));
    right.push_back(jet_holomorphic_part(jet_truncate(ctx.table.diag_jets[0] * g, {J, J})));
    if (J >= 1) {
        left.push_back(jet_antiholomorphic_part(symbol_b1_jet(ctx, f)));
        right.push_back(jet_holomorphic_part(symbol_b1_jet(ctx, g)));
    }
    if (J >= 2) {
        left.push_back(side_constant(n, toeplitz_coeffs(ctx, f, 2).coeffs[2], true));
        right.push_back(side_constant(n, toeplitz_coeffs(ctx, g, 2).coeffs[2], false));
    }
    const Jet one = Jet::constant(n, PiScalar(1L));
    ExpansionResult r;
    r.kind = ExpansionKind::Compose;
    for (int j = 0; j <= J; ++j) r.coeffs.push_back(stationary_phase_sum(ctx, left, right, one, j));
    return r;
}

ExpansionResult star_coeffs(const EngineContext& ctx, const Jet& f, const Jet& g, int J)
{
    check_order(J, "star_coeffs");
    const ExpansionResult fg = compose_coeffs(ctx, f, g, J);
    const Jet prod = jet_truncate(f * g, min_bidegree(f.trunc(), g.trunc()));
    const ExpansionResult t = toeplitz_coeffs(ctx, prod, J);
    ExpansionResult r;
    r.kind = ExpansionKind::Star;
    const PiScalar scale = ctx.prefactor;
    // b_{0,f,g} = b_{0,C_0}.
    r.coeffs.push_back(fg.coeffs[0] * scale);
    if (J >= 1) r.coeffs.push_back((fg.coeffs[1] - t.coeffs[1]) * scale);
    if (J >= 2) {
        const PiScalar neg_inv2pi = PiScalar::ratio(-1, 2) * PiScalar::pi(-1);
        const Jet h = jet_scale(form_pairing_jet(ctx.metric, del(f), del(jet_conj(g))), neg_inv2pi);
        const PiScalar b1h = toeplitz_coeffs(ctx, jet_truncate(h, {1, 1}), 1).coeffs[1];
        r.coeffs.push_back((fg.coeffs[2] - t.coeffs[2] - b1h) * scale);
    }
    return r;
}

ExpansionResult toeplitz_coeffs(const NormalFrame& frame, const Jet& f, int J)
{
    return toeplitz_coeffs(engine_context(frame, J), f, J);
}

ExpansionResult compose_coeffs(const NormalFrame& frame, const Jet& f, const Jet& g, int J)
{
    return compose_coeffs(engine_context(frame, J), f, g, J);
}

ExpansionResult star_coeffs(const NormalFrame& frame, const Jet& f, const Jet& g, int J)
{
    return star_coeffs(engine_context(frame, J), f, g, J);
}

} // namespace btexp
