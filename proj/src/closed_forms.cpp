#include "btexp/closed_forms.hpp"

namespace btexp {

namespace {

struct Consts {
    PiScalar pi1 = PiScalar::pi(-1);
    PiScalar pi2 = PiScalar::pi(-2);

    PiScalar over_pi(long a, long b) const { return PiScalar::ratio(a, b) * pi1; }
    PiScalar over_pi2(long a, long b) const { return PiScalar::ratio(a, b) * pi2; }
};

// det R / (2 pi)^n
PiScalar density(const ClosedFormInputs& in)
{
    return in.curv.detR * (PiScalar(2L).pow(in.n) * PiScalar::pi(in.n)).inverse();
}

const SymbolReport& need_g(const ClosedFormInputs& in, const char* where)
{
    if (!in.sym.has_g) throw DomainError(std::string(where) + ": g is required");
    return in.sym;
}

const SymbolReport& need_fg(const ClosedFormInputs& in, const char* where)
{
    if (!in.fg) throw DomainError(std::string(where) + ": report for f g is required");
    return *in.fg;
}

// The f-free bracket multiplying f in b_2.
PiScalar b2_curvature(const CurvatureReport& c)
{
    const Consts k;
    const PiScalar& r = c.r0;
    const PiScalar& rh = c.rhat0;
    return k.over_pi2(1, 128) * r * r - k.over_pi2(1, 32) * r * rh + k.over_pi2(1, 32) * rh * rh -
           k.over_pi2(1, 32) * c.lap_rhat0 - k.over_pi2(1, 8) * c.norm_Rdet2 + k.over_pi2(1, 8) * c.pair_Ric_Rdet +
           k.over_pi2(1, 96) * c.lap_r0 - k.over_pi2(1, 24) * c.norm_Ric2 + k.over_pi2(1, 96) * c.norm_RTX2;
}

PiScalar b1_curvature(const CurvatureReport& c)
{
    const Consts k;
    return k.over_pi(1, 4) * c.rhat0 - k.over_pi(1, 8) * c.r0;
}

// rhat - r/2
PiScalar rhat_minus_half_r(const CurvatureReport& c) { return c.rhat0 - PiScalar::ratio(1, 2) * c.r0; }

// Bracket of b_{2,f} without the factor det R / (2 pi)^n.
PiScalar b2_bracket(const CurvatureReport& c, const PiScalar& f0, const PiScalar& lap, const PiScalar& lap2,
                    const PiScalar& dd_ric, const PiScalar& dd_rdet)
{
    const Consts k;
    return f0 * b2_curvature(c) - k.over_pi2(1, 16) * lap * rhat_minus_half_r(c) - k.over_pi2(1, 4) * dd_rdet +
           k.over_pi2(1, 8) * dd_ric + k.over_pi2(1, 32) * lap2;
}

PiScalar b2_polarized(const CurvatureReport& c, const PiScalar& f0, const PiScalar& lap, const PiScalar& lap2,
                      const PiScalar& dd_ric)
{
    const Consts k;
    const PiScalar& r = c.r0;
    return f0 * (k.over_pi2(1, 128) * r * r - k.over_pi2(1, 48) * c.lap_r0 - k.over_pi2(1, 24) * c.norm_Ric2 +
                 k.over_pi2(1, 96) * c.norm_RTX2) -
           k.over_pi2(1, 32) * lap * r - k.over_pi2(1, 8) * dd_ric + k.over_pi2(1, 32) * lap2;
}

ExpansionResult result(ExpansionKind kind, std::vector<PiScalar> c)
{
    ExpansionResult r;
    r.kind = kind;
    r.coeffs = std::move(c);
    return r;
}

} // namespace

ClosedFormInputs closed_inputs(const NormalFrame& frame, const Jet& f, const std::optional<Jet>& g)
{
    ClosedFormInputs in;
    in.n = frame.n;
    const MetricJets m = metric_jets(frame);
    in.curv = curvature_report(frame, m, CurvatureMode::PointFormula);
    in.sym = symbol_report(frame, f, g);
    if (g) in.fg = symbol_report(frame, f * *g);
    in.polarized = is_polarized(frame, m);
    return in;
}

ExpansionResult closed_toeplitz(const ClosedFormInputs& in)
{
    const Consts k;
    const PiScalar K = density(in);
    const CurvatureReport& c = in.curv;
    const SymbolReport& s = in.sym;
    return result(ExpansionKind::Toeplitz,
                  {K * s.f0, K * (s.f0 * b1_curvature(c) - k.over_pi(1, 4) * s.lap_f0),
                   K * b2_bracket(c, s.f0, s.lap_f0, s.lap2_f0, s.ddf_Ric, s.ddf_Rdet)});
}

ExpansionResult closed_compose(const ClosedFormInputs& in, ComposeMode mode)
{
    const Consts k;
    const PiScalar K = density(in);
    const CurvatureReport& c = in.curv;
    const SymbolReport& s = need_g(in, "closed_compose");
    const PiScalar fg0 = s.f0 * s.g0;

    if (mode == ComposeMode::Theorem) {
        const SymbolReport& p = need_fg(in, "closed_compose");
        const PiScalar b1fg = K * (p.f0 * b1_curvature(c) - k.over_pi(1, 4) * p.lap_f0);
        const PiScalar b2fg = K * b2_bracket(c, p.f0, p.lap_f0, p.lap2_f0, p.ddf_Ric, p.ddf_Rdet);
        const PiScalar b1 = b1fg - K * k.over_pi(1, 2) * s.df_dgbar;
        const PiScalar corr = -k.over_pi2(1, 4) * s.dbg_df_Ric + k.over_pi2(1, 4) * s.dbg_df_Rdet +
                              k.over_pi2(1, 8) * s.dlapf_dgbar + k.over_pi2(1, 8) * s.dblapg_dbfbar -
                              k.over_pi2(1, 8) * s.D10_f_gbar - k.over_pi2(1, 4) * s.ddf_ddgbar -
                              k.over_pi2(1, 8) * s.df_dgbar * rhat_minus_half_r(c);
        return result(ExpansionKind::Compose, {K * fg0, b1, b2fg + K * corr});
    }

    const PiScalar b1 = K * (fg0 * b1_curvature(c) - k.over_pi(1, 4) * (s.g0 * s.lap_f0 + s.f0 * s.lap_g0) +
                             k.over_pi(1, 2) * s.dbf_dbgbar);
    const PiScalar rr = rhat_minus_half_r(c);
    const PiScalar b2 =
        fg0 * b2_curvature(c) + k.over_pi2(1, 8) * rr * s.dbf_dbgbar - k.over_pi2(1, 16) * rr * s.f0 * s.lap_g0 -
        k.over_pi2(1, 16) * rr * s.g0 * s.lap_f0 - k.over_pi2(1, 4) * s.f0 * s.ddg_Rdet -
        k.over_pi2(1, 4) * s.g0 * s.ddf_Rdet + k.over_pi2(1, 8) * s.f0 * s.ddg_Ric + k.over_pi2(1, 8) * s.g0 * s.ddf_Ric +
        k.over_pi2(1, 4) * s.dbf_dg_Ric - k.over_pi2(1, 4) * s.dbf_dg_Rdet - k.over_pi2(1, 8) * s.dbf_dblapgbar -
        k.over_pi2(1, 8) * s.dblapf_dbgbar + k.over_pi2(1, 8) * s.D01_f_gbar + k.over_pi2(1, 32) * s.f0 * s.lap2_g0 +
        k.over_pi2(1, 32) * s.g0 * s.lap2_f0 + k.over_pi2(1, 16) * s.lap_f0 * s.lap_g0;
    return result(ExpansionKind::Compose, {K * fg0, b1, K * b2});
}

ExpansionResult closed_star(const ClosedFormInputs& in)
{
    const Consts k;
    const SymbolReport& s = need_g(in, "closed_star");
    return result(ExpansionKind::Star,
                  {s.f0 * s.g0, -k.over_pi(1, 2) * s.df_dgbar,
                   k.over_pi2(1, 8) * s.D10_f_gbar + k.over_pi2(1, 4) * s.dbg_df_Rdet});
}

ExpansionResult closed_polarized_toeplitz(const ClosedFormInputs& in)
{
    if (!in.polarized) throw DomainError("closed_polarized_toeplitz: Theta is not omega");
    const Consts k;
    const CurvatureReport& c = in.curv;
    const SymbolReport& s = in.sym;
    return result(ExpansionKind::Toeplitz, {s.f0, k.over_pi(1, 8) * c.r0 * s.f0 - k.over_pi(1, 4) * s.lap_f0,
                                            b2_polarized(c, s.f0, s.lap_f0, s.lap2_f0, s.ddf_Ric)});
}

ExpansionResult closed_polarized_compose(const ClosedFormInputs& in)
{
    if (!in.polarized) throw DomainError("closed_polarized_compose: Theta is not omega");
    const Consts k;
    const CurvatureReport& c = in.curv;
    const SymbolReport& s = need_g(in, "closed_polarized_compose");
    const SymbolReport& p = need_fg(in, "closed_polarized_compose");
    const PiScalar fg0 = s.f0 * s.g0;
    const PiScalar b1 = k.over_pi(1, 8) * c.r0 * fg0 + k.over_pi(1, 2) * s.dbf_dbgbar -
                        k.over_pi(1, 4) * (s.g0 * s.lap_f0 + s.f0 * s.lap_g0);
    const PiScalar b2 = b2_polarized(c, p.f0, p.lap_f0, p.lap2_f0, p.ddf_Ric) + k.over_pi2(1, 8) * s.dlapf_dgbar +
                        k.over_pi2(1, 8) * s.dblapg_dbfbar - k.over_pi2(1, 8) * s.D10_f_gbar -
                        k.over_pi2(1, 4) * s.ddf_ddgbar - k.over_pi2(1, 16) * s.df_dgbar * c.r0;
    return result(ExpansionKind::Compose, {fg0, b1, b2});
}

} // namespace btexp
