// Acceptance criteria 1-6. One PASS/FAIL line per criterion; exit 1 on any failure.
#include "btexp/closed_forms.hpp"
#include "btexp/engine.hpp"
#include "btexp/frames.hpp"
#include "btexp/geometry.hpp"
#include "btexp/oracle.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace btexp;
using namespace testsupport;

namespace {

// Criterion 6 tolerance: |fit_j - exact_j| / max_i |exact_i|.
constexpr double kFitTolerance = 1e-8;

const PiScalar kPi = PiScalar::pi(1);

PiScalar q(long a, long b = 1) { return PiScalar::ratio(a, b); }

Jet zz() { return Jet::z(1, 0) * Jet::zbar(1, 0); }

std::vector<PiScalar> conj_all(std::vector<PiScalar> v)
{
    for (auto& x : v) x = x.conj();
    return v;
}

PiScalar density(const CurvatureReport& c, int n) { return c.detR * (q(2).pow(n) * PiScalar::pi(n)).inverse(); }

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void check(bool ok, const std::string& what)
    {
        ++count_;
        if (!ok && first_failure_.empty()) first_failure_ = what;
        if (!ok) ++failed_;
    }

    bool report(int id, double seconds) const
    {
        if (failed_ == 0)
            std::printf("PASS %d %s (%d checks, %.1fs)\n", id, name_.c_str(), count_, seconds);
        else
            std::printf("FAIL %d %s (%d of %d checks failed, first: %s)\n", id, name_.c_str(), failed_, count_,
                        first_failure_.c_str());
        return failed_ == 0;
    }

private:
    std::string name_;
    int count_ = 0;
    int failed_ = 0;
    std::string first_failure_;
};

NormalFrame random_polarized(Rng& rng, int n)
{
    FrameOptions opt;
    opt.theta_tail = false;
    opt.unit_lambda = true;
    return polarize(random_frame(rng, n, opt));
}

void dual_path(Criterion& c)
{
    Rng rng(20240601);
    for (int trial = 0; trial < 102; ++trial) {
        const int n = 1 + trial % 3;
        const NormalFrame fr = random_frame(rng, n, {true, false, 35, 35});
        const Jet f = random_jet(rng, n, {3, 3}, 30);
        const Jet g = random_jet(rng, n, {3, 3}, 30);
        const std::string tag = "frame " + std::to_string(trial) + " n=" + std::to_string(n);
        const EngineContext ctx = engine_context(fr);
        const ClosedFormInputs in = closed_inputs(fr, f, g);
        c.check(toeplitz_coeffs(ctx, f).coeffs == closed_toeplitz(in).coeffs, tag + " toeplitz");
        const auto comp = compose_coeffs(ctx, f, g).coeffs;
        c.check(comp == closed_compose(in, ComposeMode::Theorem).coeffs, tag + " compose");
        c.check(comp == closed_compose(in, ComposeMode::Remark).coeffs, tag + " compose (expanded)");
        c.check(star_coeffs(ctx, f, g).coeffs == closed_star(in).coeffs, tag + " star");
    }
}

void fock(Criterion& c)
{
    const std::vector<PiScalar> lambda{kPi};
    const NormalFrame fr = fock_frame(lambda);
    const EngineContext ctx = engine_context(fr);
    const Jet one = Jet::constant(1, q(1));
    const Jet z2 = zz();
    const Jet z4 = zz() * zz();
    struct Case {
        const char* name;
        Jet f;
        std::function<PiScalar(long)> value;
        std::vector<PiScalar> b;
    };
    const std::vector<Case> cases{
        {"1", one, [](long k) { return PiScalar(Rational(k)); }, {q(1), q(0), q(0)}},
        {"|z|^2", z2, [](long) { return q(1, 2) * PiScalar::pi(-1); }, {q(0), q(1, 2) * PiScalar::pi(-1), q(0)}},
        {"|z|^4", z4, [](long k) { return q(1, 2 * k) * PiScalar::pi(-2); },
         {q(0), q(0), q(1, 2) * PiScalar::pi(-2)}},
    };
    for (const auto& cs : cases) {
        const std::string tag = std::string("f=") + cs.name;
        for (long k = 1; k <= 50; ++k)
            c.check(fock_toeplitz_exact(lambda, cs.f, k) == cs.value(k), tag + " k=" + std::to_string(k));
        c.check(fock_toeplitz_series(lambda, cs.f).expansion(1, 2) == cs.b, tag + " oracle expansion");
        c.check(toeplitz_coeffs(ctx, cs.f).coeffs == cs.b, tag + " engine");
        c.check(closed_toeplitz(closed_inputs(fr, jet_truncate(cs.f, {3, 3}))).coeffs == cs.b, tag + " closed form");
    }
}

void cp1(Criterion& c)
{
    const NormalFrame fr = cp1_frame(3);
    for (auto mode : {CurvatureMode::PointFormula, CurvatureMode::Direct}) {
        const CurvatureReport cr = curvature_report(fr, mode);
        const std::string tag = mode == CurvatureMode::Direct ? "direct" : "point";
        c.check(cr.r0 == q(8) * kPi, tag + " r = 8 pi");
        c.check(cr.lap_r0.is_zero(), tag + " lap r = 0");
        c.check(cr.norm_Ric2 == q(16) * PiScalar::pi(2), tag + " |Ric|^2");
        c.check(cr.norm_RTX2 == q(16) * PiScalar::pi(2), tag + " |R^TX|^2");
    }
    const Jet one = Jet::constant(1, q(1));
    const ClosedFormInputs in = closed_inputs(fr, one);
    c.check(in.polarized, "frame is polarized");
    const std::vector<PiScalar> want{q(1), q(1), q(0)};
    // the polarized closed form reads r, |Ric|^2, |R^TX|^2 from the curvature report
    c.check(closed_polarized_toeplitz(in).coeffs == want, "polarized closed form");
    c.check(in.curv.r0 * q(1, 8) * PiScalar::pi(-1) == q(1), "b_1 = r / 8 pi");
    c.check(closed_toeplitz(in).coeffs == want, "general closed form");
    c.check(toeplitz_coeffs(fr, one).coeffs == want, "engine");
    for (long k = 1; k <= 50; ++k)
        c.check(cp1_density_exact({q(1)}, k) == PiScalar(Rational(k + 1)), "density k=" + std::to_string(k));
    c.check(cp1_toeplitz_series({q(1)}).expansion(1, 2) == want, "oracle expansion");
}

void identities(Criterion& c)
{
    Rng rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 1 + trial % 3;
        const NormalFrame fr = random_frame(rng, n, {true, false, 25, 35});
        const MetricJets m = metric_jets(fr);
        const Jet f = random_jet(rng, n, {3, 3}, 35);
        const Jet g = random_jet(rng, n, {3, 3}, 35);
        const std::string tag = "frame " + std::to_string(trial);
        const SymbolReport s = symbol_report(fr, f, g);
        const Jet fg = jet_truncate(f * g, {3, 3});

        const Jet lap_fg = laplace_omega_apply(m, fg);
        c.check(lap_fg.constant_term() ==
                    s.lap_f0 * s.g0 + s.lap_g0 * s.f0 - q(2) * s.df_dgbar - q(2) * s.dbf_dbgbar,
                tag + " Laplacian product rule");
        c.check(laplace_omega_apply(m, lap_fg).constant_term() ==
                    s.lap2_f0 * s.g0 + s.lap2_g0 * s.f0 - q(4) * s.dlapf_dgbar - q(4) * s.dblapf_dbgbar -
                        q(4) * s.dlapg_dfbar - q(4) * s.dblapg_dbfbar + q(2) * s.lap_f0 * s.lap_g0 +
                        q(8) * s.ddf_ddgbar + q(4) * s.D01_f_gbar + q(4) * s.D10_f_gbar + q(4) * s.dbf_dg_Ric +
                        q(4) * s.dbg_df_Ric,
                tag + " squared Laplacian product rule");

        const Jet pair = form_pairing_jet(m, del(f), del(jet_conj(g)));
        c.check(laplace_omega_apply(m, pair).constant_term() ==
                    q(-2) * s.dbg_df_Ric + s.dlapf_dgbar + s.dblapg_dbfbar - q(2) * s.ddf_ddgbar -
                        q(2) * s.D10_f_gbar,
                tag + " Laplacian of <df, d gbar>");

        const ClosedFormInputs in = closed_inputs(fr, f, g);
        const auto b = closed_compose(in, ComposeMode::Theorem).coeffs;
        c.check(b == closed_compose(in, ComposeMode::Remark).coeffs, tag + " compose modes");

        ClosedFormInputs prod = in;
        prod.sym = *in.fg;
        const auto tfg = closed_toeplitz(prod).coeffs;
        const PiScalar K = density(in.curv, n);
        c.check(b[1] - tfg[1] == -K * q(1, 2) * PiScalar::pi(-1) * s.df_dgbar, tag + " b_1 difference");

        const auto C = closed_star(in).coeffs;
        const Jet h = jet_scale(pair, q(-1, 2) * PiScalar::pi(-1));
        ClosedFormInputs hin = in;
        hin.sym = symbol_report(fr, jet_truncate(h, {2, 2}));
        const auto th = closed_toeplitz(hin).coeffs;
        c.check(b[0] == K * C[0] && b[1] == tfg[1] + K * C[1], tag + " C_0, C_1 extraction");
        c.check(b[2] == tfg[2] + th[1] + K * C[2], tag + " C_2 extraction");
    }
}

void invariants(Criterion& c)
{
    Rng rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + trial % 3;
        const int pct = 30;
        const NormalFrame fr = random_frame(rng, n, {true, false, 25, 35});
        const EngineContext ctx = engine_context(fr);
        const std::string tag = "frame " + std::to_string(trial);
        const Jet one = Jet::constant(n, q(1));
        const Jet f = random_real_jet(rng, n, 3, pct);
        const Jet g = random_real_jet(rng, n, 3, pct);
        const Jet h = random_jet(rng, n, {3, 3}, pct);
        const PiScalar a = random_scalar(rng);

        const auto tf = toeplitz_coeffs(ctx, f).coeffs;
        c.check(compose_coeffs(ctx, f, one).coeffs == tf && compose_coeffs(ctx, one, f).coeffs == tf,
                tag + " compose with 1");
        const auto s1 = star_coeffs(ctx, f, one).coeffs;
        c.check(s1[0] == f.constant_term() && s1[1].is_zero() && s1[2].is_zero(), tag + " star with 1");

        const auto fg = compose_coeffs(ctx, f, g).coeffs;
        c.check(compose_coeffs(ctx, g, f).coeffs == conj_all(fg), tag + " Hermitian symmetry");
        c.check(star_coeffs(ctx, g, f).coeffs == conj_all(star_coeffs(ctx, f, g).coeffs),
                tag + " Hermitian symmetry of C_j");

        bool real = true;
        for (const auto& x : tf) real = real && x.is_real();
        c.check(real, tag + " real symbol, real coefficients");

        const auto th = toeplitz_coeffs(ctx, h).coeffs;
        const auto lin = toeplitz_coeffs(ctx, f + jet_scale(h, a)).coeffs;
        const auto left = compose_coeffs(ctx, f + jet_scale(h, a), g).coeffs;
        const auto hg = compose_coeffs(ctx, h, g).coeffs;
        const auto right = compose_coeffs(ctx, g, f + jet_scale(h, a)).coeffs;
        const auto gf = compose_coeffs(ctx, g, f).coeffs;
        const auto gh = compose_coeffs(ctx, g, h).coeffs;
        for (std::size_t j = 0; j < 3; ++j) {
            c.check(lin[j] == tf[j] + a * th[j], tag + " linearity");
            c.check(left[j] == fg[j] + a * hg[j], tag + " bilinearity (left)");
            c.check(right[j] == gf[j] + a * gh[j], tag + " bilinearity (right)");
        }
    }
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 1 + trial % 3;
        const NormalFrame fr = random_polarized(rng, n);
        const std::string tag = "polarized frame " + std::to_string(trial);
        for (auto mode : {CurvatureMode::PointFormula, CurvatureMode::Direct}) {
            const CurvatureReport cr = curvature_report(fr, mode);
            c.check(cr.detR == q(2).pow(n) * PiScalar::pi(n), tag + " det R");
            c.check(cr.r0 == cr.rhat0 && cr.lap_r0 == cr.lap_rhat0, tag + " r = rhat");
            c.check(cr.ric0 == cr.rdet0, tag + " Ric = R^det");
            c.check(cr.norm_Ric2 == cr.norm_Rdet2 && cr.norm_Ric2 == cr.pair_Ric_Rdet, tag + " norms");
        }
        const Jet f = random_jet(rng, n, {3, 3}, 30);
        const Jet g = random_jet(rng, n, {3, 3}, 30);
        const ClosedFormInputs in = closed_inputs(fr, f, g);
        c.check(in.polarized, tag + " detected");
        c.check(closed_polarized_toeplitz(in).coeffs == closed_toeplitz(in).coeffs, tag + " toeplitz");
        c.check(closed_polarized_compose(in).coeffs == closed_compose(in).coeffs, tag + " compose");
    }
}

std::vector<std::pair<long, double>> sample(long kmin, long kmax, const std::function<double(long)>& fn)
{
    std::vector<std::pair<long, double>> s;
    for (long k = kmin; k <= kmax; ++k) s.emplace_back(k, fn(k));
    return s;
}

void fits(Criterion& c)
{
    const std::vector<PiScalar> lambda{kPi};
    auto check_fit = [&](const std::string& tag, const std::vector<std::pair<long, double>>& s,
                         const std::vector<PiScalar>& exact) {
        const FitResult r = fit_expansion(s, 1, 2);
        double scale = 0;
        for (const auto& e : exact) scale = std::max(scale, std::abs(e.to_complex()));
        for (std::size_t j = 0; j < exact.size(); ++j) {
            const double err = std::abs(r.coeffs[j].value - exact[j].to_complex().real()) / scale;
            char msg[64];
            std::snprintf(msg, sizeof msg, " b_%zu rel err %.3g", j, err);
            c.check(err < kFitTolerance, tag + msg);
        }
    };
    const Jet one = Jet::constant(1, q(1));
    for (const auto& [name, f] : std::vector<std::pair<std::string, Jet>>{{"1", one}, {"|z|^2", zz()}, {"|z|^4", zz() * zz()}}) {
        const OracleSeries o = fock_series(lambda, f, std::nullopt, 10, 50, 2, name);
        check_fit("fock " + name + " exact samples", o.samples, o.exact_coeffs);
        check_fit("fock " + name + " quadrature samples",
                  sample(10, 50, [&](long k) { return fock_toeplitz_float({M_PI}, f, k).real(); }), o.exact_coeffs);
    }
    const OracleSeries o = cp1_series({q(1)}, 10, 50, 2, "1");
    check_fit("cp1 exact samples", o.samples, o.exact_coeffs);
    check_fit("cp1 quadrature samples", sample(10, 50, [](long k) { return cp1_density_float({1.0}, k); }),
              o.exact_coeffs);
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"dual-path exactness on random frames", dual_path},
        {"Fock oracle agreement", fock},
        {"CP1 polarized coefficients", cp1},
        {"identity suites", identities},
        {"structural invariants", invariants},
        {"float fit sanity", fits},
    };
    bool ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c(criteria[i].first);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = c.report(static_cast<int>(i + 1), dt) && ok;
    }
    return ok ? 0 : 1;
}
