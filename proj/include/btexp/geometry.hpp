#pragma once

#include "btexp/normal_form.hpp"

#include <optional>
#include <vector>

namespace btexp {

// omega = i sum omega_jk dz_j ^ dzbar_k with omega_jk = (1/pi) d^2 phi / dz_j dzbar_k.
struct MetricJets {
    JetMatrix omega;
    JetMatrix h;     // h_jk = omega_kj
    JetMatrix h_inv; // h^jk = <dz_j, dz_k>
    JetMatrix a;     // a_jk = <dzbar_k, dzbar_j>
    Jet V_omega;
    Jet V_theta;
    Jet log_V_omega; // log(V / V(0))
    Jet log_V_theta;
};

// sum lambda_j |z_j|^2 + phi1.
Jet full_weight(const NormalFrame& frame);

MetricJets metric_jets(const NormalFrame& frame);

// Delta_0^power u, where Delta_0 = sum (1/lambda_j) d^2/dz_j dzbar_j.
Jet laplace0_apply(const NormalFrame& frame, const Jet& u, int power);
// (Delta_0^power u)(0), reading only the diagonal coefficients.
PiScalar laplace0_at0(const std::vector<PiScalar>& lambda, const Jet& u, int power);

// -2 sum h^jk d^2 u / dz_j dzbar_k.
Jet laplace_omega_apply(const MetricJets& m, const Jet& u);
Jet laplace_omega_apply(const NormalFrame& frame, const Jet& u);

// <u, v>_omega for (1,0)-forms u = sum u_j dz_j, v = sum v_k dz_k.
Jet form_pairing_jet(const MetricJets& m, const std::vector<Jet>& u, const std::vector<Jet>& v);
// Same for (0,1)-forms u = sum u_j dzbar_j.
Jet form_pairing_jet_anti(const MetricJets& m, const std::vector<Jet>& u, const std::vector<Jet>& v);
// (d f/dz_1, ..., d f/dz_n) and the dzbar analogue.
std::vector<Jet> del(const Jet& f);
std::vector<Jet> delbar(const Jet& f);

enum class CurvatureMode { Direct, PointFormula };

// (1,1)-forms are stored as M[s][t], the coefficient of dzbar_s ^ dz_t.
struct CurvatureReport {
    CurvatureMode mode = CurvatureMode::PointFormula;
    int n = 1;
    std::vector<PiScalar> lambda;
    PiScalar detR;
    PiScalar r0;
    PiScalar rhat0;
    ScalarMatrix ric0;
    ScalarMatrix rdet0;
    PiScalar norm_RTX2;
    PiScalar norm_Ric2;
    PiScalar norm_Rdet2;
    PiScalar pair_Ric_Rdet; // <R^det, Ric>
    PiScalar lap_r0;
    PiScalar lap_rhat0;
    // r and rhat as jets, truncated at (1,1); always from the metric jets.
    Jet r_jet;
    Jet rhat_jet;
};

CurvatureReport curvature_report(const NormalFrame& frame, CurvatureMode mode = CurvatureMode::PointFormula);
CurvatureReport curvature_report(const NormalFrame& frame, const MetricJets& m, CurvatureMode mode);

// Point values at 0 of every f/g-dependent quantity in the closed forms.
// Field names: d = del, db = delbar, lap = Delta_omega, gbar/fbar = conjugates.
struct SymbolReport {
    PiScalar f0;
    PiScalar lap_f0;
    PiScalar lap2_f0;
    PiScalar ddf_Ric;  // <dbar d f, Ric>
    PiScalar ddf_Rdet; // <dbar d f, R^det>
    PiScalar df_dr;    // <d f, d r>
    PiScalar dbf_dbr;  // <dbar f, dbar r>
    PiScalar df_drhat;
    PiScalar dbf_dbrhat;

    bool has_g = false;
    PiScalar g0;
    PiScalar lap_g0;
    PiScalar lap2_g0;
    PiScalar ddg_Ric;
    PiScalar ddg_Rdet;
    PiScalar df_dgbar;       // <d f, d gbar>
    PiScalar dbf_dbgbar;     // <dbar f, dbar gbar>
    PiScalar dg_dfbar;       // <d g, d fbar>
    PiScalar dbg_dbfbar;     // <dbar g, dbar fbar>
    PiScalar dbg_df_Ric;     // <dbar g ^ d f, Ric>
    PiScalar dbg_df_Rdet;    // <dbar g ^ d f, R^det>
    PiScalar dbf_dg_Ric;     // <dbar f ^ d g, Ric>
    PiScalar dbf_dg_Rdet;    // <dbar f ^ d g, R^det>
    PiScalar ddf_ddgbar;     // <dbar d f, dbar d gbar>
    PiScalar D10_f_gbar;     // <D10 d f, D10 d gbar>
    PiScalar D01_f_gbar;     // <D01 dbar f, D01 dbar gbar>
    PiScalar dlapf_dgbar;    // <d lap f, d gbar>
    PiScalar dblapf_dbgbar;  // <dbar lap f, dbar gbar>
    PiScalar dlapg_dfbar;    // <d lap g, d fbar>
    PiScalar dblapg_dbfbar;  // <dbar lap g, dbar fbar>
    PiScalar dbf_dblapgbar;  // <dbar f, dbar lap gbar>
};

SymbolReport symbol_report(const NormalFrame& frame, const Jet& f, const std::optional<Jet>& g = std::nullopt);

// True when theta agrees with the metric jets omega to theta's truncation.
bool is_polarized(const NormalFrame& frame, const MetricJets& m);

} // namespace btexp
