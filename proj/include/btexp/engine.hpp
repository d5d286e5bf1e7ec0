#pragma once

#include "btexp/expansion.hpp"
#include "btexp/geometry.hpp"

#include <optional>
#include <vector>

namespace btexp {

constexpr int kMaxOrder = 2;

// F = 2i (sum lambda_j |z_j|^2 + phi1); h_rem = 2i phi1; hessian_factor is
// the k-free part pi^n / det R of det(k F''(0) / 2 pi i)^{-1/2}.
struct PhaseData {
    Jet F;
    Jet h_rem;
    PiScalar hessian_factor;
};

PhaseData phase_data(const NormalFrame& frame);

// Diagonal data of the Bergman kernel at 0.
struct ExpansionTable {
    std::vector<PiScalar> diag_values; // b_j(0,0)
    std::vector<Jet> diag_jets;        // b_0(z,z) to (2,2), b_1(z,z) to (1,1)
    std::vector<Jet> hol;              // b_j(z,0)
    std::vector<Jet> anti;             // b_j(0,z)
};

// Everything the engine reuses across symbols for one frame.
struct EngineContext {
    NormalFrame frame;
    MetricJets metric;
    Jet phi1;     // truncated to (3,3)
    Jet r_jet;    // to (1,1)
    Jet rhat_jet; // to (1,1)
    PiScalar detR;
    PiScalar prefactor; // (2 pi)^n / det R
    ExpansionTable table;
};

EngineContext engine_context(const NormalFrame& frame, int J = kMaxOrder);

// (2 pi)^n / det R * sum_{m <= j} sum_{nu - mu = m, nu >= 2 mu} sum_{s + t = j - m}
//   (-1)^mu 2^-m Delta_0^nu(phi1^mu V_Theta weight left[s] right[t])(0) / (nu! mu!)
// left[s] stands for B_s(0,z), right[t] for B_t(z,0).
PiScalar stationary_phase_sum(const EngineContext& ctx, const std::vector<Jet>& left, const std::vector<Jet>& right,
                              const Jet& weight, int j);

ExpansionTable diagonal_bootstrap(const EngineContext& ctx, int J = kMaxOrder);

// (b(z,0), b(0,z)): the pure holomorphic and pure antiholomorphic parts.
std::pair<Jet, Jet> offdiagonal_extend(const Jet& diag);

ExpansionResult toeplitz_coeffs(const EngineContext& ctx, const Jet& f, int J = kMaxOrder);
ExpansionResult compose_coeffs(const EngineContext& ctx, const Jet& f, const Jet& g, int J = kMaxOrder);
ExpansionResult star_coeffs(const EngineContext& ctx, const Jet& f, const Jet& g, int J = kMaxOrder);

ExpansionResult toeplitz_coeffs(const NormalFrame& frame, const Jet& f, int J = kMaxOrder);
ExpansionResult compose_coeffs(const NormalFrame& frame, const Jet& f, const Jet& g, int J = kMaxOrder);
ExpansionResult star_coeffs(const NormalFrame& frame, const Jet& f, const Jet& g, int J = kMaxOrder);

// b_{1,f}(z,z) = b_0(z,z) (f (rhat/4pi - r/8pi) - Delta_omega f / 4pi) as a jet to (1,1).
Jet symbol_b1_jet(const EngineContext& ctx, const Jet& f);

} // namespace btexp
