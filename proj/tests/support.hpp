#pragma once

#include "btexp/frames.hpp"
#include "btexp/jet.hpp"
#include "btexp/normal_form.hpp"

#include <random>

namespace testsupport {

using btexp::Bidegree;
using btexp::Jet;
using btexp::MultiIndex;
using btexp::PiScalar;
using btexp::Rational;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, int num = 5, int den = 4)
{
    Rational q(uniform(rng, -num, num), uniform(rng, 1, den));
    q.canonicalize();
    return q;
}

// c * pi^m with m in [pmin, pmax]; optionally with an imaginary part.
inline PiScalar random_scalar(Rng& rng, bool complex = true, int pmin = 0, int pmax = 0)
{
    btexp::Gauss g{random_rational(rng), complex ? random_rational(rng) : Rational(0)};
    return PiScalar(g, uniform(rng, pmin, pmax));
}

inline Jet mono(int n, const MultiIndex& a, const MultiIndex& b, const PiScalar& c = PiScalar(1L))
{
    return Jet::monomial(n, a, b, c);
}

// Sparse random jet: every multi-index pair inside trunc is present with the
// given probability (in percent).
inline Jet random_jet(Rng& rng, int n, Bidegree trunc, int percent = 40, bool complex = true, int pmin = 0,
                      int pmax = 0)
{
    std::vector<Jet::Term> terms;
    for (const auto& a : btexp::multi_indices_upto(n, trunc.hol))
        for (const auto& b : btexp::multi_indices_upto(n, trunc.anti))
            if (uniform(rng, 1, 100) <= percent)
                terms.emplace_back(btexp::make_key(a, b), random_scalar(rng, complex, pmin, pmax));
    return Jet::from_terms(n, trunc, std::move(terms));
}

// Real jet: symmetrized random jet with a square truncation.
inline Jet random_real_jet(Rng& rng, int n, int d, int percent = 40, int pmin = 0, int pmax = 0)
{
    Jet a = random_jet(rng, n, {d, d}, percent, true, pmin, pmax);
    return btexp::jet_scale(btexp::jet_add(a, btexp::jet_conj(a)), PiScalar::ratio(1, 2));
}

inline Jet random_holomorphic(Rng& rng, int n, int d, int percent = 50, bool zero_const = true)
{
    std::vector<Jet::Term> terms;
    MultiIndex zero(static_cast<std::size_t>(n), 0);
    for (const auto& a : btexp::multi_indices_upto(n, d)) {
        if (zero_const && a == zero) continue;
        if (uniform(rng, 1, 100) <= percent) terms.emplace_back(btexp::make_key(a, zero), random_scalar(rng));
    }
    return Jet::from_terms(n, {d, btexp::kUnbounded}, std::move(terms));
}


// phi1 with only (alpha,beta) terms, |alpha|,|beta| in [2,d]; real.
inline Jet random_phi1(Rng& rng, int n, int d = 3, int percent = 40)
{
    std::vector<Jet::Term> terms;
    for (const auto& a : btexp::multi_indices_upto(n, d))
        for (const auto& b : btexp::multi_indices_upto(n, d)) {
            int da = 0, db = 0;
            for (int x : a) da += x;
            for (int x : b) db += x;
            if (da < 2 || db < 2) continue;
            if (uniform(rng, 1, 100) <= percent) terms.emplace_back(btexp::make_key(a, b), random_scalar(rng));
        }
    Jet a = Jet::from_terms(n, {d, d}, std::move(terms));
    Jet r = btexp::jet_scale(btexp::jet_add(a, btexp::jet_conj(a)), PiScalar::ratio(1, 2));
    r.declare_valuation({2, 2});
    return r;
}

struct FrameOptions {
    bool theta_tail = true;
    bool unit_lambda = false; // every lambda = pi
    int phi_percent = 40;
    int theta_percent = 40;
};

// A normal frame built directly: lambda_j = q_j pi, random phi1 to (3,3) and
// Theta = I + Hermitian tail vanishing at 0, known to (2,2).
inline btexp::NormalFrame random_frame(Rng& rng, int n, const FrameOptions& opt = {})
{
    btexp::NormalFrame fr;
    fr.n = n;
    for (int j = 0; j < n; ++j) {
        Rational q(uniform(rng, 1, 4), uniform(rng, 1, 3));
        q.canonicalize();
        fr.lambda.push_back(opt.unit_lambda ? PiScalar::pi(1) : PiScalar(q) * PiScalar::pi(1));
    }
    fr.phi1 = random_phi1(rng, n, 3, opt.phi_percent);
    fr.theta = btexp::JetMatrix::identity(n, n);
    if (opt.theta_tail) {
        auto tail = [&](bool real) {
            Jet a = random_jet(rng, n, {2, 2}, opt.theta_percent);
            std::vector<Jet::Term> terms;
            for (const auto& [k, c] : a.terms())
                if (k != 0) terms.emplace_back(k, c);
            Jet t = Jet::from_terms(n, {2, 2}, std::move(terms));
            if (real) t = btexp::jet_scale(btexp::jet_add(t, btexp::jet_conj(t)), PiScalar::ratio(1, 2));
            return t;
        };
        for (int j = 0; j < n; ++j) {
            fr.theta(j, j) = btexp::jet_add(Jet::constant(n, PiScalar(1L), {2, 2}), tail(true));
            for (int k = j + 1; k < n; ++k) {
                fr.theta(j, k) = tail(false);
                fr.theta(k, j) = btexp::jet_conj(fr.theta(j, k));
            }
        }
    }
    fr.transform = btexp::identity_transform(n);
    return fr;
}

} // namespace testsupport

#include <ostream>

namespace btexp {
inline std::ostream& operator<<(std::ostream& os, const Bidegree& b) { return os << to_string(b); }
inline std::ostream& operator<<(std::ostream& os, const Jet& j) { return os << j.str(); }
} // namespace btexp
