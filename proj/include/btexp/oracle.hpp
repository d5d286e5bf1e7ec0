#pragma once

#include "btexp/jet.hpp"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace btexp {

// num(k) / den(k); num has PiScalar coefficients, den rational ones
// (index = power of k).
struct KRational {
    std::vector<PiScalar> num;
    std::vector<Rational> den{Rational(1)};

    PiScalar at(long k) const;
    // b_j with value ~ sum_j b_j k^{n-j}, j = 0..J.
    std::vector<PiScalar> expansion(int n, int J) const;
};

// ||z^a||^2 = prod 2 pi a_j! / (2 k lambda_j)^{a_j + 1} for the weight
// exp(-2k sum lambda_j |z_j|^2) and volume Theta^n / n!, Theta euclidean.
// Returned as c * k^e.
std::pair<PiScalar, int> fock_norm2(const std::vector<PiScalar>& lambda, const MultiIndex& a);

// f must be a polynomial (unbounded truncation).
KRational fock_toeplitz_series(const std::vector<PiScalar>& lambda, const Jet& f);
KRational fock_compose_series(const std::vector<PiScalar>& lambda, const Jet& f, const Jet& g);
PiScalar fock_toeplitz_exact(const std::vector<PiScalar>& lambda, const Jet& f, long k);
PiScalar fock_compose_exact(const std::vector<PiScalar>& lambda, const Jet& f, const Jet& g, long k);

// Matrix of T_f on the monomials z^a, |a| <= degree (in multi_indices_upto
// order), for fixed k: T_f z^b = sum_a A[a][b] z^a.
using ScalarGrid = std::vector<std::vector<PiScalar>>;
ScalarGrid fock_operator_matrix(const std::vector<PiScalar>& lambda, const Jet& f, long k, int degree);
ScalarGrid grid_mul(const ScalarGrid& a, const ScalarGrid& b);
// Kernel of the operator at (0,0): A[0][0] / ||1||^2.
PiScalar fock_kernel_at0(const std::vector<PiScalar>& lambda, const ScalarGrid& a, long k);

// Fubini-Study on CP^1, sections of O(k) as polynomials of degree <= k in w;
// f = sum_p coeffs[p] t^p with t = |w|^2 / (1 + |w|^2).
KRational cp1_toeplitz_series(const std::vector<PiScalar>& coeffs);
PiScalar cp1_density_exact(const std::vector<PiScalar>& coeffs, long k);

// Float path.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
// Golub-Welsch; weight x^alpha e^{-x} on (0, inf).
QuadratureRule gauss_laguerre(int m, double alpha = 0.0);
// Weight (1-x)^alpha (1+x)^beta on (-1, 1).
QuadratureRule gauss_jacobi(int m, double alpha, double beta);
// Gaussian radial moments by Gauss-Laguerre, refined until two rules agree to tol.
std::complex<double> fock_toeplitz_float(const std::vector<double>& lambda, const Jet& f, long k, double tol = 1e-12);
// Beta integrals by Gauss-Jacobi.
double cp1_density_float(const std::vector<double>& coeffs, long k, double tol = 1e-12);

struct FitCoefficient {
    int j = 0;
    double value = 0;
    double error = 0;
};

struct FitResult {
    std::vector<FitCoefficient> coeffs;
    double condition = 0;
    double residual = 0;
};

// Least-squares fit of sum_{j <= J + extra} b_j k^{n-j}; reports b_0..b_J.
// The error estimate is the larger of the residual-based standard error and
// the change when one nuisance term is dropped.
FitResult fit_expansion(const std::vector<std::pair<long, double>>& samples, int n, int J, int extra = 2);

enum class OracleModel { Fock, Cp1 };

struct OracleSeries {
    OracleModel model = OracleModel::Fock;
    int n = 1;
    std::string symbol;
    std::optional<KRational> exact_value;
    std::vector<PiScalar> exact_coeffs;
    std::vector<std::pair<long, double>> samples;
    FitResult fitted;
};

OracleSeries fock_series(const std::vector<PiScalar>& lambda, const Jet& f, const std::optional<Jet>& g, long kmin,
                         long kmax, int J, const std::string& label);
OracleSeries cp1_series(const std::vector<PiScalar>& coeffs, long kmin, long kmax, int J, const std::string& label);

} // namespace btexp
