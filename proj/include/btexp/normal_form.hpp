#pragma once

#include "btexp/jet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace btexp {

using ScalarMatrix = std::vector<std::vector<PiScalar>>;

// Local data at a point: weight phi (|s|^2 = e^{-2 phi}), the Hermitian
// metric Theta = i sum Theta_jk dz_j ^ dzbar_k, and optional symbols.
struct FramedInput {
    int n = 1;
    Jet phi;
    JetMatrix theta;
    std::optional<Jet> f;
    std::optional<Jet> g;
};

// Records how a normal frame relates to its input: the input coordinate is
// z = linear * higher(w), and
//   phi_in(z(w)) = sum lambda_j |w_j|^2 + phi1(w) + 2 Re gauge(w).
struct NormalTransform {
    Jet gauge;
    ScalarMatrix linear;
    std::vector<Jet> higher;

    // z(w) as n holomorphic jets.
    std::vector<Jet> composite() const;
};

struct NormalFrame {
    int n = 1;
    std::vector<PiScalar> lambda;
    Jet phi1;
    JetMatrix theta;
    std::optional<Jet> f;
    std::optional<Jet> g;
    NormalTransform transform;
    // Set when an irrational square root or eigenvector had to be rounded and
    // the residual dropped.
    bool approximate = false;
};

struct Violation {
    std::string what;
    MultiIndex alpha;
    MultiIndex beta;
};

// Throws DomainError/SchemaError on inconsistent dimensions, non-real phi,
// non-Hermitian Theta or a Hessian that is not positive definite.
void check_framed_input(const FramedInput& in);

// phi - 2 Re G with all pure (alpha,0), (0,beta) terms and the constant removed.
std::pair<Jet, Jet> gauge_reduce(const Jet& phi);

struct LinearStep {
    FramedInput data;
    ScalarMatrix matrix;
    std::vector<PiScalar> lambda;
    bool approximate = false;
};

// z = A w with A^T Theta(0) conj(A) = I and A^T H conj(A) diagonal, where H is
// the mixed Hessian of phi at 0.
LinearStep linear_normalize(const FramedInput& in);

// Full pipeline: gauge, linear step, then degree-by-degree elimination.
NormalFrame normalize(const FramedInput& in);

// The remaining step on already linear-normalized data.
NormalFrame higher_normalize(const LinearStep& lin);

std::vector<Violation> validate_normal_frame(const NormalFrame& frame);

// phi = sum lambda |w|^2 + phi1 and the other fields, as plain input.
FramedInput frame_as_input(const NormalFrame& frame);

// Pullback of a (1,1)-form coefficient matrix along a holomorphic map z = Z(w).
JetMatrix pull_back_form(const JetMatrix& theta, const std::vector<Jet>& map);

// Mixed Hessian (d^2 phi / dz_j dzbar_k)(0).
ScalarMatrix mixed_hessian(const Jet& phi);

} // namespace btexp
