#pragma once

#include "btexp/normal_form.hpp"

#include <string>
#include <vector>

namespace btexp {

// phi1 = 0, Theta = I, every lambda equal.
NormalFrame flat_frame(int n, const PiScalar& lambda);
// The Bargmann-Fock model: phi = sum lambda_j |z_j|^2, Theta euclidean.
NormalFrame fock_frame(const std::vector<PiScalar>& lambda);
// Fubini-Study on CP^1 at z = 0: phi = (1/2) log(1 + 2 pi |z|^2), Theta = omega,
// with phi1 known to (order, order).
NormalFrame cp1_frame(int order = 3);
// t = 2 pi |z|^2 / (1 + 2 pi |z|^2), i.e. |w|^2/(1+|w|^2) in the unscaled coordinate w.
Jet cp1_t(int order);
// Replaces Theta by omega = (1/pi) d dbar phi.
NormalFrame polarize(const NormalFrame& frame);
// Identity transform data for a frame that is already normal.
NormalTransform identity_transform(int n);

} // namespace btexp
