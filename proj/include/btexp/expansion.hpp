#pragma once

#include "btexp/piscalar.hpp"

#include <string>
#include <vector>

namespace btexp {

enum class ExpansionKind { Toeplitz, Compose, Star };

std::string to_string(ExpansionKind k);

// coeffs[j] is b_{j,f}(0), b_{j,f,g}(0) or C_j(f,g)(0).
struct ExpansionResult {
    ExpansionKind kind = ExpansionKind::Toeplitz;
    std::vector<PiScalar> coeffs;
    std::string f;
    std::string g;
};

} // namespace btexp
