#pragma once

#include "btexp/expansion.hpp"
#include "btexp/geometry.hpp"

#include <optional>

namespace btexp {

struct ClosedFormInputs {
    int n = 1;
    CurvatureReport curv;
    SymbolReport sym;                // f, and g when present
    std::optional<SymbolReport> fg;  // the product f g
    bool polarized = false;
};

// Curvature from the point formulas; f, g must be known to (2,2).
ClosedFormInputs closed_inputs(const NormalFrame& frame, const Jet& f, const std::optional<Jet>& g = std::nullopt);

// b_{j,f}(0), j = 0, 1, 2.
ExpansionResult closed_toeplitz(const ClosedFormInputs& in);

enum class ComposeMode {
    Theorem, // b_{j,f,g} through b_{j,fg} plus correction terms
    Remark,  // fully expanded in f and g
};

// b_{j,f,g}(0), j = 0, 1, 2.
ExpansionResult closed_compose(const ClosedFormInputs& in, ComposeMode mode = ComposeMode::Theorem);

// C_j(f,g)(0), j = 0, 1, 2.
ExpansionResult closed_star(const ClosedFormInputs& in);

// Theta = omega; throws DomainError unless in.polarized.
ExpansionResult closed_polarized_toeplitz(const ClosedFormInputs& in);
ExpansionResult closed_polarized_compose(const ClosedFormInputs& in);

} // namespace btexp
