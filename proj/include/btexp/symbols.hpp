#pragma once

#include "btexp/jet.hpp"

#include <map>
#include <string>

namespace btexp {

// Names available to a symbol expression.
struct SymbolScope {
    int n = 1;
    // Truncation used whenever an operation has no finite closed form
    // (division by a non-constant, exp, log, and any jet-valued variable).
    Bidegree cap{4, 4};
    std::map<std::string, Jet> variables;
};

// z_j and zbar_j as z1..zn, zbar1..zbarn; also z, zbar when n = 1.
SymbolScope coordinate_scope(int n, Bidegree cap = {4, 4});

// Grammar: sums, products, quotients and integer powers of numbers
// ("3", "0.25"), pi, i, variables, parentheses, and the functions
// exp(.), log(.), conj(.).  Polynomial expressions stay exact (unbounded
// truncation).  Throws SchemaError with the offset on malformed input.
Jet parse_symbol(const std::string& text, const SymbolScope& scope);

// Coefficients of a polynomial in the single variable `name`.
std::vector<PiScalar> parse_univariate(const std::string& text, const std::string& name);

} // namespace btexp
