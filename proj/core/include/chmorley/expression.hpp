#pragma once

#include <memory>
#include <string>

#include "chmorley/fields.hpp"

namespace chmorley {

/// Compiles an arithmetic expression in x and y ("tanh((x^2+y^2-0.25)/0.1)")
/// into a ScalarField with exact first derivatives (forward-mode duals).
/// Supported: + - * / ^ (constant exponent), unary minus, parentheses,
/// numbers, pi, and sin cos tan tanh exp log sqrt abs.
/// Throws std::invalid_argument on parse errors.
ScalarField compile_expression(const std::string& text);

}  // namespace chmorley
