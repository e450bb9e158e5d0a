#pragma once

#include <string>

#include "ndk/expr.hpp"
#include "ndk/signature.hpp"

namespace ndk {

enum class RenderMode {
  Pretty,  // unicode display with per-signature pretty strings
  Ascii,   // input notation; parses back to an alpha-equal expression
};

// Fully parenthesized rendering, e.g. "(z ε (x ∪ y))".
std::string render(const Expr& e, const Signature& sig, RenderMode mode = RenderMode::Pretty);

// Rendering used for proof lines and listings: the outermost parentheses of
// the root are dropped, e.g. "z ε (x ∪ y)".
std::string render_line(const Expr& e, const Signature& sig,
                        RenderMode mode = RenderMode::Pretty);

// Signature-free convenience for propositional formulas.
std::string render_line(const Expr& e);

}  // namespace ndk
