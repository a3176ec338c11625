#ifndef PROPHECKE_EXPR_HPP_
#define PROPHECKE_EXPR_HPP_

// A small expression language over H:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := integer | basis '[' elem ']' | '(' expr ')'
//   basis   := 'T' | 'Tstar' | 'E' | 'z'
//   elem    := lambda? tpart? word?
//   lambda  := '(' ints ')' (',' (integer | '(' ints ')'))?
//   tpart   := 't' '(' ints ')'
//   word    := 'n'? letter ('*'? letter)*     letter := 's' integer | 's' | 'e'
//
// lambda is nu(lambda) with an optional Z_kappa part (element index or
// coordinates); letters s1..sr are the finite simple lifts, s0 the affine
// one (first component), a bare 's' is allowed in semisimple rank one.  The
// printed form of an element, e.g. (1)t(1)ns1, parses back to itself.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "prophecke/hecke.hpp"

namespace prophecke {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("column " + std::to_string(pos + 1) + ": " + msg), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

HeckeElement evaluate_expression(const HeckeAlgebra& H, const std::string& text);
W1 parse_element(const ProPWeyl& W, const std::string& text);

enum class PrintBasis { kT, kTstar, kE };
// Canonical form: terms sorted by (length, reduced word, nu, Z_kappa part).
std::string print_element(const HeckeAlgebra& H, const HeckeElement& x, PrintBasis b = PrintBasis::kT);

}  // namespace prophecke

#endif  // PROPHECKE_EXPR_HPP_
