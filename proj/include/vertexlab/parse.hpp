#pragma once

#include "vertexlab/fock.hpp"
#include "vertexlab/homology.hpp"

#include <stdexcept>
#include <string>

namespace vertexlab {

/// Malformed expression, with the 1-based position of the offending character.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// state := term (('+'|'-') term)* ; term := [rational '*'] factor ('*' factor)* ;
/// factor := 'e[' ints ']' | 'b(' name ',' int ')' | 'f(' name ',' int ')' | 'vac'.
/// Factors multiply in the super-commutative algebra, so sectors add and repeated fermions vanish.
FockState parse_state(const FockSpace& space, const std::string& text);

/// Same grammar with the atom 'u(' ints ';' name ',' int ')' for u_{alpha,v,i} in place of b and f.
HClass parse_class(const VarietyModel& model, const std::string& text);

} // namespace vertexlab
