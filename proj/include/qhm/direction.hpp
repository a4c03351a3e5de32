#pragma once

#include <array>

namespace qhm {

/// Basis directions of the Heisenberg Lie algebra. Bracket table:
/// [X,Y] = -c Z, [Y,Z] = 0, [Z,X] = 0; the only nonzero structure constant
/// is c^Z_{XY} = -c.
enum class Direction { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Direction, 3> kDirections{Direction::X, Direction::Y,
                                                      Direction::Z};

inline const char* name(Direction d) {
  switch (d) {
    case Direction::X: return "X";
    case Direction::Y: return "Y";
    default: return "Z";
  }
}

/// bracket(a, b) = (coefficient, direction) with [a, b] = coefficient * c * dir;
/// the coefficient already carries the sign, e.g. [X,Y] = -1 * c * Z.
struct BracketTerm {
  double coefTimesC = 0;  // multiple of c; 0 when the bracket vanishes
  Direction dir = Direction::Z;
};

inline BracketTerm bracket(Direction a, Direction b) {
  if (a == Direction::X && b == Direction::Y) return {-1.0, Direction::Z};
  if (a == Direction::Y && b == Direction::X) return {+1.0, Direction::Z};
  return {0.0, Direction::Z};
}

/// Structure constant c^i_{jk} as a multiple of the integer c.
inline double structure_constant(Direction i, Direction j, Direction k) {
  if (i == Direction::Z && j == Direction::X && k == Direction::Y) return -1.0;
  if (i == Direction::Z && j == Direction::Y && k == Direction::X) return +1.0;
  return 0.0;
}

}  // namespace qhm
