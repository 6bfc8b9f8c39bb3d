#pragma once
#include <vector>

#include "glat/structure.hpp"

namespace glat {

// Rank-1 Witt bracket: c(n, m) = m - n.
ScalarStructure witt();

// Generalized Witt bracket on Z^rank for an additive grading form:
// c(a, b) = l(b) - l(a).
ScalarStructure wl(const AdditiveMap& l);

// Symbol-current bracket attached to a lattice map pi into C^2 (generator
// images given as pairs): c(a, b) = <pi(a)+rho | pi(b)+rho>.  Computes the
// injectivity flag and the simplicity precondition (image not inside the
// diagonal line, and (2,2) outside the image lattice).
ScalarStructure wpi(const std::vector<CPair>& gen_images, Field field = Field::Q);

// Loop algebra of the three-dimensional simple algebra in its dense
// Z-grading: degrees 3n +- 1 carry the nilpotent lines, 3n the diagonal.
ScalarStructure a1_1();

// Twisted loop algebra of the eight-dimensional simple algebra under the
// order-2 diagram twist, in its dense Z-grading (period 8).
ScalarStructure a2_2();

// Finite quotients: the three-dimensional simple algebra graded by Z/3 and
// the twist-fixed data graded by Z/8.
ScalarStructure sl2_z3();
ScalarStructure sl3_z8();

// Pull a finitely graded rank-1 structure back along the surjection
// Z^n -> Z/k determined by generator images phi.
ScalarStructure pullback(const std::vector<long>& phi, long k, const ScalarStructure& target);

// Pad a structure with `extra` spectator coordinates (degenerate support
// lattice): c((a,u),(b,v)) = c(a,b).
ScalarStructure imprimitive(const ScalarStructure& s, int extra);

}  // namespace glat
