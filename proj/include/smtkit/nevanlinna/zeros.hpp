#pragma once

#include <vector>

#include "smtkit/nevanlinna/expression.hpp"

namespace smtkit {

struct QuadratureConfig {
  int nodes = 64;                  // initial node count, a power of two >= 64
  unsigned precision = 128;        // working precision in bits
  double singularity_shift = 1e-7;  // zeros closer than this to a circle trigger a radius nudge
  int max_nodes = 1 << 16;
  double rel_tol = 1e-10;

  void validate() const;
};

struct Zero {
  ComplexValue location;
  int multiplicity = 1;
  double error = 0;  // radius of a disk certified (polynomials) or estimated to hold the zero
};

struct ZeroList {
  std::vector<Zero> entries;
  double radius = 0;  // entries are the zeros with |a| <= radius

  int total_multiplicity() const;
};

/// All zeros of a nonzero polynomial over Q(i), with multiplicities from the
/// square-free decomposition. Each root of a square-free factor of degree D is
/// polished at the working precision and certified by pairwise disjoint
/// disks of radius D |h/h'|; throws InconclusiveError if the disks overlap.
std::vector<Zero> polynomial_zeros(const UPoly& g, unsigned precision = 128);

/// Zeros of g with |a| <= r. Polynomials use polynomial_zeros; other
/// expressions use argument-principle winding numbers on a quadtree of boxes,
/// Newton refinement, and the winding around a radius 1e-3 circle as the
/// multiplicity.
ZeroList zeros_in_disk(const ExpPoly& g, double r, const QuadratureConfig& q = {});

/// Total change of arg g along the closed polygon through the given vertices,
/// divided by 2 pi. Steps are refined until every sub-step turns by less than
/// pi/4. Throws ConvergenceError if g (nearly) vanishes on the path.
Real winding_number(const CompiledExpPoly& g, const std::vector<ComplexValue>& vertices);

/// Winding number of g around a circle.
Real circle_winding(const CompiledExpPoly& g, const ComplexValue& center, const Real& radius);

}  // namespace smtkit
