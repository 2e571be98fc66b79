#include "smtkit/nevanlinna/zeros.hpp"

#include <complex>
#include <functional>

#include <Eigen/Eigenvalues>

namespace smtkit {

void QuadratureConfig::validate() const {
  if (nodes < 64 || (nodes & (nodes - 1)) != 0) throw PreconditionError("quadrature nodes must be a power of two >= 64");
  if (max_nodes < nodes) throw PreconditionError("max_nodes below the initial node count");
  if (precision < 53) throw PreconditionError("precision must be at least 53 bits");
  if (!(singularity_shift > 0) || singularity_shift > 1e-6)
    throw PreconditionError("singularity_shift must lie in (0, 1e-6]");
  if (!(rel_tol > 0)) throw PreconditionError("rel_tol must be positive");
}

int ZeroList::total_multiplicity() const {
  int total = 0;
  for (const auto& z : entries) total += z.multiplicity;
  return total;
}

namespace {

ComplexValue horner(const std::vector<ComplexValue>& c, const ComplexValue& z) {
  ComplexValue acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<ComplexValue> to_complex(const UPoly& p) {
  std::vector<ComplexValue> out;
  for (const auto& c : p.coefficients()) out.push_back(c.to_complex());
  return out;
}

std::vector<std::complex<double>> initial_roots(const UPoly& h) {
  const int D = h.degree();
  const UPoly m = h.monic();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 1; i < D; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < D; ++i) {
    const auto& c = m.coefficient(i);
    companion(i, D - 1) = -std::complex<double>(c.re.convert_to<double>(), c.im.convert_to<double>());
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots(D);
  for (int i = 0; i < D; ++i) roots[i] = solver.eigenvalues()(i);
  // Separate coincident starting points so the simultaneous iteration can split them.
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-12 * (1 + std::abs(roots[i])))
        roots[i] += std::polar(1e-6 * (1 + std::abs(roots[i])), 0.7 + i);
  return roots;
}

// Aberth-Ehrlich iteration on a square-free polynomial with nonzero constant term.
std::vector<ComplexValue> aberth(const UPoly& h, const std::vector<std::complex<double>>& start, unsigned precision) {
  const auto p = to_complex(h);
  const auto dp = to_complex(h.derivative());
  const int D = h.degree();
  std::vector<ComplexValue> z(D);
  for (int i = 0; i < D; ++i) z[i] = {Real(start[i].real()), Real(start[i].imag())};
  const Real tol = pow(Real(2), -static_cast<int>(precision) + 8);
  for (int iter = 0; iter < 500; ++iter) {
    Real worst = 0;
    for (int k = 0; k < D; ++k) {
      ComplexValue ratio = horner(p, z[k]) / horner(dp, z[k]);
      ComplexValue sum;
      for (int j = 0; j < D; ++j)
        if (j != k) sum += ComplexValue(Real(1)) / (z[k] - z[j]);
      ComplexValue step = ratio / (ComplexValue(Real(1)) - ratio * sum);
      z[k] -= step;
      Real rel = abs(step) / (1 + abs(z[k]));
      if (rel > worst) worst = rel;
    }
    if (worst < tol) return z;
  }
  throw ConvergenceError("polynomial root iteration did not converge");
}

}  // namespace

std::vector<Zero> polynomial_zeros(const UPoly& g, unsigned precision) {
  if (g.is_zero()) throw PreconditionError("zeros of the zero polynomial");
  PrecisionScope scope(precision);
  std::vector<Zero> out;
  const auto factors = square_free_decomposition(g);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    UPoly h = factors[i];
    const int mult = static_cast<int>(i) + 1;
    if (h.degree() <= 0) continue;
    if (h.coefficient(0).is_zero()) {
      out.push_back({ComplexValue(), mult, 0.0});
      h = h.divmod(UPoly::z()).first;
    }
    if (h.degree() <= 0) continue;
    const int D = h.degree();
    auto roots = aberth(h, initial_roots(h), precision);
    const auto p = to_complex(h);
    const auto dp = to_complex(h.derivative());
    std::vector<Real> radius(D);
    for (int k = 0; k < D; ++k) radius[k] = D * abs(horner(p, roots[k]) / horner(dp, roots[k]));
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < a; ++b)
        if (abs(roots[a] - roots[b]) <= radius[a] + radius[b])
          throw InconclusiveError("root inclusion disks overlap; increase the precision");
    for (int k = 0; k < D; ++k) out.push_back({roots[k], mult, radius[k].convert_to<double>()});
  }
  return out;
}

namespace {

using Path = std::function<ComplexValue(const Real&)>;

Real path_turn(const CompiledExpPoly& g, const Path& path, const Real& ta, const ComplexValue& ga, const Real& tb,
               const ComplexValue& gb, int depth) {
  static const double kQuarter = 0.7853981633974483;
  const Real tm = (ta + tb) / 2;
  const ComplexValue gm = g(path(tm));
  if (norm_sq(gm) == 0) throw ConvergenceError("function vanishes on the winding path");
  const Real d = arg(gb / ga);
  const Real d1 = arg(gm / ga);
  const Real d2 = arg(gb / gm);
  if (depth >= 2 && abs(d1) < kQuarter && abs(d2) < kQuarter && abs(d1 + d2 - d) < 1e-6) return d1 + d2;
  if (depth > 80) throw ConvergenceError("winding path passes too close to a zero");
  return path_turn(g, path, ta, ga, tm, gm, depth + 1) + path_turn(g, path, tm, gm, tb, gb, depth + 1);
}

Real closed_path_winding(const CompiledExpPoly& g, const Path& path, int pieces) {
  Real total = 0;
  ComplexValue first = g(path(Real(0)));
  if (norm_sq(first) == 0) throw ConvergenceError("function vanishes on the winding path");
  ComplexValue prev = first;
  for (int s = 0; s < pieces; ++s) {
    const Real ta = Real(s) / pieces;
    const Real tb = Real(s + 1) / pieces;
    const ComplexValue next = s + 1 == pieces ? first : g(path(tb));
    if (norm_sq(next) == 0) throw ConvergenceError("function vanishes on the winding path");
    total += path_turn(g, path, ta, prev, tb, next, 0);
    prev = next;
  }
  return total / (2 * pi_constant<Real>());
}

long rounded_winding(const Real& w) {
  const long n = round(w).convert_to<long>();
  if (abs(w - n) > Real(0.1)) throw InconclusiveError("winding number not within 0.1 of an integer");
  return n;
}

}  // namespace

Real winding_number(const CompiledExpPoly& g, const std::vector<ComplexValue>& vertices) {
  Real total = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const ComplexValue a = vertices[i];
    const ComplexValue b = vertices[(i + 1) % vertices.size()];
    const Real length = abs(b - a);
    const int pieces = std::max(2, static_cast<int>(std::ceil(length.convert_to<double>() / 0.25)));
    Path seg = [a, b](const Real& t) { return a + (b - a) * ComplexValue(t); };
    for (int s = 0; s < pieces; ++s) {
      const Real ta = Real(s) / pieces;
      const Real tb = Real(s + 1) / pieces;
      const ComplexValue ga = g(seg(ta));
      const ComplexValue gb = g(seg(tb));
      if (norm_sq(ga) == 0 || norm_sq(gb) == 0) throw ConvergenceError("function vanishes on the winding path");
      total += path_turn(g, seg, ta, ga, tb, gb, 0);
    }
  }
  return total / (2 * pi_constant<Real>());
}

Real circle_winding(const CompiledExpPoly& g, const ComplexValue& center, const Real& radius) {
  const Real two_pi = 2 * pi_constant<Real>();
  Path circle = [&](const Real& t) { return center + polar(radius, Real(two_pi * t)); };
  return closed_path_winding(g, circle, 16);
}

namespace {

struct Box {
  Real cx, cy, half;
  long winding;
};

long box_winding(const CompiledExpPoly& g, const Real& cx, const Real& cy, const Real& half) {
  std::vector<ComplexValue> corners{{cx - half, cy - half}, {cx + half, cy - half}, {cx + half, cy + half},
                                    {cx - half, cy + half}};
  return rounded_winding(winding_number(g, corners));
}

Zero refine(const CompiledExpPoly& g, const CompiledExpPoly& dg, const Box& box, unsigned precision) {
  ComplexValue z{box.cx, box.cy};
  const Real tol = pow(Real(2), -static_cast<int>(precision) / 2 - 8);
  const Real w(box.winding);
  ComplexValue step;
  for (int iter = 0; iter < 200; ++iter) {
    const ComplexValue gz = g(z);
    if (norm_sq(gz) == 0) break;
    step = ComplexValue(w) * gz / dg(z);
    z -= step;
    if (abs(step) < tol * (1 + abs(z))) break;
  }
  if (abs(z.re - box.cx) > 2 * box.half || abs(z.im - box.cy) > 2 * box.half)
    throw ConvergenceError("Newton refinement left the isolating box");
  const long m = rounded_winding(circle_winding(g, z, Real(1e-3)));
  if (m != box.winding) throw InconclusiveError("zero cluster: box and circle windings differ");
  return {z, static_cast<int>(m), (abs(step) * 2).convert_to<double>()};
}

}  // namespace

ZeroList zeros_in_disk(const ExpPoly& g, double r, const QuadratureConfig& q) {
  if (g.is_zero()) throw PreconditionError("zeros of the zero function");
  if (!(r > 0)) throw PreconditionError("disk radius must be positive");
  ZeroList out;
  out.radius = r;
  if (g.is_polynomial()) {
    PrecisionScope scope(q.precision);
    for (auto& z : polynomial_zeros(g.as_polynomial(), q.precision))
      if (abs(z.location) <= Real(r)) out.entries.push_back(std::move(z));
    return out;
  }

  PrecisionScope scope(q.precision);
  const CompiledExpPoly cg(g);
  const CompiledExpPoly cdg(g.derivative());
  // Off-center start so that box edges avoid lattice-like zero sets.
  const Real cx = sqrt(Real(2)) / 7000;
  const Real cy = sqrt(Real(3)) / 11000;
  std::vector<Box> pending;
  Box root{cx, cy, Real(r) + Real(0.5), 0};
  root.winding = box_winding(cg, root.cx, root.cy, root.half);
  if (root.winding < 0) throw InconclusiveError("negative winding number for an entire function");
  if (root.winding > 0) pending.push_back(root);
  const Real leaf_half(5e-4);
  while (!pending.empty()) {
    Box box = pending.back();
    pending.pop_back();
    if (box.half < leaf_half) {
      Zero z = refine(cg, cdg, box, q.precision);
      if (abs(z.location) <= Real(r)) out.entries.push_back(std::move(z));
      continue;
    }
    const Real h = box.half / 2;
    long sum = 0;
    std::vector<Box> children;
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) {
        Box child{box.cx + dx * h, box.cy + dy * h, h, 0};
        child.winding = box_winding(cg, child.cx, child.cy, child.half);
        sum += child.winding;
        if (child.winding > 0) children.push_back(child);
      }
    if (sum != box.winding) throw InconclusiveError("box windings are inconsistent");
    pending.insert(pending.end(), children.rbegin(), children.rend());
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const Zero& a, const Zero& b) {
    if (a.location.re != b.location.re) return a.location.re < b.location.re;
    return a.location.im < b.location.im;
  });
  return out;
}

}  // namespace smtkit
