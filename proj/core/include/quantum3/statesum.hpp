#pragma once

// Turaev-Viro state sums TV_{r,s} (all admissible colorings) and TV'_{r,s}
// (even colorings, odd r) over a closed triangulation.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "quantum3/complex3.hpp"
#include "quantum3/cyclo.hpp"

namespace quantum3::statesum {

using complex3::Coloring;
using complex3::Triangulation;
using cyclo::Branch;
using cyclo::CycloNum;

/// Per-element weights, exact in Q(zeta). The branch selects which
/// specializations s the result can be evaluated at (see cyclo::Branch).
/// |e| = (-1)^i [i+1]
CycloNum weight_edge(int color, int r, Branch branch = Branch::kOdd);
/// |f| = (-1)^S [S-i]![S-j]![S-k]! / [S+1]!,  S = (i+j+k)/2
CycloNum weight_face(int i, int j, int k, int r, Branch branch = Branch::kOdd);
/// Tetrahedral 6j-type sum over colors (i,j,k,l,m,n) whose faces are
/// (i,j,k), (i,m,n), (j,l,n), (k,l,m).
CycloNum weight_tet(const std::array<int, 6>& colors, int r, Branch branch = Branch::kOdd);

CycloNum weight_edge(const Coloring& c, int edge, Branch branch = Branch::kOdd);
CycloNum weight_face(const Triangulation& t, const Coloring& c, int face, Branch branch = Branch::kOdd);
CycloNum weight_tet(const Triangulation& t, const Coloring& c, int tet, Branch branch = Branch::kOdd);

/// Vertex factor (zeta - zeta^-1)^2 / (-2r), or / (-r) when refined.
CycloNum vertex_factor(int r, bool refined, Branch branch = Branch::kOdd);

/// |T|_c = product of all edge, face and tetrahedron weights.
CycloNum term(const Triangulation& t, const Coloring& c, Branch branch = Branch::kOdd);

/// Memo of face and tetrahedron weights keyed by their color tuples.
/// Not thread-safe; give each worker its own table.
class WeightTable {
 public:
  explicit WeightTable(int r, Branch branch = Branch::kOdd) : r_(r), branch_(branch) {}

  int level() const { return r_; }
  Branch branch() const { return branch_; }
  const CycloNum& edge(int color);
  const CycloNum& face(int i, int j, int k);
  const CycloNum& tet(const std::array<int, 6>& colors);
  std::size_t size() const { return edges_.size() + faces_.size() + tets_.size(); }

 private:
  int r_;
  Branch branch_;
  std::map<int, CycloNum> edges_;
  std::map<std::tuple<int, int, int>, CycloNum> faces_;
  std::map<std::array<int, 6>, CycloNum> tets_;
};

enum class Arithmetic { kExact, kFloat };

struct Options {
  /// kFloat accumulates in complex doubles; results are not exact and must
  /// not be used for integrality claims.
  Arithmetic arithmetic = Arithmetic::kExact;
  int jobs = 1;
  /// Allowed |Im| relative to 1+|value| before a result is rejected.
  double reality_tol = 1e-9;
};

struct StateSumResult {
  double value = 0.0;
  std::complex<double> raw;
  int r = 0;
  long s = 0;
  bool refined = false;
  std::uint64_t coloring_count = 0;
  Arithmetic arithmetic = Arithmetic::kExact;
};

/// Exact element of Q(zeta) whose specializations are the invariants:
/// vertex_factor^|V| times the sum of |T|_c over A_r (A'_r if refined).
/// Specializations at s need branch == cyclo::branch_for(r, s).
struct AbstractInvariant {
  CycloNum value;
  std::uint64_t coloring_count = 0;
};

AbstractInvariant abstract_tv(const Triangulation& t, int r, bool refined, const Options& options = {},
                              Branch branch = Branch::kOdd);

/// TV_{r,s}: r >= 3, gcd(s, r) = 1.
StateSumResult tv(const Triangulation& t, int r, long s, const Options& options = {});

/// TV'_{r,s}: r odd, s even, gcd(s, r) = 1.
StateSumResult tv_prime(const Triangulation& t, int r, long s, const Options& options = {});

/// Float path for several s at once (TV, or TV' when refined); one sweep
/// shares the coloring enumeration across all requested s.
std::vector<StateSumResult> tv_float_batch(const Triangulation& t, int r, bool refined,
                                           const std::vector<long>& s_values, const Options& options = {});

/// Evaluates an abstract invariant at s with the reality check applied.
StateSumResult specialize(const AbstractInvariant& inv, int r, long s, bool refined, double reality_tol = 1e-9);

/// Independent route: enumerate every admissible coloring and add its full
/// product |T|_c exactly. Exponential; intended for small complexes.
AbstractInvariant abstract_tv_by_enumeration(const Triangulation& t, int r, bool refined,
                                             Branch branch = Branch::kOdd);

}  // namespace quantum3::statesum
