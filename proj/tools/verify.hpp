#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quantum3/complex3.hpp"
#include "quantum3/statesum.hpp"

namespace quantum3::tools {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
  void add(std::string name, bool pass, std::string detail = {});
};

/// |x - y| <= tol (1 + max(|x|, |y|)).
bool close(double x, double y, double tol);

/// TV_{r,s} (or TV'_{r,s}) for several s. The exact route computes one
/// abstract invariant per root-of-unity branch and specializes it.
std::map<long, double> tv_values(const complex3::Triangulation& t, int r, bool refined,
                                 const std::vector<long>& s_values, statesum::Arithmetic arithmetic,
                                 int jobs);

/// TV_{r,s} = TV_{3,2} TV'_{r,s} for even s and TV_{r,s} = TV_{3,1} TV'_{r,r-s}
/// for odd s, over all s coprime to the odd level r.
SuiteResult verify_splitting(const complex3::Triangulation& t, const std::string& label, int r,
                             statesum::Arithmetic arithmetic, double tol, int jobs);

/// Hansen's TV_{r,1} for S^3 = (0; 1/1) and S^2 x S^1 = (0;) against the
/// state sum on the shipped triangulations.
SuiteResult verify_hansen_anchors(const std::string& asset_dir, int r, double tol, int jobs);

/// |hansen_ratio(sym, a)|^2 against the uniform cone order closed form at
/// s = 1 for (g; (a, +-1) x n), a in {5, 7}, g in {0, 1}, n in {0, 2, 4}.
SuiteResult verify_hansen_closed_form(double tol);

/// The two vanishing symbols at r in {a, 2a}: criterion holds and
/// |hansen_ratio| < 1e-9.
SuiteResult verify_vanishing();

/// Per coloring: ev_{r,1}(term) = (-1)^{chi(S(c3))} ev_{r,r-1}(term).
SuiteResult verify_sign_change(const complex3::Triangulation& t, int r, double tol);

/// Recursive Dedekind sums against the cotangent sum for random coprime
/// pairs, and exact reciprocity.
SuiteResult verify_dedekind(int samples, long a_max, std::uint64_t seed, double tol);

/// The distinguishable d = 7 pair and the indistinguishable p = 5 pair.
SuiteResult verify_hempel_distinguishable(double tol);
SuiteResult verify_hempel_indistinguishable(double tol);

}  // namespace quantum3::tools
