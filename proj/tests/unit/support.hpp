#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "quantum3/complex3.hpp"

#ifndef QUANTUM3_TEST_ASSET_DIR
#define QUANTUM3_TEST_ASSET_DIR "assets"
#endif
#ifndef QUANTUM3_TEST_DATA_DIR
#define QUANTUM3_TEST_DATA_DIR "tests/data"
#endif

namespace testing {

inline constexpr double kPi = std::numbers::pi;

inline quantum3::complex3::Triangulation asset(const std::string& name) {
  return quantum3::complex3::load_triangulation_file(std::string(QUANTUM3_TEST_ASSET_DIR) + "/" + name);
}

inline quantum3::complex3::Triangulation data(const std::string& name) {
  return quantum3::complex3::load_triangulation_file(std::string(QUANTUM3_TEST_DATA_DIR) + "/" + name);
}

inline quantum3::complex3::Triangulation sphere() { return asset("s3_boundary4simplex.json"); }

/// [n] at q^{1/2} = exp(i pi s / r), straight from the sine quotient.
inline double qint(int n, int r, long s) { return std::sin(n * kPi * s / r) / std::sin(kPi * s / r); }

inline double qfact(int n, int r, long s) {
  double p = 1.0;
  for (int k = 1; k <= n; ++k) p *= qint(k, r, s);
  return p;
}

inline double s3_tv(int r) { return 2.0 / r * std::pow(std::sin(kPi / r), 2); }

inline bool near(std::complex<double> x, std::complex<double> y, double tol) {
  return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
}

}  // namespace testing
