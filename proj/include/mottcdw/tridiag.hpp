#pragma once
#include <vector>

namespace mottcdw {

// Symmetric tridiagonal matrix: off.size() == diag.size() - 1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;
};

struct EigPairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // normalized; empty unless requested
};

// Lowest m eigenpairs by bisection + inverse iteration (LAPACK dstevr).
// Throws NumericError with the solver's info code on failure.
EigPairs lowest_eigenpairs(const SymTridiag& t, int m, bool want_vectors);

}  // namespace mottcdw
