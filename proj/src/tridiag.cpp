#include "mottcdw/tridiag.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

#include "mottcdw/params.hpp"

namespace mottcdw {

EigPairs lowest_eigenpairs(const SymTridiag& t, int m, bool want_vectors) {
  const int n = static_cast<int>(t.diag.size());
  if (n < 1 || t.off.size() + 1 != t.diag.size())
    throw DomainError("lowest_eigenpairs: off-diagonal size must be n-1");
  if (m < 1 || m > n) throw DomainError("lowest_eigenpairs: need 1 <= m <= n");

  std::vector<double> d = t.diag, e = t.off;
  e.resize(n);  // dstevr reads n-1 entries; keep a defined tail
  std::vector<double> w(n), zmat;
  std::vector<lapack_int> isuppz(2 * static_cast<size_t>(std::max(1, m)));
  lapack_int found = 0;
  const lapack_int ldz = n;
  if (want_vectors) zmat.resize(static_cast<size_t>(ldz) * m);

  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, d.data(), e.data(),
      0.0, 0.0, 1, m, 0.0, &found, w.data(),
      want_vectors ? zmat.data() : nullptr, ldz, isuppz.data());
  if (info != 0 || found < m)
    throw NumericError("tridiagonal eigensolver failed: info=" +
                       std::to_string(info) + ", converged " +
                       std::to_string(found) + "/" + std::to_string(m));

  EigPairs r;
  r.values.assign(w.begin(), w.begin() + m);
  if (want_vectors) {
    r.vectors.resize(m);
    for (int k = 0; k < m; ++k)
      r.vectors[k].assign(zmat.begin() + static_cast<size_t>(k) * ldz,
                          zmat.begin() + static_cast<size_t>(k) * ldz + n);
  }
  return r;
}

}  // namespace mottcdw
