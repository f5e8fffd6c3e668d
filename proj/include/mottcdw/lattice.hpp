#pragma once
#include <string>
#include <utility>
#include <vector>

namespace mottcdw {

// Bipartite lattice with equal even/odd sub-lattices; every edge connects an
// even site to an odd site and is stored as (even, odd).
struct LatticeGraph {
  int n_sites = 0;
  std::vector<int> parity;                 // 0 = even sub-lattice, 1 = odd
  std::vector<std::pair<int, int>> edges;  // (even site, odd site)
  std::string geometry;
  void validate() const;  // throws DomainError on any broken invariant
};

LatticeGraph make_dimer();      // 2 sites, 1 edge
LatticeGraph make_ring(int n);  // n even, >= 4
// lx*ly sites, open or periodic; periodic wrap needs the wrapped dimension
// even and > 2 (odd breaks the bipartition, 2 duplicates an edge).
LatticeGraph make_rectangle(int lx, int ly, bool periodic = false);
LatticeGraph make_complete_bipartite(int n);  // n even: all even-odd pairs

}  // namespace mottcdw
