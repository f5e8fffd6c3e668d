#include "mottcdw/lattice.hpp"

#include <algorithm>
#include <set>

#include "mottcdw/params.hpp"

namespace mottcdw {

void LatticeGraph::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw DomainError("lattice: need an even number of sites >= 2");
  if (static_cast<int>(parity.size()) != n_sites)
    throw DomainError("lattice: parity table size mismatch");
  int even = 0;
  for (int p : parity) {
    if (p != 0 && p != 1) throw DomainError("lattice: parity must be 0 or 1");
    even += p == 0;
  }
  if (2 * even != n_sites)
    throw DomainError("lattice: sub-lattices must have equal size");
  std::set<std::pair<int, int>> seen;
  for (const auto& [e, o] : edges) {
    if (e < 0 || e >= n_sites || o < 0 || o >= n_sites)
      throw DomainError("lattice: edge out of range");
    if (parity[e] != 0 || parity[o] != 1)
      throw DomainError("lattice: edges must run even -> odd");
    if (!seen.insert({e, o}).second)
      throw DomainError("lattice: duplicate edge");
  }
}

LatticeGraph make_dimer() {
  LatticeGraph g;
  g.n_sites = 2;
  g.parity = {0, 1};
  g.edges = {{0, 1}};
  g.geometry = "dimer";
  g.validate();
  return g;
}

LatticeGraph make_ring(int n) {
  if (n < 4 || n % 2 != 0)
    throw DomainError("ring: need an even site count >= 4");
  LatticeGraph g;
  g.n_sites = n;
  g.parity.resize(n);
  for (int i = 0; i < n; ++i) g.parity[i] = i % 2;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (i % 2 == 0)
      g.edges.emplace_back(i, j);
    else
      g.edges.emplace_back(j, i);
  }
  g.geometry = "ring-" + std::to_string(n);
  g.validate();
  return g;
}

LatticeGraph make_rectangle(int lx, int ly, bool periodic) {
  if (lx < 1 || ly < 1) throw DomainError("rectangle: need positive extents");
  const int n = lx * ly;
  if (n % 2 != 0) throw DomainError("rectangle: need an even site count");
  if (periodic) {
    if (lx > 1 && (lx % 2 != 0 || lx == 2))
      throw DomainError("rectangle: periodic wrap needs even extent > 2");
    if (ly > 1 && (ly % 2 != 0 || ly == 2))
      throw DomainError("rectangle: periodic wrap needs even extent > 2");
  }
  LatticeGraph g;
  g.n_sites = n;
  g.parity.resize(n);
  const auto id = [lx](int x, int y) { return y * lx + x; };
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) g.parity[id(x, y)] = (x + y) % 2;
  const auto add = [&](int i, int j) {
    if (g.parity[i] == 0)
      g.edges.emplace_back(i, j);
    else
      g.edges.emplace_back(j, i);
  };
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) {
      if (x + 1 < lx)
        add(id(x, y), id(x + 1, y));
      else if (periodic && lx > 2)
        add(id(x, y), id(0, y));
      if (y + 1 < ly)
        add(id(x, y), id(x, y + 1));
      else if (periodic && ly > 2)
        add(id(x, y), id(x, 0));
    }
  g.geometry = "rect-" + std::to_string(lx) + "x" + std::to_string(ly) +
               (periodic ? "-periodic" : "");
  g.validate();
  return g;
}

LatticeGraph make_complete_bipartite(int n) {
  if (n < 2 || n % 2 != 0)
    throw DomainError("complete bipartite: need an even site count >= 2");
  LatticeGraph g;
  g.n_sites = n;
  g.parity.resize(n);
  for (int i = 0; i < n; ++i) g.parity[i] = i % 2;
  for (int i = 0; i < n; i += 2)
    for (int j = 1; j < n; j += 2) g.edges.emplace_back(i, j);
  g.geometry = "complete-bipartite-" + std::to_string(n);
  g.validate();
  return g;
}

}  // namespace mottcdw
