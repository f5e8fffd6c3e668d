#include "mottcdw/aq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>

#include "mottcdw/params.hpp"

namespace mottcdw {

namespace {

// Bit layout for states reachable from unit filling under the capped
// even-raising hop: bit set = even site doubled / odd site emptied.
struct HopCodec {
  int n = 0;
  int half = 0;
  std::vector<int> bit;                    // site -> bit index
  std::vector<std::pair<int, int>> bonds;  // (even bit, odd bit)
};

HopCodec make_codec(const LatticeGraph& g) {
  g.validate();
  HopCodec c;
  c.n = g.n_sites;
  c.half = g.n_sites / 2;
  c.bit.assign(g.n_sites, -1);
  int e = 0, o = 0;
  for (int i = 0; i < g.n_sites; ++i)
    c.bit[i] = g.parity[i] == 0 ? e++ : c.half + o++;
  for (const auto& [ev, od] : g.edges) c.bonds.emplace_back(c.bit[ev], c.bit[od]);
  return c;
}

// Chain of exact coefficient vectors: level j holds the integer coefficients
// of (capped even-raising hop)^j on unit filling, every allowed move
// contributing exactly 1 in the rescaled convention.
std::vector<std::vector<mpz_class>> hop_levels(const HopCodec& c, int n_levels) {
  const size_t dim = size_t{1} << c.n;
  std::vector<std::vector<mpz_class>> levels;
  levels.emplace_back(dim);
  levels[0][0] = 1;
  for (int j = 1; j <= n_levels; ++j) {
    std::vector<mpz_class> next(dim);
    const std::vector<mpz_class>& cur = levels.back();
    for (size_t s = 0; s < dim; ++s) {
      if (cur[s] == 0) continue;
      for (const auto& [eb, ob] : c.bonds) {
        const uint64_t em = uint64_t{1} << eb, om = uint64_t{1} << ob;
        if ((s & em) || (s & om)) continue;  // even full or odd empty
        next[s | em | om] += cur[s];
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

mpz_class squared_norm(const std::vector<mpz_class>& v) {
  mpz_class acc = 0;
  for (const mpz_class& x : v) acc += x * x;
  return acc;
}

int clamp_q_max(const LatticeGraph& g, int q_max) {
  if (q_max < 0) return g.n_sites;
  if (q_max % 2 != 0) throw DomainError("q_max must be even");
  return std::min(q_max, g.n_sites);
}

}  // namespace

NormalizationTable aq_by_operator(const LatticeGraph& g, int q_max) {
  g.validate();
  if (g.n_sites > 12)
    throw SizeError("operator route limited to 12 sites (dense 2^n vectors)");
  const int qm = clamp_q_max(g, q_max);
  const HopCodec c = make_codec(g);
  const auto levels = hop_levels(c, qm / 2);
  NormalizationTable t;
  t.method = "operator-construction";
  for (int q = 0; q <= qm; q += 2) {
    t.q.push_back(q);
    t.a.push_back(squared_norm(levels[q / 2]));
  }
  return t;
}

namespace {

// Perfect-matching count of the sub-graph induced by 'mask', memoized.
int64_t matchings(uint64_t mask, const std::vector<uint64_t>& adj,
                  std::vector<int64_t>& memo) {
  if (mask == 0) return 1;
  int64_t& slot = memo[mask];
  if (slot >= 0) return slot;
  const int i = std::countr_zero(mask);
  uint64_t nbrs = adj[i] & mask;
  int64_t total = 0;
  while (nbrs) {
    const int j = std::countr_zero(nbrs);
    nbrs &= nbrs - 1;
    total += matchings(mask & ~(uint64_t{1} << i) & ~(uint64_t{1} << j), adj, memo);
  }
  return slot = total;
}

}  // namespace

NormalizationTable aq_by_matching(const LatticeGraph& g, int q_max) {
  g.validate();
  if (g.n_sites > 16)
    throw SizeError("matching route limited to 16 sites (2^n memo)");
  const int qm = clamp_q_max(g, q_max);
  std::vector<uint64_t> adj(g.n_sites, 0);
  for (const auto& [e, o] : g.edges) {
    adj[e] |= uint64_t{1} << o;
    adj[o] |= uint64_t{1} << e;
  }
  const uint64_t dim = uint64_t{1} << g.n_sites;
  std::vector<int64_t> memo(dim, -1);
  std::vector<mpz_class> acc(qm / 2 + 1);
  for (uint64_t mask = 0; mask < dim; ++mask) {
    const int pc = std::popcount(mask);
    if (pc % 2 != 0 || pc > qm) continue;
    const int64_t mu = matchings(mask, adj, memo);
    if (mu != 0) acc[pc / 2] += mpz_class(mu) * mpz_class(mu);
  }
  NormalizationTable t;
  t.method = "matching-sum";
  for (int q = 0; q <= qm; q += 2) {
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), q / 2);
    t.q.push_back(q);
    t.a.push_back(fac * fac * acc[q / 2]);
  }
  return t;
}

mpz_class aq_distorted(int k_sites, int q) {
  if (k_sites < 2 || k_sites % 2 != 0)
    throw DomainError("aq_distorted: need an even number of sites >= 2");
  if (q < 0 || q % 2 != 0 || q > k_sites)
    throw DomainError("aq_distorted: q must be even in [0, k_sites]");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), k_sites / 2, q / 2);
  return b * b;
}

namespace {

// Enumerate all occupation vectors with total n_total and per-site cap.
template <typename Fn>
void for_each_occupation(int n_sites, int n_total, int cap, Fn&& fn) {
  std::vector<int> occ(n_sites, 0);
  const std::function<void(int, int)> rec = [&](int site, int left) {
    if (site == n_sites - 1) {
      if (left <= cap) {
        occ[site] = left;
        fn(occ);
      }
      return;
    }
    const int hi = std::min(cap, left);
    for (int v = 0; v <= hi; ++v) {
      occ[site] = v;
      rec(site + 1, left - v);
    }
  };
  rec(0, n_total);
}

double theta_of(const std::vector<int>& occ, const std::vector<int>& parity) {
  double th = 0;
  for (size_t i = 0; i < occ.size(); ++i)
    th += parity[i] == 0 ? occ[i] : -occ[i];
  return th;
}

// Largest |(theta' - theta -+ 2) * amp| over every hop out of every basis
// state with the given occupation cap (cap = n_total means no projection).
double commutator_residual(const LatticeGraph& g, int cap) {
  double worst = 0;
  for_each_occupation(g.n_sites, g.n_sites, cap, [&](const std::vector<int>& occ) {
    const double th = theta_of(occ, g.parity);
    std::vector<int> next = occ;
    for (const auto& [e, o] : g.edges) {
      if (occ[o] >= 1 && occ[e] + 1 <= cap) {  // even-raising hop
        next[e] = occ[e] + 1;
        next[o] = occ[o] - 1;
        const double amp = std::sqrt(double(occ[e] + 1) * occ[o]);
        worst = std::max(worst,
                         std::abs((theta_of(next, g.parity) - th - 2.0) * amp));
        next[e] = occ[e];
        next[o] = occ[o];
      }
      if (occ[e] >= 1 && occ[o] + 1 <= cap) {  // odd-raising hop
        next[o] = occ[o] + 1;
        next[e] = occ[e] - 1;
        const double amp = std::sqrt(double(occ[o] + 1) * occ[e]);
        worst = std::max(worst,
                         std::abs((theta_of(next, g.parity) - th + 2.0) * amp));
        next[e] = occ[e];
        next[o] = occ[o];
      }
    }
  });
  return worst;
}

}  // namespace

MatrixElementReport matrix_element_check(int k_sites) {
  if (k_sites < 2 || k_sites % 2 != 0)
    throw DomainError("matrix_element_check: need an even number of sites >= 2");
  if (k_sites > 10)
    throw SizeError("matrix_element_check limited to 10 sites");
  const LatticeGraph g = make_complete_bipartite(k_sites);
  const HopCodec c = make_codec(g);
  const int k = k_sites;
  const auto levels = hop_levels(c, k / 2);

  std::vector<mpz_class> a(k / 2 + 1);
  for (int j = 0; j <= k / 2; ++j) a[j] = squared_norm(levels[j]);

  MatrixElementReport rep;
  rep.k_sites = k;

  // Single-pair element on normalized states. One capped hop carries a true
  // amplitude sqrt(2); the per-level rescaling cancels between bra and ket.
  const auto [eb, ob] = c.bonds.front();
  const uint64_t em = uint64_t{1} << eb, om = uint64_t{1} << ob;
  for (int q = 0; q + 2 <= k; q += 2) {
    const std::vector<mpz_class>& lo = levels[q / 2];
    const std::vector<mpz_class>& hi = levels[q / 2 + 1];
    mpz_class cross = 0;
    for (size_t s = 0; s < lo.size(); ++s) {
      if (lo[s] == 0 || (s & em) || (s & om)) continue;
      cross += hi[s | em | om] * lo[s];
    }
    const double measured = std::sqrt(2.0) * cross.get_d() /
                            std::sqrt(a[q / 2].get_d() * a[q / 2 + 1].get_d());
    const double expected = std::sqrt(2.0) * (k - q) * (q + 2) / (double(k) * k);
    rep.max_element_error =
        std::max(rep.max_element_error, std::abs(measured - expected));
  }

  rep.max_commutator_residual = commutator_residual(g, k);  // no cap binds
  rep.max_projected_commutator_residual = commutator_residual(g, 2);

  rep.distorted_relation_exact = true;
  for (int q = 0; q <= k; q += 2) {
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), q / 2);
    const mpz_class f2 = fac * fac;
    if (a[q / 2] != f2 * f2 * aq_distorted(k, q)) {
      rep.distorted_relation_exact = false;
      break;
    }
  }

  rep.ok = rep.max_element_error <= 1e-12 && rep.max_commutator_residual == 0 &&
           rep.max_projected_commutator_residual == 0 &&
           rep.distorted_relation_exact;
  return rep;
}

namespace {

uint64_t pack_occ(const std::vector<int>& occ) {
  uint64_t key = 0;
  for (size_t i = 0; i < occ.size(); ++i)
    key |= uint64_t(occ[i]) << (4 * i);
  return key;
}

// One application of the even-raising hop in the rescaled convention
// (1/sqrt(2) per raised boson); cap < 0 means unprojected.
std::unordered_map<uint64_t, double> apply_hop(
    const std::unordered_map<uint64_t, double>& in, const LatticeGraph& g,
    int cap) {
  std::unordered_map<uint64_t, double> out;
  std::vector<int> occ(g.n_sites);
  for (const auto& [key, coeff] : in) {
    for (int i = 0; i < g.n_sites; ++i) occ[i] = int((key >> (4 * i)) & 0xF);
    for (const auto& [e, o] : g.edges) {
      if (occ[o] < 1) continue;
      if (cap >= 0 && occ[e] + 1 > cap) continue;
      if (occ[e] + 1 > 15) throw SizeError("occupation exceeds packing range");
      const double amp = std::sqrt(0.5 * (occ[e] + 1) * occ[o]);
      const uint64_t nk = key + (uint64_t{1} << (4 * e)) - (uint64_t{1} << (4 * o));
      out[nk] += amp * coeff;
    }
  }
  return out;
}

}  // namespace

NormChains projected_vs_unprojected_norms(const LatticeGraph& g, int n_max) {
  g.validate();
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<int> unit(g.n_sites, 1);
  std::unordered_map<uint64_t, double> proj{{pack_occ(unit), 1.0}};
  std::unordered_map<uint64_t, double> full = proj;
  NormChains chains;
  const auto norm2 = [](const std::unordered_map<uint64_t, double>& v) {
    double acc = 0;
    for (const auto& [k, x] : v) acc += x * x;
    return acc;
  };
  chains.projected.push_back(norm2(proj));
  chains.unprojected.push_back(norm2(full));
  for (int n = 1; n <= n_max; ++n) {
    proj = apply_hop(proj, g, 2);
    full = apply_hop(full, g, -1);
    chains.projected.push_back(norm2(proj));
    chains.unprojected.push_back(norm2(full));
  }
  return chains;
}

}  // namespace mottcdw
