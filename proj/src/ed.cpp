#include "mottcdw/ed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "mottcdw/tridiag.hpp"

namespace mottcdw {

namespace {

uint64_t pack(const std::vector<int>& occ) {
  uint64_t key = 0;
  for (size_t i = 0; i < occ.size(); ++i) key |= uint64_t(occ[i]) << (4 * i);
  return key;
}

struct Basis {
  std::vector<std::vector<int>> states;
  std::unordered_map<uint64_t, int32_t> index;
};

// Dimension of the fixed-total capped occupation space, saturating at huge.
long count_basis(int n_sites, int n_total, int cap) {
  std::vector<long> ways(n_total + 1, 0);
  ways[0] = 1;
  for (int site = 0; site < n_sites; ++site) {
    std::vector<long> next(n_total + 1, 0);
    for (int left = 0; left <= n_total; ++left) {
      if (ways[left] == 0) continue;
      for (int v = 0; v <= cap && left + v <= n_total; ++v)
        next[left + v] = std::min<long>(next[left + v] + ways[left],
                                        long{4'000'000'000});
    }
    ways = std::move(next);
  }
  return ways[n_total];
}

Basis enumerate_basis(int n_sites, int n_total, int cap) {
  Basis b;
  std::vector<int> occ(n_sites, 0);
  const std::function<void(int, int)> rec = [&](int site, int left) {
    if (site == n_sites - 1) {
      if (left <= cap) {
        occ[site] = left;
        b.index.emplace(pack(occ), int32_t(b.states.size()));
        b.states.push_back(occ);
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
  return b;
}

}  // namespace

EdResult exact_diagonalize(const LatticeGraph& g, const ModelParams& p,
                           int occupation_cap) {
  g.validate();
  p.validate();
  if (p.k_sites != g.n_sites)
    throw DomainError("exact_diagonalize: params and lattice disagree on size");
  const double n_real = p.rho * g.n_sites;
  const int n_total = int(std::lround(n_real));
  if (std::abs(n_real - n_total) > 1e-9)
    throw DomainError("exact_diagonalize: rho * n_sites must be an integer");
  if (occupation_cap < 1 || occupation_cap > n_total)
    throw DomainError("exact_diagonalize: occupation cap must be in [1, N]");
  if (occupation_cap > 15 || g.n_sites > 16)
    throw SizeError("exact_diagonalize: state packing limited to 16 sites, cap 15");

  if (count_basis(g.n_sites, n_total, occupation_cap) > 2'000'000)
    throw SizeError("exact_diagonalize: basis dimension exceeds 2e6");
  const Basis basis = enumerate_basis(g.n_sites, n_total, occupation_cap);
  const long dim = long(basis.states.size());
  if (dim == 0) throw DomainError("exact_diagonalize: empty basis");

  std::vector<double> diag(dim);
  for (long s = 0; s < dim; ++s) {
    const std::vector<int>& occ = basis.states[s];
    double e = 0, th = 0;
    for (int i = 0; i < g.n_sites; ++i) {
      e += 0.5 * p.u_s * occ[i] * (occ[i] - 1);
      th += g.parity[i] == 0 ? occ[i] : -occ[i];
    }
    diag[s] = e - p.u_l * th * th / g.n_sites;
  }

  EdResult r;
  r.basis_dim = dim;
  if (p.j == 0.0) {
    r.energy = *std::min_element(diag.begin(), diag.end());
    return r;
  }

  // Hopping matrix in CSR form: -j * sqrt((n_i+1) n_j) per directed move.
  std::vector<size_t> row_ptr(dim + 1, 0);
  std::vector<int32_t> cols;
  std::vector<double> vals;
  {
    std::vector<int> occ;
    for (long s = 0; s < dim; ++s) {
      occ = basis.states[s];
      for (const auto& [e, o] : g.edges) {
        for (const auto& [from, to] : {std::pair{o, e}, std::pair{e, o}}) {
          if (occ[from] < 1 || occ[to] + 1 > occupation_cap) continue;
          const double amp = std::sqrt(double(occ[to] + 1) * occ[from]);
          occ[from] -= 1;
          occ[to] += 1;
          cols.push_back(basis.index.at(pack(occ)));
          vals.push_back(-p.j * amp);
          occ[from] += 1;
          occ[to] -= 1;
        }
      }
      row_ptr[s + 1] = cols.size();
    }
  }

  const auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (long s = 0; s < dim; ++s) {
      double acc = diag[s] * x[s];
      for (size_t t = row_ptr[s]; t < row_ptr[s + 1]; ++t)
        acc += vals[t] * x[cols[t]];
      y[s] = acc;
    }
  };

  // Lanczos with full reorthogonalization from the uniform vector (the
  // off-diagonal is non-positive, so the ground state overlaps it).
  const int max_iter = int(std::min<long>(dim, 300));
  std::vector<std::vector<double>> v;
  v.emplace_back(dim, 1.0 / std::sqrt(double(dim)));
  std::vector<double> alphas, betas, w(dim);
  double prev = 0;
  bool have_prev = false;

  for (int it = 0; it < max_iter; ++it) {
    matvec(v[it], w);
    double alpha = 0;
    for (long i = 0; i < dim; ++i) alpha += w[i] * v[it][i];
    alphas.push_back(alpha);
    for (int pass = 0; pass < 2; ++pass)
      for (const std::vector<double>& u : v) {
        double d = 0;
        for (long i = 0; i < dim; ++i) d += w[i] * u[i];
        for (long i = 0; i < dim; ++i) w[i] -= d * u[i];
      }
    double beta = 0;
    for (long i = 0; i < dim; ++i) beta += w[i] * w[i];
    beta = std::sqrt(beta);

    SymTridiag t{alphas, betas};
    const double lam = lowest_eigenpairs(t, 1, false).values[0];
    r.iterations = it + 1;
    const double scale = std::max(1.0, std::abs(lam));
    if ((have_prev && std::abs(lam - prev) <= 1e-14 * scale) ||
        beta <= 1e-14 * scale || it + 1 == int(dim)) {
      r.energy = lam;
      return r;
    }
    prev = lam;
    have_prev = true;

    betas.push_back(beta);
    std::vector<double> next(dim);
    for (long i = 0; i < dim; ++i) next[i] = w[i] / beta;
    v.push_back(std::move(next));
  }
  throw NumericError("exact_diagonalize: Lanczos did not converge within " +
                     std::to_string(max_iter) + " iterations");
}

}  // namespace mottcdw
