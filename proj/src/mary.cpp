#include "guesswork/mary.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <map>
#include <set>

namespace guesswork {

DmdSystem::DmdSystem(int modulus_, int num_vars_) {
  if (modulus_ < 2) throw Error("dmd modulus must be at least 2");
  if (num_vars_ < 0) throw Error("dmd variable count must be nonnegative");
  modulus = modulus_;
  num_vars = num_vars_;
}

void DmdSystem::add(int lhs, int rhs, int residue) {
  if (lhs < 0 || lhs >= num_vars || rhs < 0 || rhs >= num_vars)
    throw Error("dmd variable index out of range");
  if (residue < 0 || residue >= modulus) throw Error("dmd residue out of range");
  if (lhs == rhs) {
    if (residue == 0) trivially_unsat = true;  // 0 != 0 can never hold
    return;                                    // otherwise vacuously true
  }
  disequations.push_back({lhs, rhs, residue});
}

MPartition mary_zigzag(int n, int m) {
  if (n < 1) throw Error("zigzag partition needs N >= 1");
  if (m < 2) throw Error("zigzag partition needs M >= 2");
  MPartition part;
  part.arity = m;
  part.assignment.reserve(n);
  for (int k = 0; k < n; ++k) part.assignment.push_back((k + 1) % m);  // 1-based index mod M
  return part;
}

namespace {

void check_mary_permutation(const PosteriorSystem& ps, const Bijection& sigma) {
  if (sigma.size() != ps.total_terms())
    throw Error("sigma must be a permutation of the posterior terms");
  std::vector<bool> seen(ps.total_terms(), false);
  for (int idx : sigma.order) {
    if (idx < 0 || idx >= ps.total_terms() || seen[idx])
      throw Error("sigma must be a permutation of the posterior terms");
    seen[idx] = true;
  }
}

}  // namespace

bool is_cyclically_separating(const std::vector<std::vector<int>>& sets,
                              const PosteriorSystem& ps) {
  if (static_cast<int>(sets.size()) != ps.arity)
    throw Error("expected one term-set per answer class");
  std::vector<int> set_of(ps.total_terms(), -1);
  for (int j = 0; j < static_cast<int>(sets.size()); ++j)
    for (int idx : sets[j]) {
      if (idx < 0 || idx >= ps.total_terms() || set_of[idx] != -1)
        throw Error("the sets do not partition the posterior terms");
      set_of[idx] = j;
    }
  for (int v : set_of)
    if (v == -1) throw Error("the sets do not partition the posterior terms");

  const int m = ps.arity;
  for (int k = 0; k < ps.num_symbols; ++k)
    for (int v = 0; v < m; ++v) {
      int here = set_of[ps.term_index(k, v)];
      int next = set_of[ps.term_index(k, (v + 1) % m)];
      if (next != (here + 1) % m) return false;
    }
  return true;
}

bool mary_is_posterior_respecting(const MPartition& part, const Bijection& sigma,
                                  const PosteriorSystem& ps) {
  if (part.arity != ps.arity) throw Error("partition arity does not match the noise arity");
  if (part.size() != ps.num_symbols) throw Error("partition size does not match the instance");
  check_mary_permutation(ps, sigma);
  const int m = ps.arity;
  for (int b = 0; b < ps.num_symbols; ++b) {
    std::uint32_t seen = 0;
    for (int i = 0; i < m; ++i) {
      const PosteriorTerm& t = ps.terms[sigma.order[b * m + i]];
      std::uint32_t bit = 1u << ((part.cls(t.symbol) + t.noise_index) % m);
      if (seen & bit) return false;
      seen |= bit;
    }
  }
  return true;
}

SigmaBlocks to_sigma_blocks(const Bijection& sigma, const PosteriorSystem& ps) {
  check_mary_permutation(ps, sigma);
  SigmaBlocks out;
  out.modulus = ps.arity;
  out.num_rows = ps.num_symbols;
  out.blocks.resize(ps.num_symbols);
  for (int b = 0; b < ps.num_symbols; ++b) {
    out.blocks[b].reserve(ps.arity);
    for (int i = 0; i < ps.arity; ++i) {
      const PosteriorTerm& t = ps.terms[sigma.order[b * ps.arity + i]];
      out.blocks[b].emplace_back(t.symbol, t.noise_index);
    }
  }
  return out;
}

DmdSystem sigma_to_dmd(const SigmaBlocks& sigma) {
  DmdSystem sys(sigma.modulus, sigma.num_rows);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& block : sigma.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        auto [n1, m1] = block[i];
        auto [n2, m2] = block[j];
        if (n1 == n2) continue;  // same-symbol pairs can never collide
        int lhs = n1, rhs = n2;
        int c = ((m2 - m1) % sigma.modulus + sigma.modulus) % sigma.modulus;
        if (lhs > rhs) {  // canonical orientation for deduplication
          std::swap(lhs, rhs);
          c = (sigma.modulus - c) % sigma.modulus;
        }
        if (seen.insert({lhs, rhs, c}).second) sys.add(lhs, rhs, c);
      }
  }
  return sys;
}

DmdSystem sigma_to_dmd(const Bijection& sigma, const PosteriorSystem& ps) {
  return sigma_to_dmd(to_sigma_blocks(sigma, ps));
}

std::optional<std::vector<int>> solve_dmd(const DmdSystem& sys) {
  if (sys.trivially_unsat) return std::nullopt;
  const int n = sys.num_vars, m = sys.modulus;
  if (n == 0) return std::vector<int>{};

  // For variable v, constraints against already-assigned u < v as
  // forbidden value z_v == z_u + delta.
  std::vector<std::vector<std::pair<int, int>>> forbidden(n);
  for (const Disequation& d : sys.disequations) {
    if (d.lhs > d.rhs)
      forbidden[d.lhs].emplace_back(d.rhs, d.residue);
    else
      forbidden[d.rhs].emplace_back(d.lhs, (m - d.residue) % m);
  }

  std::vector<int> z(n, -1);
  int v = 0;
  z[0] = 0;  // global shift invariance
  std::vector<int> next_try(n, 0);
  next_try[0] = m;  // variable 0 is pinned; never retried
  ++v;
  while (v > 0 && v < n) {
    bool placed = false;
    for (int candidate = next_try[v]; candidate < m; ++candidate) {
      bool ok = true;
      for (auto [u, delta] : forbidden[v])
        if (z[u] != -1 && candidate == (z[u] + delta) % m) {
          ok = false;
          break;
        }
      if (ok) {
        z[v] = candidate;
        next_try[v] = candidate + 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++v;
      if (v < n) next_try[v] = 0;
    } else {
      z[v] = -1;
      next_try[v] = 0;
      --v;
      if (v == 0) return std::nullopt;  // variable 0 has no alternatives
      z[v] = -1;
    }
  }
  if (v == 0) return std::nullopt;
  return z;
}

MPartition dmd_assignment_to_partition(const std::vector<int>& assignment, const Bijection& sigma,
                                       const PosteriorSystem& ps) {
  DmdSystem sys = sigma_to_dmd(sigma, ps);
  if (static_cast<int>(assignment.size()) != sys.num_vars)
    throw Error("assignment length does not match the variable count");
  for (int zv : assignment)
    if (zv < 0 || zv >= sys.modulus) throw Error("assignment residue out of range");
  for (const Disequation& d : sys.disequations) {
    int diff = ((assignment[d.lhs] - assignment[d.rhs]) % sys.modulus + sys.modulus) % sys.modulus;
    if (diff == d.residue) throw Error("assignment does not satisfy the disequation system");
  }
  MPartition part;
  part.arity = ps.arity;
  part.assignment = assignment;
  return part;
}

std::pair<DmdSystem, NaeVarMap> nae3sat_to_dmd(const NaeSatInstance& inst, int modulus) {
  if (modulus != 3) throw Error("the NAE-3SAT reduction is defined for modulus 3");
  for (const auto& clause : inst.clauses)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > inst.num_vars)
        throw Error("clause literal out of range");

  const int n = inst.num_vars, m = static_cast<int>(inst.clauses.size());
  NaeVarMap map;
  map.s = 0;
  map.w.resize(n);
  map.w_hat.resize(n);
  map.clause_var.resize(m);
  for (int i = 0; i < n; ++i) {
    map.w[i] = 1 + i;
    map.w_hat[i] = 1 + n + i;
  }
  for (int j = 0; j < m; ++j) map.clause_var[j] = 1 + 2 * n + j;

  DmdSystem sys(3, 1 + 2 * n + m);
  for (int i = 0; i < n; ++i) {
    sys.add(map.w[i], map.s, 0);
    sys.add(map.w_hat[i], map.s, 0);
    sys.add(map.w[i], map.w_hat[i], 0);
  }
  auto delta = [&](int lit) { return lit > 0 ? map.w[lit - 1] : map.w_hat[-lit - 1]; };
  for (int j = 0; j < m; ++j) {
    sys.add(delta(inst.clauses[j][0]), map.clause_var[j], 0);
    sys.add(delta(inst.clauses[j][1]), map.clause_var[j], 1);
    sys.add(delta(inst.clauses[j][2]), map.clause_var[j], 2);
  }
  return {std::move(sys), std::move(map)};
}

std::vector<bool> decode_nae_assignment(const std::vector<int>& z, const NaeVarMap& map,
                                        int modulus) {
  std::vector<bool> x(map.w.size());
  for (std::size_t i = 0; i < map.w.size(); ++i) {
    int diff = ((z[map.w[i]] - z[map.s]) % modulus + modulus) % modulus;
    x[i] = (diff == 2);  // difference 1 encodes false, 2 encodes true
  }
  return x;
}

bool nae_satisfies(const NaeSatInstance& inst, const std::vector<bool>& assignment) {
  for (const auto& clause : inst.clauses) {
    bool any_true = false, any_false = false;
    for (int lit : clause) {
      bool val = lit > 0 ? assignment[lit - 1] : !assignment[-lit - 1];
      (val ? any_true : any_false) = true;
    }
    if (!any_true || !any_false) return false;
  }
  return true;
}

std::optional<std::vector<bool>> nae_brute_force(const NaeSatInstance& inst, int cap) {
  if (inst.num_vars > cap) throw Error("NAE instance exceeds the brute-force cap");
  const std::uint64_t total = std::uint64_t(1) << inst.num_vars;
  std::vector<bool> x(inst.num_vars);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < inst.num_vars; ++i) x[i] = (mask >> i) & 1u;
    if (nae_satisfies(inst, x)) return x;
  }
  return std::nullopt;
}

namespace {

// Free tokens of one variable family, per residue. Rows are handed out
// first-in first-out so the construction is deterministic.
struct TokenPool {
  std::array<std::deque<int>, 3> rows;

  void add_row_full(int row) {
    for (int r = 0; r < 3; ++r) rows[r].push_back(row);
  }
  int take(int residue) {
    int row = rows[residue].front();
    rows[residue].pop_front();
    return row;
  }
};

}  // namespace

DmdToSigmaResult dmd_to_sigma(const DmdSystem& sys) {
  if (sys.modulus != 3) throw Error("the sigma embedding is defined for modulus 3");

  // A flagged-contradictory system carries no explicit disequation, so
  // encode an unsatisfiable core against a fresh helper variable instead.
  std::vector<Disequation> diseqs = sys.disequations;
  int num_vars = sys.num_vars;
  if (sys.trivially_unsat) {
    if (num_vars == 0) throw Error("contradictory system without variables");
    int helper = num_vars++;
    diseqs.push_back({0, helper, 0});
    diseqs.push_back({0, helper, 1});
    diseqs.push_back({0, helper, 2});
  }

  std::vector<int> occurrences(num_vars, 0);
  for (const Disequation& d : diseqs) {
    ++occurrences[d.lhs];
    ++occurrences[d.rhs];
  }

  SigmaBlocks sigma;
  sigma.modulus = 3;
  int next_row = num_vars;  // base rows for the variables come first
  std::vector<TokenPool> pool(num_vars);
  for (int k = 0; k < num_vars; ++k) pool[k].add_row_full(k);

  auto emit = [&](std::initializer_list<std::pair<int, int>> tokens) {
    sigma.blocks.emplace_back(tokens);
  };

  // Duplication gadgets. Each one consumes a residue-0 token of the
  // family, introduces copy rows kp, kpp forced equal to the variable,
  // and leaves one extra full column of tokens in the pool. A variable
  // used d times therefore needs d-1 gadgets.
  for (int k = 0; k < num_vars; ++k) {
    for (int g = 1; g < occurrences[k]; ++g) {
      int src = pool[k].take(0);
      int kp = next_row++, kpp = next_row++, j = next_row++, jp = next_row++;
      emit({{src, 0}, {j, 0}, {jp, 0}});
      emit({{kp, 1}, {j, 1}, {jp, 1}});
      emit({{kpp, 2}, {j, 2}, {jp, 2}});
      pool[k].rows[0].push_back(kp);
      pool[k].rows[0].push_back(kpp);
      pool[k].rows[1].push_back(kpp);
      pool[k].rows[2].push_back(kp);
    }
  }

  // One block triple per disequation w_k - w_l != c, mirrored across the
  // three residues so exactly one column of each family is consumed.
  for (std::size_t i = 0; i < diseqs.size(); ++i) {
    const Disequation& d = diseqs[i];
    int helper = next_row++;
    for (int r = 0; r < 3; ++r) {
      int row_k = pool[d.lhs].take(r);
      int row_l = pool[d.rhs].take((d.residue + r) % 3);
      emit({{row_k, r}, {row_l, (d.residue + r) % 3}, {helper, r}});
    }
  }

  // Variables untouched by any disequation keep their own siblings
  // together, which constrains nothing.
  for (int k = 0; k < num_vars; ++k)
    if (occurrences[k] == 0) emit({{k, 0}, {k, 1}, {k, 2}});

  sigma.num_rows = next_row;

  // The pools must be exactly exhausted and the blocks a bijection.
  std::vector<int> placed(3 * next_row, 0);
  for (const auto& block : sigma.blocks)
    for (auto [row, residue] : block) ++placed[row * 3 + residue];
  for (int count : placed)
    if (count != 1) throw std::logic_error("sigma embedding is not a bijection");

  DmdToSigmaResult result;
  result.sigma = std::move(sigma);
  result.var_row.resize(sys.num_vars);
  for (int k = 0; k < sys.num_vars; ++k) result.var_row[k] = k;
  return result;
}

DmdGraph dmd_to_graph(const DmdSystem& sys) {
  // As with the sigma embedding, a flagged contradiction is realized by
  // excluding every residue pair against a helper variable.
  std::vector<Disequation> diseqs = sys.disequations;
  int num_vars = sys.num_vars;
  if (sys.trivially_unsat) {
    if (num_vars == 0) throw Error("contradictory system without variables");
    int helper = num_vars++;
    for (int c = 0; c < sys.modulus; ++c) diseqs.push_back({0, helper, c});
  }

  DmdGraph g;
  g.modulus = sys.modulus;
  g.num_vars = num_vars;
  std::set<std::pair<int, int>> edges;
  auto add_edge = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
  };
  for (int k = 0; k < num_vars; ++k)
    for (int r = 0; r < g.modulus; ++r)
      for (int q = r + 1; q < g.modulus; ++q) add_edge(g.vertex(k, r), g.vertex(k, q));
  for (const Disequation& d : diseqs)
    for (int m = 0; m < g.modulus; ++m)
      add_edge(g.vertex(d.lhs, (d.residue + m) % g.modulus), g.vertex(d.rhs, m));
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

int max_independent_set_bruteforce(const DmdGraph& graph, int cap) {
  const int v = graph.num_vertices();
  if (v > cap) throw Error("graph exceeds the independent-set search cap");
  if (v > 63) throw Error("graph exceeds the bitmask width");

  std::vector<std::uint64_t> adjacent(v, 0);
  for (auto [a, b] : graph.edges) {
    adjacent[a] |= std::uint64_t(1) << b;
    adjacent[b] |= std::uint64_t(1) << a;
  }

  int best = 0;
  // Pick at most one vertex per variable clique.
  auto recurse = [&](auto&& self, int var, std::uint64_t chosen, int count) -> void {
    if (count + (graph.num_vars - var) <= best) return;
    if (var == graph.num_vars) {
      best = std::max(best, count);
      return;
    }
    for (int r = 0; r < graph.modulus; ++r) {
      int u = graph.vertex(var, r);
      if (adjacent[u] & chosen) continue;
      self(self, var + 1, chosen | (std::uint64_t(1) << u), count + 1);
    }
    self(self, var + 1, chosen, count);
  };
  recurse(recurse, 0, 0, 0);
  return best;
}

std::optional<MPartition> unconstrained_achievable(const Distribution& dist,
                                                   const NoiseModel& noise, TiePolicy policy) {
  PosteriorSystem ps = build_posterior_system(dist, noise);
  if (ps.has_ties && policy == TiePolicy::Reject)
    throw Error("achievability is certified only on tie-free instances");
  Bijection down = sigma_down_bijection(ps);
  DmdSystem sys = sigma_to_dmd(down, ps);
  std::optional<std::vector<int>> z = solve_dmd(sys);
  if (!z) return std::nullopt;
  // sigma-down is globally sorted, so posterior-respecting already
  // implies the partition induces it and attains the relaxation bound.
  return dmd_assignment_to_partition(*z, down, ps);
}

MaryBruteForceResult mary_brute_force_optimal(const Distribution& dist, const NoiseModel& noise,
                                              const MomentFunction& f, std::uint64_t cap,
                                              int threads) {
  if (f.size() != dist.size()) throw Error("moment function length must equal N");
  PosteriorSystem ps = build_posterior_system(dist, noise);
  const int n = ps.num_symbols, m = ps.arity;

  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) {
    if (total > cap / m) throw Error("assignment space exceeds the brute-force cap");
    total *= m;
  }

  auto sweep = [&](std::uint64_t lo, std::uint64_t hi) {
    MaryBruteForceResult local;
    MPartition part;
    part.arity = m;
    part.assignment.resize(n);
    std::vector<Rat> levels(n, Rat(0));
    std::vector<int> fill(m, 0);
    Rat value;
    bool first = true;
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::uint64_t rest = code;
      for (int k = 0; k < n; ++k) {
        part.assignment[k] = static_cast<int>(rest % m);
        rest /= m;
      }
      for (int k = 0; k < n; ++k) levels[k] = 0;
      std::fill(fill.begin(), fill.end(), 0);
      for (int idx : ps.sigma_down) {
        const PosteriorTerm& t = ps.terms[idx];
        const int y = (part.assignment[t.symbol] + t.noise_index) % m;
        levels[fill[y]++] += t.value;
      }
      value = 0;
      for (int k = 0; k < n; ++k) value += f.values[k] * levels[k];
      if (first || value < local.min_value) {
        local.min_value = value;
        local.argmins.clear();
        local.argmins.push_back(part);
        first = false;
      } else if (value == local.min_value) {
        local.argmins.push_back(part);
      }
    }
    return local;
  };

  if (threads <= 1 || total < 4096) return sweep(0, total);

  const int shards = std::min<std::uint64_t>(threads, 64);
  std::vector<std::future<MaryBruteForceResult>> futures;
  for (int s = 0; s < shards; ++s) {
    std::uint64_t lo = total * s / shards, hi = total * (s + 1) / shards;
    futures.push_back(std::async(std::launch::async, sweep, lo, hi));
  }
  MaryBruteForceResult best;
  bool first = true;
  for (auto& fut : futures) {
    MaryBruteForceResult local = fut.get();
    if (local.argmins.empty()) continue;
    if (first || local.min_value < best.min_value) {
      best = std::move(local);
      first = false;
    } else if (local.min_value == best.min_value) {
      best.argmins.insert(best.argmins.end(), local.argmins.begin(), local.argmins.end());
    }
  }
  return best;
}

}  // namespace guesswork
