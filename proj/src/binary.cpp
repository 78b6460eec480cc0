#include "guesswork/binary.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace guesswork {

namespace {

// Plain union-find over term indices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void check_permutation(const PosteriorSystem& ps, const Bijection& sigma) {
  if (sigma.size() != ps.total_terms())
    throw Error("sigma must be a permutation of the posterior terms");
  std::vector<bool> seen(ps.total_terms(), false);
  for (int idx : sigma.order) {
    if (idx < 0 || idx >= ps.total_terms() || seen[idx])
      throw Error("sigma must be a permutation of the posterior terms");
    seen[idx] = true;
  }
}

std::vector<int> term_classes(const PosteriorSystem& ps, const Partition& part) {
  if (part.size() != ps.num_symbols) throw Error("partition size does not match the instance");
  std::vector<int> cls(ps.total_terms());
  for (int idx = 0; idx < ps.total_terms(); ++idx) {
    const PosteriorTerm& t = ps.terms[idx];
    cls[idx] = (part.cls(t.symbol) + t.noise_index) % 2;
  }
  return cls;
}

}  // namespace

std::vector<std::vector<int>> SiblingGraph::components() const {
  std::vector<std::vector<int>> out(component_count);
  for (int v = 0; v < num_vertices; ++v) out[component_of[v]].push_back(v);
  return out;
}

Partition zigzag_partition(int n) {
  if (n < 1) throw Error("zigzag partition needs N >= 1");
  Partition part;
  part.membership.resize(n);
  for (int k = 0; k < n; ++k) part.membership[k] = (k % 2 == 0);  // 1-based odd positions
  return part;
}

SiblingGraph sibling_graph(const PosteriorSystem& ps, const Bijection& sigma) {
  if (ps.arity != 2) throw Error("the sibling graph is defined for binary noise");
  check_permutation(ps, sigma);

  SiblingGraph g;
  g.num_vertices = ps.total_terms();
  g.posterior_edges.reserve(ps.num_symbols);
  g.sigma_edges.reserve(ps.num_symbols);

  UnionFind uf(g.num_vertices);
  for (int k = 0; k < ps.num_symbols; ++k) {
    int a = ps.term_index(k, 0), b = ps.term_index(k, 1);
    g.posterior_edges.emplace_back(a, b);
    uf.unite(a, b);
  }
  for (int b = 0; b < ps.num_symbols; ++b) {
    int u = sigma.order[2 * b], v = sigma.order[2 * b + 1];
    g.sigma_edges.emplace_back(u, v);
    uf.unite(u, v);
  }

  g.component_of.assign(g.num_vertices, -1);
  for (int v = 0; v < g.num_vertices; ++v) {
    int root = uf.find(v);
    if (g.component_of[root] == -1) g.component_of[root] = g.component_count++;
    g.component_of[v] = g.component_of[root];
  }
  return g;
}

std::vector<Partition> two_coloring_partitions(const SiblingGraph& graph,
                                               const PosteriorSystem& ps, std::size_t limit) {
  // Adjacency with both edge families; parallel edges are harmless for
  // the alternating walk.
  std::vector<std::vector<int>> adj(graph.num_vertices);
  for (auto [a, b] : graph.posterior_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto [a, b] : graph.sigma_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  // Base proper coloring: alternate along a BFS from the smallest vertex
  // of each component. Every component is an even cycle or an edge, so
  // this never conflicts.
  std::vector<int> base(graph.num_vertices, -1);
  for (int start = 0; start < graph.num_vertices; ++start) {
    if (base[start] != -1) continue;
    base[start] = 0;
    std::vector<int> queue{start};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : adj[v])
        if (base[w] == -1) {
          base[w] = base[v] ^ 1;
          queue.push_back(w);
        }
    }
  }

  const int c = graph.component_count;
  std::size_t total = c >= 63 ? limit : std::min<std::size_t>(limit, std::size_t(1) << c);
  std::vector<Partition> out;
  out.reserve(total);
  for (std::size_t flips = 0; flips < total; ++flips) {
    Partition part;
    part.membership.resize(ps.num_symbols);
    for (int k = 0; k < ps.num_symbols; ++k) {
      int v = ps.term_index(k, 0);
      int color = base[v] ^ static_cast<int>((flips >> graph.component_of[v]) & 1u);
      part.membership[k] = (color == 1);
    }
    out.push_back(std::move(part));
  }
  return out;
}

OptimalPartitions enumerate_optimal_partitions(const Distribution& dist, const NoiseModel& noise,
                                               std::size_t list_limit) {
  if (noise.kind != NoiseKind::BinarySymmetric)
    throw Error("optimal-partition enumeration is defined for binary symmetric noise");
  PosteriorSystem ps = build_posterior_system(dist, noise);

  OptimalPartitions result;
  result.level_sums = unconstrained_level_sums(ps);

  SiblingGraph graph = sibling_graph(ps, sigma_down_bijection(ps));
  result.component_count = graph.component_count;
  if (ps.has_ties) {
    // The 2^c formula assumes distinct terms; return one optimal
    // partition without certifying the count.
    result.certified = false;
    result.partitions.push_back(zigzag_partition(dist.size()));
    return result;
  }
  result.certified = true;
  result.count = mpz_class(1) << graph.component_count;
  result.partitions = two_coloring_partitions(graph, ps, list_limit);
  return result;
}

bool is_posterior_respecting(const Partition& part, const Bijection& sigma,
                             const PosteriorSystem& ps) {
  if (ps.arity != 2) throw Error("binary posterior-respecting check needs binary noise");
  check_permutation(ps, sigma);
  std::vector<int> cls = term_classes(ps, part);
  for (int b = 0; b < ps.num_symbols; ++b)
    if (cls[sigma.order[2 * b]] == cls[sigma.order[2 * b + 1]]) return false;
  return true;
}

bool is_order_preserving(const Partition& part, const Bijection& sigma,
                         const PosteriorSystem& ps) {
  if (ps.arity != 2) throw Error("binary order-preserving check needs binary noise");
  check_permutation(ps, sigma);
  std::vector<int> cls = term_classes(ps, part);
  int last[2] = {-1, -1};
  for (int idx : sigma.order) {
    int y = cls[idx];
    if (last[y] != -1 && !term_precedes(ps.terms[last[y]], ps.terms[idx])) return false;
    last[y] = idx;
  }
  return true;
}

bool is_induced(const Partition& part, const Bijection& sigma, const PosteriorSystem& ps) {
  if (ps.arity != 2) throw Error("binary induction check needs binary noise");
  check_permutation(ps, sigma);
  std::vector<std::vector<int>> pis = posterior_sets(ps, part);
  for (int k = 0; k < ps.num_symbols; ++k) {
    int a = sigma.order[2 * k], b = sigma.order[2 * k + 1];
    int p0 = pis[0][k], p1 = pis[1][k];
    if (!((a == p0 && b == p1) || (a == p1 && b == p0))) return false;
  }
  return true;
}

bool is_zigzag_unique(const Distribution& dist, const NoiseModel& noise) {
  if (noise.kind != NoiseKind::BinarySymmetric)
    throw Error("zigzag uniqueness is defined for binary symmetric noise");
  PosteriorSystem ps = build_posterior_system(dist, noise);
  if (ps.has_ties) throw Error("zigzag uniqueness is certified only on tie-free instances");
  return sibling_graph(ps, sigma_down_bijection(ps)).component_count == 1;
}

bool check_remark3_condition(const Distribution& dist, const NoiseModel& noise) {
  if (noise.kind != NoiseKind::BinarySymmetric)
    throw Error("the uniqueness condition is defined for binary symmetric noise");
  const int n = dist.size();
  if (n < 3) throw Error("the uniqueness condition needs N >= 3");
  const Rat& eps = noise.eps[0];
  const Rat eps_bar = Rat(1) - eps;
  // max p(k+2)/p(k) < eps/eps_bar, i.e. p(k+2) * eps_bar < eps * p(k).
  for (int k = 0; k + 2 < n; ++k)
    if (dist.probs[k + 2] * eps_bar >= eps * dist.probs[k]) return false;
  // eps/eps_bar < min p(k+1)/p(k), i.e. eps * p(k) < eps_bar * p(k+1).
  for (int k = 0; k + 1 < n; ++k)
    if (eps * dist.probs[k] >= eps_bar * dist.probs[k + 1]) return false;
  return true;
}

void for_each_canonical_partition(
    const PosteriorSystem& ps,
    const std::function<void(const Partition&, const std::vector<Rat>&)>& visit, int cap) {
  const int n = ps.num_symbols;
  if (n > cap) throw Error("alphabet size exceeds the brute-force cap");
  if (ps.arity != 2) throw Error("canonical partition sweep needs binary noise");

  Partition part;
  part.membership.resize(n);
  std::vector<Rat> levels(n, Rat(0));
  std::vector<int> fill(2, 0);

  const std::uint64_t total = std::uint64_t(1) << (n - 1);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    part.membership[0] = true;
    for (int k = 1; k < n; ++k) part.membership[k] = (mask >> (k - 1)) & 1u;

    for (int k = 0; k < n; ++k) levels[k] = 0;
    fill[0] = fill[1] = 0;
    for (int idx : ps.sigma_down) {
      const PosteriorTerm& t = ps.terms[idx];
      const int y = (part.cls(t.symbol) + t.noise_index) % 2;
      levels[fill[y]++] += t.value;
    }
    visit(part, levels);
  }
}

BruteForceResult brute_force_optimal(const Distribution& dist, const NoiseModel& noise,
                                     const MomentFunction& f, int cap, int threads) {
  if (f.size() != dist.size()) throw Error("moment function length must equal N");
  PosteriorSystem ps = build_posterior_system(dist, noise);
  const int n = ps.num_symbols;

  auto sweep = [&](std::uint64_t lo, std::uint64_t hi) {
    BruteForceResult local;
    Partition part;
    part.membership.resize(n);
    std::vector<Rat> levels(n, Rat(0));
    Rat value;
    bool first = true;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      part.membership[0] = true;
      for (int k = 1; k < n; ++k) part.membership[k] = (mask >> (k - 1)) & 1u;
      for (int k = 0; k < n; ++k) levels[k] = 0;
      int fill[2] = {0, 0};
      for (int idx : ps.sigma_down) {
        const PosteriorTerm& t = ps.terms[idx];
        const int y = (part.cls(t.symbol) + t.noise_index) % 2;
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

  if (n > cap) throw Error("alphabet size exceeds the brute-force cap");
  const std::uint64_t total = std::uint64_t(1) << (n - 1);
  if (threads <= 1 || total < 1024) return sweep(0, total);

  const int shards = std::min<std::uint64_t>(threads, 64);
  std::vector<std::future<BruteForceResult>> futures;
  for (int s = 0; s < shards; ++s) {
    std::uint64_t lo = total * s / shards, hi = total * (s + 1) / shards;
    futures.push_back(std::async(std::launch::async, sweep, lo, hi));
  }
  BruteForceResult best;
  bool first = true;
  for (auto& fut : futures) {
    BruteForceResult local = fut.get();
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

std::vector<Partition> brute_force_simultaneous_argmins(const Distribution& dist,
                                                        const NoiseModel& noise, int cap) {
  PosteriorSystem ps = build_posterior_system(dist, noise);
  std::vector<Rat> target = unconstrained_level_sums(ps);
  std::vector<Partition> out;
  for_each_canonical_partition(
      ps,
      [&](const Partition& part, const std::vector<Rat>& levels) {
        if (levels == target) out.push_back(part);
      },
      cap);
  return out;
}

}  // namespace guesswork
