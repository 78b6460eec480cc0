#ifndef GUESSWORK_BINARY_HPP
#define GUESSWORK_BINARY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "guesswork/core.hpp"

namespace guesswork {

/// The graph over the 2N posterior terms with an edge between every pair
/// of posterior-siblings (same symbol) and every pair of sigma-siblings
/// (same block of the bijection). Every component is an isolated edge or
/// an even cycle, and the number of components governs how many
/// partitions respect sigma.
struct SiblingGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> posterior_edges;
  std::vector<std::pair<int, int>> sigma_edges;
  std::vector<int> component_of;  // vertex (term index) -> component id, 0..c-1
  int component_count = 0;

  std::vector<std::vector<int>> components() const;
};

/// A = {k : k odd} over the internal descending order.
Partition zigzag_partition(int n);

SiblingGraph sibling_graph(const PosteriorSystem& ps, const Bijection& sigma);

/// Materializes the partitions corresponding to the 2^c proper
/// 2-colorings of the sibling graph, via A = {k : term (k,0) in color
/// class 1}. Every returned partition is posterior-respecting with the
/// bijection the graph was built from. The listing is capped at `limit`.
std::vector<Partition> two_coloring_partitions(const SiblingGraph& graph,
                                               const PosteriorSystem& ps, std::size_t limit);

/// All partitions attaining the unconstrained minimum simultaneously for
/// every nondecreasing f (binary symmetric noise, tie-free instances).
struct OptimalPartitions {
  bool certified = false;       // false when ties prevented counting
  int component_count = 0;      // c
  mpz_class count = 0;          // 2^c, meaningful only when certified
  std::vector<Partition> partitions;  // capped by list_limit
  std::vector<Rat> level_sums;  // the attained optimum, per guess level
};

/// Two-colors the sibling graph of sigma-down both ways per component and
/// reconstructs each coloring's partition. On ties the count is not
/// certified and only the zigzag partition (still optimal) is returned.
OptimalPartitions enumerate_optimal_partitions(const Distribution& dist, const NoiseModel& noise,
                                               std::size_t list_limit = 1024);

/// True iff no sigma-sibling pair lies inside one posterior set of the
/// partition.
bool is_posterior_respecting(const Partition& part, const Bijection& sigma,
                             const PosteriorSystem& ps);

/// True iff within every posterior set, sigma lists the terms in
/// decreasing order (under the tie-breaking total order).
bool is_order_preserving(const Partition& part, const Bijection& sigma,
                         const PosteriorSystem& ps);

/// True iff every sigma block equals the corresponding pair of k-th
/// largest elements across the two posterior sets. Equivalent to
/// posterior-respecting plus order-preserving.
bool is_induced(const Partition& part, const Bijection& sigma, const PosteriorSystem& ps);

/// True iff the sibling graph of sigma-down has a single connected
/// component, i.e. the zigzag partition is the unique optimum up to
/// complement. Throws on ties.
bool is_zigzag_unique(const Distribution& dist, const NoiseModel& noise);

/// The geometric-distribution style sufficient condition for uniqueness:
/// max p(k+2)/p(k) < eps/(1-eps) < min p(k+1)/p(k), evaluated exactly
/// with cross-multiplications. Requires N >= 3 and binary symmetric noise.
bool check_remark3_condition(const Distribution& dist, const NoiseModel& noise);

struct BruteForceResult {
  Rat min_value;
  std::vector<Partition> argmins;  // canonical (symbol 1 inside), bitmask order
};

/// Exhaustive minimum of guesswork_moment over all 2^(N-1) canonical
/// partitions. Deterministic output for any thread count.
BruteForceResult brute_force_optimal(const Distribution& dist, const NoiseModel& noise,
                                     const MomentFunction& f, int cap = 20, int threads = 1);

/// The canonical partitions whose per-level sums equal the unconstrained
/// optimum, i.e. the partitions that are optimal for every nondecreasing
/// f at once.
std::vector<Partition> brute_force_simultaneous_argmins(const Distribution& dist,
                                                        const NoiseModel& noise, int cap = 20);

/// Visits every canonical partition together with its level sums, in
/// ascending bitmask order. The workhorse behind the brute-force
/// searches; public so the test suites can fold several checks into one
/// sweep.
void for_each_canonical_partition(
    const PosteriorSystem& ps,
    const std::function<void(const Partition&, const std::vector<Rat>&)>& visit, int cap = 20);

}  // namespace guesswork

#endif
