#ifndef GUESSWORK_MARY_HPP
#define GUESSWORK_MARY_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "guesswork/core.hpp"

namespace guesswork {

/// One constraint w_lhs - w_rhs != residue (mod modulus).
struct Disequation {
  int lhs = 0;
  int rhs = 0;
  int residue = 0;
  bool operator==(const Disequation&) const = default;
};

/// A system of difference disequations over Z_modulus. Vacuously true
/// constraints (lhs == rhs, residue != 0) are dropped at construction;
/// lhs == rhs with residue 0 is unsatisfiable and short-circuits the
/// whole system.
struct DmdSystem {
  int modulus = 3;
  int num_vars = 0;
  std::vector<Disequation> disequations;
  bool trivially_unsat = false;

  DmdSystem() = default;
  DmdSystem(int modulus, int num_vars);
  void add(int lhs, int rhs, int residue);
};

/// Assignment of each symbol to class (symbol index) mod M over the
/// internal descending order; the M-ary generalization of the zigzag.
MPartition mary_zigzag(int n, int m);

/// True iff every symbol's M posterior-siblings occupy the M sets in
/// cyclic succession: term (k, v) in set j implies term (k, v+1) in set
/// j+1 (mod M). `sets` lists term indices and must partition the terms.
bool is_cyclically_separating(const std::vector<std::vector<int>>& sets,
                              const PosteriorSystem& ps);

/// True iff every size-M sigma block hits all M posterior sets of the
/// partition.
bool mary_is_posterior_respecting(const MPartition& part, const Bijection& sigma,
                                  const PosteriorSystem& ps);

/// An abstract bijection: size-M blocks of (row, residue) tokens. Rows
/// play the role of symbols; no numeric values are attached. Every
/// (row, residue) pair with row < num_rows must appear in exactly one
/// block.
struct SigmaBlocks {
  int modulus = 3;
  int num_rows = 0;
  std::vector<std::vector<std::pair<int, int>>> blocks;
};

SigmaBlocks to_sigma_blocks(const Bijection& sigma, const PosteriorSystem& ps);

/// Translates a bijection into the difference-disequation system whose
/// solutions are exactly the class assignments of posterior-respecting
/// partitions: for tokens (n1, m1), (n2, m2) sharing a block with
/// n1 != n2, emit z_n1 - z_n2 != m2 - m1 (mod M). Duplicates are removed.
DmdSystem sigma_to_dmd(const SigmaBlocks& sigma);
DmdSystem sigma_to_dmd(const Bijection& sigma, const PosteriorSystem& ps);

/// Complete backtracking search. Variable 0 is pinned to residue 0
/// (difference constraints are invariant under a global shift);
/// candidates are tried lowest residue first, so the result is
/// deterministic. Returns the assignment or nullopt when unsatisfiable.
std::optional<std::vector<int>> solve_dmd(const DmdSystem& sys);

/// Wraps a satisfying assignment of sigma_to_dmd(sigma) as the partition
/// assigning symbol n to class z_n. Throws when the assignment does not
/// satisfy the system.
MPartition dmd_assignment_to_partition(const std::vector<int>& assignment, const Bijection& sigma,
                                       const PosteriorSystem& ps);

/// Not-All-Equal 3SAT instance; literals are DIMACS style signed 1-based
/// variable indices, exactly three per clause (repeats allowed).
struct NaeSatInstance {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Bookkeeping of the NAE-3SAT -> DMD reduction: indices of the common
/// variable s, the per-variable pair (w_i encodes x_i, w_hat_i encodes
/// its negation) and the per-clause helper variable. The truth decoding
/// is w_i - s = 1 for false, 2 for true.
struct NaeVarMap {
  int s = 0;
  std::vector<int> w;
  std::vector<int> w_hat;
  std::vector<int> clause_var;
};

/// The reduction itself; defined for modulus 3.
std::pair<DmdSystem, NaeVarMap> nae3sat_to_dmd(const NaeSatInstance& inst, int modulus = 3);

std::vector<bool> decode_nae_assignment(const std::vector<int>& z, const NaeVarMap& map,
                                        int modulus = 3);

bool nae_satisfies(const NaeSatInstance& inst, const std::vector<bool>& assignment);

/// Exhaustive NAE satisfiability oracle (2^n assignments).
std::optional<std::vector<bool>> nae_brute_force(const NaeSatInstance& inst, int cap = 20);

/// Result of embedding a DMD system into an abstract bijection:
/// `var_row[k]` is the sigma row carrying original variable k, so a
/// satisfying assignment of sigma_to_dmd(sigma) restricted to those rows
/// solves the original system.
struct DmdToSigmaResult {
  SigmaBlocks sigma;
  std::vector<int> var_row;
};

/// Builds an abstract bijection whose posterior-respecting partitions
/// correspond to solutions of the system (equisatisfiable by
/// construction). Variables occurring in d disequations get d-1
/// duplication gadgets chained in a fixed order. Defined for modulus 3.
DmdToSigmaResult dmd_to_sigma(const DmdSystem& sys);

/// The graph whose size-N independent sets are exactly the solutions of
/// the system: an M-clique per variable plus, per disequation (k, l, c),
/// edges between (k, c+m) and (l, m) for every m.
struct DmdGraph {
  int modulus = 3;
  int num_vars = 0;
  std::vector<std::pair<int, int>> edges;  // vertex id = var * modulus + residue

  int num_vertices() const { return num_vars * modulus; }
  int vertex(int var, int residue) const { return var * modulus + residue; }
};

DmdGraph dmd_to_graph(const DmdSystem& sys);

/// Exact independence number by exhaustive search over at most one
/// vertex per variable clique. Vertex count is capped (default 24).
int max_independent_set_bruteforce(const DmdGraph& graph, int cap = 24);

/// How operations that require distinct posterior terms behave on tied
/// instances: refuse, or proceed with the deterministic tie-break order.
enum class TiePolicy { Reject, TieBreak };

/// Decides whether the relaxation lower bound is attainable: solves the
/// DMD system of sigma-down and, on success, returns the induced
/// partition (which attains the unconstrained minimum for every
/// nondecreasing f). Returns nullopt when no posterior-respecting
/// partition for sigma-down exists.
std::optional<MPartition> unconstrained_achievable(const Distribution& dist,
                                                   const NoiseModel& noise,
                                                   TiePolicy policy = TiePolicy::Reject);

struct MaryBruteForceResult {
  Rat min_value;
  std::vector<MPartition> argmins;
};

/// Exhaustive minimum over all M^N class assignments.
MaryBruteForceResult mary_brute_force_optimal(const Distribution& dist, const NoiseModel& noise,
                                              const MomentFunction& f,
                                              std::uint64_t cap = 2'000'000, int threads = 1);

}  // namespace guesswork

#endif
