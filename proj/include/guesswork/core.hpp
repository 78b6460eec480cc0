#ifndef GUESSWORK_CORE_HPP
#define GUESSWORK_CORE_HPP

#include <optional>
#include <string>
#include <vector>

#include "guesswork/rational.hpp"

namespace guesswork {

/// A probability distribution held in internal canonical order:
/// probs[0] >= probs[1] >= ... > 0, summing to exactly 1. `user_order[i]`
/// is the 0-based position the i-th internal symbol had in the caller's
/// input, so results can be reported in the caller's own labels.
struct Distribution {
  std::vector<Rat> probs;
  std::vector<int> user_order;

  int size() const { return static_cast<int>(probs.size()); }

  /// Validates (strictly positive, sum exactly 1), sorts descending
  /// (stable, so ties keep the caller's relative order) and records the
  /// label permutation.
  static Distribution from_probs(std::vector<Rat> probs);

  /// Maps an internal symbol index to the caller's 1-based label.
  int label_of(int internal_symbol) const { return user_order[internal_symbol] + 1; }
};

enum class NoiseKind { BinarySymmetric, MaryAdditive, BinaryAsymmetric };

/// Carole's lying model. Binary symmetric stores epsilon normalized to
/// [0, 1/2]; if the input exceeded 1/2 the answer labels are flipped and
/// `answer_flipped` records that. M-ary additive stores the full noise
/// distribution eps[0..M-1]. Binary asymmetric stores {eps, delta}, the
/// 0->1 and 1->0 crossover probabilities.
struct NoiseModel {
  NoiseKind kind;
  std::vector<Rat> eps;
  bool answer_flipped = false;

  int arity() const {
    return kind == NoiseKind::MaryAdditive ? static_cast<int>(eps.size()) : 2;
  }

  /// Distribution of the additive noise V: index v holds P(V = v).
  /// Only meaningful for the symmetric kinds.
  std::vector<Rat> channel() const;

  static NoiseModel bsc(const Rat& eps);
  static NoiseModel mary(std::vector<Rat> eps);
  static NoiseModel asymmetric(const Rat& eps, const Rat& delta);
};

/// A nondecreasing moment function f(1..N) given as an explicit table.
struct MomentFunction {
  std::vector<Rat> values;

  static MomentFunction identity(int n);
  static MomentFunction from_values(std::vector<Rat> values);

  const Rat& operator()(int k) const { return values[k - 1]; }  // 1-based
  int size() const { return static_cast<int>(values.size()); }
};

/// One posterior term eps_v * p(k), tagged with its factors.
struct PosteriorTerm {
  int symbol;       // internal symbol index, 0-based
  int noise_index;  // 0-based noise value v
  Rat value;
};

/// Total order on posterior terms: value descending, then symbol
/// ascending, then noise index ascending. Returns true when `a` comes
/// strictly before `b`. This makes every construction downstream
/// well-defined even when term values tie.
bool term_precedes(const PosteriorTerm& a, const PosteriorTerm& b);

/// The multiset of all M*N posterior terms of an instance, together with
/// the descending bijection sigma-down over them.
struct PosteriorSystem {
  int num_symbols = 0;
  int arity = 0;                    // M
  std::vector<PosteriorTerm> terms;  // laid out as symbol * M + noise_index
  std::vector<int> sigma_down;       // term indices, descending total order
  bool has_ties = false;

  int term_index(int symbol, int noise_index) const { return symbol * arity + noise_index; }
  const PosteriorTerm& term(int idx) const { return terms[idx]; }
  int total_terms() const { return static_cast<int>(terms.size()); }
};

/// A binary question: membership[k] is true when internal symbol k is in
/// A. The canonical representative of the {A, complement} pair is the one
/// containing symbol 1.
struct Partition {
  std::vector<bool> membership;

  int size() const { return static_cast<int>(membership.size()); }
  bool is_canonical() const { return !membership.empty() && membership[0]; }
  Partition complement() const;
  Partition canonical() const { return is_canonical() || membership.empty() ? *this : complement(); }

  /// Answer class of a symbol: 1 inside A, 0 outside.
  int cls(int symbol) const { return membership[symbol] ? 1 : 0; }

  /// 0-based internal indices of the members of A.
  std::vector<int> members() const;

  bool operator==(const Partition& other) const { return membership == other.membership; }

  static Partition from_members(int n, const std::vector<int>& members);
};

/// An M-ary question: assignment[k] in {0..M-1} is the class of internal
/// symbol k. Blocks may be empty.
struct MPartition {
  int arity = 2;
  std::vector<int> assignment;

  int size() const { return static_cast<int>(assignment.size()); }
  int cls(int symbol) const { return assignment[symbol]; }
  bool operator==(const MPartition& other) const {
    return arity == other.arity && assignment == other.assignment;
  }

  static MPartition from_partition(const Partition& part);
};

/// A bijection sigma over the posterior terms, stored as the ordered list
/// of term indices. Consecutive blocks of size M are the sigma-siblings.
struct Bijection {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
};

/// The descending bijection sigma-down of a posterior system.
Bijection sigma_down_bijection(const PosteriorSystem& ps);

/// Builds all M*N posterior terms for a symmetric noise model (binary
/// symmetric or M-ary additive) and sorts them by the total order.
PosteriorSystem build_posterior_system(const Distribution& dist, const NoiseModel& noise);

/// Splits the posterior terms into the M posterior sets induced by the
/// given class assignment; each returned list holds term indices sorted
/// descending (the bijections pi^y). Term (k, v) lands in set
/// (class(k) + v) mod M.
std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps,
                                             const std::vector<int>& classes);
std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps, const Partition& part);
std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps, const MPartition& part);

/// Per-guess probability masses of a question: level_sums[k-1] is the
/// probability that the game ends on guess k, i.e. the sum over y of the
/// k-th largest term of posterior set y.
std::vector<Rat> level_sums(const PosteriorSystem& ps, const std::vector<int>& classes);

/// Expected value of f(guessing time) under optimal guessing given the
/// noisy answer to the question.
Rat guesswork_moment(const Distribution& dist, const NoiseModel& noise, const Partition& part,
                     const MomentFunction& f);
Rat guesswork_moment(const Distribution& dist, const NoiseModel& noise, const MPartition& part,
                     const MomentFunction& f);
Rat guesswork_moment(const PosteriorSystem& ps, const std::vector<int>& classes,
                     const MomentFunction& f);

/// The relaxation lower bound: the sorted posterior terms are cut into
/// consecutive blocks of size M and block k is weighted by f(k). No
/// partition can do better, and in the binary case some partition always
/// attains it.
Rat unconstrained_minimum(const Distribution& dist, const NoiseModel& noise,
                          const MomentFunction& f);
Rat unconstrained_minimum(const PosteriorSystem& ps, const MomentFunction& f);

/// Block sums of sigma-down: entry k-1 is sigma(Mk-M+1) + ... + sigma(Mk).
/// unconstrained_minimum is the dot product of this with f.
std::vector<Rat> unconstrained_level_sums(const PosteriorSystem& ps);

}  // namespace guesswork

#endif
