#ifndef GUESSWORK_ASYM_HPP
#define GUESSWORK_ASYM_HPP

#include <utility>
#include <vector>

#include "guesswork/core.hpp"

namespace guesswork {

/// True iff eps*p(1) < (1-delta)*p(N) and delta*p(1) < (1-eps)*p(N),
/// the small-noise regime in which guessing the pointed set first is
/// optimal for the asymmetric binary channel.
bool check_small_noise(const Distribution& dist, const Rat& eps, const Rat& delta);

/// The per-rank guessing coefficients of a candidate size a = |A|:
/// c[k-1] = k + delta*(N-a) weights the k-th largest member of A,
/// c_bar[k-1] = k + eps*a the k-th largest member of the complement.
struct AsymCoefficients {
  int a = 0;
  std::vector<Rat> c;
  std::vector<Rat> c_bar;
};

AsymCoefficients asym_coefficients(const Distribution& dist, const Rat& eps, const Rat& delta,
                                   int a);

/// Expected guessing time (f(k) = k) of the guess-pointed-set-first
/// strategy under the asymmetric channel. Requires the small-noise
/// condition, which is what makes that strategy optimal.
Rat asym_guesswork(const Distribution& dist, const Rat& eps, const Rat& delta,
                   const Partition& part);

/// Optimal partition for the expected guessing time: for each candidate
/// size a the N coefficients are merged ascending and paired against the
/// probabilities in descending order; a symbol joins A iff its
/// coefficient came from the c-list. Coefficient ties prefer the c-list;
/// value ties across sizes prefer the smaller a, then lexicographic
/// membership.
std::pair<Partition, Rat> asym_optimal_partition(const Distribution& dist, const Rat& eps,
                                                 const Rat& delta);

struct AsymBruteForceResult {
  Rat min_value;
  std::vector<Partition> argmins;  // ascending bitmask order over all subsets
};

/// Exhaustive minimum of asym_guesswork over all 2^N subsets (A and its
/// complement are inequivalent here).
AsymBruteForceResult asym_brute_force(const Distribution& dist, const Rat& eps, const Rat& delta,
                                      int cap = 20);

}  // namespace guesswork

#endif
