#include "guesswork/core.hpp"

#include <algorithm>
#include <numeric>

namespace guesswork {

Distribution Distribution::from_probs(std::vector<Rat> probs) {
  if (probs.empty()) throw Error("distribution must have at least one symbol");
  Rat total = 0;
  for (const Rat& p : probs) {
    if (p <= 0) throw Error("probabilities must be strictly positive");
    total += p;
  }
  if (total != 1) throw Error("probabilities must sum to exactly 1 (got " + to_fraction(total) + ")");

  std::vector<int> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return probs[a] > probs[b]; });

  Distribution dist;
  dist.user_order = order;
  dist.probs.reserve(probs.size());
  for (int idx : order) dist.probs.push_back(probs[idx]);
  return dist;
}

std::vector<Rat> NoiseModel::channel() const {
  switch (kind) {
    case NoiseKind::BinarySymmetric:
      return {Rat(1) - eps[0], eps[0]};
    case NoiseKind::MaryAdditive:
      return eps;
    case NoiseKind::BinaryAsymmetric:
      throw Error("asymmetric noise has no single additive channel; use the asym module");
  }
  throw Error("unreachable");
}

NoiseModel NoiseModel::bsc(const Rat& eps) {
  if (eps < 0 || eps > 1) throw Error("bsc epsilon must lie in [0, 1]");
  NoiseModel noise;
  noise.kind = NoiseKind::BinarySymmetric;
  if (eps > Rat(1, 2)) {
    noise.eps = {Rat(1) - eps};
    noise.answer_flipped = true;
  } else {
    noise.eps = {eps};
  }
  return noise;
}

NoiseModel NoiseModel::mary(std::vector<Rat> eps) {
  if (eps.size() < 2) throw Error("m-ary noise needs at least 2 entries");
  Rat total = 0;
  for (const Rat& e : eps) {
    if (e < 0 || e > 1) throw Error("noise entries must lie in [0, 1]");
    total += e;
  }
  if (total != 1) throw Error("m-ary noise entries must sum to exactly 1");
  NoiseModel noise;
  noise.kind = NoiseKind::MaryAdditive;
  noise.eps = std::move(eps);
  return noise;
}

NoiseModel NoiseModel::asymmetric(const Rat& eps, const Rat& delta) {
  if (eps < 0 || eps > 1 || delta < 0 || delta > 1)
    throw Error("asymmetric crossover probabilities must lie in [0, 1]");
  NoiseModel noise;
  noise.kind = NoiseKind::BinaryAsymmetric;
  noise.eps = {eps, delta};
  return noise;
}

MomentFunction MomentFunction::identity(int n) {
  MomentFunction f;
  f.values.reserve(n);
  for (int k = 1; k <= n; ++k) f.values.emplace_back(k);
  return f;
}

MomentFunction MomentFunction::from_values(std::vector<Rat> values) {
  if (values.empty()) throw Error("moment function table is empty");
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] < values[k - 1]) throw Error("moment function must be nondecreasing");
  MomentFunction f;
  f.values = std::move(values);
  return f;
}

bool term_precedes(const PosteriorTerm& a, const PosteriorTerm& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.symbol != b.symbol) return a.symbol < b.symbol;
  return a.noise_index < b.noise_index;
}

Partition Partition::complement() const {
  Partition result;
  result.membership.reserve(membership.size());
  for (bool m : membership) result.membership.push_back(!m);
  return result;
}

std::vector<int> Partition::members() const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k)
    if (membership[k]) out.push_back(k);
  return out;
}

Partition Partition::from_members(int n, const std::vector<int>& members) {
  Partition part;
  part.membership.assign(n, false);
  for (int k : members) {
    if (k < 0 || k >= n) throw Error("partition member out of range");
    part.membership[k] = true;
  }
  return part;
}

MPartition MPartition::from_partition(const Partition& part) {
  MPartition mp;
  mp.arity = 2;
  mp.assignment.reserve(part.size());
  for (int k = 0; k < part.size(); ++k) mp.assignment.push_back(part.cls(k));
  return mp;
}

Bijection sigma_down_bijection(const PosteriorSystem& ps) { return Bijection{ps.sigma_down}; }

PosteriorSystem build_posterior_system(const Distribution& dist, const NoiseModel& noise) {
  if (noise.kind == NoiseKind::BinaryAsymmetric)
    throw Error("posterior systems are defined for the symmetric noise models");
  const std::vector<Rat> channel = noise.channel();
  const int m = static_cast<int>(channel.size());
  const int n = dist.size();

  PosteriorSystem ps;
  ps.num_symbols = n;
  ps.arity = m;
  ps.terms.reserve(static_cast<std::size_t>(n) * m);
  for (int k = 0; k < n; ++k)
    for (int v = 0; v < m; ++v)
      ps.terms.push_back({k, v, channel[v] * dist.probs[k]});

  ps.sigma_down.resize(ps.terms.size());
  std::iota(ps.sigma_down.begin(), ps.sigma_down.end(), 0);
  std::sort(ps.sigma_down.begin(), ps.sigma_down.end(),
            [&](int a, int b) { return term_precedes(ps.terms[a], ps.terms[b]); });

  for (std::size_t i = 1; i < ps.sigma_down.size(); ++i)
    if (ps.terms[ps.sigma_down[i - 1]].value == ps.terms[ps.sigma_down[i]].value) {
      ps.has_ties = true;
      break;
    }
  return ps;
}

namespace {

void check_arity(const PosteriorSystem& ps, const std::vector<int>& classes) {
  if (static_cast<int>(classes.size()) != ps.num_symbols)
    throw Error("class assignment size does not match the number of symbols");
  for (int z : classes)
    if (z < 0 || z >= ps.arity) throw Error("class index out of range for the noise arity");
}

}  // namespace

std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps,
                                             const std::vector<int>& classes) {
  check_arity(ps, classes);
  std::vector<std::vector<int>> sets(ps.arity);
  for (auto& s : sets) s.reserve(ps.num_symbols);
  // Walking sigma-down keeps each set internally sorted.
  for (int idx : ps.sigma_down) {
    const PosteriorTerm& t = ps.terms[idx];
    sets[(classes[t.symbol] + t.noise_index) % ps.arity].push_back(idx);
  }
  return sets;
}

std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps, const Partition& part) {
  if (ps.arity != 2) throw Error("binary partition applied to non-binary noise");
  return posterior_sets(ps, MPartition::from_partition(part).assignment);
}

std::vector<std::vector<int>> posterior_sets(const PosteriorSystem& ps, const MPartition& part) {
  if (ps.arity != part.arity) throw Error("partition arity does not match the noise arity");
  return posterior_sets(ps, part.assignment);
}

std::vector<Rat> level_sums(const PosteriorSystem& ps, const std::vector<int>& classes) {
  check_arity(ps, classes);
  std::vector<Rat> levels(ps.num_symbols, Rat(0));
  std::vector<int> fill(ps.arity, 0);
  for (int idx : ps.sigma_down) {
    const PosteriorTerm& t = ps.terms[idx];
    const int y = (classes[t.symbol] + t.noise_index) % ps.arity;
    levels[fill[y]++] += t.value;
  }
  return levels;
}

Rat guesswork_moment(const PosteriorSystem& ps, const std::vector<int>& classes,
                     const MomentFunction& f) {
  if (f.size() != ps.num_symbols) throw Error("moment function length must equal N");
  std::vector<Rat> levels = level_sums(ps, classes);
  Rat total = 0;
  for (int k = 0; k < ps.num_symbols; ++k) total += f.values[k] * levels[k];
  return total;
}

Rat guesswork_moment(const Distribution& dist, const NoiseModel& noise, const Partition& part,
                     const MomentFunction& f) {
  if (part.size() != dist.size()) throw Error("partition size does not match the distribution");
  PosteriorSystem ps = build_posterior_system(dist, noise);
  if (ps.arity != 2) throw Error("binary partition applied to non-binary noise");
  return guesswork_moment(ps, MPartition::from_partition(part).assignment, f);
}

Rat guesswork_moment(const Distribution& dist, const NoiseModel& noise, const MPartition& part,
                     const MomentFunction& f) {
  if (part.size() != dist.size()) throw Error("partition size does not match the distribution");
  PosteriorSystem ps = build_posterior_system(dist, noise);
  if (ps.arity != part.arity) throw Error("partition arity does not match the noise arity");
  return guesswork_moment(ps, part.assignment, f);
}

std::vector<Rat> unconstrained_level_sums(const PosteriorSystem& ps) {
  std::vector<Rat> levels(ps.num_symbols, Rat(0));
  for (int i = 0; i < ps.total_terms(); ++i)
    levels[i / ps.arity] += ps.terms[ps.sigma_down[i]].value;
  return levels;
}

Rat unconstrained_minimum(const PosteriorSystem& ps, const MomentFunction& f) {
  if (f.size() != ps.num_symbols) throw Error("moment function length must equal N");
  std::vector<Rat> levels = unconstrained_level_sums(ps);
  Rat total = 0;
  for (int k = 0; k < ps.num_symbols; ++k) total += f.values[k] * levels[k];
  return total;
}

Rat unconstrained_minimum(const Distribution& dist, const NoiseModel& noise,
                          const MomentFunction& f) {
  return unconstrained_minimum(build_posterior_system(dist, noise), f);
}

}  // namespace guesswork
