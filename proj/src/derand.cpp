#include "sparsify/derand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sparsify {

double UtilityContext::ignore_threshold() const {
  return std::log(static_cast<double>(g)) / p.get_d();
}

double UtilityContext::high_degree_threshold() const {
  return 10.0 * std::log(static_cast<double>(std::max(2, node_count))) /
         p.get_d();
}

namespace {

mpq_class power(const mpq_class& base, int exponent) {
  mpq_class out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// ln(g)/g as an exact rational image of the double value.
mpq_class log_ratio(int g) {
  return mpq_class(std::log(static_cast<double>(g))) / g;
}

}  // namespace

mpq_class UtilityContext::cluster_coefficient() const {
  mpq_class coef = mpq_class(iota) / power(p, iteration + 1);
  if (!weighted) coef *= log_ratio(g);
  return coef;
}

mpq_class UtilityContext::target() const {
  mpq_class t = mpq_class(iota) * node_count / p;
  if (!weighted) t *= log_ratio(g);
  return t;
}

mpq_class UtilityContext::high_degree_penalty() const {
  return power(mpq_class(node_count), 5);
}

mpq_class UtilityContext::dyadic(double p) {
  long units = std::lround(p * 4096.0);
  units = std::max(1L, std::min(4095L, units));
  mpq_class rounded(units, 4096);
  rounded.canonicalize();
  return rounded;
}

UtilityContext UtilityContext::make(const BSState& state, double p,
                                    int iteration, int g, int iota) {
  UtilityContext ctx;
  ctx.iteration = iteration;
  ctx.p = dyadic(p);
  ctx.weighted = state.use_weights;
  ctx.iota = iota;
  ctx.g = g;
  ctx.node_count = state.graph->node_count();
  return ctx;
}

PartialAssignment PartialAssignment::from_samples(const SampleVector& samples) {
  PartialAssignment out(static_cast<int>(samples.size()));
  for (size_t c = 0; c < samples.size(); ++c) {
    out.fix(static_cast<int>(c), samples[c] != 0);
  }
  return out;
}

void PartialAssignment::fix(int c, bool value) {
  if (bits_[c] != Bit::kUnset) {
    throw std::logic_error("bit " + std::to_string(c) + " already fixed");
  }
  bits_[c] = value ? Bit::kOne : Bit::kZero;
}

bool PartialAssignment::complete() const {
  for (Bit b : bits_) {
    if (b == Bit::kUnset) return false;
  }
  return true;
}

SampleVector PartialAssignment::samples() const {
  if (!complete()) throw std::logic_error("assignment is incomplete");
  SampleVector out(bits_.size());
  for (size_t c = 0; c < bits_.size(); ++c) out[c] = bits_[c] == Bit::kOne;
  return out;
}

namespace {

// Per-node data that does not depend on the bits.
struct NodeTerms {
  NodeId node;
  int own;
  std::vector<int> clusters;  // in decision order
  std::vector<int> lighter;   // #{j < s : w_j < w_s}
  bool ignored = false;       // unweighted and d <= tau
  bool high_degree = false;   // d >= xi
};

NodeTerms node_terms(const BSState& state, const UtilityContext& ctx,
                     NodeId v) {
  NodeTerms t;
  t.node = v;
  t.own = state.clustering.cluster_of(v);
  const std::vector<AdjacentCluster> adjacent = adjacent_clusters(state, v);
  int first_of_weight = 0;
  for (size_t s = 0; s < adjacent.size(); ++s) {
    if (s > 0 && adjacent[s].weight != adjacent[s - 1].weight) {
      first_of_weight = static_cast<int>(s);
    }
    t.clusters.push_back(adjacent[s].cluster);
    t.lighter.push_back(first_of_weight);
  }
  const double d = static_cast<double>(adjacent.size());
  t.ignored = !ctx.weighted && d <= ctx.ignore_threshold();
  t.high_degree = d >= ctx.high_degree_threshold();
  return t;
}

struct Expectation {
  mpq_class edges;      // E[b_v]
  mpq_class high_death; // E[h_v]
};

class BitProbabilities {
 public:
  BitProbabilities(const UtilityContext& ctx, const PartialAssignment& partial)
      : q_(ctx.bit_probability()), partial_(partial) {}

  // Probability that cluster c is sampled: 0, 1 or p/4.
  const mpq_class& operator()(int c) const {
    switch (partial_.get(c)) {
      case Bit::kZero: return zero_;
      case Bit::kOne: return one_;
      default: return q_;
    }
  }

 private:
  mpq_class q_;
  mpq_class zero_ = 0;
  mpq_class one_ = 1;
  const PartialAssignment& partial_;
};

Expectation expect(const NodeTerms& t, const BitProbabilities& q) {
  Expectation e;
  const mpq_class& own = q(t.own);
  if (own == 1) return e;
  mpq_class none = 1;  // no sampled cluster among positions before s
  mpq_class edges = 0;
  for (size_t s = 0; s < t.clusters.size() && none != 0; ++s) {
    if (t.clusters[s] == t.own) continue;  // unsampled on this branch
    const mpq_class& qs = q(t.clusters[s]);
    if (qs != 0) {
      edges += none * qs * (t.lighter[s] + 1);
      none *= 1 - qs;
    }
  }
  if (none != 0) edges += none * static_cast<long>(t.clusters.size());
  const mpq_class stay = 1 - own;
  if (!t.ignored) e.edges = stay * edges;
  if (t.high_degree) e.high_death = stay * none;
  return e;
}

mpq_class cluster_term(const UtilityContext& ctx, const BitProbabilities& q,
                       int cluster_count) {
  mpq_class sum = 0;
  for (int c = 0; c < cluster_count; ++c) sum += q(c);
  return ctx.cluster_coefficient() * sum;
}

void check_sizes(const BSState& state, const PartialAssignment& partial) {
  if (partial.size() != state.cluster_count()) {
    throw std::invalid_argument("assignment length does not match cluster "
                                "count");
  }
}

}  // namespace

mpq_class node_contribution(const BSState& state, const UtilityContext& ctx,
                            const PartialAssignment& partial, NodeId v) {
  check_sizes(state, partial);
  if (!state.alive_node[v]) return 0;
  const BitProbabilities q(ctx, partial);
  const Expectation e = expect(node_terms(state, ctx, v), q);
  return e.edges + ctx.high_degree_penalty() * e.high_death;
}

mpq_class conditional_expectation(const BSState& state,
                                  const UtilityContext& ctx,
                                  const PartialAssignment& partial) {
  check_sizes(state, partial);
  const BitProbabilities q(ctx, partial);
  mpq_class total = cluster_term(ctx, q, state.cluster_count());
  const mpq_class penalty = ctx.high_degree_penalty();
  for (NodeId v = 0; v < state.graph->node_count(); ++v) {
    if (!state.alive_node[v]) continue;
    const Expectation e = expect(node_terms(state, ctx, v), q);
    total += e.edges + penalty * e.high_death;
  }
  return total;
}

mpq_class evaluate_utility(const BSState& state, const UtilityContext& ctx,
                           const SampleVector& samples) {
  return conditional_expectation(state, ctx,
                                 PartialAssignment::from_samples(samples));
}

SampleVector fix_bits(const BSState& state, const UtilityContext& ctx,
                      FixReport* report) {
  const int clusters = state.cluster_count();
  const mpq_class penalty = ctx.high_degree_penalty();

  std::vector<NodeTerms> terms;
  for (NodeId v = 0; v < state.graph->node_count(); ++v) {
    if (!state.alive_node[v]) continue;
    terms.push_back(node_terms(state, ctx, v));
  }
  // Nodes whose contribution depends on the bit of each cluster.
  std::vector<std::vector<int>> affected(clusters);
  for (size_t i = 0; i < terms.size(); ++i) {
    const std::vector<int>& listed = terms[i].clusters;
    if (std::find(listed.begin(), listed.end(), terms[i].own) == listed.end()) {
      affected[terms[i].own].push_back(static_cast<int>(i));
    }
    for (int c : listed) affected[c].push_back(static_cast<int>(i));
  }

  PartialAssignment partial(clusters);
  const BitProbabilities q(ctx, partial);
  std::vector<mpq_class> contribution(terms.size());
  mpq_class nodes_total = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    const Expectation e = expect(terms[i], q);
    contribution[i] = e.edges + penalty * e.high_death;
    nodes_total += contribution[i];
  }
  const mpq_class coef = ctx.cluster_coefficient();
  mpq_class sampled_mass = ctx.bit_probability() * clusters;
  mpq_class current = coef * sampled_mass + nodes_total;
  const mpq_class initial = current;
  const mpq_class target = ctx.target();
  if (initial > target) {
    throw ConfigurationError(
        "initial expected utility " + std::to_string(initial.get_d()) +
        " exceeds target " + std::to_string(target.get_d()) +
        " at iteration " + std::to_string(ctx.iteration) +
        "; raise iota (currently " + std::to_string(ctx.iota) + ")");
  }

  // Each candidate value is scored on a scratch copy; only nodes touching
  // cluster c change their contribution.
  for (int c = 0; c < clusters; ++c) {
    mpq_class best;
    bool best_value = false;
    std::vector<mpq_class> best_terms;
    for (int value = 0; value <= 1; ++value) {
      PartialAssignment trial = partial;
      trial.fix(c, value == 1);
      const BitProbabilities tq(ctx, trial);
      std::vector<mpq_class> updated;
      updated.reserve(affected[c].size());
      mpq_class total = nodes_total;
      for (int i : affected[c]) {
        // Listed at most once per cluster.
        const Expectation e = expect(terms[i], tq);
        updated.push_back(e.edges + penalty * e.high_death);
        total += updated.back() - contribution[i];
      }
      const mpq_class mass = sampled_mass - ctx.bit_probability() + value;
      const mpq_class candidate = coef * mass + total;
      if (value == 0 || candidate < best) {
        best = candidate;
        best_value = value == 1;
        best_terms = std::move(updated);
      }
    }
    if (best > current) {
      throw std::logic_error("conditional expectation increased at cluster " +
                             std::to_string(c));
    }
    partial.fix(c, best_value);
    for (size_t j = 0; j < affected[c].size(); ++j) {
      const int i = affected[c][j];
      nodes_total += best_terms[j] - contribution[i];
      contribution[i] = best_terms[j];
    }
    sampled_mass += (best_value ? 1 : 0) - ctx.bit_probability();
    current = best;
  }

  const SampleVector samples = partial.samples();
  if (current > initial) {
    throw std::logic_error("final utility above initial expectation");
  }
  if (report) {
    const BitProbabilities fq(ctx, partial);
    report->initial_expectation = initial;
    report->final_utility = current;
    report->target = target;
    report->sampled_clusters = 0;
    for (char s : samples) report->sampled_clusters += s ? 1 : 0;
    report->edges_budgeted = 0;
    report->high_degree_deaths = 0;
    for (const NodeTerms& t : terms) {
      const Expectation e = expect(t, fq);
      report->edges_budgeted += e.edges.get_num().get_si();
      report->high_degree_deaths += e.high_death.get_num().get_si();
    }
  }
  return samples;
}

namespace {

int64_t cluster_bound(int n, const mpq_class& p, int iteration) {
  mpq_class bound = mpq_class(n) * power(p, iteration);
  mpz_class floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), bound.get_num_mpz_t(),
             bound.get_den_mpz_t());
  return floor_value.get_si();
}

}  // namespace

DeterministicSpannerResult deterministic_spanner_run(const Graph& graph, int k,
                                                     bool weighted, int iota) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  BSState state = BSState::initial(graph, weighted);
  DeterministicSpannerResult result;
  const double p = bs_probability(graph.node_count(), k);
  for (int i = 1; i <= k; ++i) {
    DeterministicIteration record;
    SampleVector samples(state.cluster_count(), 0);
    if (i < k) {
      const UtilityContext ctx = UtilityContext::make(state, p, i, k, iota);
      samples = fix_bits(state, ctx, &record.fix);
      record.cluster_bound = cluster_bound(graph.node_count(), ctx.p, i);
      if (record.fix.sampled_clusters > record.cluster_bound ||
          record.fix.high_degree_deaths != 0) {
        throw std::logic_error("iteration " + std::to_string(i) +
                               " violates its deterministic budget");
      }
    }
    advance(state, samples, &record.stats);
    result.iterations.push_back(std::move(record));
  }
  result.spanner = std::move(state.spanner);
  result.death_iteration = std::move(state.death_iteration);
  return result;
}

EdgeSet deterministic_spanner(const Graph& graph, int k, bool weighted,
                              int iota) {
  return deterministic_spanner_run(graph, k, weighted, iota).spanner;
}

Sampler deterministic_sampler(double p, int g, int iota,
                              std::vector<FixReport>* reports) {
  return [p, g, iota, reports](const BSState& state) {
    if (p <= 0.0) return SampleVector(state.cluster_count(), 0);
    const UtilityContext ctx =
        UtilityContext::make(state, p, state.iteration, g, iota);
    FixReport report;
    SampleVector samples = fix_bits(state, ctx, &report);
    if (reports) reports->push_back(report);
    return samples;
  };
}

}  // namespace sparsify
