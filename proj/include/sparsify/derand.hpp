#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "sparsify/baswana_sen.hpp"

namespace sparsify {

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters of the utility function for one iteration. Cluster bits are
// fixed against independent Bernoulli(p/4) draws.
struct UtilityContext {
  int iteration = 1;      // position within the current run of iterations
  mpq_class p;            // sampling probability, dyadic
  bool weighted = true;
  int iota = 64;
  int g = 2;              // iteration count of the run (unweighted objective)
  int node_count = 0;     // n of the graph the iterations run on

  mpq_class bit_probability() const { return p / 4; }
  double ignore_threshold() const;     // tau = ln(g)/p
  double high_degree_threshold() const;  // xi = 10 ln(n)/p
  mpq_class cluster_coefficient() const;
  mpq_class target() const;
  mpq_class high_degree_penalty() const;  // n^5

  // p rounded to a multiple of 1/4096, at least 1/4096.
  static mpq_class dyadic(double p);
  static UtilityContext make(const BSState& state, double p, int iteration,
                             int g, int iota = 64);
};

enum class Bit : signed char { kUnset = -1, kZero = 0, kOne = 1 };

// Tri-state per cluster; a fixed bit never reverts.
class PartialAssignment {
 public:
  explicit PartialAssignment(int cluster_count)
      : bits_(cluster_count, Bit::kUnset) {}
  static PartialAssignment from_samples(const SampleVector& samples);

  int size() const { return static_cast<int>(bits_.size()); }
  Bit get(int c) const { return bits_[c]; }
  void fix(int c, bool value);
  bool complete() const;
  SampleVector samples() const;  // requires complete()

 private:
  std::vector<Bit> bits_;
};

// Exact E[U | fixed bits].
mpq_class conditional_expectation(const BSState& state,
                                  const UtilityContext& ctx,
                                  const PartialAssignment& partial);

// U for a complete assignment.
mpq_class evaluate_utility(const BSState& state, const UtilityContext& ctx,
                           const SampleVector& samples);

// Contribution of one alive node (b_v + n^5 h_v) in expectation.
mpq_class node_contribution(const BSState& state, const UtilityContext& ctx,
                            const PartialAssignment& partial, NodeId v);

struct FixReport {
  mpq_class initial_expectation;
  mpq_class final_utility;
  mpq_class target;
  int sampled_clusters = 0;
  int64_t edges_budgeted = 0;  // sum of b_v under the chosen assignment
  int high_degree_deaths = 0;
};

// Greedy conditional-expectation fixing in ascending cluster id. Throws
// ConfigurationError when the initial expectation is not below the target,
// and std::logic_error if the expectation ever increases.
SampleVector fix_bits(const BSState& state, const UtilityContext& ctx,
                      FixReport* report = nullptr);

struct DeterministicIteration {
  IterationStats stats;
  FixReport fix;
  int64_t cluster_bound = 0;  // floor(n p^i)
};

struct DeterministicSpannerResult {
  EdgeSet spanner;
  std::vector<int> death_iteration;
  std::vector<DeterministicIteration> iterations;
};

// Baswana–Sen with fix_bits in place of sampling; g is taken as k.
DeterministicSpannerResult deterministic_spanner_run(const Graph& graph, int k,
                                                     bool weighted = true,
                                                     int iota = 64);
EdgeSet deterministic_spanner(const Graph& graph, int k, bool weighted = true,
                              int iota = 64);

// Sampler that fixes bits for g iterations at probability p; per-iteration
// reports are appended to `reports` when given.
Sampler deterministic_sampler(double p, int g, int iota = 64,
                              std::vector<FixReport>* reports = nullptr);

}  // namespace sparsify
