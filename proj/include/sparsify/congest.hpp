#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsify/graph.hpp"

namespace sparsify {

// Bit-exact message payload; `bit_count` is what the budget is charged.
struct Message {
  std::vector<uint8_t> data;
  int bit_count = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

class MessageWriter {
 public:
  MessageWriter& put(uint64_t value, int bits);
  // Width needed to encode values in [0, bound).
  static int width(uint64_t bound);
  Message finish() { return std::move(message_); }

 private:
  Message message_;
};

class MessageReader {
 public:
  explicit MessageReader(const Message& message) : message_(message) {}
  uint64_t get(int bits);
  bool exhausted() const { return cursor_ >= message_.bit_count; }

 private:
  const Message& message_;
  int cursor_ = 0;
};

struct LocalEdge {
  NodeId neighbor;
  EdgeId edge;
  Weight weight;
};

// Everything a node may know at start-up.
struct LocalView {
  NodeId id = 0;
  int node_count = 0;
  std::vector<LocalEdge> edges;
  uint64_t seed = 0;
};

using Inbox = std::map<NodeId, Message>;
using Outbox = std::map<NodeId, Message>;
using Output = std::vector<int64_t>;

struct NodeState {
  virtual ~NodeState() = default;
};

struct InitResult {
  std::unique_ptr<NodeState> state;
  std::optional<Output> halt;
};

struct StepResult {
  Outbox outbox;
  std::optional<Output> halt;
};

// Per-node state machine. Implementations must not share mutable state
// between nodes; the engine only guarantees a barrier between rounds.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual InitResult init(const LocalView& view) const = 0;
  virtual StepResult step(NodeState& state, int round,
                          const Inbox& inbox) const = 0;
};

struct RoundTrace {
  int rounds_used = 0;
  int max_message_bits = 0;
  std::vector<int64_t> messages_per_round;
  std::vector<std::optional<Output>> outputs;  // indexed by node
  // Set by run_on_cluster_graph; equal to rounds_used for plain runs.
  int logical_rounds = 0;
  int physical_rounds = 0;

  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(NodeId node, int round, int bits, int budget);
  NodeId node;
  int round;
  int bits;
};

class RoundTimeout : public std::runtime_error {
 public:
  explicit RoundTimeout(int max_rounds);
};

struct RunOptions {
  int budget_bits = 0;  // 0 selects default_budget_bits(n)
  int max_rounds = 1000;
  uint64_t seed = 0;
};

// ceil(64 * log2 n), at least 64.
int default_budget_bits(int node_count);

// Per-node random key for (seed, node, round).
uint64_t node_random(uint64_t seed, NodeId node, int round);

// Synchronous execution. Messages sent in round r are delivered at round
// r+1; nodes are stepped in id order but only see their own inbox.
RoundTrace run(const Graph& graph, const NodeProgram& program,
               const RunOptions& options);

// Runs `program` with each cluster of a partition acting as one node of the
// contracted graph. Each logical round is charged one convergecast, one
// exchange and one broadcast: 2 * max_radius + 1 physical rounds.
RoundTrace run_on_cluster_graph(const Graph& graph,
                                const Clustering& clustering,
                                const NodeProgram& program,
                                const RunOptions& options);

std::string trace_to_json(const RoundTrace& trace);

}  // namespace sparsify
