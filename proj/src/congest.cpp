#include "sparsify/congest.hpp"

#include <cmath>

#include "json.hpp"
#include "sparsify/random.hpp"

namespace sparsify {

MessageWriter& MessageWriter::put(uint64_t value, int bits) {
  if (bits < 0 || bits > 64) throw std::invalid_argument("bad field width");
  if (bits < 64 && (value >> bits) != 0) {
    throw std::invalid_argument("value does not fit field width");
  }
  for (int b = 0; b < bits; ++b) {
    const int pos = message_.bit_count + b;
    if (pos / 8 >= static_cast<int>(message_.data.size())) {
      message_.data.push_back(0);
    }
    if ((value >> b) & 1U) message_.data[pos / 8] |= uint8_t{1} << (pos % 8);
  }
  message_.bit_count += bits;
  return *this;
}

int MessageWriter::width(uint64_t bound) {
  int bits = 1;
  while (bits < 64 && (uint64_t{1} << bits) < bound) ++bits;
  return bits;
}

uint64_t MessageReader::get(int bits) {
  if (cursor_ + bits > message_.bit_count) {
    throw std::out_of_range("read past end of message");
  }
  uint64_t value = 0;
  for (int b = 0; b < bits; ++b) {
    const int pos = cursor_ + b;
    if ((message_.data[pos / 8] >> (pos % 8)) & 1U) value |= uint64_t{1} << b;
  }
  cursor_ += bits;
  return value;
}

BudgetViolation::BudgetViolation(NodeId node_id, int round_number,
                                 int message_bits, int budget)
    : std::runtime_error("budget violation: node " + std::to_string(node_id) +
                         " sent " + std::to_string(message_bits) +
                         " bits in round " + std::to_string(round_number) +
                         " (budget " + std::to_string(budget) + ")"),
      node(node_id),
      round(round_number),
      bits(message_bits) {}

RoundTimeout::RoundTimeout(int max_rounds)
    : std::runtime_error("timeout: nodes still running after " +
                         std::to_string(max_rounds) + " rounds") {}

int default_budget_bits(int node_count) {
  if (node_count < 2) return 64;
  return std::max(64, static_cast<int>(std::ceil(64.0 * std::log2(node_count))));
}

uint64_t node_random(uint64_t seed, NodeId node, int round) {
  return derive_seed(seed, {static_cast<uint64_t>(node),
                            static_cast<uint64_t>(round)});
}

RoundTrace run(const Graph& graph, const NodeProgram& program,
               const RunOptions& options) {
  const int n = graph.node_count();
  const int budget =
      options.budget_bits > 0 ? options.budget_bits : default_budget_bits(n);
  RoundTrace trace;
  trace.outputs.resize(n);
  std::vector<std::unique_ptr<NodeState>> states(n);
  std::vector<char> halted(n, 0);
  int running = 0;
  for (NodeId v = 0; v < n; ++v) {
    LocalView view;
    view.id = v;
    view.node_count = n;
    view.seed = options.seed;
    for (const Incidence& inc : graph.neighbors(v)) {
      view.edges.push_back(
          {inc.neighbor, inc.edge, graph.edge(inc.edge).weight});
    }
    InitResult init = program.init(view);
    states[v] = std::move(init.state);
    if (init.halt) {
      trace.outputs[v] = std::move(init.halt);
      halted[v] = 1;
    } else {
      ++running;
    }
  }
  std::vector<Inbox> inboxes(n);
  int round = 0;
  while (running > 0) {
    ++round;
    if (round > options.max_rounds) throw RoundTimeout(options.max_rounds);
    std::vector<Inbox> next(n);
    int64_t sent = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (halted[v]) continue;
      StepResult result = program.step(*states[v], round, inboxes[v]);
      for (auto& [to, message] : result.outbox) {
        if (!graph.find_edge(v, to)) {
          throw std::logic_error("node " + std::to_string(v) +
                                 " sent to non-neighbor " +
                                 std::to_string(to));
        }
        if (message.bit_count > budget) {
          throw BudgetViolation(v, round, message.bit_count, budget);
        }
        trace.max_message_bits =
            std::max(trace.max_message_bits, message.bit_count);
        ++sent;
        if (!halted[to]) next[to].emplace(v, std::move(message));
      }
      if (result.halt) {
        trace.outputs[v] = std::move(result.halt);
        halted[v] = 1;
        --running;
      }
    }
    trace.messages_per_round.push_back(sent);
    inboxes = std::move(next);
  }
  trace.rounds_used = round;
  trace.logical_rounds = round;
  trace.physical_rounds = round;
  return trace;
}

RoundTrace run_on_cluster_graph(const Graph& graph,
                                const Clustering& clustering,
                                const NodeProgram& program,
                                const RunOptions& options) {
  if (!clustering.is_partition()) {
    throw InvalidClustering("cluster-graph simulation requires a partition");
  }
  const ClusterGraph contracted = contract(graph, clustering);
  RunOptions logical = options;
  if (logical.budget_bits <= 0) {
    logical.budget_bits = default_budget_bits(graph.node_count());
  }
  RoundTrace trace = run(contracted.graph, program, logical);
  trace.logical_rounds = trace.rounds_used;
  trace.physical_rounds =
      trace.rounds_used * (2 * clustering.max_radius() + 1);
  return trace;
}

std::string trace_to_json(const RoundTrace& trace) {
  nlohmann::ordered_json out;
  out["rounds"] = trace.rounds_used;
  out["logical_rounds"] = trace.logical_rounds;
  out["physical_rounds"] = trace.physical_rounds;
  out["max_message_bits"] = trace.max_message_bits;
  out["per_round"] = trace.messages_per_round;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  for (size_t v = 0; v < trace.outputs.size(); ++v) {
    if (trace.outputs[v]) outputs[std::to_string(v)] = *trace.outputs[v];
  }
  out["outputs"] = outputs;
  return out.dump();
}

}  // namespace sparsify
