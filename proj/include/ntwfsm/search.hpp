#pragma once

// Best-path search over n-tape machines.
//
// The trellis is a set of node sets, one per reading-pointer vector. Each
// node <state, pointer> keeps the weight of its best prefix, a back-pointer to
// the node it was reached from and the transition used. Node sets wait in a
// priority queue keyed on the sum of the pointer components, so a set is
// expanded only after every set whose pointer precedes it; at that point the
// prefix weights of its nodes are final.

#include <boost/heap/fibonacci_heap.hpp>

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

/// Reading positions, one per input tape.
struct PointerVector {
  std::vector<std::uint32_t> pos;

  std::size_t size() const { return pos.size(); }
  std::uint64_t key() const { return std::accumulate(pos.begin(), pos.end(), std::uint64_t{0}); }

  friend auto operator<=>(const PointerVector&, const PointerVector&) = default;
};

/// a precedes b iff b = a + c for some non-zero c with non-negative entries.
bool pointer_precedes(const PointerVector& a, const PointerVector& b);

struct Binding {
  VarClass var;
  Symbol symbol;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Match {
  PointerVector next;
  std::vector<Binding> bindings;
  bool eps_move = false;
};

namespace detail {

// Matches labels against a fixed input tuple without allocating per call.
class LabelMatcher {
 public:
  LabelMatcher(std::size_t arity, const StringTuple& input, const TapeList& input_tapes);

  // On success `next` holds the advanced pointer and `bindings` the wildcard
  // instantiations; both buffers are reused between calls.
  bool match(const Label& label, const PointerVector& at, PointerVector& next, std::vector<Binding>& bindings) const;

 private:
  const StringTuple& input_;
  std::vector<int> input_index_;  // tape -> position in input_, or -1
};

}  // namespace detail

/// Matches one transition label against `s` at pointer `p`. Returns nullopt
/// when the label does not match a factor of the inputs there.
std::optional<Match> match_transition(const Label& label, const StringTuple& s, const PointerVector& p,
                                      const TapeList& input_tapes);

/// Projects a matched label onto all tapes, replacing wildcards by their
/// bound symbols, and appends the result to `tapes`.
void append_projection(const Label& label, std::span<const Binding> bindings, std::vector<SymbolString>& tapes);

enum class HeapKind { Binary, Fibonacci };

/// Optional instrumentation filled in by a search.
struct SearchTrace {
  bool check_precedence = true;

  std::vector<PointerVector> extractions;
  std::size_t precedence_violations = 0;  // extractions with a pending predecessor
  std::size_t late_updates = 0;           // updates to nodes of already expanded sets
  std::size_t worsening_updates = 0;
  std::size_t node_sets = 0;
  std::size_t max_nodes_per_set = 0;
  std::size_t nodes = 0;
};

struct SearchOptions {
  HeapKind heap = HeapKind::Binary;
  SearchTrace* trace = nullptr;
};

template <Semiring S>
struct BestPath {
  std::vector<TransitionId> transitions;
  StateId start = 0;
  StateId end = 0;
  typename S::Weight weight = S::zero();
  /// Label of the path on every tape of the machine.
  std::vector<SymbolString> tapes;
};

template <Semiring S>
struct Transduction {
  /// Labels of the non-input tapes, in tape order.
  std::vector<SymbolString> outputs;
  typename S::Weight weight = S::zero();
  BestPath<S> path;
};

/// Ranks states so that every epsilon move goes from a lower to a higher
/// rank (ties by state id). Throws EpsilonCycle if no such order exists.
template <Semiring S>
std::vector<std::uint32_t> epsilon_ranks(const Machine<S>& m, const std::vector<bool>& input_mask) {
  const std::size_t n = m.num_states();
  std::vector<std::uint32_t> indegree(n, 0);
  std::vector<std::vector<StateId>> succ(n);
  for (const auto& t : m.transitions()) {
    if (!is_epsilon_move(t.label, input_mask)) continue;
    succ[t.source].push_back(t.target);
    ++indegree[t.target];
  }
  std::priority_queue<StateId, std::vector<StateId>, std::greater<>> ready;
  for (StateId q = 0; q < n; ++q)
    if (indegree[q] == 0) ready.push(q);
  std::vector<std::uint32_t> rank(n, 0);
  std::uint32_t next = 0;
  while (!ready.empty()) {
    const StateId q = ready.top();
    ready.pop();
    rank[q] = next++;
    for (StateId r : succ[q])
      if (--indegree[r] == 0) ready.push(r);
  }
  if (next != n) throw Error(ErrorCode::EpsilonCycle, "machine has a cycle of epsilon moves");
  return rank;
}

namespace detail {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

template <Semiring S>
struct TrellisNode {
  StateId state = 0;
  std::optional<typename S::Weight> weight;
  std::uint32_t back_set = kNone;
  std::uint32_t back_node = kNone;
  TransitionId back_transition = kNone;
};

template <Semiring S>
struct NodeSet {
  PointerVector pointer;
  std::vector<TrellisNode<S>> nodes;
  std::vector<std::uint32_t> slot;  // state -> index into nodes, or kNone
  bool expanded = false;

  std::uint32_t node_for(StateId q) {
    if (slot[q] == kNone) {
      slot[q] = static_cast<std::uint32_t>(nodes.size());
      nodes.emplace_back();
      nodes.back().state = q;
    }
    return slot[q];
  }
};

struct HeapEntry {
  std::uint64_t key;
  std::uint32_t set;

  // Inverted so that max-heaps pop the smallest key, then the oldest set.
  friend bool operator<(const HeapEntry& a, const HeapEntry& b) {
    return a.key != b.key ? a.key > b.key : a.set > b.set;
  }
};

class PendingHeap {
 public:
  explicit PendingHeap(HeapKind kind) : kind_(kind) {}

  void push(HeapEntry e) {
    if (kind_ == HeapKind::Binary)
      binary_.push(e);
    else
      fibonacci_.push(e);
  }

  HeapEntry pop() {
    HeapEntry e{};
    if (kind_ == HeapKind::Binary) {
      e = binary_.top();
      binary_.pop();
    } else {
      e = fibonacci_.top();
      fibonacci_.pop();
    }
    return e;
  }

  bool empty() const { return kind_ == HeapKind::Binary ? binary_.empty() : fibonacci_.empty(); }

 private:
  HeapKind kind_;
  std::priority_queue<HeapEntry> binary_;
  boost::heap::fibonacci_heap<HeapEntry> fibonacci_;
};

template <Semiring S>
class Trellis {
 public:
  using Weight = typename S::Weight;

  Trellis(const Machine<S>& m, const StringTuple& input, const TapeList& input_tapes, const SearchOptions& options)
      : machine_(m),
        input_(input),
        input_tapes_(input_tapes),
        mask_(input_tape_mask(m.arity(), input_tapes)),
        matcher_(m.arity(), input, input_tapes),
        options_(options),
        heap_(options.heap) {
    rank_ = epsilon_ranks(m, mask_);
    by_rank_.resize(m.num_states());
    for (StateId q = 0; q < m.num_states(); ++q) by_rank_[rank_[q]] = q;
  }

  std::optional<BestPath<S>> run() {
    PointerVector origin{std::vector<std::uint32_t>(input_.size(), 0)};
    const std::uint32_t initial = set_for(origin);
    for (StateId q = 0; q < machine_.num_states(); ++q) {
      if (!machine_.is_initial(q)) continue;
      auto& node = sets_[initial].nodes[sets_[initial].node_for(q)];
      node.weight = machine_.initial(q);
    }

    while (!heap_.empty()) {
      const std::uint32_t current = heap_.pop().set;
      record_extraction(current);
      expand(current);
    }

    PointerVector last;
    for (const auto& s : input_) last.pos.push_back(static_cast<std::uint32_t>(s.size()));
    finish_trace();
    const auto it = index_.find(last);
    if (it == index_.end()) return std::nullopt;
    return select_final(it->second);
  }

 private:
  std::uint32_t set_for(const PointerVector& p) {
    auto [it, inserted] = index_.try_emplace(p, static_cast<std::uint32_t>(sets_.size()));
    if (inserted) {
      sets_.push_back(NodeSet<S>{p, {}, std::vector<std::uint32_t>(machine_.num_states(), kNone)});
      heap_.push(HeapEntry{p.key(), it->second});
    }
    return it->second;
  }

  void expand(std::uint32_t current) {
    // Nodes are taken in epsilon-rank order; a node reached or improved by
    // an epsilon move is (re-)queued, and cannot be improved after it has
    // been taken since all its epsilon predecessors rank lower.
    using Item = std::pair<std::uint32_t, std::uint32_t>;  // rank, node index
    std::priority_queue<Item, std::vector<Item>, std::greater<>> work;
    std::vector<bool> queued(machine_.num_states(), false);
    for (std::uint32_t k = 0; k < sets_[current].nodes.size(); ++k) {
      const StateId q = sets_[current].nodes[k].state;
      work.emplace(rank_[q], k);
      queued[q] = true;
    }

    while (!work.empty()) {
      const std::uint32_t k = work.top().second;
      work.pop();
      const StateId q = sets_[current].nodes[k].state;
      queued[q] = false;
      const Weight prefix = *sets_[current].nodes[k].weight;

      for (TransitionId tid : machine_.out(q)) {
        const auto& t = machine_.transition(tid);
        if (!matcher_.match(t.label, sets_[current].pointer, next_, bindings_)) continue;
        const Weight candidate = S::times(prefix, t.weight);
        if (candidate == S::zero()) continue;

        const bool eps = next_ == sets_[current].pointer;
        const std::uint32_t target_set = eps ? current : set_for(next_);
        NodeSet<S>& ts = sets_[target_set];
        const std::uint32_t target = ts.node_for(t.target);
        auto& node = ts.nodes[target];
        if (!improves<S>(candidate, node.weight)) continue;
        if (options_.trace) {
          if (ts.expanded && target_set != current) ++options_.trace->late_updates;
          if (node.weight && S::better(*node.weight, candidate)) ++options_.trace->worsening_updates;
        }
        node.weight = candidate;
        node.back_set = current;
        node.back_node = k;
        node.back_transition = tid;
        if (eps && !queued[t.target]) {
          work.emplace(rank_[t.target], target);
          queued[t.target] = true;
        }
      }
    }
  }

  std::optional<BestPath<S>> select_final(std::uint32_t final_set) const {
    const auto& fs = sets_[final_set];
    std::optional<Weight> best;
    std::uint32_t best_node = kNone;
    for (StateId q : by_rank_) {
      if (fs.slot[q] == kNone || !machine_.is_final(q)) continue;
      const auto& node = fs.nodes[fs.slot[q]];
      const Weight total = S::times(*node.weight, machine_.final_weight(q));
      if (total == S::zero() || !improves<S>(total, best)) continue;
      best = total;
      best_node = fs.slot[q];
    }
    if (!best) return std::nullopt;

    BestPath<S> path;
    path.weight = *best;
    path.end = fs.nodes[best_node].state;
    std::uint32_t set = final_set;
    std::uint32_t node = best_node;
    while (true) {
      const auto& n = sets_[set].nodes[node];
      if (n.back_transition == kNone) {
        path.start = n.state;
        break;
      }
      path.transitions.push_back(n.back_transition);
      set = n.back_set;
      node = n.back_node;
    }
    std::reverse(path.transitions.begin(), path.transitions.end());

    path.tapes.assign(machine_.arity(), SymbolString{});
    PointerVector at{std::vector<std::uint32_t>(input_.size(), 0)};
    PointerVector next;
    std::vector<Binding> bindings;
    for (TransitionId tid : path.transitions) {
      const auto& label = machine_.transition(tid).label;
      matcher_.match(label, at, next, bindings);
      append_projection(label, bindings, path.tapes);
      at = next;
    }
    return path;
  }

  void record_extraction(std::uint32_t current) {
    sets_[current].expanded = true;
    SearchTrace* trace = options_.trace;
    if (!trace) return;
    trace->extractions.push_back(sets_[current].pointer);
    if (!trace->check_precedence) return;
    for (const auto& s : sets_)
      if (!s.expanded && pointer_precedes(s.pointer, sets_[current].pointer)) ++trace->precedence_violations;
  }

  void finish_trace() {
    SearchTrace* trace = options_.trace;
    if (!trace) return;
    trace->node_sets = sets_.size();
    for (const auto& s : sets_) {
      trace->nodes += s.nodes.size();
      trace->max_nodes_per_set = std::max(trace->max_nodes_per_set, s.nodes.size());
    }
  }

  const Machine<S>& machine_;
  const StringTuple& input_;
  const TapeList& input_tapes_;
  std::vector<bool> mask_;
  LabelMatcher matcher_;
  SearchOptions options_;
  PendingHeap heap_;

  std::vector<std::uint32_t> rank_;
  std::vector<StateId> by_rank_;
  std::deque<NodeSet<S>> sets_;
  std::map<PointerVector, std::uint32_t> index_;

  PointerVector next_;
  std::vector<Binding> bindings_;
};

}  // namespace detail

/// Best path of `m` accepting the tuple `s` on `input_tapes`, or nullopt if
/// no successful path accepts it. Ties keep the first prefix found, so the
/// result is fixed by transition order.
///
/// Throws the validation errors of validate() (epsilon moves are allowed iff
/// the machine is in eps-mode), EpsilonCycle, and DimensionMismatch when the
/// tuple size differs from the number of input tapes.
template <Semiring S>
std::optional<BestPath<S>> fsm_viterbi(const Machine<S>& m, const StringTuple& s, const TapeList& input_tapes,
                                       const SearchOptions& options = {}) {
  if (s.size() != input_tapes.size())
    throw Error(ErrorCode::DimensionMismatch, std::to_string(s.size()) + " input strings for " +
                                                  std::to_string(input_tapes.size()) + " input tapes");
  validate(m, input_tapes, m.eps_mode());
  detail::Trellis<S> trellis(m, s, input_tapes, options);
  return trellis.run();
}

/// Single-tape search.
template <Semiring S>
std::optional<BestPath<S>> fsa_viterbi(const Machine<S>& m, const SymbolString& s, const SearchOptions& options = {}) {
  if (m.arity() != 1)
    throw Error(ErrorCode::DimensionMismatch, "single-tape search on a " + std::to_string(m.arity()) + "-tape machine");
  return fsm_viterbi(m, StringTuple{s}, TapeList{0}, options);
}

/// Best output tuple for input `s`: the labels of the best path on all
/// tapes not listed in `input_tapes`.
template <Semiring S>
std::optional<Transduction<S>> best_transduction(const Machine<S>& m, const StringTuple& s,
                                                 const TapeList& input_tapes, const SearchOptions& options = {}) {
  auto path = fsm_viterbi(m, s, input_tapes, options);
  if (!path) return std::nullopt;
  const auto mask = input_tape_mask(m.arity(), input_tapes);
  Transduction<S> result;
  for (std::size_t tape = 0; tape < m.arity(); ++tape)
    if (!mask[tape]) result.outputs.push_back(path->tapes[tape]);
  result.weight = path->weight;
  result.path = std::move(*path);
  return result;
}

}  // namespace ntwfsm
