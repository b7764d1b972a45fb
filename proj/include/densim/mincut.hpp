#pragma once

// Maximum-flow / minimum-cut over directed networks with real capacities.
//
// Capacities of designated source-adjacent arcs may later be lowered and
// those of designated sink-adjacent arcs raised. In that direction the
// current flow stays a useful starting point: any excess it carries over a
// lowered source arc is cancelled back along flow paths, after which
// augmentation resumes from the repaired flow instead of from zero.
//
// Reported cuts always use the maximal source side: every node that has no
// residual path to the sink.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace densim {

using FlowNode = std::uint32_t;
using ArcId = std::uint32_t;

struct CutResult {
  double cut_value = 0.0;
  double flow_value = 0.0;
  /// Sorted; always contains the source.
  std::vector<FlowNode> source_side;
  std::vector<bool> in_source_side;
};

struct ParametricUpdate {
  ArcId arc;
  double capacity;
};

class FlowNetwork {
 public:
  FlowNetwork(std::size_t node_count, FlowNode source, FlowNode sink);

  /// Adds `from -> to` with `capacity`; a positive `reverse_capacity` also
  /// adds the antiparallel arc `to -> from` sharing the same residual pair.
  ArcId add_arc(FlowNode from, FlowNode to, double capacity, double reverse_capacity = 0.0);
  ArcId add_infinite_arc(FlowNode from, FlowNode to);
  /// Only arcs leaving the source or entering the sink can be parametric.
  void mark_parametric(ArcId arc);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  FlowNode source() const noexcept { return source_; }
  FlowNode sink() const noexcept { return sink_; }
  double capacity(ArcId arc) const { return arcs_[arc].capacity; }
  double reverse_capacity(ArcId arc) const { return arcs_[arc].reverse_capacity; }
  bool is_infinite(ArcId arc) const { return arcs_[arc].infinite; }
  bool is_parametric(ArcId arc) const { return arcs_[arc].parametric; }
  FlowNode arc_from(ArcId arc) const { return arcs_[arc].from; }
  FlowNode arc_to(ArcId arc) const { return arcs_[arc].to; }
  double flow(ArcId arc) const;

  /// Solves from the current flow. Throws if the sink is reachable from the
  /// source through infinite arcs alone.
  CutResult min_cut();
  /// Discards the current flow and solves from zero.
  CutResult min_cut_from_scratch();

  /// Source arcs may only decrease and sink arcs only increase; anything else
  /// throws kMonotonicity ("monotonicity violated").
  void update_parametric(std::span<const ParametricUpdate> updates);
  void update_parametric(ArcId arc, double capacity);

  /// DIMACS max-flow text. Infinite arcs are written with one more than the
  /// total finite capacity.
  void write_dimacs(std::ostream& out) const;

 private:
  struct ArcSpec {
    FlowNode from;
    FlowNode to;
    double capacity;
    double reverse_capacity;
    bool infinite;
    bool parametric;
  };
  struct Residual {
    FlowNode to;
    std::uint32_t mate;  // index of the paired residual entry
    double capacity;
    double flow;
    bool infinite;
  };

  void finalize();
  void check_structural_cut() const;
  double residual(const Residual& r) const {
    return r.infinite ? std::numeric_limits<double>::infinity() : r.capacity - r.flow;
  }
  void repair_deficits();
  void augment();
  bool build_levels();
  CutResult extract_cut();
  void refresh_epsilon();

  std::size_t node_count_;
  FlowNode source_;
  FlowNode sink_;
  std::vector<ArcSpec> arcs_;
  bool finalized_ = false;

  std::vector<std::size_t> first_;   // CSR offsets into residual_
  std::vector<Residual> residual_;
  std::vector<std::uint32_t> arc_slot_;  // arc id -> residual index of the forward entry
  std::vector<std::int32_t> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::pair<FlowNode, double>> deficits_;
  double epsilon_ = 0.0;
};

}  // namespace densim
