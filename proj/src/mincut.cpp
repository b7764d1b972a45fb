#include "densim/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>

#include "densim/core.hpp"

namespace densim {

namespace {

constexpr double kRelativeEpsilon = 1e-12;

void require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t node_count, FlowNode source, FlowNode sink)
    : node_count_(node_count), source_(source), sink_(sink) {
  require(source < node_count && sink < node_count, "source/sink out of range");
  require(source != sink, "source and sink must differ");
}

ArcId FlowNetwork::add_arc(FlowNode from, FlowNode to, double capacity, double reverse_capacity) {
  require(!finalized_, "network is already being solved; arcs are fixed");
  require(from < node_count_ && to < node_count_, "arc endpoint out of range");
  require(from != to, "self-loop arc");
  require(to != source_, "arc into the source");
  require(from != sink_, "arc out of the sink");
  require(std::isfinite(capacity) && capacity >= 0.0, "capacity must be finite and nonnegative");
  require(std::isfinite(reverse_capacity) && reverse_capacity >= 0.0,
          "capacity must be finite and nonnegative");
  require(reverse_capacity == 0.0 || (from != source_ && to != sink_),
          "reverse arc would touch the source or the sink");
  arcs_.push_back({from, to, capacity, reverse_capacity, false, false});
  return static_cast<ArcId>(arcs_.size() - 1);
}

ArcId FlowNetwork::add_infinite_arc(FlowNode from, FlowNode to) {
  ArcId id = add_arc(from, to, 0.0);
  arcs_[id].infinite = true;
  return id;
}

void FlowNetwork::mark_parametric(ArcId arc) {
  require(arc < arcs_.size(), "arc id out of range");
  auto& a = arcs_[arc];
  require(!a.infinite, "infinite arcs cannot be parametric");
  require(a.from == source_ || a.to == sink_, "parametric arcs must touch the source or the sink");
  a.parametric = true;
}

double FlowNetwork::flow(ArcId arc) const {
  if (!finalized_) return 0.0;
  return residual_[arc_slot_[arc]].flow;
}

void FlowNetwork::finalize() {
  if (finalized_) return;
  first_.assign(node_count_ + 1, 0);
  for (const auto& a : arcs_) {
    ++first_[a.from + 1];
    ++first_[a.to + 1];
  }
  for (std::size_t v = 0; v < node_count_; ++v) first_[v + 1] += first_[v];
  residual_.resize(first_.back());
  arc_slot_.resize(arcs_.size());
  std::vector<std::size_t> fill(first_.begin(), first_.end() - 1);
  for (ArcId id = 0; id < arcs_.size(); ++id) {
    const auto& a = arcs_[id];
    auto fwd = static_cast<std::uint32_t>(fill[a.from]++);
    auto rev = static_cast<std::uint32_t>(fill[a.to]++);
    residual_[fwd] = {a.to, rev, a.capacity, 0.0, a.infinite};
    residual_[rev] = {a.from, fwd, a.reverse_capacity, 0.0, false};
    arc_slot_[id] = fwd;
  }
  level_.assign(node_count_, -1);
  cursor_.assign(node_count_, 0);
  finalized_ = true;
  check_structural_cut();
  refresh_epsilon();
}

void FlowNetwork::check_structural_cut() const {
  std::vector<bool> seen(node_count_, false);
  std::deque<FlowNode> queue{source_};
  seen[source_] = true;
  while (!queue.empty()) {
    FlowNode v = queue.front();
    queue.pop_front();
    for (std::size_t i = first_[v]; i < first_[v + 1]; ++i) {
      const auto& r = residual_[i];
      if (!r.infinite || seen[r.to]) continue;
      if (r.to == sink_) {
        throw Error(ErrorCode::kInfeasible, "every source/sink cut has infinite capacity");
      }
      seen[r.to] = true;
      queue.push_back(r.to);
    }
  }
}

void FlowNetwork::refresh_epsilon() {
  double scale = 0.0;
  for (const auto& a : arcs_) {
    if (!a.infinite) scale = std::max({scale, a.capacity, a.reverse_capacity});
  }
  epsilon_ = kRelativeEpsilon * scale;
}

void FlowNetwork::update_parametric(ArcId arc, double capacity) {
  ParametricUpdate u{arc, capacity};
  update_parametric(std::span<const ParametricUpdate>(&u, 1));
}

void FlowNetwork::update_parametric(std::span<const ParametricUpdate> updates) {
  for (const auto& u : updates) {
    require(u.arc < arcs_.size(), "arc id out of range");
    const auto& a = arcs_[u.arc];
    require(a.parametric, "arc is not parametric");
    require(std::isfinite(u.capacity) && u.capacity >= 0.0,
            "capacity must be finite and nonnegative");
    bool lowering_allowed = a.from == source_;
    if (lowering_allowed ? u.capacity > a.capacity : u.capacity < a.capacity) {
      throw Error(ErrorCode::kMonotonicity,
                  "monotonicity violated on arc " + std::to_string(u.arc));
    }
  }
  for (const auto& u : updates) {
    auto& a = arcs_[u.arc];
    a.capacity = u.capacity;
    if (!finalized_) continue;
    auto& r = residual_[arc_slot_[u.arc]];
    r.capacity = u.capacity;
    if (r.flow > u.capacity) {
      double excess = r.flow - u.capacity;
      r.flow = u.capacity;
      residual_[r.mate].flow = -u.capacity;
      deficits_.emplace_back(a.to, excess);
    }
  }
  if (finalized_) refresh_epsilon();
}

// Each deficit node sends more flow than it receives after its source arc was
// lowered. Flow is withdrawn along paths of flow-carrying arcs from the node
// to the sink, cancelling any flow cycle met on the way. Withdrawing flow
// never creates flow on an arc, so nodes found to have no such path stay
// dead and scan cursors never need to move back.
void FlowNetwork::repair_deficits() {
  if (deficits_.empty()) return;
  std::vector<std::uint8_t> dead(node_count_, 0);
  std::vector<std::uint8_t> on_path(node_count_, 0);
  for (std::size_t v = 0; v < node_count_; ++v) cursor_[v] = first_[v];
  std::vector<FlowNode> nodes;
  std::vector<std::uint32_t> path;

  auto withdraw = [&](std::size_t from_index, double amount) {
    for (std::size_t k = from_index; k < path.size(); ++k) {
      auto& r = residual_[path[k]];
      r.flow -= amount;
      residual_[r.mate].flow += amount;
    }
  };

  for (auto [start, deficit] : deficits_) {
    while (deficit > epsilon_ && !dead[start]) {
      nodes.assign(1, start);
      path.clear();
      on_path[start] = 1;
      bool reached = false;
      while (!nodes.empty()) {
        FlowNode v = nodes.back();
        if (v == sink_) {
          reached = true;
          break;
        }
        bool advanced = false;
        for (; cursor_[v] < first_[v + 1]; ++cursor_[v]) {
          const auto& r = residual_[cursor_[v]];
          if (r.flow <= epsilon_ || dead[r.to]) continue;
          path.push_back(static_cast<std::uint32_t>(cursor_[v]));
          if (on_path[r.to]) {
            auto k = static_cast<std::size_t>(
                std::find(nodes.begin(), nodes.end(), r.to) - nodes.begin());
            double amount = std::numeric_limits<double>::infinity();
            for (std::size_t j = k; j < path.size(); ++j) amount = std::min(amount, residual_[path[j]].flow);
            withdraw(k, amount);
            for (std::size_t j = k + 1; j < nodes.size(); ++j) on_path[nodes[j]] = 0;
            nodes.resize(k + 1);
            path.resize(k);
          } else {
            nodes.push_back(r.to);
            on_path[r.to] = 1;
          }
          advanced = true;
          break;
        }
        if (!advanced) {
          dead[v] = 1;
          on_path[v] = 0;
          nodes.pop_back();
          if (!path.empty()) {
            path.pop_back();
            ++cursor_[nodes.back()];
          }
        }
      }
      if (reached) {
        double amount = deficit;
        for (auto idx : path) amount = std::min(amount, residual_[idx].flow);
        withdraw(0, amount);
        deficit -= amount;
      }
      for (FlowNode v : nodes) on_path[v] = 0;
      if (!reached) break;
    }
    if (deficit > 1e3 * epsilon_ && deficit > 1e-9) {
      throw std::logic_error("flow repair failed: no flow path from a lowered source arc");
    }
  }
  deficits_.clear();
}

bool FlowNetwork::build_levels() {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<FlowNode> queue{source_};
  level_[source_] = 0;
  while (!queue.empty()) {
    FlowNode v = queue.front();
    queue.pop_front();
    if (v == sink_) continue;
    for (std::size_t i = first_[v]; i < first_[v + 1]; ++i) {
      const auto& r = residual_[i];
      if (level_[r.to] < 0 && residual(r) > epsilon_) {
        level_[r.to] = level_[v] + 1;
        queue.push_back(r.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

// Dinic's algorithm: blocking flows on BFS level graphs, with an explicit
// path stack instead of recursion.
void FlowNetwork::augment() {
  std::vector<FlowNode> nodes;
  std::vector<std::uint32_t> path;
  while (build_levels()) {
    for (std::size_t v = 0; v < node_count_; ++v) cursor_[v] = first_[v];
    nodes.assign(1, source_);
    path.clear();
    while (!nodes.empty()) {
      FlowNode v = nodes.back();
      if (v == sink_) {
        double amount = std::numeric_limits<double>::infinity();
        for (auto idx : path) amount = std::min(amount, residual(residual_[idx]));
        for (auto idx : path) {
          auto& r = residual_[idx];
          r.flow += amount;
          residual_[r.mate].flow -= amount;
        }
        nodes.assign(1, source_);
        path.clear();
        continue;
      }
      bool advanced = false;
      for (; cursor_[v] < first_[v + 1]; ++cursor_[v]) {
        const auto& r = residual_[cursor_[v]];
        if (level_[r.to] == level_[v] + 1 && residual(r) > epsilon_) {
          path.push_back(static_cast<std::uint32_t>(cursor_[v]));
          nodes.push_back(r.to);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        level_[v] = -1;
        nodes.pop_back();
        if (!path.empty()) {
          path.pop_back();
          ++cursor_[nodes.back()];
        }
      }
    }
  }
}

CutResult FlowNetwork::extract_cut() {
  std::vector<bool> reaches_sink(node_count_, false);
  std::deque<FlowNode> queue{sink_};
  reaches_sink[sink_] = true;
  while (!queue.empty()) {
    FlowNode w = queue.front();
    queue.pop_front();
    for (std::size_t i = first_[w]; i < first_[w + 1]; ++i) {
      const auto& back = residual_[residual_[i].mate];  // entry residual_[i].to -> w
      FlowNode x = residual_[i].to;
      if (!reaches_sink[x] && residual(back) > epsilon_) {
        reaches_sink[x] = true;
        queue.push_back(x);
      }
    }
  }
  if (reaches_sink[source_]) throw std::logic_error("flow is not maximum");

  CutResult result;
  result.in_source_side.assign(node_count_, false);
  for (FlowNode v = 0; v < node_count_; ++v) {
    if (!reaches_sink[v]) {
      result.in_source_side[v] = true;
      result.source_side.push_back(v);
    }
  }
  for (const auto& a : arcs_) {
    bool from_in = result.in_source_side[a.from];
    bool to_in = result.in_source_side[a.to];
    if (from_in && !to_in) {
      if (a.infinite) throw std::logic_error("infinite arc crosses the minimum cut");
      result.cut_value += a.capacity;
    } else if (to_in && !from_in) {
      result.cut_value += a.reverse_capacity;
    }
  }
  for (std::size_t i = first_[source_]; i < first_[source_ + 1]; ++i) {
    result.flow_value += residual_[i].flow;
  }
  return result;
}

CutResult FlowNetwork::min_cut() {
  finalize();
  repair_deficits();
  augment();
  return extract_cut();
}

CutResult FlowNetwork::min_cut_from_scratch() {
  finalize();
  for (auto& r : residual_) r.flow = 0.0;
  deficits_.clear();
  augment();
  return extract_cut();
}

void FlowNetwork::write_dimacs(std::ostream& out) const {
  double finite_total = 0.0;
  std::size_t arc_lines = 0;
  for (const auto& a : arcs_) {
    if (!a.infinite) finite_total += a.capacity + a.reverse_capacity;
    arc_lines += a.reverse_capacity > 0.0 ? 2 : 1;
  }
  const double infinite_stand_in = finite_total + 1.0;
  auto old_precision = out.precision(17);
  out << "c densim flow network\n";
  out << "p max " << node_count_ << ' ' << arc_lines << '\n';
  out << "n " << source_ + 1 << " s\n";
  out << "n " << sink_ + 1 << " t\n";
  for (const auto& a : arcs_) {
    out << "a " << a.from + 1 << ' ' << a.to + 1 << ' '
        << (a.infinite ? infinite_stand_in : a.capacity) << '\n';
    if (a.reverse_capacity > 0.0) {
      out << "a " << a.to + 1 << ' ' << a.from + 1 << ' ' << a.reverse_capacity << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace densim
