#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dendro/rational.hpp"

namespace dendro {

struct VertexId {
  std::uint32_t value = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct EdgeRecord {
  std::string name;
  VertexId tail;
  VertexId head;
  Rational length;
};

/// A finite metric tree: the finite model of a dendrite.
///
/// Every edge is oriented from `tail` (parameter 0) to `head` (parameter 1).
/// Construction validates that the graph is a tree with unique names and
/// strictly positive lengths; after that the value is immutable. Vertex 0 is
/// used as the root of an internal rooting that answers path queries.
class Dendrite {
 public:
  Dendrite(std::vector<std::string> vertex_names, std::vector<EdgeRecord> edges);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v.value); }
  const std::string& edge_name(EdgeId e) const { return edges_.at(e.value).name; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  VertexId tail(EdgeId e) const { return edges_[e.value].tail; }
  VertexId head(EdgeId e) const { return edges_[e.value].head; }
  const Rational& length(EdgeId e) const { return edges_[e.value].length; }
  VertexId other_end(EdgeId e, VertexId v) const;
  /// The endpoint at parameter 0 (`at_head == false`) or 1.
  VertexId endpoint(EdgeId e, bool at_head) const { return at_head ? head(e) : tail(e); }

  std::span<const EdgeId> incident(VertexId v) const { return incident_[v.value]; }
  std::size_t degree(VertexId v) const { return incident_[v.value].size(); }

  /// Edges of the vertex path from `from` to `to`, in travel order.
  std::vector<EdgeId> edge_path(VertexId from, VertexId to) const;
  /// Vertices of the same path, both ends included.
  std::vector<VertexId> vertex_path(VertexId from, VertexId to) const;
  /// First edge on the path from `from` to `to`. Requires from != to.
  EdgeId first_edge(VertexId from, VertexId to) const;
  /// True when `w` lies in the component of X minus the open edge `e` that contains head(e).
  bool on_head_side(EdgeId e, VertexId w) const;

  VertexId root() const { return VertexId{0}; }
  std::optional<EdgeId> parent_edge(VertexId v) const;
  std::size_t depth(VertexId v) const { return depth_[v.value]; }
  bool in_subtree(VertexId ancestor, VertexId v) const;

  friend bool operator==(const Dendrite& a, const Dendrite& b);

 private:
  void build_rooting();

  std::vector<std::string> vertex_names_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<std::int64_t> parent_edge_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> tin_;
  std::vector<std::size_t> tout_;
};

/// A point of the realization: a vertex, or an edge point with parameter in (0, 1).
/// Boundary parameters are canonicalized to the endpoint vertex, so equality is
/// structural.
class Point {
 public:
  static Point at_vertex(VertexId v);
  static Point on_edge(const Dendrite& tree, EdgeId e, const Rational& t);

  bool is_vertex() const { return is_vertex_; }
  VertexId vertex() const { return VertexId{index_}; }
  EdgeId edge() const { return EdgeId{index_}; }
  const Rational& param() const { return t_; }

  friend bool operator==(const Point& a, const Point& b);
  friend bool operator<(const Point& a, const Point& b);

 private:
  Point(bool is_vertex, std::uint32_t index, Rational t)
      : is_vertex_(is_vertex), index_(index), t_(std::move(t)) {}

  bool is_vertex_ = true;
  std::uint32_t index_ = 0;
  Rational t_;
};

inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }

/// Throws InputError unless `p` refers to a vertex or edge of `tree`.
void check_point(const Dendrite& tree, const Point& p);

/// A direction at a point: one component of X minus {base}.
///
/// The direction is named by the edge it leaves along and by whether it heads
/// toward that edge's head. At a vertex the orientation bit is implied by the
/// edge; at an edge point it selects one of the two sides.
struct Germ {
  Point base;
  EdgeId edge;
  bool toward_head = true;

  friend bool operator==(const Germ&, const Germ&) = default;
  friend bool operator<(const Germ& a, const Germ& b);
};

/// Germ leaving vertex `v` along incident edge `e`.
Germ germ_along(const Dendrite& tree, VertexId v, EdgeId e);

/// All germs at `p`: one per incident edge at a vertex, two at an edge point.
std::vector<Germ> germs_at(const Dendrite& tree, const Point& p);

/// The germ at `base` pointing toward `target`, or nullopt when they coincide.
std::optional<Germ> germ_toward(const Dendrite& tree, const Point& base, const Point& target);

}  // namespace dendro
