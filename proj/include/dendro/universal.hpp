#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dendro/subdendrite.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// Which edges are split at each generation of the truncated Ważewski tree.
///
/// kSpine splits only the two halves produced by the previous split (the
/// previous generation's arc pieces); kFull splits every edge created in the
/// previous generation, pendant edges included.
enum class WazewskiScheme { kSpine, kFull };

struct WazewskiParams {
  /// Branch order n >= 3. When `infinite` is set, `order` is the finite cap
  /// standing in for infinite order.
  std::uint32_t order = 3;
  bool infinite = false;
  std::uint32_t depth = 0;
  WazewskiScheme scheme = WazewskiScheme::kSpine;
};

struct TruncatedWazewski {
  WazewskiParams params;
  Dendrite tree;
  /// Generation at which each vertex was created (the two original ends are 0).
  std::vector<std::uint32_t> level;

  std::vector<VertexId> leaves() const;
  std::vector<VertexId> branch_vertices() const;
};

TruncatedWazewski generate(const WazewskiParams& params);

/// Leaf and branch counts predicted by the generator recurrences.
struct WazewskiCounts {
  std::uint64_t leaves;
  std::uint64_t branch;
};
WazewskiCounts predicted_counts(const WazewskiParams& params);

/// Small adjacency-list tree with optional node labels, used for canonical codes.
struct LabeledTree {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::string> label;

  std::size_t size() const { return adj.size(); }
};

/// Removes unlabeled degree-two nodes, joining their neighbours.
LabeledTree suppress_degree_two(const LabeledTree& t);

/// Canonical string: equal iff the labeled trees are isomorphic. Rooted at the
/// centroid (the smaller of the two rootings when there are two centroids).
std::string canonical_code(const LabeledTree& t);

/// Whole tree as a LabeledTree (node i = vertex i, labels empty).
LabeledTree labeled_tree(const Dendrite& tree);

/// Code of the hull of a tuple of leaves, leaves labeled by their positions
/// (1-based; repeated leaves share a node carrying all their positions).
std::string tuple_code(const Dendrite& tree, const std::vector<VertexId>& tuple);

enum class OrbitMode { kExhaustive, kSample };

struct OrbitClass {
  std::string code;
  std::vector<VertexId> representative;
};

struct OrbitCount {
  std::size_t count = 0;
  std::vector<OrbitClass> classes;  // sorted by code
  /// Set when a cap stopped the enumeration (sampling or the prefix cap).
  bool partial = false;
};

struct OrbitOptions {
  OrbitMode mode = OrbitMode::kExhaustive;
  /// Upper bound on enumerated prefixes (exhaustive) or sampled tuples.
  std::uint64_t cap = 5'000'000;
  std::uint64_t seed = 1;
};

/// Distinct tuple codes among ordered p-tuples of distinct leaves.
OrbitCount orbit_count(const TruncatedWazewski& x, std::size_t p, const OrbitOptions& opt = {});

/// Same count by coding every ordered tuple; exponential, for cross-checks.
OrbitCount orbit_count_brute_force(const TruncatedWazewski& x, std::size_t p);

struct MarkedDendrite {
  Dendrite tree;
  VertexId x;
  VertexId y;
};

/// Closure of the component of X minus {x, y} containing the interior of [x, y].
SubDendrite open_subdendrite_set(const Dendrite& tree, const Point& x, const Point& y);
/// The same set as a standalone tree with x and y marked.
MarkedDendrite open_subdendrite(const Dendrite& tree, const Point& x, const Point& y);

/// A closed connected subset as a standalone tree. Partial-edge endpoints become
/// vertices named `<edge>@<t>`.
Dendrite extract_subtree(const Dendrite& tree, const SubDendrite& s);

/// Simplicial tree on branch points and ends; two are adjacent when no branch
/// point separates them.
struct SimplicialTree {
  std::vector<std::string> vertices;  // names of the underlying tree vertices
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

SimplicialTree tree_correspondence(const Dendrite& tree);
/// Unit-length metric realization of a simplicial tree.
Dendrite realize(const SimplicialTree& t);

}  // namespace dendro
