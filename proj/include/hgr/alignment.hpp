#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgr/hypergraph.hpp"
#include "hgr/sampling.hpp"

namespace hgr {

/// A node bijection V1 -> V2 with its cost d(φ(H1), H2).
struct Alignment {
  NodeRelabeling mapping;
  double cost = 0.0;
};

/// Labeled cross-modality pairs.
struct AnchorSet {
  std::vector<std::pair<NodeId, NodeId>> node_pairs;
  std::vector<std::pair<Hyperedge, Hyperedge>> edge_pairs;

  bool empty() const noexcept { return node_pairs.empty() && edge_pairs.empty(); }
};

/// Lines `node <v1> <v2>` and `edge <a+b> <c+d>`; '#' starts a comment line.
AnchorSet parse_anchors(std::string_view text);
std::string encode_anchors(const AnchorSet& anchors);

/// Lines `<v1> <v2>` followed by `#cost <value>`.
std::string encode_alignment(const Alignment& a);
/// Reads `<v1> <v2>` lines, ignoring '#' lines. Used for relabeling files as well.
NodeRelabeling parse_relabeling(std::string_view text);

/// Vertex colors with dense ids starting at 0.
struct Coloring {
  std::map<std::string, int> colors;

  std::size_t class_count() const;
  /// Color classes as vertex sets, ordered by color id.
  std::vector<std::vector<std::string>> classes() const;
  bool discrete() const { return class_count() == colors.size(); }
};

/// Every vertex gets color 0.
Coloring uniform_coloring(const SimpleGraph& g);

/// 1-WL: repeatedly replace each color by the signature (color, sorted neighbour
/// colors) until the number of classes stops growing. New ids follow first
/// occurrence in ascending vertex order.
Coloring wl_refine(const SimpleGraph& g, const Coloring& initial);

/// Exhaustive search for the bijection minimizing d(φ(H1), H2). Among minimizers
/// the lexicographically smallest mapping wins. Throws SizeMismatch and TooLarge.
Alignment align_exact(const WeightedHypergraph& h1, const WeightedHypergraph& h2, std::size_t max_nodes = 8);

/// Aligns nodes by the descending tuples of the identifiers of their incident
/// hyperedges, given a complete edge correspondence. Identifier k+1 is assigned to
/// edge_pairs[k]. Throws AmbiguousLabels (listing the tied classes) and
/// NotAnIsomorphism when the induced map does not carry E1 onto E2.
Alignment align_by_hyperedge_ids(const WeightedHypergraph& h1, const WeightedHypergraph& h2,
                                 const std::vector<std::pair<Hyperedge, Hyperedge>>& edge_pairs);

struct IrStats {
  std::size_t root_branches = 0;   // individualizations tried at the top level
  std::size_t backtracks = 0;      // branches that failed
  std::size_t refinements = 0;
  bool discrete_after_anchors = false;
};

struct IrResult {
  std::optional<Alignment> alignment;  // nullopt means NoIsomorphism
  IrStats stats;
};

/// Individualization-refinement isomorphism search on the joint 1-WL coloring of
/// both graphs. 2-uniform inputs are searched directly; otherwise the node/edge
/// incidence graphs are used with edge-vertices colored apart. Weights enter as
/// initial colors, bucketed at 1e-9. Anchors are individualized before search.
///
/// Throws SizeMismatch when |V1| != |V2| and InconsistentAnchors when an anchor
/// names an unknown node or edge, repeats, or pairs items that plain 1-WL (before
/// anchoring) already tells apart. Inputs that plain 1-WL separates as wholes give
/// NoIsomorphism whatever the anchors.
IrResult align_wl_anchored(const WeightedHypergraph& h1, const WeightedHypergraph& h2, const AnchorSet& anchors = {});

/// φ*(D1) followed by D2. Throws IncompleteMapping for nodes outside φ*.
Dataset fuse_datasets(const Dataset& d1, const Dataset& d2, const NodeRelabeling& phi_star);

}  // namespace hgr
