#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "votenet/community.hpp"
#include "votenet/graph.hpp"

namespace votenet {

enum class TieLabel : std::uint8_t { Weak, Strong };

// Per-edge overlap and label, aligned with the graph's edge order.
struct TieClassification {
  double threshold = 0.0;
  std::vector<double> overlap;
  std::vector<TieLabel> label;
};

// |N(a) ∩ N(b)| / |(N(a) ∪ N(b)) \ {a, b}| on the unweighted topology; 0 when
// the endpoints have no other neighbors.
double neighborhood_overlap(const SimilarityGraph& g, std::size_t edge);
double neighborhood_overlap(const SimilarityGraph& g, std::string_view a, std::string_view b);

std::vector<double> edge_overlaps(const SimilarityGraph& g);

// Strong iff overlap >= threshold. Overlaps come from the full topology of `g`.
TieClassification classify_ties(const SimilarityGraph& g, double threshold);
TieClassification classify_ties(std::span<const double> overlaps, double threshold);

// Strong edges only, isolated nodes dropped.
SimilarityGraph strong_tie_subgraph(const SimilarityGraph& g, const TieClassification& t);

struct SweepPoint {
  double threshold = 0.0;
  double modularity = 0.0;
  std::size_t retained_members = 0;
  std::size_t communities = 0;
};

struct SweepCurve {
  std::size_t base_members = 0;
  std::vector<SweepPoint> points;
};

// Classify, filter and detect communities at each threshold (ascending).
// Points whose strong-tie graph is empty record modularity 0.
SweepCurve threshold_sweep(const SimilarityGraph& g, std::span<const double> thresholds,
                           std::uint64_t seed, unsigned restarts = 1);

// Threshold with the highest modularity among points retaining at least
// `min_retained_fraction` of the base members; smaller threshold on ties.
// Throws std::runtime_error when no point qualifies.
double select_threshold(const SweepCurve& curve, double min_retained_fraction = 0.5);

// "start:stop:step", inclusive of stop.
std::vector<double> parse_sweep_range(std::string_view spec);

}  // namespace votenet
