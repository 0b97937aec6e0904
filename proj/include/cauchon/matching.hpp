#pragma once

// The white-square graph of a labeled diagram, its perfect matchings, and the
// signed matching sum. This is the combinatorial definition of the Pfaffian
// and serves as the oracle for the elimination route in pfaffian.hpp.

#include "cauchon/diagram.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cauchon {

// An edge between two labels. In a graph edge `from` is left of or above `to`;
// in a matching edge from < to.
struct Edge {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct WhiteGraph {
  std::vector<int> vertices;  // labels, increasing
  std::vector<Edge> edges;    // sorted
};

WhiteGraph white_edges(const LabeledCauchonDiagram& diagram);

std::int64_t inversions(std::span<const int> x);
// #{(k, l) : y_k < x_l}: the inversions contributed by placing x before y.
std::int64_t inversions_between(std::span<const int> x, std::span<const int> y);

struct Matching {
  std::vector<Edge> edges;
  friend bool operator==(const Matching&, const Matching&) = default;
};

// Sign of the permutation (1, 2, ..., 2k) -> (i_1, j_1, ..., i_k, j_k), i.e.
// (-1)^inv of the concatenated endpoint sequence. Independent of edge order.
// Throws Error{MalformedMatching} unless every edge has from < to and all
// endpoints are distinct.
int matching_sign(std::span<const Edge> edges);
inline int matching_sign(const Matching& matching) { return matching_sign(matching.edges); }

bool is_perfect_matching(const LabeledCauchonDiagram& diagram, const Matching& matching);

using MatchingVisitor = std::function<void(const Matching&)>;

// Pairs the lowest unmatched label with each admissible partner in turn, so
// matchings arrive with edges sorted and in lex order of their edge lists.
// Nothing is visited when d is odd; one empty matching when d = 0.
void for_each_matching(const LabeledCauchonDiagram& diagram, const MatchingVisitor& visit);
std::vector<Matching> enumerate_matchings(const LabeledCauchonDiagram& diagram);

mpz_class pfaffian_by_matchings(const LabeledCauchonDiagram& diagram);
mpz_class pfaffian_by_matchings(const CauchonDiagram& diagram);

// Brute-force signed sum over the matchings whose vertical edges occupy
// exactly the columns in `columns`. The diagram must have two rows and no
// all-black column (Errc::WrongRowCount / Errc::HasBlackColumn), and every
// listed column must be entirely white (Errc::InvalidSubset).
mpz_class vert_partition_sum(const LabeledCauchonDiagram& diagram, std::span<const int> columns);

}  // namespace cauchon
