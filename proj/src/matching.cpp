#include "cauchon/matching.hpp"

#include "cauchon/error.hpp"

#include <algorithm>
#include <set>

namespace cauchon {

namespace {

bool shares_line(Cell a, Cell b) { return a.row == b.row || a.col == b.col; }

// Adjacency over white-cell indices (row-major), symmetric.
std::vector<std::vector<bool>> adjacency(const LabeledCauchonDiagram& diagram) {
  const auto cells = diagram.cells();
  const int d = diagram.size();
  std::vector<std::vector<bool>> adj(d, std::vector<bool>(d, false));
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      adj[a][b] = adj[b][a] = shares_line(cells[a], cells[b]);
    }
  }
  return adj;
}

class MatchingSearch {
 public:
  MatchingSearch(const LabeledCauchonDiagram& diagram, const MatchingVisitor& visit)
      : labels_(diagram.labels()), adj_(adjacency(diagram)), used_(labels_.size(), false), visit_(visit) {}

  void run() {
    if (labels_.size() % 2 != 0) return;
    descend(0);
  }

 private:
  void descend(std::size_t first_free) {
    while (first_free < used_.size() && used_[first_free]) ++first_free;
    if (first_free == used_.size()) {
      visit_(current_);
      return;
    }
    used_[first_free] = true;
    for (std::size_t partner = first_free + 1; partner < used_.size(); ++partner) {
      if (used_[partner] || !adj_[first_free][partner]) continue;
      used_[partner] = true;
      current_.edges.push_back({labels_[first_free], labels_[partner]});
      descend(first_free + 1);
      current_.edges.pop_back();
      used_[partner] = false;
    }
    used_[first_free] = false;
  }

  std::span<const int> labels_;
  std::vector<std::vector<bool>> adj_;
  std::vector<bool> used_;
  Matching current_;
  const MatchingVisitor& visit_;
};

}  // namespace

WhiteGraph white_edges(const LabeledCauchonDiagram& diagram) {
  WhiteGraph graph;
  graph.vertices.assign(diagram.labels().begin(), diagram.labels().end());
  const auto cells = diagram.cells();
  const auto labels = diagram.labels();
  for (int a = 0; a < diagram.size(); ++a) {
    for (int b = 0; b < diagram.size(); ++b) {
      const bool left_of = cells[a].row == cells[b].row && cells[a].col < cells[b].col;
      const bool above = cells[a].col == cells[b].col && cells[a].row < cells[b].row;
      if (left_of || above) graph.edges.push_back({labels[a], labels[b]});
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  return graph;
}

std::int64_t inversions(std::span<const int> x) {
  std::int64_t count = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) count += x[j] > x[k];
  }
  return count;
}

std::int64_t inversions_between(std::span<const int> x, std::span<const int> y) {
  std::int64_t count = 0;
  for (int yk : y) {
    for (int xl : x) count += yk < xl;
  }
  return count;
}

int matching_sign(std::span<const Edge> edges) {
  std::vector<int> sequence;
  sequence.reserve(2 * edges.size());
  std::set<int> seen;
  for (const Edge& e : edges) {
    if (e.from >= e.to) throw Error(Errc::MalformedMatching, "matching edge must list its smaller endpoint first");
    if (!seen.insert(e.from).second || !seen.insert(e.to).second) {
      throw Error(Errc::MalformedMatching, "matching endpoints repeat");
    }
    sequence.push_back(e.from);
    sequence.push_back(e.to);
  }
  return inversions(sequence) % 2 == 0 ? 1 : -1;
}

bool is_perfect_matching(const LabeledCauchonDiagram& diagram, const Matching& matching) {
  const auto cells = diagram.cells();
  std::vector<bool> covered(diagram.size(), false);
  for (const Edge& e : matching.edges) {
    if (e.from >= e.to) return false;
    auto a = diagram.index_of_label(e.from);
    auto b = diagram.index_of_label(e.to);
    if (!a || !b || covered[*a] || covered[*b]) return false;
    if (!shares_line(cells[*a], cells[*b])) return false;
    covered[*a] = covered[*b] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

void for_each_matching(const LabeledCauchonDiagram& diagram, const MatchingVisitor& visit) {
  MatchingSearch(diagram, visit).run();
}

std::vector<Matching> enumerate_matchings(const LabeledCauchonDiagram& diagram) {
  std::vector<Matching> out;
  for_each_matching(diagram, [&out](const Matching& m) { out.push_back(m); });
  return out;
}

mpz_class pfaffian_by_matchings(const LabeledCauchonDiagram& diagram) {
  if (diagram.size() == 0) return 1;
  long total = 0;
  for_each_matching(diagram, [&total](const Matching& m) { total += matching_sign(m); });
  return mpz_class(total);
}

mpz_class pfaffian_by_matchings(const CauchonDiagram& diagram) {
  return pfaffian_by_matchings(canonical_labels(diagram));
}

mpz_class vert_partition_sum(const LabeledCauchonDiagram& diagram, std::span<const int> columns) {
  const CauchonDiagram& grid = diagram.diagram();
  if (grid.rows() != 2) throw Error(Errc::WrongRowCount, "expected a two-row diagram");
  if (grid.has_black_column()) throw Error(Errc::HasBlackColumn, "diagram has an all-black column");

  std::vector<bool> wanted(grid.cols() + 1, false);
  for (int col : columns) {
    if (col < 1 || col > grid.cols() || !grid.column_all_white(col)) {
      throw Error(Errc::InvalidSubset, "column " + std::to_string(col) + " is not an all-white column", 0, col);
    }
    wanted[col] = true;
  }

  const auto cells = diagram.cells();
  auto cell_of = [&](int label) { return cells[*diagram.index_of_label(label)]; };
  long total = 0;
  for_each_matching(diagram, [&](const Matching& m) {
    std::vector<bool> vertical(grid.cols() + 1, false);
    for (const Edge& e : m.edges) {
      const Cell a = cell_of(e.from);
      const Cell b = cell_of(e.to);
      if (a.col == b.col) vertical[a.col] = true;
    }
    if (vertical == wanted) total += matching_sign(m);
  });
  return mpz_class(total);
}

}  // namespace cauchon
