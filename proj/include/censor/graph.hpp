#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace censor {

// Undirected edge between 0-based vertices, u < v.
struct Edge {
  int u;
  int v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A finite simple graph on vertices 0..vertex_count-1.
///
/// `source` remembers how the graph was named on the command line (a builtin
/// name such as "triangle" or a file path) so that space specs round-trip.
class Graph {
 public:
  // Edge endpoints are 1-based. Throws InvalidArgument on self-loops,
  // out-of-range endpoints, and duplicate edges.
  static Graph build(int vertex_count, std::span<const std::pair<int, int>> edges,
                     std::string source = {});

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  bool adjacent(int u, int v) const;
  const std::string& source() const noexcept { return source_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::string source_;
};

inline Graph build_graph(int vertex_count, std::span<const std::pair<int, int>> edges) {
  return Graph::build(vertex_count, edges);
}

Graph triangle_graph();

// First line `n`, then one `u v` pair per line (1-based). Blank lines and
// lines starting with '#' are ignored.
Graph parse_graph_text(std::string_view text, std::string source = {});
Graph read_graph_file(const std::filesystem::path& path);

// Builtin names: triangle, K<n>, path<n>, cycle<n>. Anything else is read
// as a graph file.
Graph load_graph(std::string_view name_or_path);

}  // namespace censor
