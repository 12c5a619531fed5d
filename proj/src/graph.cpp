#include "censor/graph.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace censor {

Graph Graph::build(int vertex_count, std::span<const std::pair<int, int>> edges,
                   std::string source) {
  if (vertex_count < 1) throw InvalidArgument("graph needs at least one vertex");
  Graph g;
  g.vertex_count_ = vertex_count;
  g.source_ = std::move(source);
  for (auto [a, b] : edges) {
    if (a < 1 || a > vertex_count || b < 1 || b > vertex_count) {
      throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has an endpoint outside 1.." + std::to_string(vertex_count));
    }
    if (a == b) throw InvalidArgument("self-loop at vertex " + std::to_string(a));
    g.edges_.push_back(Edge{std::min(a, b) - 1, std::max(a, b) - 1});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->u + 1) + "," +
                          std::to_string(dup->v + 1) + ")");
  }
  g.adjacency_.resize(static_cast<std::size_t>(vertex_count));
  for (const Edge& e : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    g.adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph triangle_graph() {
  const std::pair<int, int> edges[] = {{1, 2}, {2, 3}, {1, 3}};
  return Graph::build(3, edges, "triangle");
}

namespace {

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidArgument("malformed " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

// Parses the integer suffix of names like "path5"; nullopt if the name has
// the wrong prefix or a non-numeric suffix.
std::optional<int> builtin_size(std::string_view name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::string_view digits = name.substr(prefix.size());
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return n;
}

}  // namespace

Graph parse_graph_text(std::string_view text, std::string source) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<int> n;
  std::vector<std::pair<int, int>> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!n) {
      if (tokens.size() != 1) {
        throw InvalidArgument("graph line " + std::to_string(line_no) + ": expected vertex count");
      }
      n = parse_int(tokens[0], "vertex count");
      continue;
    }
    if (tokens.size() != 2) {
      throw InvalidArgument("graph line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(parse_int(tokens[0], "vertex"), parse_int(tokens[1], "vertex"));
  }
  if (!n) throw InvalidArgument("graph text has no vertex count");
  return Graph::build(*n, edges, std::move(source));
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open graph file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str(), path.string());
}

Graph load_graph(std::string_view name) {
  std::string source(name);
  if (name == "triangle") return triangle_graph();
  std::vector<std::pair<int, int>> edges;
  if (auto n = builtin_size(name, "K")) {
    for (int a = 1; a <= *n; ++a)
      for (int b = a + 1; b <= *n; ++b) edges.emplace_back(a, b);
    return Graph::build(*n, edges, source);
  }
  if (auto n = builtin_size(name, "path")) {
    for (int a = 1; a < *n; ++a) edges.emplace_back(a, a + 1);
    return Graph::build(*n, edges, source);
  }
  if (auto n = builtin_size(name, "cycle")) {
    if (*n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    for (int a = 1; a < *n; ++a) edges.emplace_back(a, a + 1);
    edges.emplace_back(1, *n);
    return Graph::build(*n, edges, source);
  }
  return read_graph_file(std::filesystem::path(source));
}

}  // namespace censor
