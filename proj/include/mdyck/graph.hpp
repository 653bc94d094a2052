#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "height_data.hpp"
#include "matrix.hpp"

namespace mdyck {

enum class EdgeKind {
  tree,        // f(n_1,...,n_h): parent to child
  ret,         // e(n_1,...,n_{H+1}): leaf to root
  comp_minus,  // c-_h(n): companion forward edge
  comp_plus,   // c+_h: companion backward edge
  plain,       // anything else (named graphs)
};

// Structured edge identity. The tuple carries the defining indices so that
// window decoding never has to parse names:
//   tree (n_1..n_h), ret (n_1..n_{H+1}), comp_minus {h, n}, comp_plus {h}.
struct EdgeLabel {
  EdgeKind kind = EdgeKind::plain;
  std::vector<long> tuple;
  std::string name;

  bool operator==(const EdgeLabel&) const = default;
};

struct VertexLabel {
  std::string name;
  std::vector<long> tuple;  // rotational graphs: path from root (empty at root)

  bool operator==(const VertexLabel&) const = default;
};

struct Edge {
  long src = 0;
  long dst = 0;

  bool operator==(const Edge&) const = default;
};

class Graph {
 public:
  Graph(std::vector<VertexLabel> vertices, std::vector<Edge> edges,
        std::vector<EdgeLabel> edge_labels)
      : vertices_(std::move(vertices)),
        edges_(std::move(edges)),
        edge_labels_(std::move(edge_labels)) {
    check_internal(!vertices_.empty(), "graph needs at least one vertex");
    check_internal(edges_.size() == edge_labels_.size(), "edge label count mismatch");
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (std::size_t i = 0; i < edges_.size(); i++) {
      const Edge& e = edges_[i];
      check_internal(e.src >= 0 && e.src < vertex_count(), "edge source out of range");
      check_internal(e.dst >= 0 && e.dst < vertex_count(), "edge target out of range");
      out_[static_cast<std::size_t>(e.src)].push_back(static_cast<long>(i));
      in_[static_cast<std::size_t>(e.dst)].push_back(static_cast<long>(i));
    }
  }

  long vertex_count() const { return static_cast<long>(vertices_.size()); }
  long edge_count() const { return static_cast<long>(edges_.size()); }

  long src(long e) const { return edges_[static_cast<std::size_t>(e)].src; }
  long dst(long e) const { return edges_[static_cast<std::size_t>(e)].dst; }

  const EdgeLabel& edge_label(long e) const { return edge_labels_[static_cast<std::size_t>(e)]; }
  const VertexLabel& vertex_label(long v) const { return vertices_[static_cast<std::size_t>(v)]; }

  const std::vector<long>& out_edges(long v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<long>& in_edges(long v) const { return in_[static_cast<std::size_t>(v)]; }

  // Looks up an edge by its printable name; input error when absent.
  long edge_by_name(const std::string& name) const {
    for (long e = 0; e < edge_count(); e++)
      if (edge_label(e).name == name) return e;
    throw InputError("unknown edge id: " + name);
  }

  bool is_strongly_connected() const {
    auto reach = [&](bool forward) {
      std::vector<char> seen(vertices_.size(), 0);
      std::vector<long> stack = {0};
      seen[0] = 1;
      while (!stack.empty()) {
        long v = stack.back();
        stack.pop_back();
        for (long e : forward ? out_edges(v) : in_edges(v)) {
          long w = forward ? dst(e) : src(e);
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
    };
    return reach(true) && reach(false);
  }

  std::string to_dot() const {
    std::string out = "digraph g {\n";
    for (long v = 0; v < vertex_count(); v++)
      out += "  v" + std::to_string(v) + " [label=\"" + vertex_label(v).name + "\"];\n";
    for (long e = 0; e < edge_count(); e++)
      out += "  v" + std::to_string(src(e)) + " -> v" + std::to_string(dst(e)) +
             " [label=\"" + edge_label(e).name + "\"];\n";
    return out + "}\n";
  }

 private:
  std::vector<VertexLabel> vertices_;
  std::vector<Edge> edges_;
  std::vector<EdgeLabel> edge_labels_;
  std::vector<std::vector<long>> out_;
  std::vector<std::vector<long>> in_;
};

namespace detail {

inline std::string tuple_name(const char* head, const std::vector<long>& tuple) {
  std::string out = head;
  out += "(";
  for (std::size_t i = 0; i < tuple.size(); i++) {
    if (i) out += ",";
    out += std::to_string(tuple[i]);
  }
  return out + ")";
}

}  // namespace detail

// The rotationally homogeneous graph of the given data: a uniform rooted tree
// (all leaves at height H, each height-h vertex with N_{h+1} children) plus
// N_{H+1} return edges from every leaf to the root. H = 0 degenerates to the
// one-vertex graph with N_1 loops.
inline Graph build_rotational(const HeightData& data) {
  const long height = data.height();

  // Vertex ids: root 0, then heights 1..H in mixed-radix order of their
  // defining tuples.
  std::vector<VertexLabel> vertices;
  vertices.push_back({"V(0)", {}});
  std::vector<long> offset(static_cast<std::size_t>(height + 1), 0);  // offset[h] = first id at height h
  {
    long next = 1;
    for (long h = 1; h <= height; h++) {
      offset[static_cast<std::size_t>(h)] = next;
      next += data.cumulative(h).get_si();
    }
  }

  std::vector<long> tuple;
  auto vertex_id = [&](const std::vector<long>& t) {
    if (t.empty()) return 0L;
    long idx = 0;
    for (std::size_t i = 0; i < t.size(); i++)
      idx = idx * data.count(static_cast<long>(i) + 1) + (t[i] - 1);
    return offset[t.size()] + idx;
  };

  std::vector<Edge> edges;
  std::vector<EdgeLabel> labels;
  // Vertices are emitted height by height in mixed-radix order (last index
  // fastest), matching vertex_id.
  for (long h = 1; h <= height; h++) {
    tuple.assign(static_cast<std::size_t>(h), 1);
    while (true) {
      vertices.push_back({detail::tuple_name("V", tuple), tuple});
      long i = h - 1;
      while (i >= 0 && tuple[static_cast<std::size_t>(i)] == data.count(i + 1)) {
        tuple[static_cast<std::size_t>(i)] = 1;
        i--;
      }
      if (i < 0) break;
      tuple[static_cast<std::size_t>(i)]++;
    }
  }

  // Tree edges f(n_1..n_h), parent -> child.
  for (long h = 1; h <= height; h++) {
    tuple.assign(static_cast<std::size_t>(h), 1);
    while (true) {
      std::vector<long> parent(tuple.begin(), tuple.end() - 1);
      edges.push_back({vertex_id(parent), vertex_id(tuple)});
      labels.push_back({EdgeKind::tree, tuple, detail::tuple_name("f", tuple)});
      long i = h - 1;
      while (i >= 0 && tuple[static_cast<std::size_t>(i)] == data.count(i + 1)) {
        tuple[static_cast<std::size_t>(i)] = 1;
        i--;
      }
      if (i < 0) break;
      tuple[static_cast<std::size_t>(i)]++;
    }
  }

  // Return edges e(n_1..n_{H+1}), leaf -> root.
  tuple.assign(static_cast<std::size_t>(height + 1), 1);
  while (true) {
    std::vector<long> leaf(tuple.begin(), tuple.end() - 1);
    edges.push_back({vertex_id(leaf), 0});
    labels.push_back({EdgeKind::ret, tuple, detail::tuple_name("e", tuple)});
    long i = height;
    while (i >= 0 && tuple[static_cast<std::size_t>(i)] == data.count(i + 1)) {
      tuple[static_cast<std::size_t>(i)] = 1;
      i--;
    }
    if (i < 0) break;
    tuple[static_cast<std::size_t>(i)]++;
  }

  return Graph(std::move(vertices), std::move(edges), std::move(labels));
}

// Companion cycle on levels 1..H+1: N_h parallel forward edges c-_h(n) into
// level h (from level h-1, cyclically from H+1 into 1), and one backward edge
// c+_h out of level h. Vertex id = level - 1. Returns the graph together with
// its adjacency matrix.
inline std::pair<Graph, IntMatrix> build_companion(const HeightData& data) {
  const long levels = data.levels();
  std::vector<VertexLabel> vertices;
  for (long h = 1; h <= levels; h++) vertices.push_back({std::to_string(h), {h}});

  std::vector<Edge> edges;
  std::vector<EdgeLabel> labels;
  IntMatrix a(levels);
  auto add = [&](long from_level, long to_level, EdgeLabel label) {
    edges.push_back({from_level - 1, to_level - 1});
    labels.push_back(std::move(label));
    a.at(from_level - 1, to_level - 1) += 1;
  };
  for (long h = 1; h <= levels; h++) {
    const long below = (h == 1) ? levels : h - 1;
    for (long n = 1; n <= data.count(h); n++)
      add(below, h,
          {EdgeKind::comp_minus, {h, n}, "c-" + std::to_string(h) + "(" + std::to_string(n) + ")"});
    add(h, below, {EdgeKind::comp_plus, {h}, "c+" + std::to_string(h)});
  }
  return {Graph(std::move(vertices), std::move(edges), std::move(labels)), a};
}

// Two vertices; edges e12: V1->V2, e21: V2->V1, e11: loop at V1.
inline Graph fibonacci_graph() {
  std::vector<VertexLabel> vertices = {{"V1", {}}, {"V2", {}}};
  std::vector<Edge> edges = {{0, 1}, {1, 0}, {0, 0}};
  std::vector<EdgeLabel> labels = {
      {EdgeKind::plain, {}, "e12"},
      {EdgeKind::plain, {}, "e21"},
      {EdgeKind::plain, {}, "e11"},
  };
  return Graph(std::move(vertices), std::move(edges), std::move(labels));
}

// Tests the structural definition on an arbitrary strongly connected graph:
// the sole-incoming-edge subgraph must be a rooted tree covering every
// non-root vertex, with uniform leaf height, uniform child count per height,
// and all remaining edges running from leaves to the root with a uniform
// count of at least 2 per leaf. Recovers the data on success.
inline std::pair<bool, std::optional<HeightData>> check_rotational_homogeneity(const Graph& g) {
  const auto fail = std::make_pair(false, std::optional<HeightData>());
  if (!g.is_strongly_connected()) return fail;

  const long n = g.vertex_count();
  std::vector<char> is_tree_edge(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<long> parent_edge(static_cast<std::size_t>(n), -1);
  long root = -1;
  for (long v = 0; v < n; v++) {
    const auto& in = g.in_edges(v);
    if (in.size() == 1) {
      is_tree_edge[static_cast<std::size_t>(in[0])] = 1;
      parent_edge[static_cast<std::size_t>(v)] = in[0];
    } else {
      if (root != -1) return fail;  // more than one vertex without a sole incoming edge
      root = v;
    }
  }
  if (root == -1) return fail;  // tree edges would form a cycle

  // Breadth-first walk over tree edges from the root; must reach everything.
  std::vector<long> depth(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<long>> by_depth;
  depth[static_cast<std::size_t>(root)] = 0;
  by_depth.push_back({root});
  while (true) {
    std::vector<long> next;
    for (long v : by_depth.back())
      for (long e : g.out_edges(v))
        if (is_tree_edge[static_cast<std::size_t>(e)]) {
          long w = g.dst(e);
          if (depth[static_cast<std::size_t>(w)] != -1) return fail;
          depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
          next.push_back(w);
        }
    if (next.empty()) break;
    by_depth.push_back(std::move(next));
  }
  for (long v = 0; v < n; v++)
    if (depth[static_cast<std::size_t>(v)] == -1) return fail;

  const long height = static_cast<long>(by_depth.size()) - 1;
  std::vector<long> counts;

  // Uniform child count per height; leaves exactly at the last height.
  for (long h = 0; h < height; h++) {
    long expected = -1;
    for (long v : by_depth[static_cast<std::size_t>(h)]) {
      long children = 0;
      for (long e : g.out_edges(v))
        if (is_tree_edge[static_cast<std::size_t>(e)]) children++;
      if (expected == -1) expected = children;
      if (children != expected || children == 0) return fail;
    }
    counts.push_back(expected);
  }
  for (long v : by_depth[static_cast<std::size_t>(height)])
    for (long e : g.out_edges(v))
      if (is_tree_edge[static_cast<std::size_t>(e)]) return fail;

  // Non-tree edges: leaf -> root only, uniformly many per leaf.
  std::vector<long> return_count(static_cast<std::size_t>(n), 0);
  for (long e = 0; e < g.edge_count(); e++) {
    if (is_tree_edge[static_cast<std::size_t>(e)]) continue;
    if (depth[static_cast<std::size_t>(g.src(e))] != height) return fail;
    if (g.dst(e) != root) return fail;
    return_count[static_cast<std::size_t>(g.src(e))]++;
  }
  long leaf_out = -1;
  for (long v : by_depth[static_cast<std::size_t>(height)]) {
    long r = return_count[static_cast<std::size_t>(v)];
    if (leaf_out == -1) leaf_out = r;
    if (r != leaf_out) return fail;
  }
  if (leaf_out < 2) return fail;
  counts.push_back(leaf_out);

  return {true, HeightData(counts)};
}

}  // namespace mdyck
