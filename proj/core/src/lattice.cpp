#include "lvqe/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace lvqe {

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Line: return "line";
    case LatticeKind::Square: return "square";
    case LatticeKind::Triangular: return "triangular";
    case LatticeKind::Kagome: return "kagome";
    case LatticeKind::Custom: return "custom";
  }
  throw std::invalid_argument("unknown lattice kind");
}

LatticeKind lattice_kind_from_string(const std::string& name) {
  if (name == "line") return LatticeKind::Line;
  if (name == "square") return LatticeKind::Square;
  if (name == "triangular") return LatticeKind::Triangular;
  if (name == "kagome") return LatticeKind::Kagome;
  if (name == "custom") return LatticeKind::Custom;
  throw std::invalid_argument("unknown lattice kind: " + name);
}

LatticeGraph::LatticeGraph(std::size_t num_vertices, std::vector<Edge> edges,
                           LatticeKind kind, bool periodic)
    : num_vertices_(num_vertices), kind_(kind), periodic_(periodic) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("lattice edge is a self loop");
    }
    if (e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw std::invalid_argument("lattice edge endpoint out of range");
    }
    if (e.u > e.v) {
      std::swap(e.u, e.v);
    }
    // Duplicates collapse to the first occurrence in input order.
    if (seen.emplace(e.u, e.v).second) {
      edges_.push_back(e);
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
}

std::size_t LatticeGraph::degree(std::uint32_t vertex) const {
  if (vertex >= num_vertices_) {
    throw std::invalid_argument("vertex out of range");
  }
  std::size_t d = 0;
  for (const Edge& e : edges_) {
    d += (e.u == vertex) + (e.v == vertex);
  }
  return d;
}

std::string LatticeGraph::to_record() const {
  nlohmann::ordered_json j;
  j["num_vertices"] = num_vertices_;
  j["kind"] = to_string(kind_);
  j["periodic"] = periodic_;
  auto edge_list = nlohmann::ordered_json::array();
  for (const Edge& e : edges_) {
    edge_list.push_back({e.u, e.v, e.weight});
  }
  j["edges"] = std::move(edge_list);
  return j.dump();
}

LatticeGraph LatticeGraph::from_record(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad lattice record: ") + e.what());
  }
  std::vector<Edge> edges;
  for (const auto& item : j.at("edges")) {
    edges.push_back(Edge{item.at(0).get<std::uint32_t>(),
                         item.at(1).get<std::uint32_t>(),
                         item.at(2).get<double>()});
  }
  return LatticeGraph(j.at("num_vertices").get<std::size_t>(), std::move(edges),
                      lattice_kind_from_string(j.at("kind").get<std::string>()),
                      j.at("periodic").get<bool>());
}

LatticeGraph line_lattice(std::size_t num_sites, bool periodic, double weight) {
  if (num_sites < 2) {
    throw std::invalid_argument("line lattice needs at least 2 sites");
  }
  if (periodic && num_sites < 3) {
    throw std::invalid_argument("periodic line lattice needs at least 3 sites");
  }
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < num_sites; ++i) {
    edges.push_back(Edge{i, i + 1, weight});
  }
  if (periodic) {
    edges.push_back(Edge{0, static_cast<std::uint32_t>(num_sites - 1), weight});
  }
  return LatticeGraph(num_sites, std::move(edges), LatticeKind::Line, periodic);
}

namespace {

// Nearest-neighbour bonds of a rows x cols grid, optionally wrapped into a
// torus; with_diagonal additionally bonds (r, c)-(r+1, c+1), which turns the
// square tiling into the triangular one. Wrap-around bonds that would
// duplicate an open-boundary bond (2-wide directions) are collapsed by the
// LatticeGraph constructor.
LatticeGraph grid_lattice(std::size_t rows, std::size_t cols, bool periodic,
                          double weight, bool with_diagonal, LatticeKind kind) {
  if (rows < 1 || cols < 1 || rows * cols < 2) {
    throw std::invalid_argument("grid lattice needs at least 2 sites");
  }
  auto at = [cols](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(r * cols + c);
  };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const bool wrap_r = r + 1 < rows || periodic;
      const bool wrap_c = c + 1 < cols || periodic;
      if (cols > 1 && wrap_c) {
        edges.push_back(Edge{at(r, c), at(r, (c + 1) % cols), weight});
      }
      if (rows > 1 && wrap_r) {
        edges.push_back(Edge{at(r, c), at((r + 1) % rows, c), weight});
      }
      if (with_diagonal && rows > 1 && cols > 1 && wrap_r && wrap_c) {
        edges.push_back(Edge{at(r, c), at((r + 1) % rows, (c + 1) % cols), weight});
      }
    }
  }
  return LatticeGraph(rows * cols, std::move(edges), kind, periodic);
}

}  // namespace

LatticeGraph square_lattice(std::size_t rows, std::size_t cols, bool periodic,
                            double weight) {
  return grid_lattice(rows, cols, periodic, weight, false, LatticeKind::Square);
}

LatticeGraph triangular_lattice(std::size_t rows, std::size_t cols, bool periodic,
                                double weight) {
  return grid_lattice(rows, cols, periodic, weight, true, LatticeKind::Triangular);
}

LatticeGraph kagome_lattice(double weight) {
  // Six triangles share their corners around a ring: triangle t spans
  // corner 2t, apex 2t+1 and corner 2(t+1) mod 12.
  std::vector<Edge> edges;
  for (std::uint32_t t = 0; t < 6; ++t) {
    const std::uint32_t corner = 2 * t;
    const std::uint32_t apex = 2 * t + 1;
    const std::uint32_t next_corner = (2 * t + 2) % 12;
    edges.push_back(Edge{corner, apex, weight});
    edges.push_back(Edge{apex, next_corner, weight});
    edges.push_back(Edge{corner, next_corner, weight});
  }
  return LatticeGraph(12, std::move(edges), LatticeKind::Kagome, true);
}

LatticeGraph custom_lattice(std::size_t num_vertices, std::vector<Edge> edges) {
  if (num_vertices == 0) {
    throw std::invalid_argument("custom lattice needs at least 1 vertex");
  }
  return LatticeGraph(num_vertices, std::move(edges), LatticeKind::Custom, false);
}

}  // namespace lvqe
