#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lvqe {

enum class LatticeKind { Line, Square, Triangular, Kagome, Custom };

std::string to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(const std::string& name);

// Undirected weighted edge. Canonical form has u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Interaction graph of a spin or fermion model. Vertices are sites,
// edges carry coupling weights. The edge list is kept canonical:
// each edge stored with u < v, sorted lexicographically, no duplicates,
// no self loops. A default-constructed graph is empty.
class LatticeGraph {
 public:
  LatticeGraph() = default;
  LatticeGraph(std::size_t num_vertices, std::vector<Edge> edges,
               LatticeKind kind = LatticeKind::Custom, bool periodic = false);

  std::size_t num_vertices() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  LatticeKind kind() const { return kind_; }
  bool periodic() const { return periodic_; }
  bool empty() const { return num_vertices_ == 0; }

  std::size_t degree(std::uint32_t vertex) const;

  // JSON record of the graph; from_record(to_record()) is an exact round trip.
  std::string to_record() const;
  static LatticeGraph from_record(const std::string& json_text);

  friend bool operator==(const LatticeGraph&, const LatticeGraph&) = default;

 private:
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  LatticeKind kind_ = LatticeKind::Custom;
  bool periodic_ = false;
};

// Chain of n sites; periodic adds the wrap-around bond (n >= 3 so the
// wrap edge is not a duplicate). All bonds carry the same weight.
LatticeGraph line_lattice(std::size_t num_sites, bool periodic = true,
                          double weight = 1.0);

// rows x cols grid with nearest-neighbour bonds; periodic closes both
// directions into a torus. Site (r, c) has index r * cols + c.
LatticeGraph square_lattice(std::size_t rows, std::size_t cols,
                            bool periodic = true, double weight = 1.0);

// Square lattice plus one diagonal per plaquette, giving the triangular
// tiling. Periodic closes it into a torus.
LatticeGraph triangular_lattice(std::size_t rows, std::size_t cols,
                                bool periodic = true, double weight = 1.0);

// 12-site kagome cell: a closed ring of six corner-sharing triangles.
// Even vertices 0,2,..,10 are the shared corners (degree 4), odd vertices
// are the triangle apexes (degree 2), 18 bonds in total.
LatticeGraph kagome_lattice(double weight = 1.0);

// Arbitrary edge list; input is validated and canonicalized. Duplicate
// edges collapse to the first occurrence.
LatticeGraph custom_lattice(std::size_t num_vertices, std::vector<Edge> edges);

}  // namespace lvqe
