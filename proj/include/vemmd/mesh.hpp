#pragma once

#include <string>
#include <vector>

#include "vemmd/common.hpp"

namespace vemmd {

/// Undirected mesh edge with a fixed global orientation (a -> b). The global
/// normal is the right-hand normal of the tangent, so it points out of the
/// first cell that traversed the edge counter-clockwise.
struct Edge {
  int a = -1;
  int b = -1;
  double length = 0.0;
  Vec2 normal;    // unit, fixed global orientation
  Vec2 midpoint;
  int cells[2] = {-1, -1};  // adjacent cells; cells[1] == -1 on the boundary

  bool boundary() const { return cells[1] < 0; }
};

/// Edge of a cell: global edge index plus the sign that turns the global
/// normal into the outward normal of this cell.
struct CellEdge {
  int edge = -1;
  double sign = 1.0;
};

/// Polygonal mesh with CCW cells, deduplicated oriented edges and cached
/// geometric quantities. Immutable after build_mesh.
struct PolyMesh {
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> cells;  // CCW vertex loops
  std::vector<Edge> edges;
  std::vector<std::vector<CellEdge>> cell_edges;
  std::vector<int> boundary_edges;

  std::vector<double> cell_area;
  std::vector<Vec2> cell_centroid;
  std::vector<double> cell_diameter;
  double h = 0.0;  // max cell diameter

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  /// Polygon of cell K as a coordinate loop.
  std::vector<Vec2> cell_polygon(int K) const;

  /// Outward unit normal of edge e seen from cell K (sign * global normal).
  Vec2 outward_normal(int K, int local_edge) const;
};

struct QualityReport {
  double min_edge_ratio = 0.0;       // min over K,e of h_e / h_K
  double quasi_uniformity = 0.0;     // min over K of h_K / h
  int n_edges_max = 0;
  std::vector<bool> star_shaped_wrt_centroid;
  bool all_star_shaped() const;
};

/// Validates and assembles a PolyMesh from raw vertex/cell data. Clockwise
/// loops are reoriented; non-simple polygons, zero-length edges, dangling
/// vertices and inconsistent orientations raise Error.
PolyMesh build_mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells);

QualityReport quality(const PolyMesh& mesh);

/// True if point p lies in the kernel of the polygon (sees all of it).
bool point_in_kernel(const std::vector<Vec2>& poly, const Vec2& p, double tol_scale = 1e-12);

/// Point-in-polygon test, boundary counts as inside.
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p);

/// Affine rescale of a mesh (used to map unit-square meshes onto a domain).
PolyMesh scale_mesh(const PolyMesh& mesh, const Vec2& origin, double factor);

// JSON mesh exchange format: {"vertices": [[x,y],...], "cells": [[i0,...],...]}
// Floating point is serialized as shortest round-trip decimals.
std::string mesh_to_json(const PolyMesh& mesh);
PolyMesh mesh_from_json(const std::string& text);
void save_mesh_json(const PolyMesh& mesh, const std::string& path);
PolyMesh load_mesh_json(const std::string& path);

}  // namespace vemmd
