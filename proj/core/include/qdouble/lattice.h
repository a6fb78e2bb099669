// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDOUBLE_LATTICE_H
#define QDOUBLE_LATTICE_H

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdouble {

/// A (vertex, plaquette) pair with the vertex a corner of the plaquette.
struct Site {
    int vertex = 0;
    int plaquette = 0;
    auto operator<=>(const Site &) const = default;
};

enum class TriangleKind { Direct, Dual };

struct Triangle {
    TriangleKind kind = TriangleKind::Direct;
    int edge = 0;
    Site from;
    Site to;
    /// Direct: +1 when the traversal from.vertex -> to.vertex follows the edge arrow.
    /// Dual: +1 when the edge points away from the shared vertex.
    int sign = 1;
    bool operator==(const Triangle &) const = default;
};

/// Periodic Lx x Ly square lattice. Horizontal edges point to +x, vertical
/// edges point to +y (downward on screen). Edge 2v is the right edge of vertex
/// v and edge 2v+1 its down edge; plaquette p(x,y) has top-left corner (x,y).
class TorusLattice {
   public:
    struct Edge {
        int tail;
        int head;
        bool horizontal;
        int x;
        int y;
        /// Horizontal: {plaquette below, plaquette above}. Vertical: {right, left}.
        std::array<int, 2> plaquettes;
    };

    TorusLattice(int lx, int ly);

    int lx() const {
        return lx_;
    }
    int ly() const {
        return ly_;
    }
    int num_vertices() const {
        return lx_ * ly_;
    }
    int num_edges() const {
        return 2 * lx_ * ly_;
    }
    int num_plaquettes() const {
        return lx_ * ly_;
    }

    int vertex(int x, int y) const;
    int plaquette(int x, int y) const;
    int right_edge(int x, int y) const {
        return 2 * vertex(x, y);
    }
    int down_edge(int x, int y) const {
        return 2 * vertex(x, y) + 1;
    }
    int vx(int v) const {
        return v % lx_;
    }
    int vy(int v) const {
        return v / lx_;
    }

    const Edge &edge(int e) const {
        return edges_[e];
    }

    /// {top-left, top-right, bottom-left, bottom-right}
    std::array<int, 4> plaquette_corners(int p) const;
    /// {top, right, bottom, left}
    std::array<int, 4> plaquette_edges(int p) const;
    /// {right (out), down (out), left (in), up (in)}
    std::array<int, 4> vertex_edges(int v) const;
    /// {south-east, north-east, north-west, south-west}
    std::array<int, 4> vertex_plaquettes(int v) const;

    bool is_site(Site s) const;
    /// Edge of p joining corners a and b, or -1.
    int edge_in_plaquette(int p, int a, int b) const;
    /// Edge incident to v shared by plaquettes p and q, or -1.
    int edge_at_vertex(int v, int p, int q) const;
    /// The site (v(x,y), p(x-1,y)) that the straight ribbons start from.
    Site canonical_site(int x, int y) const;

    nlohmann::json to_json() const;

   private:
    int lx_;
    int ly_;
    std::vector<Edge> edges_;
};

class Ribbon {
   public:
    Ribbon() = default;
    /// Validates connectivity and that no edge is carried twice.
    Ribbon(const TorusLattice &lat, Site start, std::vector<Triangle> triangles);
    /// Triangles are inferred from consecutive sites.
    static Ribbon from_sites(const TorusLattice &lat, const std::vector<Site> &sites);

    const std::vector<Triangle> &triangles() const {
        return triangles_;
    }
    Site start() const {
        return start_;
    }
    Site end() const {
        return end_;
    }
    bool closed() const {
        return !triangles_.empty() && start_ == end_;
    }
    bool trivial() const {
        return triangles_.empty();
    }
    bool has_direct() const;
    bool has_dual() const;
    std::vector<Site> sites() const;
    std::vector<int> direct_edges() const;
    std::vector<int> dual_edges() const;

    const std::string &name() const {
        return name_;
    }
    Ribbon &named(std::string name) {
        name_ = std::move(name);
        return *this;
    }

    bool operator==(const Ribbon &other) const {
        return start_ == other.start_ && triangles_ == other.triangles_;
    }

    nlohmann::json to_json() const;
    static Ribbon from_json(const TorusLattice &lat, const nlohmann::json &j);

   private:
    Site start_;
    Site end_;
    std::vector<Triangle> triangles_;
    std::string name_;
};

TorusLattice build_torus(int lx, int ly);

/// Closed ribbon through row y: dual across v(x,y), direct along h(x,y), x = 0..Lx-1.
Ribbon ribbon_x(const TorusLattice &lat, int y);
/// Closed ribbon down column x: direct along v(x,y), dual across h(x-1,y+1).
Ribbon ribbon_y(const TorusLattice &lat, int x);
/// Four dual triangles counterclockwise (on screen) around v, starting at its south-east plaquette.
Ribbon vertex_loop(const TorusLattice &lat, int v);
/// Four direct triangles around p starting at its top-left corner; holonomy is the B_p product.
Ribbon plaquette_loop(const TorusLattice &lat, int p);
/// Shortest staircase between two sites: +x steps first, then +y steps.
/// Identical sites give the trivial ribbon.
Ribbon open_ribbon(const TorusLattice &lat, Site from, Site to);

struct StandardRibbons {
    std::vector<Ribbon> rows;        // ribbon_x per row
    std::vector<Ribbon> columns;     // ribbon_y per column
    std::vector<Ribbon> vertices;    // vertex_loop per vertex
    std::vector<Ribbon> plaquettes;  // plaquette_loop per plaquette
};
StandardRibbons standard_ribbons(const TorusLattice &lat);

Ribbon compose_ribbons(const TorusLattice &lat, const Ribbon &a, const Ribbon &b);

struct Region {
    std::vector<int> edges;  // sorted, unique
    bool simply_connected = false;
    std::string name;
};

/// All edges bounding any plaquette of the w x h block with top-left plaquette (x, y).
Region plaquette_block(const TorusLattice &lat, int x, int y, int w, int h);
Region all_edges(const TorusLattice &lat);
Region complement(const TorusLattice &lat, const Region &r);

struct Tripartition {
    Region a;
    Region b;
    Region c;
    int width = 0;
};

/// A is the closure of plaquette rows [row, row + a_rows); a_rows == 0 makes A the
/// single line of horizontal edges at `row`. B is the closure of `width` further plaquette rows split
/// around A (ceil above, floor below) minus A; C is the rest.
Tripartition row_tripartition(const TorusLattice &lat, int row, int a_rows, int width);

/// Throws PreconditionError when the parts overlap or miss an edge.
void validate_tripartition(const TorusLattice &lat, const Tripartition &t);

/// Simply-connected test regions used for marginal comparisons, restricted to
/// those that do not wrap around the torus.
std::vector<Region> canonical_regions(const TorusLattice &lat);

}  // namespace qdouble

#endif
