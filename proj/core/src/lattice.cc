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

#include "qdouble/lattice.h"

#include <algorithm>
#include <functional>
#include <set>

#include "qdouble/errors.h"

namespace qdouble {

namespace {

int wrap(int a, int n) {
    return ((a % n) + n) % n;
}

nlohmann::json site_json(Site s) {
    return nlohmann::json::array({s.vertex, s.plaquette});
}

Site site_from_json(const nlohmann::json &j) {
    return Site{j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

TorusLattice::TorusLattice(int lx, int ly) : lx_(lx), ly_(ly) {
    if (lx < 2 || ly < 2) {
        throw PreconditionError("torus dimensions must be at least 2x2");
    }
    for (int y = 0; y < ly; y++) {
        for (int x = 0; x < lx; x++) {
            edges_.push_back(Edge{vertex(x, y), vertex(x + 1, y), true, x, y, {plaquette(x, y), plaquette(x, y - 1)}});
            edges_.push_back(Edge{vertex(x, y), vertex(x, y + 1), false, x, y, {plaquette(x, y), plaquette(x - 1, y)}});
        }
    }
}

int TorusLattice::vertex(int x, int y) const {
    return wrap(y, ly_) * lx_ + wrap(x, lx_);
}

int TorusLattice::plaquette(int x, int y) const {
    return wrap(y, ly_) * lx_ + wrap(x, lx_);
}

std::array<int, 4> TorusLattice::plaquette_corners(int p) const {
    int x = p % lx_, y = p / lx_;
    return {vertex(x, y), vertex(x + 1, y), vertex(x, y + 1), vertex(x + 1, y + 1)};
}

std::array<int, 4> TorusLattice::plaquette_edges(int p) const {
    int x = p % lx_, y = p / lx_;
    return {right_edge(x, y), down_edge(x + 1, y), right_edge(x, y + 1), down_edge(x, y)};
}

std::array<int, 4> TorusLattice::vertex_edges(int v) const {
    int x = vx(v), y = vy(v);
    return {right_edge(x, y), down_edge(x, y), right_edge(x - 1, y), down_edge(x, y - 1)};
}

std::array<int, 4> TorusLattice::vertex_plaquettes(int v) const {
    int x = vx(v), y = vy(v);
    return {plaquette(x, y), plaquette(x, y - 1), plaquette(x - 1, y - 1), plaquette(x - 1, y)};
}

bool TorusLattice::is_site(Site s) const {
    if (s.vertex < 0 || s.vertex >= num_vertices() || s.plaquette < 0 || s.plaquette >= num_plaquettes()) {
        return false;
    }
    auto c = plaquette_corners(s.plaquette);
    return std::find(c.begin(), c.end(), s.vertex) != c.end();
}

int TorusLattice::edge_in_plaquette(int p, int a, int b) const {
    for (int e : plaquette_edges(p)) {
        const Edge &E = edges_[e];
        if ((E.tail == a && E.head == b) || (E.tail == b && E.head == a)) {
            return e;
        }
    }
    return -1;
}

int TorusLattice::edge_at_vertex(int v, int p, int q) const {
    for (int e : vertex_edges(v)) {
        const Edge &E = edges_[e];
        if ((E.plaquettes[0] == p && E.plaquettes[1] == q) || (E.plaquettes[0] == q && E.plaquettes[1] == p)) {
            return e;
        }
    }
    return -1;
}

Site TorusLattice::canonical_site(int x, int y) const {
    return Site{vertex(x, y), plaquette(x - 1, y)};
}

nlohmann::json TorusLattice::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : edges_) {
        edges.push_back({{"tail", e.tail}, {"head", e.head}, {"dir", e.horizontal ? "right" : "down"}});
    }
    return {{"lx", lx_}, {"ly", ly_}, {"edges", edges}};
}

TorusLattice build_torus(int lx, int ly) {
    return TorusLattice(lx, ly);
}

Ribbon::Ribbon(const TorusLattice &lat, Site start, std::vector<Triangle> triangles)
    : start_(start), end_(start), triangles_(std::move(triangles)) {
    if (!lat.is_site(start)) {
        throw ValidationError("ribbon start is not a site");
    }
    std::set<int> used;
    Site cur = start;
    for (size_t i = 0; i < triangles_.size(); i++) {
        const Triangle &t = triangles_[i];
        std::string where = "ribbon triangle " + std::to_string(i);
        if (t.from != cur) {
            throw ValidationError(where + " does not start where the previous one ended");
        }
        if (!lat.is_site(t.to)) {
            throw ValidationError(where + " ends on a non-site");
        }
        if (t.edge < 0 || t.edge >= lat.num_edges()) {
            throw ValidationError(where + " carries an invalid edge");
        }
        const auto &E = lat.edge(t.edge);
        if (t.kind == TriangleKind::Direct) {
            if (t.from.plaquette != t.to.plaquette || lat.edge_in_plaquette(t.from.plaquette, t.from.vertex, t.to.vertex) != t.edge ||
                t.from.vertex == t.to.vertex) {
                throw ValidationError(where + " is not a direct triangle");
            }
            if (t.sign != (E.tail == t.from.vertex ? 1 : -1)) {
                throw ValidationError(where + " has the wrong orientation sign");
            }
        } else {
            if (t.from.vertex != t.to.vertex || t.from.plaquette == t.to.plaquette ||
                lat.edge_at_vertex(t.from.vertex, t.from.plaquette, t.to.plaquette) != t.edge) {
                throw ValidationError(where + " is not a dual triangle");
            }
            if (t.sign != (E.tail == t.from.vertex ? 1 : -1)) {
                throw ValidationError(where + " has the wrong orientation sign");
            }
        }
        if (!used.insert(t.edge).second) {
            throw ValidationError(where + " reuses edge " + std::to_string(t.edge));
        }
        cur = t.to;
    }
    end_ = cur;
}

Ribbon Ribbon::from_sites(const TorusLattice &lat, const std::vector<Site> &sites) {
    if (sites.empty()) {
        throw ValidationError("ribbon needs at least one site");
    }
    std::vector<Triangle> tris;
    for (size_t i = 0; i + 1 < sites.size(); i++) {
        Site a = sites[i], b = sites[i + 1];
        Triangle t;
        t.from = a;
        t.to = b;
        if (a.plaquette == b.plaquette && a.vertex != b.vertex) {
            t.kind = TriangleKind::Direct;
            t.edge = lat.edge_in_plaquette(a.plaquette, a.vertex, b.vertex);
        } else if (a.vertex == b.vertex && a.plaquette != b.plaquette) {
            t.kind = TriangleKind::Dual;
            t.edge = lat.edge_at_vertex(a.vertex, a.plaquette, b.plaquette);
        } else {
            t.edge = -1;
        }
        if (t.edge < 0) {
            throw ValidationError("sites " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not joined by a triangle");
        }
        t.sign = lat.edge(t.edge).tail == a.vertex ? 1 : -1;
        tris.push_back(t);
    }
    return Ribbon(lat, sites.front(), std::move(tris));
}

bool Ribbon::has_direct() const {
    return std::any_of(triangles_.begin(), triangles_.end(), [](const Triangle &t) { return t.kind == TriangleKind::Direct; });
}

bool Ribbon::has_dual() const {
    return std::any_of(triangles_.begin(), triangles_.end(), [](const Triangle &t) { return t.kind == TriangleKind::Dual; });
}

std::vector<Site> Ribbon::sites() const {
    std::vector<Site> out{start_};
    for (const auto &t : triangles_) {
        out.push_back(t.to);
    }
    return out;
}

std::vector<int> Ribbon::direct_edges() const {
    std::vector<int> out;
    for (const auto &t : triangles_) {
        if (t.kind == TriangleKind::Direct) {
            out.push_back(t.edge);
        }
    }
    return out;
}

std::vector<int> Ribbon::dual_edges() const {
    std::vector<int> out;
    for (const auto &t : triangles_) {
        if (t.kind == TriangleKind::Dual) {
            out.push_back(t.edge);
        }
    }
    return out;
}

nlohmann::json Ribbon::to_json() const {
    nlohmann::json tris = nlohmann::json::array();
    for (const auto &t : triangles_) {
        tris.push_back({{"kind", t.kind == TriangleKind::Direct ? "direct" : "dual"},
                        {"edge", t.edge},
                        {"from", site_json(t.from)},
                        {"to", site_json(t.to)},
                        {"sign", t.sign}});
    }
    nlohmann::json j{{"start", site_json(start_)}, {"end", site_json(end_)}, {"closed", closed()}, {"triangles", tris}};
    if (!name_.empty()) {
        j["name"] = name_;
    }
    return j;
}

Ribbon Ribbon::from_json(const TorusLattice &lat, const nlohmann::json &j) {
    std::vector<Triangle> tris;
    for (const auto &t : j.at("triangles")) {
        Triangle tri;
        tri.kind = t.at("kind").get<std::string>() == "direct" ? TriangleKind::Direct : TriangleKind::Dual;
        tri.edge = t.at("edge").get<int>();
        tri.from = site_from_json(t.at("from"));
        tri.to = site_from_json(t.at("to"));
        tri.sign = t.at("sign").get<int>();
        tris.push_back(tri);
    }
    Ribbon r(lat, site_from_json(j.at("start")), std::move(tris));
    if (j.contains("name")) {
        r.named(j.at("name").get<std::string>());
    }
    return r;
}

Ribbon ribbon_x(const TorusLattice &lat, int y) {
    std::vector<Site> s{lat.canonical_site(0, y)};
    for (int x = 0; x < lat.lx(); x++) {
        s.push_back({lat.vertex(x, y), lat.plaquette(x, y)});
        s.push_back({lat.vertex(x + 1, y), lat.plaquette(x, y)});
    }
    return Ribbon::from_sites(lat, s).named("xi_x[" + std::to_string(y) + "]");
}

Ribbon ribbon_y(const TorusLattice &lat, int x) {
    std::vector<Site> s{lat.canonical_site(x, 0)};
    for (int y = 0; y < lat.ly(); y++) {
        s.push_back({lat.vertex(x, y + 1), lat.plaquette(x - 1, y)});
        s.push_back({lat.vertex(x, y + 1), lat.plaquette(x - 1, y + 1)});
    }
    return Ribbon::from_sites(lat, s).named("xi_y[" + std::to_string(x) + "]");
}

Ribbon vertex_loop(const TorusLattice &lat, int v) {
    auto p = lat.vertex_plaquettes(v);
    return Ribbon::from_sites(lat, {{v, p[0]}, {v, p[1]}, {v, p[2]}, {v, p[3]}, {v, p[0]}})
        .named("vertex[" + std::to_string(v) + "]");
}

Ribbon plaquette_loop(const TorusLattice &lat, int p) {
    auto c = lat.plaquette_corners(p);
    return Ribbon::from_sites(lat, {{c[0], p}, {c[1], p}, {c[3], p}, {c[2], p}, {c[0], p}})
        .named("plaquette[" + std::to_string(p) + "]");
}

namespace {

// Sites visited while turning around v from plaquette `from` to plaquette `to`,
// excluding the starting site. Shorter way round; ties go counterclockwise.
std::vector<Site> turn(const TorusLattice &lat, int v, int from, int to) {
    auto ring = lat.vertex_plaquettes(v);
    int a = int(std::find(ring.begin(), ring.end(), from) - ring.begin());
    int b = int(std::find(ring.begin(), ring.end(), to) - ring.begin());
    int ccw = wrap(b - a, 4);
    int step = ccw <= 2 ? 1 : -1;
    std::vector<Site> out;
    for (int i = a; i != b;) {
        i = wrap(i + step, 4);
        out.push_back({v, ring[i]});
    }
    return out;
}

// Neighbouring sites of s with the lattice edge each step uses.
std::vector<std::pair<Site, int>> site_neighbours(const TorusLattice &lat, Site s) {
    std::vector<std::pair<Site, int>> out;
    for (int e : lat.plaquette_edges(s.plaquette)) {
        const auto &E = lat.edge(e);
        if (E.tail != s.vertex && E.head != s.vertex) {
            continue;
        }
        // Direct step along e inside the plaquette.
        out.push_back({{E.tail == s.vertex ? E.head : E.tail, s.plaquette}, e});
        // Dual step across e around the vertex.
        out.push_back({{s.vertex, E.plaquettes[0] == s.plaquette ? E.plaquettes[1] : E.plaquettes[0]}, e});
    }
    return out;
}

// Shortest site path from `from` to `to` that never reuses a lattice edge
// (iterative deepening with unconstrained distances as the bound).
std::vector<Site> search_path(const TorusLattice &lat, Site from, Site to) {
    auto key = [&](Site s) { return s.vertex * lat.num_plaquettes() + s.plaquette; };
    int n = lat.num_vertices() * lat.num_plaquettes();
    std::vector<int> dist(n, -1);
    std::vector<Site> queue{to};
    dist[key(to)] = 0;
    for (size_t i = 0; i < queue.size(); i++) {
        for (auto [t, e] : site_neighbours(lat, queue[i])) {
            if (dist[key(t)] < 0) {
                dist[key(t)] = dist[key(queue[i])] + 1;
                queue.push_back(t);
            }
        }
    }
    std::vector<char> used(lat.num_edges(), 0);
    std::vector<Site> path{from};
    int next_bound = 0;
    std::function<bool(int)> dfs = [&](int bound) {
        Site s = path.back();
        int f = int(path.size()) - 1 + dist[key(s)];
        if (f > bound) {
            next_bound = std::min(next_bound, f);
            return false;
        }
        if (s == to) {
            return true;
        }
        for (auto [t, e] : site_neighbours(lat, s)) {
            if (used[e]) {
                continue;
            }
            used[e] = 1;
            path.push_back(t);
            if (dfs(bound)) {
                return true;
            }
            path.pop_back();
            used[e] = 0;
        }
        return false;
    };
    for (int bound = dist[key(from)]; bound <= lat.num_edges();) {
        next_bound = lat.num_edges() + 1;
        if (dfs(bound)) {
            return path;
        }
        bound = next_bound;
    }
    return {};
}

}  // namespace

Ribbon open_ribbon(const TorusLattice &lat, Site from, Site to) {
    if (!lat.is_site(from) || !lat.is_site(to)) {
        throw ValidationError("open ribbon endpoints must be sites");
    }
    if (from == to) {
        return Ribbon(lat, from, {}).named("trivial");
    }
    int x0 = lat.vx(from.vertex), y0 = lat.vy(from.vertex);
    int dx = wrap(lat.vx(to.vertex) - x0, lat.lx()), dy = wrap(lat.vy(to.vertex) - y0, lat.ly());
    // Straight legs can collide with the turns at either end (a leg may run
    // along an edge a turn crosses), so try both directions and both leg
    // orders and keep the shortest staircase that is a valid ribbon.
    auto attempt = [&](int sx, int sy, bool x_first) -> std::vector<Site> {
        std::vector<Site> s{from};
        int x = x0, y = y0;
        for (Site t : turn(lat, from.vertex, from.plaquette, lat.canonical_site(x, y).plaquette)) {
            s.push_back(t);
        }
        int nx = sx > 0 ? dx : (lat.lx() - dx) % lat.lx();
        int ny = sy > 0 ? dy : (lat.ly() - dy) % lat.ly();
        auto step_x = [&]() {
            if (sx > 0) {
                s.push_back({lat.vertex(x, y), lat.plaquette(x, y)});
                s.push_back({lat.vertex(x + 1, y), lat.plaquette(x, y)});
                x++;
            } else {
                s.push_back({lat.vertex(x - 1, y), lat.plaquette(x - 1, y)});
                s.push_back({lat.vertex(x - 1, y), lat.plaquette(x - 2, y)});
                x--;
            }
        };
        auto step_y = [&]() {
            if (sy > 0) {
                s.push_back({lat.vertex(x, y + 1), lat.plaquette(x - 1, y)});
                s.push_back({lat.vertex(x, y + 1), lat.plaquette(x - 1, y + 1)});
                y++;
            } else {
                s.push_back({lat.vertex(x, y), lat.plaquette(x - 1, y - 1)});
                s.push_back({lat.vertex(x, y - 1), lat.plaquette(x - 1, y - 1)});
                y--;
            }
        };
        for (int leg = 0; leg < 2; leg++) {
            if ((leg == 0) == x_first) {
                for (int i = 0; i < nx; i++) {
                    step_x();
                }
            } else {
                for (int i = 0; i < ny; i++) {
                    step_y();
                }
            }
        }
        for (Site t : turn(lat, to.vertex, s.back().plaquette, to.plaquette)) {
            s.push_back(t);
        }
        // Drop immediate back-and-forth pairs produced by the turns.
        std::vector<Site> path;
        for (Site t : s) {
            if (path.size() >= 2 && path[path.size() - 2] == t) {
                path.pop_back();
            } else if (path.empty() || path.back() != t) {
                path.push_back(t);
            }
        }
        return path;
    };
    struct Candidate {
        size_t length;
        int order;
        std::vector<Site> sites;
    };
    std::vector<Candidate> candidates;
    int order = 0;
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            for (bool x_first : {true, false}) {
                auto path = attempt(sx, sy, x_first);
                candidates.push_back({path.size(), order++, std::move(path)});
            }
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate &a, const Candidate &b) { return a.length < b.length; });
    for (const auto &c : candidates) {
        try {
            return Ribbon::from_sites(lat, c.sites).named("open");
        } catch (const ValidationError &) {
        }
    }
    auto path = search_path(lat, from, to);
    if (path.empty()) {
        throw ValidationError("no ribbon joins the requested sites");
    }
    return Ribbon::from_sites(lat, path).named("open");
}

StandardRibbons standard_ribbons(const TorusLattice &lat) {
    StandardRibbons out;
    for (int y = 0; y < lat.ly(); y++) {
        out.rows.push_back(ribbon_x(lat, y));
    }
    for (int x = 0; x < lat.lx(); x++) {
        out.columns.push_back(ribbon_y(lat, x));
    }
    for (int v = 0; v < lat.num_vertices(); v++) {
        out.vertices.push_back(vertex_loop(lat, v));
    }
    for (int p = 0; p < lat.num_plaquettes(); p++) {
        out.plaquettes.push_back(plaquette_loop(lat, p));
    }
    return out;
}

Ribbon compose_ribbons(const TorusLattice &lat, const Ribbon &a, const Ribbon &b) {
    if (a.end() != b.start()) {
        throw ValidationError("cannot compose ribbons: first ends at a different site than the second starts");
    }
    auto tris = a.triangles();
    tris.insert(tris.end(), b.triangles().begin(), b.triangles().end());
    return Ribbon(lat, a.start(), std::move(tris));
}

Region plaquette_block(const TorusLattice &lat, int x, int y, int w, int h) {
    std::set<int> edges;
    for (int dy = 0; dy < h; dy++) {
        for (int dx = 0; dx < w; dx++) {
            for (int e : lat.plaquette_edges(lat.plaquette(x + dx, y + dy))) {
                edges.insert(e);
            }
        }
    }
    Region r;
    r.edges.assign(edges.begin(), edges.end());
    r.simply_connected = w < lat.lx() && h < lat.ly();
    r.name = "block(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(w) + "x" + std::to_string(h) + ")";
    return r;
}

Region all_edges(const TorusLattice &lat) {
    Region r;
    for (int e = 0; e < lat.num_edges(); e++) {
        r.edges.push_back(e);
    }
    r.name = "all";
    return r;
}

Region complement(const TorusLattice &lat, const Region &r) {
    std::set<int> in(r.edges.begin(), r.edges.end());
    Region out;
    for (int e = 0; e < lat.num_edges(); e++) {
        if (!in.count(e)) {
            out.edges.push_back(e);
        }
    }
    out.name = "complement(" + r.name + ")";
    return out;
}

Tripartition row_tripartition(const TorusLattice &lat, int row, int a_rows, int width) {
    if (a_rows < 0 || width < 0 || a_rows + width >= lat.ly() + (a_rows == 0 ? 1 : 0)) {
        throw PreconditionError("tripartition rows do not fit on the torus");
    }
    std::set<int> a, b;
    if (a_rows == 0) {
        for (int x = 0; x < lat.lx(); x++) {
            a.insert(lat.right_edge(x, row));
        }
    } else {
        auto block = plaquette_block(lat, 0, row, lat.lx(), a_rows);
        a.insert(block.edges.begin(), block.edges.end());
    }
    int above = (width + 1) / 2, below = width / 2;
    auto add_rows = [&](int first, int count) {
        if (count > 0) {
            auto block = plaquette_block(lat, 0, first, lat.lx(), count);
            for (int e : block.edges) {
                if (!a.count(e)) {
                    b.insert(e);
                }
            }
        }
    };
    add_rows(row - above, above);
    add_rows(row + a_rows, below);
    Tripartition t;
    t.width = width;
    t.a.edges.assign(a.begin(), a.end());
    t.a.name = "A";
    t.b.edges.assign(b.begin(), b.end());
    t.b.name = "B";
    for (int e = 0; e < lat.num_edges(); e++) {
        if (!a.count(e) && !b.count(e)) {
            t.c.edges.push_back(e);
        }
    }
    t.c.name = "C";
    if (t.c.edges.empty()) {
        throw PreconditionError("tripartition leaves region C empty");
    }
    return t;
}

void validate_tripartition(const TorusLattice &lat, const Tripartition &t) {
    std::vector<int> seen(lat.num_edges(), 0);
    for (const Region *r : {&t.a, &t.b, &t.c}) {
        for (int e : r->edges) {
            if (e < 0 || e >= lat.num_edges()) {
                throw PreconditionError("tripartition contains an invalid edge");
            }
            if (seen[e]++) {
                throw PreconditionError("tripartition parts overlap at edge " + std::to_string(e));
            }
        }
    }
    for (int e = 0; e < lat.num_edges(); e++) {
        if (!seen[e]) {
            throw PreconditionError("tripartition misses edge " + std::to_string(e));
        }
    }
}

std::vector<Region> canonical_regions(const TorusLattice &lat) {
    std::vector<Region> out;
    for (auto [w, h] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
        Region r = plaquette_block(lat, 0, 0, w, h);
        if (r.simply_connected) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace qdouble
