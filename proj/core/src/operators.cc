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

#include "qdouble/operators.h"

#include <algorithm>
#include <cstdlib>

#include "qdouble/errors.h"

namespace qdouble {

Operator::Operator(ModelPtr model, Kernel kernel, std::string name)
    : model_(std::move(model)), kernel_(std::move(kernel)), name_(std::move(name)) {
}

Operator Operator::identity(ModelPtr model) {
    return Operator(std::move(model), [](Config c, const Emit &emit) { emit(c, 1.0); }, "I");
}

QuantumState Operator::apply(const QuantumState &st) const {
    QuantumState out(st.model());
    auto &amps = out.amplitudes();
    amps.reserve(st.size());
    for (const auto &[c, a] : st.amplitudes()) {
        kernel_(c, [&](Config d, Complex w) { amps[d] += a * w; });
    }
    out.prune();
    return out;
}

Operator Operator::operator*(const Operator &rhs) const {
    Kernel a = kernel_, b = rhs.kernel_;
    return Operator(model_, [a, b](Config c, const Emit &emit) {
        b(c, [&](Config d, Complex w) { a(d, [&](Config f, Complex u) { emit(f, w * u); }); });
    }, name_ + "*" + rhs.name_);
}

Operator Operator::operator+(const Operator &rhs) const {
    Kernel a = kernel_, b = rhs.kernel_;
    return Operator(model_, [a, b](Config c, const Emit &emit) {
        a(c, emit);
        b(c, emit);
    }, name_ + "+" + rhs.name_);
}

Operator Operator::scaled(Complex s) const {
    Kernel a = kernel_;
    return Operator(model_, [a, s](Config c, const Emit &emit) {
        a(c, [&](Config d, Complex w) { emit(d, s * w); });
    }, name_);
}

Operator sum_of(ModelPtr model, const std::vector<Operator> &terms) {
    std::vector<Operator> copy = terms;
    return Operator(std::move(model), [copy](Config c, const Operator::Emit &emit) {
        for (const auto &t : copy) {
            t.apply_basis(c, emit);
        }
    }, "sum");
}

Operator gauge_operator(ModelPtr m, int v, int g) {
    const Model *mp = m.get();
    return Operator(m, [mp, v, g](Config c, const Operator::Emit &emit) { emit(mp->gauge(c, v, g), 1.0); },
                    "A[" + std::to_string(v) + "]^" + std::to_string(g));
}

Operator gauge_via_pauli(ModelPtr m, int v, int g) {
    auto e = m->lattice().vertex_edges(v);
    return left_mult(m, e[0], g) * left_mult(m, e[1], g) * right_mult(m, e[2], g) * right_mult(m, e[3], g);
}

Operator vertex_projector(ModelPtr m, int v) {
    const Model *mp = m.get();
    return Operator(m, [mp, v](Config c, const Operator::Emit &emit) {
        int n = mp->group().order();
        for (int g = 0; g < n; g++) {
            emit(mp->gauge(c, v, g), 1.0 / n);
        }
    }, "A[" + std::to_string(v) + "]");
}

Operator plaquette_projector(ModelPtr m, int p) {
    const Model *mp = m.get();
    return Operator(m, [mp, p](Config c, const Operator::Emit &emit) {
        if (mp->plaquette_holonomy(c, p) == 0) {
            emit(c, 1.0);
        }
    }, "B[" + std::to_string(p) + "]");
}

Operator plaquette_projector_irrep(ModelPtr m, int p) {
    const Model *mp = m.get();
    auto edges = m->lattice().plaquette_edges(p);
    return Operator(m, [mp, edges](Config c, const Operator::Emit &emit) {
        Complex s = 0;
        for (const auto &r : mp->irreps()) {
            Eigen::MatrixXcd prod = r.matrices[mp->value(c, edges[0])] * r.matrices[mp->value(c, edges[1])] *
                                    r.matrices[mp->value(c, edges[2])].adjoint() *
                                    r.matrices[mp->value(c, edges[3])].adjoint();
            s += double(r.dim) * prod.trace();
        }
        s /= double(mp->group().order());
        if (std::abs(s) > 0) {
            emit(c, s);
        }
    }, "B'[" + std::to_string(p) + "]");
}

int site_flux(const Model &m, Config c, Site s) {
    const auto &G = m.group();
    auto corners = m.lattice().plaquette_corners(s.plaquette);
    auto edges = m.lattice().plaquette_edges(s.plaquette);
    // Clockwise walk TL, TR, BR, BL on screen.
    int order[4] = {corners[0], corners[1], corners[3], corners[2]};
    int f[4] = {m.value(c, edges[0]), m.value(c, edges[1]), G.inv(m.value(c, edges[2])), G.inv(m.value(c, edges[3]))};
    int start = int(std::find(order, order + 4, s.vertex) - order);
    int h = 0;
    for (int i = 0; i < 4; i++) {
        h = G.mul(h, f[(start + i) % 4]);
    }
    return G.inv(h);
}

Operator site_flux_projector(ModelPtr m, Site s, int k) {
    const Model *mp = m.get();
    return Operator(m, [mp, s, k](Config c, const Operator::Emit &emit) {
        if (site_flux(*mp, c, s) == k) {
            emit(c, 1.0);
        }
    }, "Bs^" + std::to_string(k));
}

Operator left_mult(ModelPtr m, int e, int h) {
    const Model *mp = m.get();
    return Operator(m, [mp, e, h](Config c, const Operator::Emit &emit) {
        emit(mp->with_value(c, e, mp->group().mul(h, mp->value(c, e))), 1.0);
    }, "L+");
}

Operator right_mult(ModelPtr m, int e, int h) {
    const Model *mp = m.get();
    return Operator(m, [mp, e, h](Config c, const Operator::Emit &emit) {
        const auto &G = mp->group();
        emit(mp->with_value(c, e, G.mul(mp->value(c, e), G.inv(h))), 1.0);
    }, "L-");
}

Operator z_component(ModelPtr m, int e, int irrep, int alpha, int alpha_prime) {
    if (irrep < 0 || irrep >= (int)m->irreps().size()) {
        throw PreconditionError("irrep index out of range");
    }
    int d = m->irreps()[irrep].dim;
    if (alpha < 0 || alpha >= d || alpha_prime < 0 || alpha_prime >= d) {
        throw PreconditionError("matrix index out of range for irrep " + m->irreps()[irrep].label);
    }
    const Model *mp = m.get();
    return Operator(m, [mp, e, irrep, alpha, alpha_prime](Config c, const Operator::Emit &emit) {
        Complex w = mp->irreps()[irrep].matrices[mp->value(c, e)](alpha, alpha_prime);
        if (w != 0.0) {
            emit(c, w);
        }
    }, "Z");
}

Operator ribbon_sum(ModelPtr m, const Ribbon &r, int h, std::vector<Complex> weights, std::string name) {
    if ((int)weights.size() != m->group().order()) {
        throw PreconditionError("ribbon weights need one entry per group element");
    }
    const Model *mp = m.get();
    auto tris = r.triangles();
    return Operator(m, [mp, tris, h, weights](Config c, const Operator::Emit &emit) {
        const auto &G = mp->group();
        int path = 0;
        Config out = c;
        for (const auto &t : tris) {
            if (t.kind == TriangleKind::Direct) {
                int v = mp->value(c, t.edge);
                path = G.mul(path, t.sign > 0 ? v : G.inv(v));
            } else {
                int a = G.mul(G.inv(path), G.mul(h, path));
                int v = mp->value(out, t.edge);
                out = mp->with_value(out, t.edge, t.sign > 0 ? G.mul(a, v) : G.mul(v, G.inv(a)));
            }
        }
        if (weights[path] != 0.0) {
            emit(out, weights[path]);
        }
    }, std::move(name));
}

Operator ribbon_operator(ModelPtr m, const Ribbon &r, int h, int g) {
    std::vector<Complex> w(m->group().order(), 0.0);
    w.at(g) = 1.0;
    return ribbon_sum(m, r, h, std::move(w), "F^{" + std::to_string(h) + "," + std::to_string(g) + "}");
}

Operator ribbon_electric(ModelPtr m, const Ribbon &r, int irrep) {
    const auto &G = m->group();
    const auto &rep = m->irreps().at(irrep);
    std::vector<Complex> w(G.order());
    for (int g = 0; g < G.order(); g++) {
        w[g] = double(rep.dim) / G.order() * rep.character[G.inv(g)];
    }
    return ribbon_sum(m, r, 0, std::move(w), "F^" + rep.label);
}

Operator ribbon_magnetic(ModelPtr m, const Ribbon &r, int cls, int i, int i_prime) {
    const auto &G = m->group();
    if (cls < 0 || cls >= (int)G.classes().size()) {
        throw PreconditionError("class index out of range");
    }
    const auto &C = G.classes()[cls];
    if (i < 0 || i >= C.size() || i_prime < 0 || i_prime >= C.size()) {
        throw PreconditionError("magnetic component index out of class range");
    }
    std::vector<Complex> w(G.order(), 0.0);
    double z = 1.0 / C.centralizer.size();
    for (int k : C.centralizer) {
        w[G.mul(G.mul(C.transversal[i], k), G.inv(C.transversal[i_prime]))] += z;
    }
    return ribbon_sum(m, r, G.inv(C.members[i]), std::move(w),
                      "F^[" + G.element_name(C.representative) + "]_" + std::to_string(i) + std::to_string(i_prime));
}

Operator ribbon_magnetic_traced(ModelPtr m, const Ribbon &r, int cls) {
    const auto &C = m->group().classes().at(cls);
    std::vector<Operator> terms;
    for (int i = 0; i < C.size(); i++) {
        terms.push_back(ribbon_magnetic(m, r, cls, i, i));
    }
    Operator op = sum_of(m, terms);
    return Operator(m, [op](Config c, const Operator::Emit &emit) { op.apply_basis(c, emit); },
                    "F^[" + m->group().element_name(C.representative) + "]");
}

QuantumState apply_gauge(const QuantumState &st, int v, int g) {
    return gauge_operator(st.model(), v, g).apply(st);
}

QuantumState apply_plaquette(const QuantumState &st, int p) {
    return plaquette_projector(st.model(), p).apply(st);
}

QuantumState apply_ribbon(const QuantumState &st, const Ribbon &r, int h, int g) {
    return ribbon_operator(st.model(), r, h, g).apply(st);
}

uint64_t max_configs() {
    const char *env = std::getenv("QDOUBLE_MAX_CONFIGS");
    if (env != nullptr && *env != '\0') {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) {
            return v;
        }
    }
    return 10000000ULL;
}

Config sector_seed(const Model &m, int a, int b) {
    return m.flat_config(std::vector<int>(m.lattice().num_vertices(), 0), a, b);
}

std::vector<Config> sector_support(const Model &m, int a, int b) {
    const auto &G = m.group();
    if (!G.commute(a, b)) {
        throw PreconditionError("holonomy pair (" + G.element_name(a) + "," + G.element_name(b) +
                                ") does not commute; flat sectors need ab = ba");
    }
    int nv = m.lattice().num_vertices();
    long double total = 1;
    for (int v = 0; v < nv; v++) {
        total *= G.order();
    }
    long double distinct = total / G.centralizer(std::vector<int>{a, b}).size();
    if (distinct > (long double)max_configs()) {
        throw CapacityError("sector support of " + std::to_string((unsigned long long)distinct) +
                            " configurations exceeds the budget QDOUBLE_MAX_CONFIGS=" + std::to_string(max_configs()));
    }
    // Depth-first over per-vertex gauge choices. Vertex nv-1 only needs one
    // element per coset of the stabilizer, but duplicates are removed anyway.
    std::vector<Config> out;
    out.reserve((size_t)total);
    std::vector<Config> stack(nv + 1);
    stack[0] = sector_seed(m, a, b);
    std::vector<int> choice(nv, 0);
    int depth = 0;
    while (true) {
        if (depth == nv) {
            out.push_back(stack[nv]);
            depth--;
            while (depth >= 0 && ++choice[depth] == G.order()) {
                choice[depth] = 0;
                depth--;
            }
            if (depth < 0) {
                break;
            }
            stack[depth + 1] = m.gauge(stack[depth], depth, choice[depth]);
            depth++;
            continue;
        }
        stack[depth + 1] = m.gauge(stack[depth], depth, choice[depth]);
        depth++;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QuantumState ground_state(ModelPtr m, int a, int b) {
    const auto &G = m->group();
    if (!G.commute(a, b)) {
        throw PreconditionError("holonomy pair (" + G.element_name(a) + "," + G.element_name(b) +
                                ") does not commute; flat sectors need ab = ba");
    }
    QuantumState st = QuantumState::basis(m, sector_seed(*m, a, b));
    for (int v = 0; v < m->lattice().num_vertices(); v++) {
        st = vertex_projector(m, v).apply(st);
        if (st.size() > max_configs()) {
            throw CapacityError("ground state support exceeds the budget QDOUBLE_MAX_CONFIGS");
        }
    }
    return st.normalized();
}

QuantumState ground_state_via_ribbons(ModelPtr m, int a, int b) {
    const auto &G = m->group();
    if (!G.commute(a, b)) {
        throw PreconditionError("holonomy pair does not commute; flat sectors need ab = ba");
    }
    const auto &lat = m->lattice();
    QuantumState st = QuantumState::basis(m, 0);
    st = ribbon_operator(m, ribbon_y(lat, 0), G.inv(a), 0).apply(st);
    st = ribbon_operator(m, ribbon_x(lat, 0), b, a).apply(st);
    for (int v = 0; v < lat.num_vertices(); v++) {
        st = vertex_projector(m, v).apply(st);
    }
    return st.normalized();
}

}  // namespace qdouble
