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

#include "qdouble/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "qdouble/errors.h"

namespace qdouble {

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Strong:
            return "strong";
        case Verdict::Weak:
            return "weak";
        default:
            return "broken";
    }
}

RibbonSymmetry electric_symmetry(ModelPtr m, const Ribbon &r, int irrep) {
    RibbonSymmetry s;
    s.name = "F^" + m->irreps().at(irrep).label;
    s.ribbon = r;
    s.traced = ribbon_electric(m, r, irrep);
    s.label = irrep;
    return s;
}

RibbonSymmetry magnetic_symmetry(ModelPtr m, const Ribbon &r, int cls) {
    const auto &G = m->group();
    const auto &C = G.classes().at(cls);
    RibbonSymmetry s;
    s.name = "F^[" + G.element_name(C.representative) + "]";
    s.ribbon = r;
    s.traced = ribbon_magnetic_traced(m, r, cls);
    for (int i = 0; i < C.size(); i++) {
        for (int j = 0; j < C.size(); j++) {
            s.components.push_back(ribbon_magnetic(m, r, cls, i, j));
        }
    }
    s.magnetic = true;
    s.label = cls;
    return s;
}

nlohmann::json SymmetryVerdict::to_json() const {
    nlohmann::json j{{"operator", op},
                     {"ribbon", ribbon},
                     {"verdict", verdict_name(verdict)},
                     {"scalar", {scalar.real(), scalar.imag()}},
                     {"residual", residual},
                     {"tolerance", tolerance}};
    if (weak_residual >= 0) {
        j["weak_scalar"] = {weak_scalar.real(), weak_scalar.imag()};
        j["weak_residual"] = weak_residual;
    }
    return j;
}

SymmetryVerdict check_strong(const DensityState &rho, const RibbonSymmetry &op, double tol) {
    if (!op.ribbon.closed()) {
        throw PreconditionError("symmetry checks need a closed ribbon");
    }
    SymmetryVerdict v;
    v.op = op.name;
    v.ribbon = op.ribbon.name();
    v.tolerance = tol;
    OuterSum x = OuterSum::from(rho);
    double norm = x.frobenius();
    if (norm == 0) {
        throw PreconditionError("symmetry checks need a nonzero state");
    }
    OuterSum ox = x.left(op.traced);
    v.scalar = ox.trace() / rho.trace();
    v.residual = ox.plus(x, -v.scalar).frobenius() / norm;
    v.verdict = v.residual <= tol ? Verdict::Strong : Verdict::Broken;
    return v;
}

SymmetryVerdict check_weak(const DensityState &rho, const RibbonSymmetry &op, double tol) {
    if (!op.magnetic) {
        throw PreconditionError("weak checks need a magnetic component family");
    }
    const auto &C = rho.model()->group().classes().at(op.label);
    if ((int)op.components.size() != C.size() * C.size()) {
        throw PreconditionError("incomplete magnetic component family");
    }
    SymmetryVerdict v = check_strong(rho, op, tol);
    OuterSum x = OuterSum::from(rho);
    OuterSum sigma = x.conjugate(op.components);
    v.weak_scalar = sigma.trace() / rho.trace();
    v.weak_residual = sigma.plus(x, -v.weak_scalar).frobenius() / x.frobenius();
    if (v.verdict != Verdict::Strong) {
        v.verdict = v.weak_residual <= tol ? Verdict::Weak : Verdict::Broken;
    }
    return v;
}

AuditSet default_audit_set(const TorusLattice &lat) {
    auto std = standard_ribbons(lat);
    AuditSet s;
    s.electric = std.plaquettes;
    s.electric.insert(s.electric.end(), std.rows.begin(), std.rows.end());
    s.electric.insert(s.electric.end(), std.columns.begin(), std.columns.end());
    s.magnetic = std.vertices;
    return s;
}

AuditSet patch_audit_set(const TorusLattice &lat, const std::vector<int> &patch) {
    std::set<int> p(patch.begin(), patch.end());
    auto touches = [&](const std::vector<int> &edges) {
        return std::any_of(edges.begin(), edges.end(), [&](int e) { return p.count(e) > 0; });
    };
    AuditSet all = default_audit_set(lat), out;
    for (const auto &r : all.electric) {
        if (touches(r.direct_edges())) {
            out.electric.push_back(r);
        }
    }
    for (const auto &r : all.magnetic) {
        if (touches(r.dual_edges())) {
            out.magnetic.push_back(r);
        }
    }
    return out;
}

std::vector<SymmetryVerdict> symmetry_audit(const DensityState &rho, const AuditSet &set, double tol) {
    const auto &m = rho.model();
    std::vector<SymmetryVerdict> out;
    for (const auto &r : set.electric) {
        for (size_t k = 1; k < m->irreps().size(); k++) {
            out.push_back(check_strong(rho, electric_symmetry(m, r, (int)k), tol));
        }
    }
    for (const auto &r : set.magnetic) {
        for (size_t c = 1; c < m->group().classes().size(); c++) {
            out.push_back(check_weak(rho, magnetic_symmetry(m, r, (int)c), tol));
        }
    }
    return out;
}

std::vector<int> enclosed_plaquettes(const TorusLattice &lat, const Ribbon &closed) {
    if (!closed.closed() || closed.has_dual()) {
        throw PreconditionError("enclosed plaquettes need a closed ribbon of direct triangles");
    }
    std::set<int> wall;
    for (int e : closed.direct_edges()) {
        wall.insert(e);
    }
    std::vector<char> in(lat.num_plaquettes(), 0);
    std::queue<int> todo;
    for (const auto &s : closed.sites()) {
        if (!in[s.plaquette]) {
            in[s.plaquette] = 1;
            todo.push(s.plaquette);
        }
    }
    while (!todo.empty()) {
        int p = todo.front();
        todo.pop();
        for (int e : lat.plaquette_edges(p)) {
            if (wall.count(e)) {
                continue;
            }
            for (int q : lat.edge(e).plaquettes) {
                if (!in[q]) {
                    in[q] = 1;
                    todo.push(q);
                }
            }
        }
    }
    std::vector<int> out;
    for (int p = 0; p < lat.num_plaquettes(); p++) {
        if (in[p]) {
            out.push_back(p);
        }
    }
    if ((int)out.size() == lat.num_plaquettes()) {
        throw PreconditionError("closed ribbon does not bound a disk");
    }
    return out;
}

AnomalyResult anomaly_phase(const DensityState &rho_cl, int irrep, int cls, const Ribbon &closed, const Ribbon &open) {
    const auto &m = rho_cl.model();
    if (open.closed() || open.trivial()) {
        throw PreconditionError("anomaly phase needs a nontrivial open ribbon");
    }
    auto inside = enclosed_plaquettes(m->lattice(), closed);
    auto is_in = [&](int p) { return std::find(inside.begin(), inside.end(), p) != inside.end(); };
    if (!is_in(open.end().plaquette) || is_in(open.start().plaquette)) {
        throw PreconditionError("the open ribbon must end inside and start outside the closed ribbon");
    }
    Operator fg = ribbon_electric(m, closed, irrep);
    Operator fc = ribbon_magnetic_traced(m, open, cls);
    OuterSum x = OuterSum::from(rho_cl);
    AnomalyResult r;
    r.trace_left = x.conjugate({fc}).left(fg).trace();
    r.trace_right = x.left(fg).conjugate({fc}).trace();
    r.expected = m->irreps()[irrep].character[m->group().classes()[cls].representative];
    if (std::abs(r.trace_right) < 1e-12) {
        throw NumericalError("anomaly phase is degenerate: tr(R) vanishes");
    }
    r.ratio = r.trace_left / r.trace_right;
    return r;
}

double swssb_fidelity(const DensityState &rho_cl, int cls, const Ribbon &open) {
    const auto &m = rho_cl.model();
    if (open.closed()) {
        throw PreconditionError("fidelity order parameter needs an open ribbon");
    }
    const auto &C = m->group().classes().at(cls);
    std::vector<Operator> comps;
    for (int i = 0; i < C.size(); i++) {
        for (int j = 0; j < C.size(); j++) {
            comps.push_back(ribbon_magnetic(m, open, cls, i, j).scaled(1.0 / std::sqrt(double(C.size()))));
        }
    }
    OuterSum dressed = OuterSum::from(rho_cl).conjugate(comps);
    if (std::abs(dressed.trace()) < 1e-14) {
        throw NumericalError("dressed state has zero trace");
    }
    return fidelity(rho_cl, dressed.to_density(m));
}

ModularData s_matrix(const FiniteGroup &g) {
    ModularData md;
    AnyonSpectrum spec = anyon_spectrum(g);
    md.labels = spec.labels;
    int n = (int)md.labels.size();
    md.s = Eigen::MatrixXcd::Zero(n, n);
    const auto &classes = g.classes();
    // Position of each parent element inside each centralizer.
    std::vector<std::vector<int>> local(classes.size(), std::vector<int>(g.order(), -1));
    for (size_t c = 0; c < classes.size(); c++) {
        const auto &emb = spec.centralizers[c].sub.embedding;
        for (size_t i = 0; i < emb.size(); i++) {
            local[c][emb[i]] = (int)i;
        }
    }
    for (int A = 0; A < n; A++) {
        for (int B = 0; B < n; B++) {
            const auto &la = md.labels[A], &lb = md.labels[B];
            int x = classes[la.flux].representative, y = classes[lb.flux].representative;
            const auto &ra = spec.centralizers[la.flux].reps[la.charge];
            const auto &rb = spec.centralizers[lb.flux].reps[lb.charge];
            Complex s = 0;
            for (int h = 0; h < g.order(); h++) {
                int u = g.conj(h, g.inv(y));               // h y^-1 h^-1
                int w = g.conj(g.inv(h), g.inv(x));        // h^-1 x^-1 h
                if (!g.commute(x, u)) {
                    continue;
                }
                s += ra.character[local[la.flux][u]] * rb.character[local[lb.flux][w]];
            }
            md.s(A, B) = s / double(classes[la.flux].centralizer.size() * classes[lb.flux].centralizer.size());
        }
    }
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    md.unitarity_deviation = (md.s * md.s.adjoint() - id).cwiseAbs().maxCoeff();
    md.symmetry_deviation = (md.s - md.s.transpose()).cwiseAbs().maxCoeff();
    const auto &reps0 = spec.centralizers[0].reps;
    for (int A = 0; A < n; A++) {
        for (int B = 0; B < n; B++) {
            const auto &la = md.labels[A], &lb = md.labels[B];
            if (la.flux != 0 || lb.charge != 0) {
                continue;
            }
            int x = classes[lb.flux].representative;
            Complex expect = double(classes[lb.flux].size()) / g.order() * reps0[la.charge].character[g.inv(x)];
            md.electric_magnetic_deviation = std::max(md.electric_magnetic_deviation, std::abs(md.s(A, B) - expect));
        }
    }
    if (md.unitarity_deviation > 1e-8) {
        throw NumericalError("S-matrix of " + g.name() + " is not unitary (deviation " +
                             std::to_string(md.unitarity_deviation) + ")");
    }
    return md;
}

GsdCount brute_force_gsd(const FiniteGroup &g, const TorusLattice &lat) {
    auto m = make_model(g, lat);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < g.order(); a++) {
        for (int b = 0; b < g.order(); b++) {
            if (g.commute(a, b)) {
                pairs.emplace_back(a, b);
            }
        }
    }
    int nv = lat.num_vertices();
    long double total = pairs.size();
    for (int v = 1; v < nv; v++) {
        total *= g.order();
    }
    if (total > (long double)max_configs()) {
        throw CapacityError("brute-force GSD needs " + std::to_string((unsigned long long)total) +
                            " flat configurations; budget QDOUBLE_MAX_CONFIGS=" + std::to_string(max_configs()));
    }
    std::vector<Config> configs;
    configs.reserve((size_t)total);
    std::vector<int> t(nv, 0);
    for (auto [a, b] : pairs) {
        std::fill(t.begin(), t.end(), 0);
        while (true) {
            configs.push_back(m->flat_config(t, a, b));
            int v = 1;
            while (v < nv && ++t[v] == g.order()) {
                t[v] = 0;
                v++;
            }
            if (v >= nv) {
                break;
            }
        }
    }
    std::unordered_map<Config, int> index;
    index.reserve(configs.size() * 2);
    for (size_t i = 0; i < configs.size(); i++) {
        index[configs[i]] = (int)i;
    }
    if (index.size() != configs.size()) {
        throw NumericalError("flat configuration parametrization is not injective");
    }
    std::vector<int> parent(configs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (size_t i = 0; i < configs.size(); i++) {
        for (int v = 0; v < nv; v++) {
            for (int s = 1; s < g.order(); s++) {
                auto it = index.find(m->gauge(configs[i], v, s));
                if (it == index.end()) {
                    throw NumericalError("gauge move left the flat configurations");
                }
                int a = find((int)i), b = find(it->second);
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }
    GsdCount out;
    out.flat_configs = configs.size();
    for (size_t i = 0; i < configs.size(); i++) {
        out.count += find((int)i) == (int)i;
    }
    return out;
}

DensityState decohered_sector(ModelPtr m, int a, int b) {
    auto support = sector_support(*m, a, b);
    return DensityState::uniform(std::move(m), support);
}

namespace {

double marginal_distance(const ClassicalRep &p, const ClassicalRep &q) {
    double worst = 0;
    size_t i = 0, j = 0;
    while (i < p.probs.size() || j < q.probs.size()) {
        if (j == q.probs.size() || (i < p.probs.size() && p.probs[i].first < q.probs[j].first)) {
            worst = std::max(worst, p.probs[i++].second);
        } else if (i == p.probs.size() || q.probs[j].first < p.probs[i].first) {
            worst = std::max(worst, q.probs[j++].second);
        } else {
            worst = std::max(worst, std::abs(p.probs[i++].second - q.probs[j++].second));
        }
    }
    return worst;
}

}  // namespace

ExtremalReport extremal_analysis(const FiniteGroup &g, const TorusLattice &lat, const ExtremalOptions &opt) {
    auto m = make_model(g, lat);
    ExtremalReport rep;
    rep.sectors = commuting_pair_orbits(g);
    int n = (int)rep.sectors.size();
    std::vector<Region> regions;
    if (opt.marginals) {
        regions = canonical_regions(lat);
        for (const auto &r : regions) {
            rep.regions.push_back(r.name);
        }
    }
    Tripartition part;
    if (opt.cmi) {
        part = row_tripartition(lat, 0, 0, opt.buffer_width);
    }
    std::vector<DensityState> kept;
    std::vector<DensityState> reference;
    for (int i = 0; i < n; i++) {
        DensityState s = decohered_sector(m, rep.sectors[i].first, rep.sectors[i].second);
        for (size_t r = 0; r < regions.size(); r++) {
            DensityState marg = reduce(s, regions[r]);
            if (i == 0) {
                reference.push_back(std::move(marg));
            } else {
                rep.marginal_deviation = std::max(
                    rep.marginal_deviation, marginal_distance(reference[r].classical_rep(), marg.classical_rep()));
            }
        }
        if (opt.cmi) {
            rep.cmi.push_back(cmi(s, part));
            rep.max_cmi = std::max(rep.max_cmi, std::abs(rep.cmi.back()));
        }
        if (opt.overlaps || (opt.cmi && i < 2)) {
            kept.push_back(std::move(s));
        }
    }
    if (opt.overlaps) {
        rep.overlaps = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; i++) {
            for (int j = i; j < n; j++) {
                double o = overlap(kept[i], kept[j]).normalized;
                rep.overlaps(i, j) = rep.overlaps(j, i) = o;
            }
        }
        rep.overlap_deviation = (rep.overlaps - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    }
    if (opt.cmi && n > 0) {
        int other = n > 1 ? 1 : 0;
        for (double p : opt.mixtures) {
            double i3 = cmi(mix(kept[0], kept[other], p), part);
            double bound = p * rep.cmi[0] + (1 - p) * rep.cmi[other];
            rep.mixtures.push_back({p, i3, bound});
            rep.mixtures_ok = rep.mixtures_ok && i3 <= bound + 1e-9;
        }
    }
    return rep;
}

nlohmann::json ExtremalReport::to_json(const FiniteGroup &g) const {
    nlohmann::json sec = nlohmann::json::array();
    for (auto [a, b] : sectors) {
        sec.push_back({g.element_name(a), g.element_name(b)});
    }
    nlohmann::json ov = nlohmann::json::array();
    // Empty when overlaps were not requested.
    for (int i = 0; i < overlaps.rows(); i++) {
        std::vector<double> row(overlaps.cols());
        for (int j = 0; j < overlaps.cols(); j++) {
            row[j] = overlaps(i, j);
        }
        ov.push_back(row);
    }
    nlohmann::json mixes = nlohmann::json::array();
    for (const auto &m : mixtures) {
        mixes.push_back({{"p", m[0]}, {"cmi", m[1]}, {"bound", m[2]}});
    }
    return {{"extremal_points", sectors.size()},
            {"sectors", sec},
            {"overlaps", ov},
            {"overlap_deviation", overlap_deviation},
            {"regions", regions},
            {"marginal_deviation", marginal_deviation},
            {"cmi", cmi},
            {"max_cmi", max_cmi},
            {"mixtures", mixes},
            {"mixtures_ok", mixtures_ok}};
}

}  // namespace qdouble
