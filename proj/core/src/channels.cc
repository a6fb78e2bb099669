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

#include "qdouble/channels.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qdouble/errors.h"

namespace qdouble {

namespace {

constexpr size_t kMaxBranches = 1 << 16;

std::vector<int> every_edge(const ModelPtr &m) {
    std::vector<int> e(m->lattice().num_edges());
    for (size_t i = 0; i < e.size(); i++) {
        e[i] = (int)i;
    }
    return e;
}

void check_edges(const ModelPtr &m, const std::vector<int> &edges) {
    for (int e : edges) {
        if (e < 0 || e >= m->lattice().num_edges()) {
            throw PreconditionError("channel edge " + std::to_string(e) + " is not on the lattice");
        }
    }
}

DensityState as_dense(DensityState s) {
    return s.kind() == DensityState::Kind::Dense ? s : s.to_dense();
}

// Exact sum_k w_k K rho K^+ on one edge.
DensityState kraus_edge(const Channel &ch, const DensityState &rho, int edge) {
    const auto &m = rho.model();
    auto kraus = ch.kraus();
    switch (rho.kind()) {
        case DensityState::Kind::Ensemble: {
            const auto &e = rho.ensemble_rep();
            std::vector<double> w;
            std::vector<QuantumState> s;
            for (size_t i = 0; i < e.states.size(); i++) {
                for (const auto &k : kraus) {
                    QuantumState out = ch.kraus_operator(k, edge).apply(e.states[i]);
                    if (!out.empty()) {
                        w.push_back(e.weights[i] * k.weight);
                        s.push_back(std::move(out));
                    }
                }
            }
            if (s.size() > kMaxBranches) {
                throw CapacityError("Kraus expansion produced " + std::to_string(s.size()) + " branches");
            }
            return DensityState::ensemble(m, std::move(w), std::move(s));
        }
        case DensityState::Kind::Classical: {
            // Each Kraus operator is diagonal (Z) or a permutation (X) on basis states.
            std::unordered_map<Config, double> probs;
            for (const auto &[c, p] : rho.classical_rep().probs) {
                for (const auto &k : kraus) {
                    ch.kraus_operator(k, edge).apply_basis(c, [&](Config d, Complex a) { probs[d] += p * k.weight * std::norm(a); });
                }
            }
            std::vector<std::pair<Config, double>> v(probs.begin(), probs.end());
            std::erase_if(v, [](const auto &kv) { return kv.second < 1e-300; });
            return DensityState::classical(m, std::move(v));
        }
        default: {
            OuterSum in = OuterSum::from(rho);
            OuterSum out;
            for (const auto &k : kraus) {
                out = out.plus(in.conjugate({ch.kraus_operator(k, edge)}), k.weight);
            }
            return as_dense(out.to_density(m));
        }
    }
}

DensityState dephase(const DensityState &rho, const std::vector<int> &edges) {
    const auto &m = rho.model();
    Config mask = m->mask(edges);
    switch (rho.kind()) {
        case DensityState::Kind::Classical:
            return rho;
        case DensityState::Kind::Dense: {
            auto d = rho.dense_rep();
            for (size_t i = 0; i < d.basis.size(); i++) {
                for (size_t j = 0; j < d.basis.size(); j++) {
                    if ((d.basis[i] & mask) != (d.basis[j] & mask)) {
                        d.matrix(i, j) = 0;
                    }
                }
            }
            return DensityState::dense(m, std::move(d.basis), std::move(d.matrix));
        }
        default: {
            const auto &e = rho.ensemble_rep();
            if ((int)edges.size() == m->lattice().num_edges()) {
                std::vector<std::pair<Config, double>> probs;
                for (size_t k = 0; k < e.states.size(); k++) {
                    for (const auto &[c, a] : e.states[k].amplitudes()) {
                        probs.emplace_back(c, e.weights[k] * std::norm(a));
                    }
                }
                return DensityState::classical(m, std::move(probs));
            }
            // Project every branch onto each value pattern of the dephased edges.
            std::vector<double> w;
            std::vector<QuantumState> s;
            for (size_t k = 0; k < e.states.size(); k++) {
                std::unordered_map<Config, QuantumState> parts;
                std::vector<Config> order;
                for (const auto &[c, a] : e.states[k].amplitudes()) {
                    auto it = parts.find(c & mask);
                    if (it == parts.end()) {
                        order.push_back(c & mask);
                        it = parts.emplace(c & mask, QuantumState(m)).first;
                    }
                    it->second.add(c, a);
                }
                std::sort(order.begin(), order.end());
                for (Config key : order) {
                    w.push_back(e.weights[k]);
                    s.push_back(std::move(parts.at(key)));
                }
            }
            if (s.size() > kMaxBranches) {
                throw CapacityError("partial dephasing produced " + std::to_string(s.size()) + " branches");
            }
            return DensityState::ensemble(m, std::move(w), std::move(s));
        }
    }
}

}  // namespace

Channel Channel::z(ModelPtr m, std::vector<int> edges) {
    check_edges(m, edges);
    Channel c;
    c.model_ = std::move(m);
    c.kind_ = ChannelKind::Z;
    c.edges_ = std::move(edges);
    return c;
}

Channel Channel::x(ModelPtr m, std::vector<int> edges) {
    check_edges(m, edges);
    Channel c;
    c.model_ = std::move(m);
    c.kind_ = ChannelKind::X;
    c.edges_ = std::move(edges);
    return c;
}

Channel Channel::z_all(ModelPtr m) {
    auto e = every_edge(m);
    return z(std::move(m), std::move(e));
}

Channel Channel::x_all(ModelPtr m) {
    auto e = every_edge(m);
    return x(std::move(m), std::move(e));
}

Channel Channel::from_json(ModelPtr m, const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    std::vector<int> edges;
    if (!j.contains("edges") || (j.at("edges").is_string() && j.at("edges").get<std::string>() == "all")) {
        edges = every_edge(m);
    } else if (j.at("edges").is_array()) {
        edges = j.at("edges").get<std::vector<int>>();
    } else {
        throw ConfigError("channel edges must be \"all\" or a list of indices");
    }
    if (kind == "z") {
        return z(std::move(m), std::move(edges));
    }
    if (kind == "x") {
        return x(std::move(m), std::move(edges));
    }
    throw ConfigError("unknown channel kind '" + kind + "'");
}

std::vector<KrausDescriptor> Channel::kraus() const {
    std::vector<KrausDescriptor> out;
    int n = model_->group().order();
    if (kind_ == ChannelKind::Z) {
        const auto &reps = model_->irreps();
        for (size_t r = 0; r < reps.size(); r++) {
            for (int a = 0; a < reps[r].dim; a++) {
                for (int b = 0; b < reps[r].dim; b++) {
                    out.push_back(KrausDescriptor{double(reps[r].dim) / n, (int)r, a, b, -1});
                }
            }
        }
    } else {
        for (int g = 0; g < n; g++) {
            out.push_back(KrausDescriptor{1.0 / n, -1, 0, 0, g});
        }
    }
    return out;
}

Operator Channel::kraus_operator(const KrausDescriptor &k, int edge) const {
    if (kind_ == ChannelKind::Z) {
        return z_component(model_, edge, k.irrep, k.alpha, k.alpha_prime);
    }
    return left_mult(model_, edge, k.element);
}

double Channel::cptp_residual() const {
    int n = model_->group().order();
    double total = 0;
    for (const auto &k : kraus()) {
        double tr = 0;
        for (int g = 0; g < n; g++) {
            if (kind_ == ChannelKind::Z) {
                tr += std::norm(model_->irreps()[k.irrep].matrices[g](k.alpha, k.alpha_prime));
            } else {
                tr += 1;
            }
        }
        total += k.weight * tr / n;
    }
    return std::abs(total - 1);
}

nlohmann::json Channel::to_json() const {
    nlohmann::json edges;
    if ((int)edges_.size() == model_->lattice().num_edges()) {
        edges = "all";
    } else {
        edges = edges_;
    }
    return {{"kind", kind_ == ChannelKind::Z ? "z" : "x"}, {"edges", edges}};
}

ChannelSequence compose(const Channel &first, const Channel &second) {
    return ChannelSequence{{first, second}};
}

ChannelSequence compose(const ChannelSequence &first, const Channel &second) {
    ChannelSequence s = first;
    s.steps.push_back(second);
    return s;
}

DensityState apply_z_channel(const DensityState &rho, const std::vector<int> &edges, ZPath path) {
    check_edges(rho.model(), edges);
    if (path == ZPath::Kraus) {
        Channel ch = Channel::z(rho.model(), edges);
        DensityState out = rho;
        for (int e : edges) {
            out = kraus_edge(ch, out, e);
        }
        return out;
    }
    return dephase(rho, edges);
}

DensityState apply_x_channel(const DensityState &rho, const std::vector<int> &edges) {
    Channel ch = Channel::x(rho.model(), edges);
    DensityState out = rho;
    for (int e : edges) {
        out = kraus_edge(ch, out, e);
    }
    return out;
}

DensityState apply_channel(const Channel &ch, const DensityState &rho, ZPath path) {
    return ch.kind() == ChannelKind::Z ? apply_z_channel(rho, ch.edges(), path) : apply_x_channel(rho, ch.edges());
}

DensityState apply_channel(const ChannelSequence &seq, const DensityState &rho, ZPath path) {
    DensityState out = rho;
    for (const auto &ch : seq.steps) {
        out = apply_channel(ch, out, path);
    }
    return out;
}

DensityState apply_partial(const Channel &ch, const DensityState &rho, double p) {
    return mix(apply_channel(ch, rho), rho, p);
}

DensityState dephase_pure(const QuantumState &psi) {
    std::vector<std::pair<Config, double>> probs;
    probs.reserve(psi.size());
    for (const auto &[c, a] : psi.amplitudes()) {
        probs.emplace_back(c, std::norm(a));
    }
    return DensityState::classical(psi.model(), std::move(probs));
}

}  // namespace qdouble
