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

#include "qdouble/model.h"

#include <algorithm>
#include <cmath>

#include "qdouble/errors.h"

namespace qdouble {

Model::Model(FiniteGroup group, TorusLattice lattice)
    : group_(std::move(group)), lattice_(std::move(lattice)), irreps_(qdouble::irreps(group_)), bits_(0) {
    while ((1 << bits_) < group_.order()) {
        bits_++;
    }
    if (bits_ * lattice_.num_edges() > 64) {
        throw CapacityError("configurations of " + group_.name() + " on " + std::to_string(lattice_.lx()) + "x" +
                            std::to_string(lattice_.ly()) + " need " + std::to_string(bits_ * lattice_.num_edges()) +
                            " bits; at most 64 are supported");
    }
    mask_ = bits_ == 0 ? 0 : ((Config(1) << bits_) - 1);
}

std::vector<int> Model::decode(Config c) const {
    std::vector<int> out(lattice_.num_edges());
    for (int e = 0; e < lattice_.num_edges(); e++) {
        out[e] = value(c, e);
    }
    return out;
}

Config Model::encode(const std::vector<int> &values) const {
    if ((int)values.size() != lattice_.num_edges()) {
        throw ValidationError("configuration has the wrong number of edges");
    }
    Config c = 0;
    for (int e = 0; e < lattice_.num_edges(); e++) {
        if (values[e] < 0 || values[e] >= group_.order()) {
            throw ValidationError("configuration entry out of range at edge " + std::to_string(e));
        }
        c = with_value(c, e, values[e]);
    }
    return c;
}

Config Model::mask(const std::vector<int> &edges) const {
    Config m = 0;
    for (int e : edges) {
        m |= mask_ << (e * bits_);
    }
    return m;
}

int Model::plaquette_holonomy(Config c, int p) const {
    auto e = lattice_.plaquette_edges(p);
    const auto &G = group_;
    return G.mul(G.mul(value(c, e[0]), value(c, e[1])), G.mul(G.inv(value(c, e[2])), G.inv(value(c, e[3]))));
}

Config Model::flat_config(const std::vector<int> &t, int a, int b) const {
    Config c = 0;
    const auto &G = group_;
    for (int e = 0; e < lattice_.num_edges(); e++) {
        const auto &E = lattice_.edge(e);
        int phi = 0;
        if (E.horizontal && E.x == lattice_.lx() - 1) {
            phi = a;
        } else if (!E.horizontal && E.y == lattice_.ly() - 1) {
            phi = b;
        }
        c = with_value(c, e, G.mul(G.mul(t[E.tail], phi), G.inv(t[E.head])));
    }
    return c;
}

Config Model::gauge(Config c, int v, int g) const {
    auto e = lattice_.vertex_edges(v);
    const auto &G = group_;
    int gi = G.inv(g);
    c = with_value(c, e[0], G.mul(g, value(c, e[0])));
    c = with_value(c, e[1], G.mul(g, value(c, e[1])));
    c = with_value(c, e[2], G.mul(value(c, e[2]), gi));
    c = with_value(c, e[3], G.mul(value(c, e[3]), gi));
    return c;
}

ModelPtr make_model(const FiniteGroup &g, const TorusLattice &lat) {
    return std::make_shared<const Model>(g, lat);
}

QuantumState QuantumState::basis(ModelPtr model, Config c, Complex amp) {
    QuantumState s(std::move(model));
    s.amps_[c] = amp;
    return s;
}

Complex QuantumState::amplitude(Config c) const {
    auto it = amps_.find(c);
    return it == amps_.end() ? Complex(0) : it->second;
}

void QuantumState::prune(double threshold) {
    std::erase_if(amps_, [&](const auto &kv) { return std::abs(kv.second) < threshold; });
}

double QuantumState::norm() const {
    double s = 0;
    for (const auto &[c, a] : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

QuantumState QuantumState::normalized() const {
    double n = norm();
    if (n == 0) {
        throw PreconditionError("cannot normalize the zero state");
    }
    return *this * Complex(1.0 / n);
}

Complex QuantumState::inner(const QuantumState &other) const {
    const Map &small = amps_.size() <= other.amps_.size() ? amps_ : other.amps_;
    const Map &big = &small == &amps_ ? other.amps_ : amps_;
    Complex s = 0;
    for (const auto &[c, a] : small) {
        auto it = big.find(c);
        if (it != big.end()) {
            s += &small == &amps_ ? std::conj(a) * it->second : std::conj(it->second) * a;
        }
    }
    return s;
}

double QuantumState::distance(const QuantumState &other) const {
    double worst = 0;
    for (const auto &[c, a] : amps_) {
        worst = std::max(worst, std::abs(a - other.amplitude(c)));
    }
    for (const auto &[c, a] : other.amps_) {
        worst = std::max(worst, std::abs(a - amplitude(c)));
    }
    return worst;
}

QuantumState QuantumState::operator+(const QuantumState &o) const {
    QuantumState r = *this;
    for (const auto &[c, a] : o.amps_) {
        r.amps_[c] += a;
    }
    r.prune();
    return r;
}

QuantumState QuantumState::operator-(const QuantumState &o) const {
    return *this + o * Complex(-1);
}

QuantumState QuantumState::operator*(Complex s) const {
    QuantumState r(model_);
    r.amps_.reserve(amps_.size());
    for (const auto &[c, a] : amps_) {
        r.amps_[c] = a * s;
    }
    r.prune();
    return r;
}

nlohmann::json QuantumState::to_json() const {
    std::vector<std::pair<Config, Complex>> items(amps_.begin(), amps_.end());
    std::sort(items.begin(), items.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    nlohmann::json out = nlohmann::json::array();
    for (const auto &[c, a] : items) {
        out.push_back({model_->decode(c), a.real(), a.imag()});
    }
    return out;
}

}  // namespace qdouble
