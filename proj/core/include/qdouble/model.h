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

#ifndef QDOUBLE_MODEL_H
#define QDOUBLE_MODEL_H

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qdouble/group.h"
#include "qdouble/lattice.h"

namespace qdouble {

/// Group-basis configuration: ceil(log2 |G|) bits per edge packed into 64 bits.
using Config = uint64_t;

/// Group, its irreps and a lattice bundled with the configuration codec.
class Model {
   public:
    /// Throws CapacityError when a configuration does not fit in 64 bits.
    Model(FiniteGroup group, TorusLattice lattice);

    const FiniteGroup &group() const {
        return group_;
    }
    const TorusLattice &lattice() const {
        return lattice_;
    }
    const std::vector<Irrep> &irreps() const {
        return irreps_;
    }
    int bits() const {
        return bits_;
    }

    int value(Config c, int e) const {
        return int((c >> (e * bits_)) & mask_);
    }
    Config with_value(Config c, int e, int g) const {
        int s = e * bits_;
        return (c & ~(mask_ << s)) | (Config(g) << s);
    }
    std::vector<int> decode(Config c) const;
    Config encode(const std::vector<int> &values) const;
    /// Bits covering the given edges.
    Config mask(const std::vector<int> &edges) const;

    /// Holonomy read along the boundary of p: top * right * bottom^-1 * left^-1.
    int plaquette_holonomy(Config c, int p) const;
    /// The flat configuration with tree gauge t (t[v0] arbitrary) and seam
    /// holonomies a (horizontal seam) and b (vertical seam).
    Config flat_config(const std::vector<int> &t, int a, int b) const;
    /// Applies the vertex transformation g at v.
    Config gauge(Config c, int v, int g) const;

   private:
    FiniteGroup group_;
    TorusLattice lattice_;
    std::vector<Irrep> irreps_;
    int bits_;
    Config mask_;
};

using ModelPtr = std::shared_ptr<const Model>;
ModelPtr make_model(const FiniteGroup &g, const TorusLattice &lat);

/// Sparse state vector in the group basis.
class QuantumState {
   public:
    using Map = std::unordered_map<Config, Complex>;
    static constexpr double kPrune = 1e-14;

    QuantumState() = default;
    explicit QuantumState(ModelPtr model) : model_(std::move(model)) {
    }
    static QuantumState basis(ModelPtr model, Config c, Complex amp = 1.0);

    const ModelPtr &model() const {
        return model_;
    }
    const Map &amplitudes() const {
        return amps_;
    }
    Map &amplitudes() {
        return amps_;
    }
    size_t size() const {
        return amps_.size();
    }
    bool empty() const {
        return amps_.empty();
    }

    Complex amplitude(Config c) const;
    void add(Config c, Complex a) {
        amps_[c] += a;
    }
    void prune(double threshold = kPrune);

    double norm() const;
    QuantumState normalized() const;
    /// <this|other>
    Complex inner(const QuantumState &other) const;
    /// Largest entrywise deviation.
    double distance(const QuantumState &other) const;

    QuantumState operator+(const QuantumState &o) const;
    QuantumState operator-(const QuantumState &o) const;
    QuantumState operator*(Complex s) const;

    nlohmann::json to_json() const;

   private:
    ModelPtr model_;
    Map amps_;
};

}  // namespace qdouble

#endif
