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

#ifndef QDOUBLE_CHANNELS_H
#define QDOUBLE_CHANNELS_H

#include <string>
#include <vector>

#include "qdouble/density.h"

namespace qdouble {

enum class ChannelKind { Z, X };

/// One Kraus operator on a single edge. Z type: Z_{Gamma, alpha, alpha'}.
/// X type: L+_g. The channel is sum_k weight_k K_k rho K_k^+.
struct KrausDescriptor {
    double weight = 0;
    int irrep = -1;
    int alpha = 0;
    int alpha_prime = 0;
    int element = -1;
};

class Channel {
   public:
    static Channel z(ModelPtr m, std::vector<int> edges);
    static Channel x(ModelPtr m, std::vector<int> edges);
    static Channel z_all(ModelPtr m);
    static Channel x_all(ModelPtr m);
    /// {"kind": "z"|"x", "edges": "all" | [indices]}
    static Channel from_json(ModelPtr m, const nlohmann::json &j);

    ChannelKind kind() const {
        return kind_;
    }
    const std::vector<int> &edges() const {
        return edges_;
    }
    const ModelPtr &model() const {
        return model_;
    }

    /// Single-edge Kraus list in irrep, alpha, alpha' (or element) order.
    std::vector<KrausDescriptor> kraus() const;
    Operator kraus_operator(const KrausDescriptor &k, int edge) const;
    /// |sum_k weight_k tr(K^+ K)/|G| - 1|
    double cptp_residual() const;

    nlohmann::json to_json() const;

   private:
    ModelPtr model_;
    ChannelKind kind_ = ChannelKind::Z;
    std::vector<int> edges_;
};

/// Sequential application, first element first.
struct ChannelSequence {
    std::vector<Channel> steps;
};
ChannelSequence compose(const Channel &first, const Channel &second);
ChannelSequence compose(const ChannelSequence &first, const Channel &second);

enum class ZPath { Auto, Kraus, Dephase };

DensityState apply_z_channel(const DensityState &rho, const std::vector<int> &edges, ZPath path = ZPath::Auto);
DensityState apply_x_channel(const DensityState &rho, const std::vector<int> &edges);
DensityState apply_channel(const Channel &ch, const DensityState &rho, ZPath path = ZPath::Auto);
DensityState apply_channel(const ChannelSequence &seq, const DensityState &rho, ZPath path = ZPath::Auto);
/// (1 - p) rho + p N[rho]; exploratory only.
DensityState apply_partial(const Channel &ch, const DensityState &rho, double p);

/// Group-basis dephasing of a pure sector state, returned as a classical distribution.
DensityState dephase_pure(const QuantumState &psi);

}  // namespace qdouble

#endif
