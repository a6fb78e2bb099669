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

#ifndef QDOUBLE_OPERATORS_H
#define QDOUBLE_OPERATORS_H

#include <functional>
#include <string>
#include <vector>

#include "qdouble/model.h"

namespace qdouble {

/// Linear map given by its action on group-basis states. Applying an
/// operator prunes amplitudes below QuantumState::kPrune and never
/// renormalizes.
class Operator {
   public:
    using Emit = std::function<void(Config, Complex)>;
    using Kernel = std::function<void(Config, const Emit &)>;

    Operator() = default;
    Operator(ModelPtr model, Kernel kernel, std::string name = "");

    static Operator identity(ModelPtr model);

    const std::string &name() const {
        return name_;
    }
    const ModelPtr &model() const {
        return model_;
    }

    void apply_basis(Config c, const Emit &emit) const {
        kernel_(c, emit);
    }
    QuantumState apply(const QuantumState &st) const;
    QuantumState operator()(const QuantumState &st) const {
        return apply(st);
    }

    /// (A * B)|c> = A(B|c>).
    Operator operator*(const Operator &rhs) const;
    Operator operator+(const Operator &rhs) const;
    Operator scaled(Complex s) const;

   private:
    ModelPtr model_;
    Kernel kernel_;
    std::string name_;
};

Operator sum_of(ModelPtr model, const std::vector<Operator> &terms);

/// A_v^g: outgoing edges x -> g x, incoming edges y -> y g^-1.
Operator gauge_operator(ModelPtr m, int v, int g);
/// The same map assembled from L+ on outgoing and L- on incoming edges.
Operator gauge_via_pauli(ModelPtr m, int v, int g);
/// A_v = (1/|G|) sum_g A_v^g.
Operator vertex_projector(ModelPtr m, int v);
/// B_p as a delta on the boundary holonomy.
Operator plaquette_projector(ModelPtr m, int p);
/// B_p as (1/|G|) sum_Gamma d_Gamma tr(Gamma(top) Gamma(right) Gamma(bottom)^+ Gamma(left)^+).
Operator plaquette_projector_irrep(ModelPtr m, int p);
/// Holonomy of the boundary of s.plaquette read counterclockwise (on screen) from s.vertex.
int site_flux(const Model &m, Config c, Site s);
/// B_s^k = delta(k, site_flux).
Operator site_flux_projector(ModelPtr m, Site s, int k);

/// L+_h |g> = |h g>
Operator left_mult(ModelPtr m, int e, int h);
/// L-_h |g> = |g h^-1>
Operator right_mult(ModelPtr m, int e, int h);
/// Multiplies the amplitude by Gamma(g_e)[alpha][alpha'].
Operator z_component(ModelPtr m, int e, int irrep, int alpha, int alpha_prime);

/// Ribbon operator F^{h,g}.
Operator ribbon_operator(ModelPtr m, const Ribbon &r, int h, int g);
/// sum_g weights[g] F^{h,g}, evaluated in one pass over the ribbon.
Operator ribbon_sum(ModelPtr m, const Ribbon &r, int h, std::vector<Complex> weights, std::string name = "");
/// F^Gamma = (d/|G|) sum_g chi(g^-1) F^{e,g}.
Operator ribbon_electric(ModelPtr m, const Ribbon &r, int irrep);
/// (F^C)_{i,i'} = (1/|Z_C|) sum_{k in Z_C} F^{c_i^-1, p_i k p_i'^-1}.
Operator ribbon_magnetic(ModelPtr m, const Ribbon &r, int cls, int i, int i_prime);
/// sum_i (F^C)_{i,i}.
Operator ribbon_magnetic_traced(ModelPtr m, const Ribbon &r, int cls);

/// Thin wrappers matching the single-application entry points.
QuantumState apply_gauge(const QuantumState &st, int v, int g);
QuantumState apply_plaquette(const QuantumState &st, int p);
QuantumState apply_ribbon(const QuantumState &st, const Ribbon &r, int h, int g);

/// Enumeration budget from QDOUBLE_MAX_CONFIGS (default 10^7).
uint64_t max_configs();

/// Seed configuration with holonomy a around rows and b around columns.
Config sector_seed(const Model &m, int a, int b);
/// Sorted gauge orbit of sector_seed(a, b). Throws CapacityError over budget.
std::vector<Config> sector_support(const Model &m, int a, int b);

/// prod_v A_v applied to the sector seed, normalized. Throws PreconditionError unless ab = ba.
QuantumState ground_state(ModelPtr m, int a, int b);
/// prod_v A_v F^{b,a}_{xi_x[0]} F^{a^-1,e}_{xi_y[0]} |all e>, normalized.
QuantumState ground_state_via_ribbons(ModelPtr m, int a, int b);

}  // namespace qdouble

#endif
