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

#ifndef QDOUBLE_DENSITY_H
#define QDOUBLE_DENSITY_H

#include <utility>
#include <variant>
#include <vector>

#include "qdouble/lattice.h"
#include "qdouble/model.h"
#include "qdouble/operators.h"

namespace qdouble {

/// Dense matrix over an explicit list of basis configurations.
struct DenseRep {
    std::vector<Config> basis;
    Eigen::MatrixXcd matrix;
};

struct EnsembleRep {
    std::vector<double> weights;
    std::vector<QuantumState> states;
};

/// Diagonal in the group basis; sorted by configuration, no duplicates.
struct ClassicalRep {
    std::vector<std::pair<Config, double>> probs;
};

class DensityState {
   public:
    enum class Kind { Dense, Ensemble, Classical };
    static constexpr size_t kMaxDense = 4096;

    DensityState() = default;
    static DensityState dense(ModelPtr m, std::vector<Config> basis, Eigen::MatrixXcd matrix);
    static DensityState pure(const QuantumState &psi);
    static DensityState ensemble(ModelPtr m, std::vector<double> weights, std::vector<QuantumState> states);
    /// Duplicate configurations are summed.
    static DensityState classical(ModelPtr m, std::vector<std::pair<Config, double>> probs);
    /// Uniform distribution over the given configurations.
    static DensityState uniform(ModelPtr m, const std::vector<Config> &configs);

    Kind kind() const;
    const ModelPtr &model() const {
        return model_;
    }
    const DenseRep &dense_rep() const {
        return std::get<DenseRep>(rep_);
    }
    const EnsembleRep &ensemble_rep() const {
        return std::get<EnsembleRep>(rep_);
    }
    const ClassicalRep &classical_rep() const {
        return std::get<ClassicalRep>(rep_);
    }

    double trace() const;
    DensityState normalized() const;
    /// Basis configurations carrying weight (ket or bra side).
    std::vector<Config> support() const;
    /// Throws CapacityError above kMaxDense.
    DensityState to_dense() const;
    DensityState to_dense(const std::vector<Config> &basis) const;
    /// tr(rho^2)
    double purity() const;
    /// Hermiticity and positivity checks; returns the worst violation.
    double validity_residual() const;

    nlohmann::json summary() const;

   private:
    ModelPtr model_;
    std::variant<DenseRep, EnsembleRep, ClassicalRep> rep_;
};

/// sum_k w_k |ket_k><bra_k|, used to represent O rho, O rho O^+ and differences.
struct OuterTerm {
    Complex weight;
    QuantumState ket;
    QuantumState bra;
};

class OuterSum {
   public:
    OuterSum() = default;
    static OuterSum from(const DensityState &rho);

    const std::vector<OuterTerm> &terms() const {
        return terms_;
    }
    void add(Complex w, QuantumState ket, QuantumState bra);

    /// O X
    OuterSum left(const Operator &op) const;
    /// sum_j O_j X O_j^+
    OuterSum conjugate(const std::vector<Operator> &ops) const;
    /// this + s * other
    OuterSum plus(const OuterSum &other, Complex s) const;

    Complex trace() const;
    /// Hilbert-Schmidt norm.
    double frobenius() const;
    /// Classical when every term is diagonal, dense otherwise.
    DensityState to_density(ModelPtr m) const;

   private:
    std::vector<OuterTerm> terms_;
};

DensityState reduce(const DensityState &rho, const Region &region);
/// Natural-log von Neumann entropy. Throws PreconditionError unless trace is 1 within 1e-8.
double entropy(const DensityState &rho);
/// S(AB) + S(BC) - S(B) - S(ABC)
double cmi(const DensityState &rho, const Tripartition &part);
/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityState &rho, const DensityState &sigma);

struct Overlap {
    double raw = 0;
    double normalized = 0;
};
Overlap overlap(const DensityState &rho, const DensityState &sigma);

/// p rho + (1 - p) sigma; both must share a representation kind.
DensityState mix(const DensityState &rho, const DensityState &sigma, double p);

}  // namespace qdouble

#endif
