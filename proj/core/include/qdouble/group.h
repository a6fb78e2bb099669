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

#ifndef QDOUBLE_GROUP_H
#define QDOUBLE_GROUP_H

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qdouble {

using Complex = std::complex<double>;

struct ConjugacyClass {
    int representative = 0;
    /// members[0] is the representative.
    std::vector<int> members;
    /// members[i] == transversal[i] * representative * inv(transversal[i]).
    std::vector<int> transversal;
    /// Sorted centralizer of the representative.
    std::vector<int> centralizer;

    int size() const {
        return (int)members.size();
    }
};

/// Finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
   public:
    FiniteGroup() = default;

    /// Validates the table and precomputes inverses and conjugacy classes.
    /// Throws ValidationError naming the offending element(s).
    FiniteGroup(std::string name, std::vector<std::vector<int>> table, std::vector<std::string> element_names = {});

    const std::string &name() const {
        return name_;
    }
    int order() const {
        return n_;
    }
    int mul(int a, int b) const {
        return table_[a * n_ + b];
    }
    int inv(int a) const {
        return inv_[a];
    }
    /// k a k^-1
    int conj(int k, int a) const {
        return mul(mul(k, a), inv_[k]);
    }
    bool commute(int a, int b) const {
        return mul(a, b) == mul(b, a);
    }

    const std::vector<ConjugacyClass> &classes() const {
        return classes_;
    }
    int class_of(int g) const {
        return class_of_[g];
    }
    std::vector<int> centralizer(int g) const;
    std::vector<int> centralizer(const std::vector<int> &elements) const;

    const std::string &element_name(int g) const {
        return names_[g];
    }
    /// Accepts an element name or a decimal index.
    int element(const std::string &name_or_index) const;

    /// True when constructed by build_group from a builtin name.
    bool is_builtin() const {
        return builtin_;
    }

    std::vector<std::vector<int>> table() const;

   private:
    friend FiniteGroup build_group(const std::string &);
    std::string name_;
    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
    std::vector<ConjugacyClass> classes_;
    std::vector<int> class_of_;
    bool builtin_ = false;
};

/// Builtins: "Z<n>" (n >= 1), "S3", "D4", "Q8".
FiniteGroup build_group(const std::string &builtin);

/// Subgroup generated by the given elements' closure. embedding[i] is the parent
/// index of subgroup element i; embedding[0] is the identity.
struct Subgroup {
    FiniteGroup group;
    std::vector<int> embedding;
};
Subgroup make_subgroup(const FiniteGroup &parent, const std::vector<int> &elements, const std::string &name);

struct Irrep {
    std::string label;
    int dim = 1;
    /// Indexed by element.
    std::vector<Eigen::MatrixXcd> matrices;
    /// Indexed by element (constant on classes).
    std::vector<Complex> character;
};

/// Complete unitary irreps; closed-form for builtins, numerical otherwise.
/// The trivial irrep is always first.
std::vector<Irrep> irreps(const FiniteGroup &g);

/// Isotypic decomposition of the regular representation with a fixed seed.
std::vector<Irrep> numeric_irreps(const FiniteGroup &g, uint64_t seed = 0x5eed5eedULL);

/// Largest homomorphism/unitarity deviation over all elements.
double irrep_residual(const FiniteGroup &g, const Irrep &rep);

struct OrthogonalityReport {
    bool passed = true;
    double max_deviation = 0;
    int dim_square_sum = 0;
    /// Pairs of class indices (or irrep indices for row checks) that failed.
    std::vector<std::pair<int, int>> failures;
};

OrthogonalityReport verify_orthogonality(const FiniteGroup &g, const std::vector<Irrep> &reps, double tol = 1e-10);

/// N[a][b][c] multiplicity of c in a (x) b.
using FusionTable = std::vector<std::vector<std::vector<int>>>;
FusionTable fusion_table(const FiniteGroup &g, const std::vector<Irrep> &reps);

/// Lexicographically smallest member of every simultaneous-conjugation orbit
/// of commuting pairs.
std::vector<std::pair<int, int>> commuting_pair_orbits(const FiniteGroup &g);

int count_torus_gsd(const FiniteGroup &g);

struct AnyonLabel {
    int flux = 0;    // class index
    int charge = 0;  // irrep index of the centralizer
    std::string name;
};

struct CentralizerData {
    Subgroup sub;
    std::vector<Irrep> reps;
};

struct AnyonSpectrum {
    std::vector<CentralizerData> centralizers;  // one per class
    std::vector<AnyonLabel> labels;
};

AnyonSpectrum anyon_spectrum(const FiniteGroup &g);
std::vector<AnyonLabel> anyon_labels(const FiniteGroup &g);

}  // namespace qdouble

#endif
