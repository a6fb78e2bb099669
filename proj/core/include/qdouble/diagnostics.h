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

#ifndef QDOUBLE_DIAGNOSTICS_H
#define QDOUBLE_DIAGNOSTICS_H

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qdouble/channels.h"
#include "qdouble/density.h"

namespace qdouble {

enum class Verdict { Strong, Weak, Broken };
const char *verdict_name(Verdict v);

/// A closed-ribbon operator together with its component family (magnetic only).
struct RibbonSymmetry {
    std::string name;
    Ribbon ribbon;
    Operator traced;
    /// (F^C)_{i,i'} for all i, i'; empty for electric operators.
    std::vector<Operator> components;
    bool magnetic = false;
    int label = 0;  // irrep or class index
};

RibbonSymmetry electric_symmetry(ModelPtr m, const Ribbon &r, int irrep);
RibbonSymmetry magnetic_symmetry(ModelPtr m, const Ribbon &r, int cls);

struct SymmetryVerdict {
    std::string op;
    std::string ribbon;
    Verdict verdict = Verdict::Broken;
    /// tr(O rho) / tr(rho) and || O rho - c rho ||_F / || rho ||_F.
    Complex scalar = 0;
    double residual = 0;
    /// Same for sum_{i,i'} F rho F^+ (magnetic only).
    Complex weak_scalar = 0;
    double weak_residual = -1;
    double tolerance = 1e-9;
    nlohmann::json to_json() const;
};

SymmetryVerdict check_strong(const DensityState &rho, const RibbonSymmetry &op, double tol = 1e-9);
SymmetryVerdict check_weak(const DensityState &rho, const RibbonSymmetry &op, double tol = 1e-9);

struct AuditSet {
    std::vector<Ribbon> electric;
    std::vector<Ribbon> magnetic;
};
/// Electric operators on plaquette loops, rows and columns; magnetic on vertex loops.
AuditSet default_audit_set(const TorusLattice &lat);
/// The subset of default_audit_set whose ribbons carry a patch edge on a direct
/// triangle (electric) or on a dual triangle (magnetic).
AuditSet patch_audit_set(const TorusLattice &lat, const std::vector<int> &patch);
/// Every nontrivial irrep on every electric ribbon and every nontrivial class on
/// every magnetic ribbon.
std::vector<SymmetryVerdict> symmetry_audit(const DensityState &rho, const AuditSet &set, double tol = 1e-9);

/// Plaquettes enclosed by a closed ribbon made of direct triangles only.
std::vector<int> enclosed_plaquettes(const TorusLattice &lat, const Ribbon &closed);

struct AnomalyResult {
    Complex trace_left = 0;
    Complex trace_right = 0;
    Complex ratio = 0;
    Complex expected = 0;  // chi_Gamma(r_C)
};
AnomalyResult anomaly_phase(const DensityState &rho_cl, int irrep, int cls, const Ribbon &closed, const Ribbon &open);

double swssb_fidelity(const DensityState &rho_cl, int cls, const Ribbon &open);

struct ModularData {
    std::vector<AnyonLabel> labels;
    Eigen::MatrixXcd s;
    double unitarity_deviation = 0;
    double symmetry_deviation = 0;
    double electric_magnetic_deviation = 0;
};
/// Throws NumericalError when S S^+ deviates from identity by more than 1e-8.
ModularData s_matrix(const FiniteGroup &g);

struct GsdCount {
    int count = 0;
    size_t flat_configs = 0;
};
GsdCount brute_force_gsd(const FiniteGroup &g, const TorusLattice &lat);

/// Z-decohered sector state: uniform over the gauge orbit of the seed.
DensityState decohered_sector(ModelPtr m, int a, int b);

/// Sector states are built one at a time; full states are retained only when
/// overlaps are requested.
struct ExtremalOptions {
    bool overlaps = true;
    bool marginals = true;
    bool cmi = true;
    int buffer_width = 2;
    std::vector<double> mixtures{0.1, 0.5, 0.9};
};

struct ExtremalReport {
    std::vector<std::pair<int, int>> sectors;
    Eigen::MatrixXd overlaps;
    double overlap_deviation = 0;
    std::vector<std::string> regions;
    double marginal_deviation = 0;
    std::vector<double> cmi;
    double max_cmi = 0;
    /// (p, I(mixture), bound)
    std::vector<std::array<double, 3>> mixtures;
    bool mixtures_ok = true;
    nlohmann::json to_json(const FiniteGroup &g) const;
};
ExtremalReport extremal_analysis(const FiniteGroup &g, const TorusLattice &lat, const ExtremalOptions &opt = {});

}  // namespace qdouble

#endif
