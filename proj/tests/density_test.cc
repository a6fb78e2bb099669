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

#include "qdouble/density.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qdouble/errors.h"

using namespace qdouble;

namespace {

ModelPtr z2_model() {
    return make_model(build_group("Z2"), TorusLattice(2, 2));
}

// Flip the given edges starting from the all-e configuration.
Config flipped(const ModelPtr &m, std::initializer_list<int> edges) {
    Config c = 0;
    for (int e : edges) {
        c = m->with_value(c, e, 1);
    }
    return c;
}

}  // namespace

TEST(density, classical_merges_and_normalizes) {
    auto m = z2_model();
    auto rho = DensityState::classical(m, {{3, 0.5}, {1, 0.5}, {3, 1.0}});
    EXPECT_EQ(rho.kind(), DensityState::Kind::Classical);
    ASSERT_EQ(rho.classical_rep().probs.size(), 2u);
    EXPECT_DOUBLE_EQ(rho.trace(), 2.0);
    EXPECT_DOUBLE_EQ(rho.normalized().trace(), 1.0);
    EXPECT_THROW(DensityState::classical(m, {{1, -0.5}}), ValidationError);
}

TEST(density, dense_capacity_and_shape) {
    auto m = z2_model();
    EXPECT_THROW(DensityState::dense(m, {0, 1}, Eigen::MatrixXcd::Identity(3, 3)), ValidationError);
    std::vector<Config> big(DensityState::kMaxDense + 1);
    EXPECT_THROW(DensityState::dense(m, big, Eigen::MatrixXcd()), CapacityError);
}

TEST(density, entropy_of_simple_states) {
    auto m = z2_model();
    QuantumState psi = (QuantumState::basis(m, 0) + QuantumState::basis(m, 3)).normalized();
    EXPECT_NEAR(entropy(DensityState::pure(psi)), 0.0, 1e-12);
    EXPECT_NEAR(entropy(DensityState::pure(psi).to_dense()), 0.0, 1e-10);
    auto mixed = DensityState::uniform(m, {0, 1, 2, 3});
    EXPECT_NEAR(entropy(mixed), std::log(4.0), 1e-12);
    EXPECT_NEAR(entropy(mixed.to_dense()), std::log(4.0), 1e-12);
    EXPECT_THROW(entropy(DensityState::classical(m, {{0, 2.0}})), PreconditionError);
}

TEST(density, partial_trace_of_correlated_pure_state) {
    auto m = z2_model();
    // (|00> + |11>)/sqrt2 on edges 0 and 5: each marginal is maximally mixed.
    QuantumState psi = (QuantumState::basis(m, 0) + QuantumState::basis(m, flipped(m, {0, 5}))).normalized();
    Region a{{0}, true, "a"};
    Region ab{{0, 5}, true, "ab"};
    for (auto rho : {DensityState::pure(psi), DensityState::pure(psi).to_dense()}) {
        EXPECT_NEAR(entropy(reduce(rho, a)), std::log(2.0), 1e-12);
        EXPECT_NEAR(entropy(reduce(rho, ab)), 0.0, 1e-10);
    }
    // Classical version keeps correlation but loses coherence.
    auto cl = DensityState::uniform(m, {0, flipped(m, {0, 5})});
    EXPECT_NEAR(entropy(reduce(cl, ab)), std::log(2.0), 1e-12);
}

TEST(density, cmi_of_markov_chain_vanishes) {
    auto m = make_model(build_group("Z2"), TorusLattice(2, 3));
    Tripartition t = row_tripartition(m->lattice(), 0, 0, 1);
    // A copy of one B bit on every edge: A - B - C Markov chain.
    std::vector<std::pair<Config, double>> probs;
    Config all = m->mask(all_edges(m->lattice()).edges);
    probs.push_back({0, 0.5});
    probs.push_back({all, 0.5});
    auto rho = DensityState::classical(m, probs);
    EXPECT_NEAR(cmi(rho, t), 0.0, 1e-12);
    // Correlating A and C without B gives log 2.
    Config ac = m->mask(t.a.edges) | m->mask(t.c.edges);
    auto leak = DensityState::classical(m, {{0, 0.5}, {ac, 0.5}});
    EXPECT_NEAR(cmi(leak, t), std::log(2.0), 1e-12);
}

TEST(density, fidelity_and_overlap) {
    auto m = z2_model();
    QuantumState a = QuantumState::basis(m, 0), b = QuantumState::basis(m, 1);
    QuantumState plus = (a + b).normalized();
    EXPECT_NEAR(fidelity(DensityState::pure(a), DensityState::pure(plus)), 0.5, 1e-10);
    auto p = DensityState::uniform(m, {0, 1});
    auto q = DensityState::uniform(m, {1, 2});
    EXPECT_NEAR(fidelity(p, q), 0.25, 1e-12);
    EXPECT_NEAR(fidelity(p, p.to_dense()), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(DensityState::pure(plus), p), 0.5 * 1.0 * 1.0, 1e-10);
    auto o = overlap(p, q);
    EXPECT_NEAR(o.raw, 0.25, 1e-12);
    EXPECT_NEAR(o.normalized, 0.5, 1e-12);
    EXPECT_NEAR(overlap(DensityState::pure(a), DensityState::pure(b)).normalized, 0.0, 1e-15);
    EXPECT_NEAR(overlap(DensityState::pure(plus), p.to_dense()).raw, 0.5, 1e-12);
}

TEST(density, mix_and_purity) {
    auto m = z2_model();
    auto p = DensityState::uniform(m, {0});
    auto q = DensityState::uniform(m, {1});
    auto r = mix(p, q, 0.25);
    EXPECT_NEAR(r.purity(), 0.25 * 0.25 + 0.75 * 0.75, 1e-12);
    EXPECT_THROW(mix(p, q, 1.5), PreconditionError);
    QuantumState a = QuantumState::basis(m, 0), b = QuantumState::basis(m, 1);
    auto e = mix(DensityState::pure(a), DensityState::pure(b), 0.5);
    EXPECT_EQ(e.kind(), DensityState::Kind::Ensemble);
    EXPECT_NEAR(e.purity(), 0.5, 1e-12);
}

TEST(density, validity_residual_flags_non_positive) {
    auto m = z2_model();
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.5, 0.9, 0.9, 0.5;
    EXPECT_GT(DensityState::dense(m, {0, 1}, bad).validity_residual(), 0.1);
    EXPECT_LE(DensityState::uniform(m, {0, 1}).to_dense().validity_residual(), 1e-12);
}

TEST(outer_sum, norms_and_traces) {
    auto m = z2_model();
    auto p = DensityState::uniform(m, {0, 1, 2, 3});
    auto x = OuterSum::from(p);
    EXPECT_NEAR(x.frobenius(), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(x.trace() - 1.0), 0.0, 1e-12);
    QuantumState psi = (QuantumState::basis(m, 0) + QuantumState::basis(m, 1)).normalized();
    auto y = OuterSum::from(DensityState::pure(psi));
    EXPECT_NEAR(y.frobenius(), 1.0, 1e-12);
    // rho - rho = 0 across representations.
    EXPECT_NEAR(y.plus(OuterSum::from(DensityState::pure(psi).to_dense()), -1.0).frobenius(), 0.0, 1e-12);
    auto flip = left_mult(m, 0, 1);
    auto z = OuterSum::from(p).conjugate({flip});
    EXPECT_NEAR(z.plus(x, -1.0).frobenius(), 0.0, 1e-12);
    EXPECT_EQ(z.to_density(m).kind(), DensityState::Kind::Classical);
    EXPECT_EQ(y.to_density(m).kind(), DensityState::Kind::Dense);
}

TEST(density, ensemble_reduction_matches_dense) {
    auto m = make_model(build_group("S3"), TorusLattice(2, 2));
    auto gs = ground_state(m, 0, 0);
    auto rho = DensityState::pure(gs);
    Region r = plaquette_block(m->lattice(), 0, 0, 1, 1);
    auto a = reduce(rho, r);
    auto b = reduce(rho.to_dense(), r);
    ASSERT_EQ(a.dense_rep().basis, b.dense_rep().basis);
    EXPECT_LE((a.dense_rep().matrix - b.dense_rep().matrix).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(entropy(a), entropy(b), 1e-10);
}
