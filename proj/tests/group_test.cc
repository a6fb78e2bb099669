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

#include "qdouble/group.h"

#include <algorithm>
#include <array>
#include <set>

#include "gtest/gtest.h"
#include "qdouble/errors.h"

using namespace qdouble;

namespace {

// Permutations of {0,1,2} composed as (a*b)(i) = a(b(i)); an independent S3.
std::vector<std::vector<int>> s3_permutation_table() {
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; a++) {
        for (int b = 0; b < 6; b++) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; i++) {
                c[i] = perms[a][perms[b][i]];
            }
            t[a][b] = int(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return t;
}

int class_sizes_product_check(const FiniteGroup &g) {
    int total = 0;
    for (const auto &c : g.classes()) {
        EXPECT_EQ(g.order() % c.size(), 0);
        EXPECT_EQ(c.size() * (int)c.centralizer.size(), g.order());
        total += c.size();
    }
    return total;
}

}  // namespace

TEST(group, builtin_orders_and_classes) {
    struct Case {
        std::string name;
        int order;
        int classes;
    };
    for (const auto &c : std::vector<Case>{{"Z1", 1, 1}, {"Z2", 2, 2}, {"Z3", 3, 3}, {"Z5", 5, 5},
                                           {"S3", 6, 3}, {"D4", 8, 5}, {"Q8", 8, 5}}) {
        FiniteGroup g = build_group(c.name);
        EXPECT_EQ(g.order(), c.order) << c.name;
        EXPECT_EQ((int)g.classes().size(), c.classes) << c.name;
        EXPECT_EQ(class_sizes_product_check(g), g.order()) << c.name;
        EXPECT_TRUE(g.is_builtin());
    }
}

TEST(group, unknown_builtin_rejected) {
    EXPECT_THROW(build_group("A5"), ValidationError);
    EXPECT_THROW(build_group("Z0"), ValidationError);
    EXPECT_THROW(build_group("Zx"), ValidationError);
}

TEST(group, dihedral_relations) {
    FiniteGroup d4 = build_group("D4");
    int c = d4.element("c"), t = d4.element("t"), e = 0;
    int c2 = d4.mul(c, c);
    EXPECT_EQ(d4.mul(c2, c2), e);
    EXPECT_EQ(d4.mul(t, t), e);
    EXPECT_EQ(d4.mul(t, d4.mul(c, t)), d4.inv(c));
    EXPECT_EQ(d4.element_name(c2), "c2");
    // c^2 is central.
    for (int g = 0; g < d4.order(); g++) {
        EXPECT_TRUE(d4.commute(c2, g));
    }
    EXPECT_EQ(d4.classes()[d4.class_of(c2)].size(), 1);
    EXPECT_EQ(d4.classes()[d4.class_of(c)].size(), 2);
}

TEST(group, quaternion_relations) {
    FiniteGroup q = build_group("Q8");
    int i = q.element("i"), j = q.element("j"), k = q.element("k"), m1 = q.element("-1");
    EXPECT_EQ(q.mul(i, i), m1);
    EXPECT_EQ(q.mul(j, j), m1);
    EXPECT_EQ(q.mul(q.mul(i, j), k), m1);
    EXPECT_EQ(q.mul(i, j), k);
}

TEST(group, element_lookup_by_name_or_index) {
    FiniteGroup s3 = build_group("S3");
    EXPECT_EQ(s3.element("e"), 0);
    EXPECT_EQ(s3.element("3"), 3);
    EXPECT_THROW(s3.element("q"), ValidationError);
    EXPECT_THROW(s3.element("17"), ValidationError);
}

TEST(group, rejects_bad_tables) {
    EXPECT_THROW(FiniteGroup("empty", {}), ValidationError);
    EXPECT_THROW(FiniteGroup("ragged", {{0, 1}, {1}}), ValidationError);
    // Not a Latin square.
    EXPECT_THROW(FiniteGroup("latin", {{0, 1}, {1, 1}}), ValidationError);
    // Loop of order 5 that is not associative.
    std::vector<std::vector<int>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
        FiniteGroup("loop", loop);
        FAIL() << "non-associative table accepted";
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("associativ"), std::string::npos) << e.what();
    }
}

TEST(group, permutation_table_matches_builtin_class_structure) {
    FiniteGroup p("perm3", s3_permutation_table());
    FiniteGroup s3 = build_group("S3");
    std::multiset<int> a, b;
    for (const auto &c : p.classes()) {
        a.insert(c.size());
    }
    for (const auto &c : s3.classes()) {
        b.insert(c.size());
    }
    EXPECT_EQ(a, b);
    EXPECT_FALSE(p.is_builtin());
}

TEST(group, class_transversals_conjugate_representative) {
    for (const char *name : {"S3", "D4", "Q8"}) {
        FiniteGroup g = build_group(name);
        for (const auto &c : g.classes()) {
            EXPECT_EQ(c.members[0], c.representative);
            for (int i = 0; i < c.size(); i++) {
                EXPECT_EQ(g.conj(c.transversal[i], c.representative), c.members[i]);
            }
        }
    }
}

TEST(group, subgroup_closure) {
    FiniteGroup s3 = build_group("S3");
    Subgroup z3 = make_subgroup(s3, {s3.element("c")}, "Z3");
    EXPECT_EQ(z3.group.order(), 3);
    EXPECT_EQ(z3.embedding, (std::vector<int>{0, s3.element("c"), s3.element("c2")}));
    Subgroup all = make_subgroup(s3, {s3.element("c"), s3.element("t")}, "S3");
    EXPECT_EQ(all.group.order(), 6);
}

TEST(group, centralizers) {
    FiniteGroup s3 = build_group("S3");
    EXPECT_EQ(s3.centralizer(s3.element("c")).size(), 3u);
    EXPECT_EQ(s3.centralizer(s3.element("t")), (std::vector<int>{0, s3.element("t")}));
    EXPECT_EQ(s3.centralizer(std::vector<int>{s3.element("c"), s3.element("t")}), std::vector<int>{0});
}

TEST(irreps, builtin_orthogonality) {
    for (const char *name : {"Z1", "Z2", "Z3", "Z4", "S3", "D4", "Q8"}) {
        FiniteGroup g = build_group(name);
        auto reps = irreps(g);
        auto report = verify_orthogonality(g, reps);
        EXPECT_TRUE(report.passed) << name << " deviation " << report.max_deviation;
        EXPECT_LE(report.max_deviation, 1e-10) << name;
        EXPECT_EQ(report.dim_square_sum, g.order()) << name;
        EXPECT_EQ(reps.size(), g.classes().size()) << name;
        EXPECT_EQ(reps[0].label, "1");
        for (const auto &r : reps) {
            EXPECT_LE(irrep_residual(g, r), 1e-12) << name << " " << r.label;
        }
    }
}

TEST(irreps, s3_character_table) {
    FiniteGroup g = build_group("S3");
    auto reps = irreps(g);
    ASSERT_EQ(reps.size(), 3u);
    int c = g.element("c"), t = g.element("t");
    EXPECT_EQ(reps[1].label, "s");
    EXPECT_EQ(reps[2].label, "pi");
    EXPECT_NEAR(reps[1].character[c].real(), 1, 1e-12);
    EXPECT_NEAR(reps[1].character[t].real(), -1, 1e-12);
    EXPECT_NEAR(reps[2].character[0].real(), 2, 1e-12);
    EXPECT_NEAR(reps[2].character[c].real(), -1, 1e-12);
    EXPECT_NEAR(std::abs(reps[2].character[t]), 0, 1e-12);
}

TEST(irreps, numeric_decomposition_agrees_with_closed_form) {
    FiniteGroup p("perm3", s3_permutation_table());
    auto reps = irreps(p);
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_EQ(reps[0].dim, 1);
    EXPECT_EQ(reps[1].dim, 1);
    EXPECT_EQ(reps[2].dim, 2);
    EXPECT_TRUE(verify_orthogonality(p, reps).passed);

    FiniteGroup d4 = build_group("D4");
    auto numeric = numeric_irreps(d4);
    auto closed = irreps(d4);
    ASSERT_EQ(numeric.size(), closed.size());
    // Same character multiset.
    std::multiset<std::vector<long>> a, b;
    auto key = [&](const Irrep &r) {
        std::vector<long> k;
        for (auto c : r.character) {
            k.push_back(std::lround(c.real() * 1000));
        }
        return k;
    };
    for (const auto &r : numeric) {
        a.insert(key(r));
        EXPECT_LE(irrep_residual(d4, r), 1e-8);
    }
    for (const auto &r : closed) {
        b.insert(key(r));
    }
    EXPECT_EQ(a, b);
}

TEST(irreps, orthogonality_detects_incomplete_set) {
    FiniteGroup g = build_group("S3");
    auto reps = irreps(g);
    reps.pop_back();
    auto report = verify_orthogonality(g, reps);
    EXPECT_FALSE(report.passed);
    EXPECT_EQ(report.dim_square_sum, 2);
}

TEST(fusion, rep_s3) {
    FiniteGroup g = build_group("S3");
    auto n = fusion_table(g, irreps(g));
    // 1, s, pi
    EXPECT_EQ(n[1][1], (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(n[1][2], (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(n[2][2], (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(n[0][2], (std::vector<int>{0, 0, 1}));
}

TEST(fusion, rep_d4) {
    FiniteGroup g = build_group("D4");
    auto n = fusion_table(g, irreps(g));
    // 1, s1, s2, s3, pi; one-dimensional irreps form Z2 x Z2.
    for (int a = 1; a <= 3; a++) {
        EXPECT_EQ(n[a][a], (std::vector<int>{1, 0, 0, 0, 0}));
        EXPECT_EQ(n[a][4], (std::vector<int>{0, 0, 0, 0, 1}));
    }
    EXPECT_EQ(n[1][2], (std::vector<int>{0, 0, 0, 1, 0}));
    EXPECT_EQ(n[4][4], (std::vector<int>{1, 1, 1, 1, 0}));
}

TEST(anyons, torus_gsd_counts) {
    // Sum over classes of the number of classes of the centralizer.
    EXPECT_EQ(count_torus_gsd(build_group("Z1")), 1);
    EXPECT_EQ(count_torus_gsd(build_group("Z2")), 4);
    EXPECT_EQ(count_torus_gsd(build_group("Z3")), 9);
    EXPECT_EQ(count_torus_gsd(build_group("S3")), 8);
    EXPECT_EQ(count_torus_gsd(build_group("D4")), 22);
    EXPECT_EQ(count_torus_gsd(build_group("Q8")), 22);
}

TEST(anyons, d4_orbit_representatives) {
    FiniteGroup g = build_group("D4");
    auto orbits = commuting_pair_orbits(g);
    ASSERT_EQ(orbits.size(), 22u);
    EXPECT_EQ(orbits.front(), std::make_pair(0, 0));
    for (auto [a, b] : orbits) {
        EXPECT_TRUE(g.commute(a, b));
    }
}

TEST(anyons, labels_match_gsd) {
    for (const char *name : {"Z2", "S3", "D4"}) {
        FiniteGroup g = build_group(name);
        auto labels = anyon_labels(g);
        EXPECT_EQ((int)labels.size(), count_torus_gsd(g)) << name;
        EXPECT_EQ(labels[0].name, "(e,1)");
    }
}
