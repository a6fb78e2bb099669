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
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "qdouble/errors.h"

namespace qdouble {

namespace {

constexpr double kTol = 1e-10;

std::string index_name(int k) {
    return std::to_string(k);
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table, std::vector<std::string> element_names)
    : name_(std::move(name)), n_((int)table.size()) {
    if (n_ == 0) {
        throw ValidationError("group '" + name_ + "': empty multiplication table");
    }
    table_.resize(n_ * n_);
    for (int a = 0; a < n_; a++) {
        if ((int)table[a].size() != n_) {
            throw ValidationError("group '" + name_ + "': row " + std::to_string(a) + " has wrong length");
        }
        for (int b = 0; b < n_; b++) {
            int v = table[a][b];
            if (v < 0 || v >= n_) {
                throw ValidationError(
                    "group '" + name_ + "': entry (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
            }
            table_[a * n_ + b] = v;
        }
    }
    for (int g = 0; g < n_; g++) {
        if (mul(0, g) != g || mul(g, 0) != g) {
            throw ValidationError(
                "group '" + name_ + "': element 0 is not an identity (fails at element " + std::to_string(g) + ")");
        }
    }
    inv_.assign(n_, -1);
    for (int g = 0; g < n_; g++) {
        for (int h = 0; h < n_; h++) {
            if (mul(g, h) == 0 && mul(h, g) == 0) {
                inv_[g] = h;
                break;
            }
        }
        if (inv_[g] < 0) {
            throw ValidationError("group '" + name_ + "': element " + std::to_string(g) + " has no inverse");
        }
    }
    for (int a = 0; a < n_; a++) {
        for (int b = 0; b < n_; b++) {
            int ab = mul(a, b);
            for (int c = 0; c < n_; c++) {
                if (mul(ab, c) != mul(a, mul(b, c))) {
                    std::ostringstream ss;
                    ss << "group '" << name_ << "': not associative at triple (" << a << "," << b << "," << c << ")";
                    throw ValidationError(ss.str());
                }
            }
        }
    }

    names_ = std::move(element_names);
    if (names_.empty()) {
        for (int g = 0; g < n_; g++) {
            names_.push_back(g == 0 ? "e" : index_name(g));
        }
    } else if ((int)names_.size() != n_) {
        throw ValidationError("group '" + name_ + "': element name count does not match order");
    }

    class_of_.assign(n_, -1);
    for (int g = 0; g < n_; g++) {
        if (class_of_[g] >= 0) {
            continue;
        }
        ConjugacyClass cls;
        cls.representative = g;
        for (int p = 0; p < n_; p++) {
            int c = conj(p, g);
            if (class_of_[c] < 0) {
                class_of_[c] = (int)classes_.size();
                cls.members.push_back(c);
                cls.transversal.push_back(p);
            }
        }
        cls.centralizer = centralizer(g);
        classes_.push_back(std::move(cls));
    }
}

std::vector<int> FiniteGroup::centralizer(int g) const {
    std::vector<int> out;
    for (int h = 0; h < n_; h++) {
        if (commute(g, h)) {
            out.push_back(h);
        }
    }
    return out;
}

std::vector<int> FiniteGroup::centralizer(const std::vector<int> &elements) const {
    std::vector<int> out;
    for (int h = 0; h < n_; h++) {
        bool ok = true;
        for (int g : elements) {
            ok = ok && commute(g, h);
        }
        if (ok) {
            out.push_back(h);
        }
    }
    return out;
}

int FiniteGroup::element(const std::string &s) const {
    for (int g = 0; g < n_; g++) {
        if (names_[g] == s) {
            return g;
        }
    }
    try {
        size_t used = 0;
        int k = std::stoi(s, &used);
        if (used == s.size() && k >= 0 && k < n_) {
            return k;
        }
    } catch (const std::exception &) {
    }
    throw ValidationError("group '" + name_ + "' has no element '" + s + "'");
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; a++) {
        for (int b = 0; b < n_; b++) {
            out[a][b] = mul(a, b);
        }
    }
    return out;
}

namespace {

// Elements t^a c^b stored at index a*n + b, with t c t = c^-1.
FiniteGroup dihedral(const std::string &name, int n) {
    int order = 2 * n;
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    std::vector<std::string> names(order);
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < n; b++) {
            std::string s = a ? "t" : "";
            if (b == 1) {
                s += "c";
            } else if (b > 1) {
                s += "c" + std::to_string(b);
            }
            names[a * n + b] = s.empty() ? "e" : s;
        }
    }
    for (int x = 0; x < order; x++) {
        for (int y = 0; y < order; y++) {
            int a1 = x / n, b1 = x % n, a2 = y / n, b2 = y % n;
            int b = ((a2 ? -b1 : b1) + b2 + n) % n;
            table[x][y] = ((a1 + a2) % 2) * n + b;
        }
    }
    return FiniteGroup(name, table, names);
}

FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            table[a][b] = (a + b) % n;
        }
        if (a == 0) {
            names[a] = "e";
        } else if (n == 2) {
            names[a] = "x";
        } else {
            names[a] = a == 1 ? "a" : "a" + std::to_string(a);
        }
    }
    return FiniteGroup("Z" + std::to_string(n), table, names);
}

// Index 2*u + s for the unit u in {1,i,j,k} with sign (-1)^s.
FiniteGroup quaternion() {
    // unit_mul[u][v] = (sign, unit)
    const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int x = 0; x < 8; x++) {
        for (int y = 0; y < 8; y++) {
            int u = x / 2, v = y / 2;
            int s = (x % 2 + y % 2 + sign[u][v]) % 2;
            table[x][y] = 2 * unit[u][v] + s;
        }
    }
    return FiniteGroup("Q8", table, {"e", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace

FiniteGroup build_group(const std::string &builtin) {
    FiniteGroup g;
    if (builtin == "S3") {
        g = dihedral("S3", 3);
    } else if (builtin == "D4") {
        g = dihedral("D4", 4);
    } else if (builtin == "Q8") {
        g = quaternion();
    } else if (builtin.size() >= 2 && builtin[0] == 'Z') {
        int n = 0;
        try {
            size_t used = 0;
            n = std::stoi(builtin.substr(1), &used);
            if (used + 1 != builtin.size()) {
                n = 0;
            }
        } catch (const std::exception &) {
            n = 0;
        }
        if (n < 1 || n > 64) {
            throw ValidationError("unknown builtin group '" + builtin + "'");
        }
        g = cyclic(n);
    } else {
        throw ValidationError("unknown builtin group '" + builtin + "'");
    }
    g.builtin_ = true;
    return g;
}

Subgroup make_subgroup(const FiniteGroup &parent, const std::vector<int> &elements, const std::string &name) {
    std::set<int> closure(elements.begin(), elements.end());
    closure.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(closure.begin(), closure.end());
        for (int a : cur) {
            for (int b : cur) {
                grew |= closure.insert(parent.mul(a, b)).second;
            }
        }
    }
    Subgroup out;
    out.embedding.assign(closure.begin(), closure.end());
    int m = (int)out.embedding.size();
    std::map<int, int> index;
    for (int i = 0; i < m; i++) {
        index[out.embedding[i]] = i;
    }
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<std::string> names;
    for (int i = 0; i < m; i++) {
        names.push_back(parent.element_name(out.embedding[i]));
        for (int j = 0; j < m; j++) {
            table[i][j] = index.at(parent.mul(out.embedding[i], out.embedding[j]));
        }
    }
    out.group = FiniteGroup(name, table, names);
    return out;
}

namespace {

Irrep one_dim(const std::string &label, const std::vector<Complex> &chi) {
    Irrep r;
    r.label = label;
    r.dim = 1;
    r.character = chi;
    for (Complex c : chi) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = c;
        r.matrices.push_back(m);
    }
    return r;
}

void fill_characters(Irrep &r) {
    r.character.clear();
    for (const auto &m : r.matrices) {
        r.character.push_back(m.trace());
    }
}

std::vector<Irrep> cyclic_irreps(const FiniteGroup &g) {
    int n = g.order();
    std::vector<Irrep> out;
    for (int k = 0; k < n; k++) {
        std::vector<Complex> chi;
        for (int m = 0; m < n; m++) {
            chi.push_back(std::polar(1.0, 2 * std::numbers::pi * ((k * m) % n) / n));
        }
        std::string label = k == 0 ? "1" : (n == 2 ? "sign" : "chi" + std::to_string(k));
        out.push_back(one_dim(label, chi));
    }
    return out;
}

// Dihedral group of order 2n (n = 3 or 4) in the t^a c^b indexing.
std::vector<Irrep> dihedral_irreps(const FiniteGroup &g, int n) {
    std::vector<Irrep> out;
    auto linear = [&](const std::string &label, int chi_c, int chi_t) {
        std::vector<Complex> chi;
        for (int x = 0; x < 2 * n; x++) {
            int a = x / n, b = x % n;
            chi.push_back(double((a ? chi_t : 1) * (b % 2 ? chi_c : 1)));
        }
        return one_dim(label, chi);
    };
    out.push_back(linear("1", 1, 1));
    if (n == 3) {
        out.push_back(linear("s", 1, -1));
    } else {
        out.push_back(linear("s1", 1, -1));
        out.push_back(linear("s2", -1, 1));
        out.push_back(linear("s3", -1, -1));
    }
    // Gamma(c) = diag(w^-1, w) with w = e^{2 pi i/n}, Gamma(t) = swap.
    Irrep pi;
    pi.label = "pi";
    pi.dim = 2;
    Complex w = std::polar(1.0, 2 * std::numbers::pi / n);
    Eigen::MatrixXcd c(2, 2), t(2, 2);
    c << std::conj(w), 0, 0, w;
    t << 0, 1, 1, 0;
    for (int x = 0; x < 2 * n; x++) {
        int a = x / n, b = x % n;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
        if (a) {
            m = t;
        }
        for (int i = 0; i < b; i++) {
            m = m * c;
        }
        pi.matrices.push_back(m);
    }
    fill_characters(pi);
    out.push_back(pi);
    (void)g;
    return out;
}

std::vector<Irrep> quaternion_irreps() {
    // Units 1,i,j,k: chi(i), chi(j) choose signs, chi(k) = chi(i) chi(j).
    std::vector<Irrep> out;
    const char *labels[4] = {"1", "s1", "s2", "s3"};
    const int si[4] = {1, 1, -1, -1}, sj[4] = {1, -1, 1, -1};
    for (int r = 0; r < 4; r++) {
        std::vector<Complex> chi;
        for (int x = 0; x < 8; x++) {
            int u = x / 2;
            int v = u == 0 ? 1 : u == 1 ? si[r] : u == 2 ? sj[r] : si[r] * sj[r];
            chi.push_back(double(v));
        }
        out.push_back(one_dim(labels[r], chi));
    }
    Irrep pi;
    pi.label = "pi";
    pi.dim = 2;
    const Complex I(0, 1);
    Eigen::MatrixXcd u[4];
    for (auto &m : u) {
        m.resize(2, 2);
    }
    u[0] << 1, 0, 0, 1;
    u[1] << I, 0, 0, -I;
    u[2] << 0, 1, -1, 0;
    u[3] = u[1] * u[2];
    for (int x = 0; x < 8; x++) {
        pi.matrices.push_back((x % 2 ? -1.0 : 1.0) * u[x / 2]);
    }
    fill_characters(pi);
    out.push_back(pi);
    return out;
}

bool is_trivial(const Irrep &r) {
    for (Complex c : r.character) {
        if (std::abs(c - 1.0) > 1e-8) {
            return false;
        }
    }
    return r.dim == 1;
}

}  // namespace

double irrep_residual(const FiniteGroup &g, const Irrep &rep) {
    double worst = 0;
    int n = g.order();
    for (int a = 0; a < n; a++) {
        const auto &ma = rep.matrices[a];
        auto id = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
        worst = std::max(worst, (ma * ma.adjoint() - id).norm());
        for (int b = 0; b < n; b++) {
            worst = std::max(worst, (ma * rep.matrices[b] - rep.matrices[g.mul(a, b)]).norm());
        }
    }
    return worst;
}

std::vector<Irrep> numeric_irreps(const FiniteGroup &g, uint64_t seed) {
    int n = g.order();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j <= i; j++) {
            Complex v(normal(rng), i == j ? 0.0 : normal(rng));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    // Regular representation R(g)|b> = |g b>; average R h R^dagger.
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; x++) {
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                avg(g.mul(x, i), g.mul(x, j)) += h(i, j);
            }
        }
    }
    avg /= double(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(avg);
    const auto &vals = solver.eigenvalues();
    const auto &vecs = solver.eigenvectors();

    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    std::vector<Irrep> found;
    double worst = 0;
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && vals[stop] - vals[stop - 1] < 1e-7 * scale) {
            stop++;
        }
        int d = stop - start;
        Eigen::MatrixXcd v = vecs.middleCols(start, d);
        Irrep rep;
        rep.dim = d;
        for (int x = 0; x < n; x++) {
            Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
            for (int b = 0; b < n; b++) {
                r(g.mul(x, b), b) = 1;
            }
            rep.matrices.push_back(v.adjoint() * r * v);
        }
        // Polar unitarization of each matrix removes eigensolver dust.
        for (auto &m : rep.matrices) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
            m = svd.matrixU() * svd.matrixV().adjoint();
        }
        fill_characters(rep);
        worst = std::max(worst, irrep_residual(g, rep));
        bool dup = false;
        for (const auto &f : found) {
            if (f.dim != rep.dim) {
                continue;
            }
            double diff = 0;
            for (int x = 0; x < n; x++) {
                diff = std::max(diff, std::abs(f.character[x] - rep.character[x]));
            }
            dup |= diff < 1e-6;
        }
        if (!dup) {
            found.push_back(std::move(rep));
        }
        start = stop;
    }
    if (found.size() != g.classes().size() || worst > 1e-8) {
        std::ostringstream ss;
        ss << "numerical irrep decomposition of '" << g.name() << "' failed: found " << found.size() << " irreps for "
           << g.classes().size() << " classes, residual " << worst;
        throw NumericalError(ss.str());
    }
    // Trivial first, then by dimension, then by characters.
    std::stable_sort(found.begin(), found.end(), [&](const Irrep &a, const Irrep &b) {
        bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) {
            return ta;
        }
        if (a.dim != b.dim) {
            return a.dim < b.dim;
        }
        for (int x = 0; x < n; x++) {
            double ra = std::round(a.character[x].real() * 1e6), rb = std::round(b.character[x].real() * 1e6);
            if (ra != rb) {
                return ra > rb;
            }
            double ia = std::round(a.character[x].imag() * 1e6), ib = std::round(b.character[x].imag() * 1e6);
            if (ia != ib) {
                return ia > ib;
            }
        }
        return false;
    });
    for (size_t i = 0; i < found.size(); i++) {
        found[i].label = i == 0 ? "1" : "r" + std::to_string(i);
        for (auto &m : found[i].matrices) {
            if (found[i].dim == 1) {
                m(0, 0) = m(0, 0) / std::abs(m(0, 0));
            }
        }
        if (is_trivial(found[i])) {
            for (auto &m : found[i].matrices) {
                m(0, 0) = 1;
            }
        }
        fill_characters(found[i]);
    }
    return found;
}

std::vector<Irrep> irreps(const FiniteGroup &g) {
    if (g.is_builtin()) {
        if (g.name() == "S3") {
            return dihedral_irreps(g, 3);
        }
        if (g.name() == "D4") {
            return dihedral_irreps(g, 4);
        }
        if (g.name() == "Q8") {
            return quaternion_irreps();
        }
        return cyclic_irreps(g);
    }
    return numeric_irreps(g);
}

OrthogonalityReport verify_orthogonality(const FiniteGroup &g, const std::vector<Irrep> &reps, double tol) {
    OrthogonalityReport rep;
    int n = g.order();
    const auto &classes = g.classes();
    int k = (int)classes.size();
    for (const auto &r : reps) {
        rep.dim_square_sum += r.dim * r.dim;
    }
    auto check = [&](double dev, int a, int b) {
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tol) {
            rep.passed = false;
            rep.failures.emplace_back(a, b);
        }
    };
    // Column relations over class representatives.
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < k; j++) {
            Complex s = 0;
            for (const auto &r : reps) {
                s += std::conj(r.character[classes[i].representative]) * r.character[classes[j].representative];
            }
            s /= double(n);
            double expect = i == j ? 1.0 / classes[i].size() : 0.0;
            check(std::abs(s - expect), i, j);
        }
    }
    // (1/|G|) sum_Gamma d chi(g) = delta_{e,g}, recorded against the pair (class, class).
    for (int i = 0; i < k; i++) {
        Complex s = 0;
        for (const auto &r : reps) {
            s += double(r.dim) * r.character[classes[i].representative];
        }
        s /= double(n);
        check(std::abs(s - (i == 0 ? 1.0 : 0.0)), i, 0);
    }
    // Row relations.
    for (size_t a = 0; a < reps.size(); a++) {
        for (size_t b = 0; b < reps.size(); b++) {
            Complex s = 0;
            for (int x = 0; x < n; x++) {
                s += std::conj(reps[a].character[x]) * reps[b].character[x];
            }
            s /= double(n);
            check(std::abs(s - (a == b ? 1.0 : 0.0)), (int)a, (int)b);
        }
    }
    if (rep.dim_square_sum != n || (int)reps.size() != k) {
        rep.passed = false;
    }
    return rep;
}

FusionTable fusion_table(const FiniteGroup &g, const std::vector<Irrep> &reps) {
    int m = (int)reps.size();
    int n = g.order();
    FusionTable out(m, std::vector<std::vector<int>>(m, std::vector<int>(m)));
    for (int a = 0; a < m; a++) {
        for (int b = 0; b < m; b++) {
            for (int c = 0; c < m; c++) {
                Complex s = 0;
                for (int x = 0; x < n; x++) {
                    s += reps[a].character[x] * reps[b].character[x] * std::conj(reps[c].character[x]);
                }
                s /= double(n);
                double r = std::round(s.real());
                if (std::abs(s - r) >= 1e-8) {
                    throw NumericalError("fusion coefficient not integral; irrep set incomplete");
                }
                out[a][b][c] = (int)r;
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> commuting_pair_orbits(const FiniteGroup &g) {
    int n = g.order();
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (!g.commute(a, b)) {
                continue;
            }
            bool minimal = true;
            for (int k = 0; k < n && minimal; k++) {
                std::pair<int, int> c{g.conj(k, a), g.conj(k, b)};
                minimal = !(c < std::pair<int, int>{a, b});
            }
            if (minimal) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

int count_torus_gsd(const FiniteGroup &g) {
    return (int)commuting_pair_orbits(g).size();
}

AnyonSpectrum anyon_spectrum(const FiniteGroup &g) {
    AnyonSpectrum out;
    const auto &classes = g.classes();
    for (size_t c = 0; c < classes.size(); c++) {
        CentralizerData data;
        data.sub = make_subgroup(g, classes[c].centralizer, g.name() + ".Z(" + g.element_name(classes[c].representative) + ")");
        if (c == 0 && g.is_builtin()) {
            data.reps = irreps(g);
        } else {
            data.reps = numeric_irreps(data.sub.group);
        }
        for (size_t r = 0; r < data.reps.size(); r++) {
            AnyonLabel lab;
            lab.flux = (int)c;
            lab.charge = (int)r;
            lab.name = "(" + g.element_name(classes[c].representative) + "," + data.reps[r].label + ")";
            out.labels.push_back(lab);
        }
        out.centralizers.push_back(std::move(data));
    }
    return out;
}

std::vector<AnyonLabel> anyon_labels(const FiniteGroup &g) {
    return anyon_spectrum(g).labels;
}

}  // namespace qdouble
