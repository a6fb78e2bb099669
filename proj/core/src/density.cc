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

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qdouble/errors.h"

namespace qdouble {

namespace {

std::unordered_map<Config, int> index_of(const std::vector<Config> &basis) {
    std::unordered_map<Config, int> idx;
    idx.reserve(basis.size());
    for (size_t i = 0; i < basis.size(); i++) {
        idx[basis[i]] = (int)i;
    }
    return idx;
}

void require_dense_size(size_t n, const char *what) {
    if (n > DensityState::kMaxDense) {
        throw CapacityError(std::string(what) + " needs a dense matrix of dimension " + std::to_string(n) +
                            " (limit " + std::to_string(DensityState::kMaxDense) +
                            "); use a ClassicalDiagonal state instead");
    }
}

std::vector<std::pair<Config, double>> sorted_probs(std::unordered_map<Config, double> &&m) {
    std::vector<std::pair<Config, double>> v(m.begin(), m.end());
    std::sort(v.begin(), v.end());
    return v;
}

double eigen_entropy(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    double s = 0;
    for (int i = 0; i < solver.eigenvalues().size(); i++) {
        double l = solver.eigenvalues()[i];
        if (l > 1e-12) {
            s -= l * std::log(l);
        }
    }
    return s;
}

Eigen::MatrixXcd gram(const EnsembleRep &e) {
    int k = (int)e.states.size();
    Eigen::MatrixXcd g(k, k);
    for (int i = 0; i < k; i++) {
        for (int j = i; j < k; j++) {
            Complex v = std::sqrt(e.weights[i] * e.weights[j]) * e.states[i].inner(e.states[j]);
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

}  // namespace

DensityState DensityState::dense(ModelPtr m, std::vector<Config> basis, Eigen::MatrixXcd matrix) {
    require_dense_size(basis.size(), "state");
    if (matrix.rows() != (long)basis.size() || matrix.cols() != (long)basis.size()) {
        throw ValidationError("dense matrix does not match its basis");
    }
    DensityState s;
    s.model_ = std::move(m);
    s.rep_ = DenseRep{std::move(basis), std::move(matrix)};
    return s;
}

DensityState DensityState::pure(const QuantumState &psi) {
    return ensemble(psi.model(), {1.0}, {psi});
}

DensityState DensityState::ensemble(ModelPtr m, std::vector<double> weights, std::vector<QuantumState> states) {
    if (weights.size() != states.size()) {
        throw ValidationError("ensemble weights and states differ in length");
    }
    for (double w : weights) {
        if (w < 0) {
            throw ValidationError("ensemble weights must be nonnegative");
        }
    }
    DensityState s;
    s.model_ = std::move(m);
    s.rep_ = EnsembleRep{std::move(weights), std::move(states)};
    return s;
}

DensityState DensityState::classical(ModelPtr m, std::vector<std::pair<Config, double>> probs) {
    std::sort(probs.begin(), probs.end());
    std::vector<std::pair<Config, double>> merged;
    merged.reserve(probs.size());
    for (const auto &[c, p] : probs) {
        if (p < -1e-14) {
            throw ValidationError("probabilities must be nonnegative");
        }
        if (!merged.empty() && merged.back().first == c) {
            merged.back().second += p;
        } else {
            merged.emplace_back(c, p);
        }
    }
    DensityState s;
    s.model_ = std::move(m);
    s.rep_ = ClassicalRep{std::move(merged)};
    return s;
}

DensityState DensityState::uniform(ModelPtr m, const std::vector<Config> &configs) {
    std::vector<std::pair<Config, double>> probs;
    probs.reserve(configs.size());
    double p = 1.0 / configs.size();
    for (Config c : configs) {
        probs.emplace_back(c, p);
    }
    return classical(std::move(m), std::move(probs));
}

DensityState::Kind DensityState::kind() const {
    switch (rep_.index()) {
        case 0:
            return Kind::Dense;
        case 1:
            return Kind::Ensemble;
        default:
            return Kind::Classical;
    }
}

double DensityState::trace() const {
    switch (kind()) {
        case Kind::Dense:
            return dense_rep().matrix.trace().real();
        case Kind::Ensemble: {
            double t = 0;
            const auto &e = ensemble_rep();
            for (size_t i = 0; i < e.states.size(); i++) {
                double n = e.states[i].norm();
                t += e.weights[i] * n * n;
            }
            return t;
        }
        default: {
            double t = 0;
            for (const auto &kv : classical_rep().probs) {
                t += kv.second;
            }
            return t;
        }
    }
}

DensityState DensityState::normalized() const {
    double t = trace();
    if (t <= 0) {
        throw PreconditionError("cannot normalize a state with zero trace");
    }
    DensityState s = *this;
    switch (kind()) {
        case Kind::Dense:
            std::get<DenseRep>(s.rep_).matrix /= t;
            break;
        case Kind::Ensemble:
            for (auto &w : std::get<EnsembleRep>(s.rep_).weights) {
                w /= t;
            }
            break;
        default:
            for (auto &kv : std::get<ClassicalRep>(s.rep_).probs) {
                kv.second /= t;
            }
    }
    return s;
}

std::vector<Config> DensityState::support() const {
    std::vector<Config> out;
    switch (kind()) {
        case Kind::Dense:
            out = dense_rep().basis;
            break;
        case Kind::Ensemble:
            for (const auto &st : ensemble_rep().states) {
                for (const auto &kv : st.amplitudes()) {
                    out.push_back(kv.first);
                }
            }
            break;
        default:
            for (const auto &kv : classical_rep().probs) {
                out.push_back(kv.first);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DensityState DensityState::to_dense() const {
    return to_dense(support());
}

DensityState DensityState::to_dense(const std::vector<Config> &basis) const {
    require_dense_size(basis.size(), "conversion");
    auto idx = index_of(basis);
    int n = (int)basis.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    auto at = [&](Config c) {
        auto it = idx.find(c);
        if (it == idx.end()) {
            throw PreconditionError("dense basis does not cover the state's support");
        }
        return it->second;
    };
    switch (kind()) {
        case Kind::Dense: {
            const auto &d = dense_rep();
            for (size_t i = 0; i < d.basis.size(); i++) {
                for (size_t j = 0; j < d.basis.size(); j++) {
                    if (d.matrix(i, j) != 0.0) {
                        m(at(d.basis[i]), at(d.basis[j])) += d.matrix(i, j);
                    }
                }
            }
            break;
        }
        case Kind::Ensemble: {
            const auto &e = ensemble_rep();
            for (size_t k = 0; k < e.states.size(); k++) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
                for (const auto &[c, a] : e.states[k].amplitudes()) {
                    v(at(c)) = a;
                }
                m += e.weights[k] * v * v.adjoint();
            }
            break;
        }
        default:
            for (const auto &[c, p] : classical_rep().probs) {
                int i = at(c);
                m(i, i) += p;
            }
    }
    return dense(model_, basis, std::move(m));
}

double DensityState::purity() const {
    switch (kind()) {
        case Kind::Dense:
            return dense_rep().matrix.squaredNorm();
        case Kind::Ensemble:
            return gram(ensemble_rep()).squaredNorm();
        default: {
            double s = 0;
            for (const auto &kv : classical_rep().probs) {
                s += kv.second * kv.second;
            }
            return s;
        }
    }
}

double DensityState::validity_residual() const {
    switch (kind()) {
        case Kind::Dense: {
            const auto &m = dense_rep().matrix;
            double herm = (m - m.adjoint()).norm();
            Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
            double neg = std::max(0.0, -solver.eigenvalues().minCoeff());
            return std::max(herm, neg);
        }
        case Kind::Ensemble: {
            double worst = 0;
            for (double w : ensemble_rep().weights) {
                worst = std::max(worst, -w);
            }
            return worst;
        }
        default: {
            double worst = 0;
            for (const auto &kv : classical_rep().probs) {
                worst = std::max(worst, -kv.second);
            }
            return worst;
        }
    }
}

nlohmann::json DensityState::summary() const {
    const char *names[] = {"dense", "ensemble", "classical"};
    nlohmann::json j{{"representation", names[(int)kind()]}, {"trace", trace()}};
    switch (kind()) {
        case Kind::Dense:
            j["dimension"] = dense_rep().basis.size();
            break;
        case Kind::Ensemble:
            j["branches"] = ensemble_rep().states.size();
            break;
        default:
            j["support"] = classical_rep().probs.size();
    }
    return j;
}

void OuterSum::add(Complex w, QuantumState ket, QuantumState bra) {
    if (w == 0.0 || ket.empty() || bra.empty()) {
        return;
    }
    terms_.push_back(OuterTerm{w, std::move(ket), std::move(bra)});
}

OuterSum OuterSum::from(const DensityState &rho) {
    OuterSum out;
    const auto &m = rho.model();
    switch (rho.kind()) {
        case DensityState::Kind::Dense: {
            const auto &d = rho.dense_rep();
            for (size_t j = 0; j < d.basis.size(); j++) {
                QuantumState col(m);
                for (size_t i = 0; i < d.basis.size(); i++) {
                    if (std::abs(d.matrix(i, j)) > 0) {
                        col.add(d.basis[i], d.matrix(i, j));
                    }
                }
                out.add(1.0, std::move(col), QuantumState::basis(m, d.basis[j]));
            }
            break;
        }
        case DensityState::Kind::Ensemble: {
            const auto &e = rho.ensemble_rep();
            for (size_t k = 0; k < e.states.size(); k++) {
                out.add(e.weights[k], e.states[k], e.states[k]);
            }
            break;
        }
        default:
            for (const auto &[c, p] : rho.classical_rep().probs) {
                out.add(p, QuantumState::basis(m, c), QuantumState::basis(m, c));
            }
    }
    return out;
}

OuterSum OuterSum::left(const Operator &op) const {
    OuterSum out;
    for (const auto &t : terms_) {
        out.add(t.weight, op.apply(t.ket), t.bra);
    }
    return out;
}

OuterSum OuterSum::conjugate(const std::vector<Operator> &ops) const {
    OuterSum out;
    for (const auto &op : ops) {
        for (const auto &t : terms_) {
            out.add(t.weight, op.apply(t.ket), op.apply(t.bra));
        }
    }
    return out;
}

OuterSum OuterSum::plus(const OuterSum &other, Complex s) const {
    OuterSum out = *this;
    for (const auto &t : other.terms_) {
        out.add(s * t.weight, t.ket, t.bra);
    }
    return out;
}

Complex OuterSum::trace() const {
    Complex s = 0;
    for (const auto &t : terms_) {
        s += t.weight * t.bra.inner(t.ket);
    }
    return s;
}

double OuterSum::frobenius() const {
    // Terms whose bra is a single basis vector are merged into columns.
    std::unordered_map<Config, QuantumState::Map> columns;
    std::vector<const OuterTerm *> rest;
    for (const auto &t : terms_) {
        if (t.bra.size() == 1) {
            auto [c, beta] = *t.bra.amplitudes().begin();
            Complex f = t.weight * std::conj(beta);
            auto &col = columns[c];
            for (const auto &[k, a] : t.ket.amplitudes()) {
                col[k] += f * a;
            }
        } else {
            rest.push_back(&t);
        }
    }
    double total = 0;
    for (const auto &[c, col] : columns) {
        for (const auto &kv : col) {
            total += std::norm(kv.second);
        }
    }
    for (const auto *a : rest) {
        for (const auto *b : rest) {
            total += (a->weight * std::conj(b->weight) * b->ket.inner(a->ket) * a->bra.inner(b->bra)).real();
        }
    }
    for (const auto *l : rest) {
        for (const auto &[c, col] : columns) {
            Complex bl = l->bra.amplitude(c);
            if (bl == 0.0) {
                continue;
            }
            Complex dot = 0;
            for (const auto &[k, a] : l->ket.amplitudes()) {
                auto it = col.find(k);
                if (it != col.end()) {
                    dot += std::conj(it->second) * a;
                }
            }
            total += 2 * (l->weight * dot * std::conj(bl)).real();
        }
    }
    return std::sqrt(std::max(total, 0.0));
}

DensityState OuterSum::to_density(ModelPtr m) const {
    bool diagonal = true;
    for (const auto &t : terms_) {
        diagonal = diagonal && t.ket.size() == 1 && t.bra.size() == 1 &&
                   t.ket.amplitudes().begin()->first == t.bra.amplitudes().begin()->first;
    }
    if (diagonal) {
        std::unordered_map<Config, double> probs;
        for (const auto &t : terms_) {
            auto [c, a] = *t.ket.amplitudes().begin();
            Complex b = t.bra.amplitudes().begin()->second;
            probs[c] += (t.weight * a * std::conj(b)).real();
        }
        return DensityState::classical(std::move(m), sorted_probs(std::move(probs)));
    }
    std::vector<Config> basis;
    for (const auto &t : terms_) {
        for (const auto *s : {&t.ket, &t.bra}) {
            for (const auto &kv : s->amplitudes()) {
                basis.push_back(kv.first);
            }
        }
    }
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    require_dense_size(basis.size(), "operator sum");
    auto idx = index_of(basis);
    int n = (int)basis.size();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
    for (const auto &t : terms_) {
        for (const auto &[r, a] : t.ket.amplitudes()) {
            for (const auto &[c, b] : t.bra.amplitudes()) {
                mat(idx[r], idx[c]) += t.weight * a * std::conj(b);
            }
        }
    }
    return DensityState::dense(std::move(m), std::move(basis), std::move(mat));
}

DensityState reduce(const DensityState &rho, const Region &region) {
    const auto &m = rho.model();
    Config keep = m->mask(region.edges);
    Config drop = ~keep;
    switch (rho.kind()) {
        case DensityState::Kind::Classical: {
            // classical() sorts and merges duplicates.
            std::vector<std::pair<Config, double>> marg;
            marg.reserve(rho.classical_rep().probs.size());
            for (const auto &[c, p] : rho.classical_rep().probs) {
                marg.emplace_back(c & keep, p);
            }
            return DensityState::classical(m, std::move(marg));
        }
        case DensityState::Kind::Dense: {
            const auto &d = rho.dense_rep();
            std::vector<Config> kept;
            for (Config c : d.basis) {
                kept.push_back(c & keep);
            }
            std::sort(kept.begin(), kept.end());
            kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
            auto idx = index_of(kept);
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept.size(), kept.size());
            for (size_t i = 0; i < d.basis.size(); i++) {
                for (size_t j = 0; j < d.basis.size(); j++) {
                    if ((d.basis[i] & drop) == (d.basis[j] & drop)) {
                        out(idx[d.basis[i] & keep], idx[d.basis[j] & keep]) += d.matrix(i, j);
                    }
                }
            }
            return DensityState::dense(m, std::move(kept), std::move(out));
        }
        default: {
            const auto &e = rho.ensemble_rep();
            std::vector<Config> kept;
            for (const auto &st : e.states) {
                for (const auto &kv : st.amplitudes()) {
                    kept.push_back(kv.first & keep);
                }
            }
            std::sort(kept.begin(), kept.end());
            kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
            require_dense_size(kept.size(), "reduced ensemble");
            auto idx = index_of(kept);
            int n = (int)kept.size();
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
            for (size_t k = 0; k < e.states.size(); k++) {
                std::unordered_map<Config, Eigen::VectorXcd> blocks;
                for (const auto &[c, a] : e.states[k].amplitudes()) {
                    auto it = blocks.find(c & drop);
                    if (it == blocks.end()) {
                        it = blocks.emplace(c & drop, Eigen::VectorXcd::Zero(n)).first;
                    }
                    it->second(idx[c & keep]) += a;
                }
                for (const auto &[env, v] : blocks) {
                    out += e.weights[k] * v * v.adjoint();
                }
            }
            return DensityState::dense(m, std::move(kept), std::move(out));
        }
    }
}

double entropy(const DensityState &rho) {
    double t = rho.trace();
    if (std::abs(t - 1) > 1e-8) {
        throw PreconditionError("entropy needs a normalized state (trace " + std::to_string(t) + ")");
    }
    switch (rho.kind()) {
        case DensityState::Kind::Classical: {
            double s = 0;
            for (const auto &kv : rho.classical_rep().probs) {
                if (kv.second > 0) {
                    s -= kv.second * std::log(kv.second);
                }
            }
            return s;
        }
        case DensityState::Kind::Dense:
            return eigen_entropy(rho.dense_rep().matrix);
        default:
            return eigen_entropy(gram(rho.ensemble_rep()));
    }
}

double cmi(const DensityState &rho, const Tripartition &part) {
    validate_tripartition(rho.model()->lattice(), part);
    Region ab, bc;
    ab.edges = part.a.edges;
    ab.edges.insert(ab.edges.end(), part.b.edges.begin(), part.b.edges.end());
    bc.edges = part.b.edges;
    bc.edges.insert(bc.edges.end(), part.c.edges.begin(), part.c.edges.end());
    return entropy(reduce(rho, ab)) + entropy(reduce(rho, bc)) - entropy(reduce(rho, part.b)) - entropy(rho);
}

namespace {

double dense_fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sa(a);
    Eigen::VectorXd root = sa.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXcd sq = sa.eigenvectors() * root.asDiagonal() * sa.eigenvectors().adjoint();
    Eigen::MatrixXcd mid = sq * b * sq;
    mid = (mid + mid.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sm(mid, Eigen::EigenvaluesOnly);
    double f = sm.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return f * f;
}

std::vector<Config> union_support(const DensityState &a, const DensityState &b) {
    auto s = a.support();
    auto t = b.support();
    std::vector<Config> u;
    std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
    return u;
}

}  // namespace

double fidelity(const DensityState &rho_in, const DensityState &sigma_in) {
    DensityState rho = rho_in.normalized(), sigma = sigma_in.normalized();
    if (rho.kind() == DensityState::Kind::Classical && sigma.kind() == DensityState::Kind::Classical) {
        const auto &p = rho.classical_rep().probs;
        const auto &q = sigma.classical_rep().probs;
        double s = 0;
        size_t i = 0, j = 0;
        while (i < p.size() && j < q.size()) {
            if (p[i].first < q[j].first) {
                i++;
            } else if (q[j].first < p[i].first) {
                j++;
            } else {
                s += std::sqrt(std::max(0.0, p[i].second * q[j].second));
                i++;
                j++;
            }
        }
        return s * s;
    }
    auto basis = union_support(rho, sigma);
    return dense_fidelity(rho.to_dense(basis).dense_rep().matrix, sigma.to_dense(basis).dense_rep().matrix);
}

Overlap overlap(const DensityState &rho, const DensityState &sigma) {
    Overlap o;
    using K = DensityState::Kind;
    if (rho.kind() == K::Classical && sigma.kind() == K::Classical) {
        const auto &p = rho.classical_rep().probs;
        const auto &q = sigma.classical_rep().probs;
        size_t i = 0, j = 0;
        while (i < p.size() && j < q.size()) {
            if (p[i].first < q[j].first) {
                i++;
            } else if (q[j].first < p[i].first) {
                j++;
            } else {
                o.raw += p[i].second * q[j].second;
                i++;
                j++;
            }
        }
    } else if (rho.kind() == K::Ensemble && sigma.kind() == K::Ensemble) {
        const auto &a = rho.ensemble_rep();
        const auto &b = sigma.ensemble_rep();
        for (size_t i = 0; i < a.states.size(); i++) {
            for (size_t j = 0; j < b.states.size(); j++) {
                o.raw += a.weights[i] * b.weights[j] * std::norm(a.states[i].inner(b.states[j]));
            }
        }
    } else {
        auto basis = union_support(rho, sigma);
        o.raw = (rho.to_dense(basis).dense_rep().matrix * sigma.to_dense(basis).dense_rep().matrix).trace().real();
    }
    double denom = std::sqrt(rho.purity() * sigma.purity());
    o.normalized = denom > 0 ? o.raw / denom : 0.0;
    return o;
}

DensityState mix(const DensityState &rho, const DensityState &sigma, double p) {
    using K = DensityState::Kind;
    if (p < 0 || p > 1) {
        throw PreconditionError("mixing probability must lie in [0, 1]");
    }
    if (rho.kind() == K::Classical && sigma.kind() == K::Classical) {
        std::vector<std::pair<Config, double>> probs;
        for (const auto &[c, x] : rho.classical_rep().probs) {
            probs.emplace_back(c, p * x);
        }
        for (const auto &[c, x] : sigma.classical_rep().probs) {
            probs.emplace_back(c, (1 - p) * x);
        }
        return DensityState::classical(rho.model(), std::move(probs));
    }
    if (rho.kind() == K::Ensemble && sigma.kind() == K::Ensemble) {
        std::vector<double> w;
        std::vector<QuantumState> s;
        for (const auto *src : {&rho, &sigma}) {
            const auto &e = src->ensemble_rep();
            double f = src == &rho ? p : 1 - p;
            for (size_t k = 0; k < e.states.size(); k++) {
                w.push_back(f * e.weights[k]);
                s.push_back(e.states[k]);
            }
        }
        return DensityState::ensemble(rho.model(), std::move(w), std::move(s));
    }
    auto basis = union_support(rho, sigma);
    Eigen::MatrixXcd m = p * rho.to_dense(basis).dense_rep().matrix + (1 - p) * sigma.to_dense(basis).dense_rep().matrix;
    return DensityState::dense(rho.model(), std::move(basis), std::move(m));
}

}  // namespace qdouble
