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

#include "qdouble_cli/runner.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "qdouble/errors.h"

namespace qdouble::cli {

using nlohmann::json;

namespace {

json cjson(Complex z) {
    return json::array({z.real(), z.imag()});
}

std::string fmt(double x, int prec = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << (std::abs(x) < 0.5 * std::pow(10.0, -prec) ? 0.0 : x);
    return os.str();
}

std::string fmt(Complex z, int prec = 4) {
    if (std::abs(z.imag()) < 0.5 * std::pow(10.0, -prec)) {
        return fmt(z.real(), prec);
    }
    return fmt(z.real(), prec) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag()), prec) + "i";
}

/// Aligned columns; the first row is the header.
std::string table(const std::vector<std::vector<std::string>> &rows) {
    if (rows.empty()) {
        return "";
    }
    std::vector<size_t> width(rows[0].size(), 0);
    for (const auto &r : rows) {
        for (size_t i = 0; i < r.size() && i < width.size(); i++) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    std::ostringstream os;
    for (size_t k = 0; k < rows.size(); k++) {
        for (size_t i = 0; i < rows[k].size(); i++) {
            os << (i ? "  " : "") << std::left << std::setw((int)width[i]) << rows[k][i];
        }
        os << "\n";
        if (k == 0) {
            size_t total = 0;
            for (size_t w : width) {
                total += w;
            }
            os << std::string(total + 2 * (width.size() - 1), '-') << "\n";
        }
    }
    return os.str();
}

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[k, v] : j.items()) {
        if (!allowed.count(k)) {
            throw ConfigError("unknown key '" + k + "' in " + where);
        }
    }
}

int element_of(const FiniteGroup &g, const json &j) {
    if (j.is_number_integer()) {
        int k = j.get<int>();
        if (k < 0 || k >= g.order()) {
            throw ConfigError("element index " + std::to_string(k) + " out of range");
        }
        return k;
    }
    if (!j.is_string()) {
        throw ConfigError("group elements are given by name or index");
    }
    try {
        return g.element(j.get<std::string>());
    } catch (const ValidationError &e) {
        throw ConfigError(e.what());
    }
}

int irrep_of(const Model &m, const json &j) {
    const auto &reps = m.irreps();
    if (j.is_number_integer()) {
        int k = j.get<int>();
        if (k < 0 || k >= (int)reps.size()) {
            throw ConfigError("irrep index " + std::to_string(k) + " out of range");
        }
        return k;
    }
    std::string label = j.get<std::string>();
    for (size_t k = 0; k < reps.size(); k++) {
        if (reps[k].label == label) {
            return (int)k;
        }
    }
    throw ConfigError("group " + m.group().name() + " has no irrep '" + label + "'");
}

std::pair<int, int> sector_of(const FiniteGroup &g, const json &params) {
    if (!params.contains("sector")) {
        return {0, 0};
    }
    const auto &s = params.at("sector");
    if (!s.is_array() || s.size() != 2) {
        throw ConfigError("sector must be a pair of group elements");
    }
    int a = element_of(g, s[0]), b = element_of(g, s[1]);
    if (!g.commute(a, b)) {
        throw ConfigError("sector elements must commute");
    }
    return {a, b};
}

Channel channel_of(const ModelPtr &m, const json &spec) {
    if (spec.is_string()) {
        std::string kind = spec.get<std::string>();
        if (kind == "z") {
            return Channel::z_all(m);
        }
        if (kind == "x") {
            const auto &lat = m->lattice();
            return Channel::x(m, {lat.right_edge(0, 0), lat.down_edge(0, 0)});
        }
        throw ConfigError("unknown channel '" + kind + "' (expected z or x)");
    }
    try {
        return Channel::from_json(m, spec);
    } catch (const PreconditionError &e) {
        throw ConfigError(e.what());
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed channel: ") + e.what());
    }
}

ZPath zpath_of(const json &params) {
    std::string p = params.value("path", "auto");
    if (p == "auto") {
        return ZPath::Auto;
    }
    if (p == "kraus") {
        return ZPath::Kraus;
    }
    if (p == "dephase") {
        return ZPath::Dephase;
    }
    throw ConfigError("unknown Z-channel path '" + p + "'");
}

DensityState as_requested(const DensityState &rho, const json &params) {
    std::string rep = params.value("representation", "auto");
    if (rep == "auto") {
        return rho;
    }
    if (rep == "dense") {
        return rho.to_dense();
    }
    if (rep == "classical") {
        if (rho.kind() != DensityState::Kind::Classical) {
            throw ConfigError("state is not diagonal in the group basis");
        }
        return rho;
    }
    throw ConfigError("unknown representation '" + rep + "'");
}

Site site_of(const TorusLattice &lat, const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("a site is a [vertex, plaquette] pair");
    }
    Site s{j[0].get<int>(), j[1].get<int>()};
    if (s.vertex < 0 || s.vertex >= lat.num_vertices() || s.plaquette < 0 || s.plaquette >= lat.num_plaquettes() ||
        !lat.is_site(s)) {
        throw ConfigError("[" + std::to_string(s.vertex) + ", " + std::to_string(s.plaquette) + "] is not a site");
    }
    return s;
}

struct Context {
    FiniteGroup group;
    TorusLattice lattice;
    ModelPtr model;
};

struct Outcome {
    json results = json::object();
    bool passed = true;
    std::string table;
};

using Runner = Outcome (*)(const Context &, const json &);

Outcome run_gsd(const Context &c, const json &p) {
    check_keys(p, {"brute_force"}, "gsd");
    Outcome o;
    int formula = count_torus_gsd(c.group);
    o.results["formula"] = formula;
    std::vector<std::vector<std::string>> rows{{"method", "count"}, {"formula", std::to_string(formula)}};
    if (p.value("brute_force", true)) {
        auto bf = brute_force_gsd(c.group, c.lattice);
        o.results["brute_force"] = {{"count", bf.count}, {"flat_configs", bf.flat_configs}};
        o.results["agree"] = bf.count == formula;
        o.passed = bf.count == formula;
        rows.push_back({"brute force", std::to_string(bf.count)});
    }
    o.table = table(rows);
    return o;
}

Outcome run_smatrix(const Context &c, const json &p) {
    check_keys(p, {}, "smatrix");
    Outcome o;
    auto md = s_matrix(c.group);
    json labels = json::array(), s = json::array();
    std::vector<std::vector<std::string>> rows{{"S"}};
    for (const auto &l : md.labels) {
        labels.push_back(l.name);
        rows[0].push_back(l.name);
    }
    for (int i = 0; i < md.s.rows(); i++) {
        json row = json::array();
        std::vector<std::string> text{md.labels[i].name};
        for (int j = 0; j < md.s.cols(); j++) {
            row.push_back(cjson(md.s(i, j)));
            text.push_back(fmt(md.s(i, j)));
        }
        s.push_back(row);
        rows.push_back(text);
    }
    o.results = {{"labels", labels},
                 {"s", s},
                 {"unitarity_deviation", md.unitarity_deviation},
                 {"symmetry_deviation", md.symmetry_deviation},
                 {"electric_magnetic_deviation", md.electric_magnetic_deviation}};
    o.passed = md.unitarity_deviation <= 1e-8 && md.symmetry_deviation <= 1e-10 &&
               md.electric_magnetic_deviation <= 1e-10;
    o.table = table(rows);
    return o;
}

Outcome run_fusion(const Context &c, const json &p) {
    check_keys(p, {}, "fusion");
    Outcome o;
    const auto &reps = c.model->irreps();
    auto orth = verify_orthogonality(c.group, reps);
    auto n = fusion_table(c.group, reps);
    json irr = json::array();
    for (const auto &r : reps) {
        json chi = json::array();
        for (const auto &cls : c.group.classes()) {
            chi.push_back(cjson(r.character[cls.representative]));
        }
        irr.push_back({{"label", r.label}, {"dim", r.dim}, {"character", chi}});
    }
    std::vector<std::vector<std::string>> rows{{"x"}};
    json products = json::array();
    for (const auto &r : reps) {
        rows[0].push_back(r.label);
    }
    for (size_t a = 0; a < reps.size(); a++) {
        std::vector<std::string> text{reps[a].label};
        json row = json::array();
        for (size_t b = 0; b < reps.size(); b++) {
            std::string sum;
            for (size_t k = 0; k < reps.size(); k++) {
                for (int mult = 0; mult < n[a][b][k]; mult++) {
                    sum += (sum.empty() ? "" : "+") + reps[k].label;
                }
            }
            text.push_back(sum);
            row.push_back(sum);
        }
        rows.push_back(text);
        products.push_back(row);
    }
    o.results = {{"irreps", irr},
                 {"table", products},
                 {"multiplicities", n},
                 {"orthogonality",
                  {{"passed", orth.passed}, {"max_deviation", orth.max_deviation}, {"dim_square_sum", orth.dim_square_sum}}}};
    o.passed = orth.passed && orth.dim_square_sum == c.group.order();
    o.table = table(rows);
    return o;
}

DensityState decohere(const Context &c, const json &p, Channel *used = nullptr) {
    auto [a, b] = sector_of(c.group, p);
    Channel ch = channel_of(c.model, p.value("channel", json("z")));
    if (used) {
        *used = ch;
    }
    DensityState pure = DensityState::pure(ground_state(c.model, a, b));
    return apply_channel(ch, pure, zpath_of(p));
}

Outcome run_decohere(const Context &c, const json &p) {
    check_keys(p, {"channel", "sector", "path", "representation"}, "decohere");
    Outcome o;
    Channel ch = Channel::z_all(c.model);
    DensityState rho = as_requested(decohere(c, p, &ch), p);
    double residual = rho.validity_residual();
    o.results = {{"channel", ch.to_json()},
                 {"cptp_residual", ch.cptp_residual()},
                 {"state", rho.summary()},
                 {"trace", rho.trace()},
                 {"purity", rho.purity()},
                 {"validity_residual", residual}};
    o.passed = std::abs(rho.trace() - 1) <= 1e-9 && residual <= 1e-9;
    o.table = table({{"quantity", "value"},
                     {"trace", fmt(rho.trace(), 12)},
                     {"purity", fmt(rho.purity(), 8)},
                     {"support", std::to_string(rho.support().size())},
                     {"validity residual", fmt(residual, 12)}});
    return o;
}

Outcome run_audit(const Context &c, const json &p) {
    check_keys(p, {"channel", "sector", "path", "representation", "tolerance"}, "symmetry-audit");
    Outcome o;
    Channel ch = Channel::z_all(c.model);
    DensityState rho = as_requested(decohere(c, p, &ch), p);
    double tol = p.value("tolerance", 1e-9);
    bool every_edge = (int)ch.edges().size() == c.lattice.num_edges();
    AuditSet set = every_edge ? default_audit_set(c.lattice) : patch_audit_set(c.lattice, ch.edges());
    auto verdicts = symmetry_audit(rho, set, tol);
    json list = json::array();
    std::map<std::string, int> counts{{"strong", 0}, {"weak", 0}, {"broken", 0}};
    std::vector<std::vector<std::string>> rows{{"operator", "ribbon", "verdict", "scalar", "residual"}};
    for (const auto &v : verdicts) {
        list.push_back(v.to_json());
        counts[verdict_name(v.verdict)]++;
        double shown = v.verdict == Verdict::Weak ? v.weak_residual : v.residual;
        Complex scalar = v.verdict == Verdict::Weak ? v.weak_scalar : v.scalar;
        rows.push_back({v.op, v.ribbon, verdict_name(v.verdict), fmt(scalar), fmt(shown, 6)});
    }
    o.results = {{"channel", ch.to_json()}, {"state", rho.summary()}, {"verdicts", list}, {"counts", counts}};
    o.table = table(rows);
    return o;
}

Ribbon default_open(const TorusLattice &lat) {
    return open_ribbon(lat, lat.canonical_site(0, 0), {lat.vertex(1, 1), lat.plaquette(0, 0)});
}

Outcome run_anomaly(const Context &c, const json &p) {
    check_keys(p, {"irrep", "class", "closed", "open", "sector"}, "anomaly");
    Outcome o;
    auto [a, b] = sector_of(c.group, p);
    int irrep = irrep_of(*c.model, p.value("irrep", json(c.model->irreps().size() > 1 ? 1 : 0)));
    int cls = c.group.class_of(element_of(c.group, p.value("class", json(c.group.order() > 1 ? 1 : 0))));
    Ribbon closed = ribbon_from_spec(c.lattice, p.value("closed", json("plaquette:0")));
    Ribbon open = p.contains("open") ? ribbon_from_spec(c.lattice, p.at("open")) : default_open(c.lattice);
    auto rho = decohered_sector(c.model, a, b);
    auto r = anomaly_phase(rho, irrep, cls, closed, open);
    o.results = {{"irrep", c.model->irreps()[irrep].label},
                 {"class", c.group.element_name(c.group.classes()[cls].representative)},
                 {"closed", closed.name()},
                 {"open", open.to_json()},
                 {"trace_left", cjson(r.trace_left)},
                 {"trace_right", cjson(r.trace_right)},
                 {"expected", cjson(r.expected)}};
    std::vector<std::vector<std::string>> rows{{"quantity", "value"},
                                               {"tr(L)", fmt(r.trace_left, 8)},
                                               {"tr(R)", fmt(r.trace_right, 8)},
                                               {"character", fmt(r.expected, 8)}};
    if (std::abs(r.expected) < 1e-12) {
        // Both sides vanish; a phase is not defined.
        o.results["ratio"] = nullptr;
        o.results["annihilated"] = std::abs(r.trace_left) <= 1e-10;
        rows.push_back({"ratio", "undefined"});
    } else {
        o.results["ratio"] = cjson(r.ratio);
        rows.push_back({"ratio", fmt(r.ratio, 8)});
    }
    o.table = table(rows);
    return o;
}

Outcome run_swssb(const Context &c, const json &p) {
    check_keys(p, {"class", "open", "sector", "representation"}, "swssb");
    Outcome o;
    auto [a, b] = sector_of(c.group, p);
    int cls = c.group.class_of(element_of(c.group, p.value("class", json(c.group.order() > 1 ? 1 : 0))));
    Ribbon open = p.contains("open") ? ribbon_from_spec(c.lattice, p.at("open"))
                                     : open_ribbon(c.lattice, c.lattice.canonical_site(0, 0), c.lattice.canonical_site(1, 0));
    auto pure_state = DensityState::pure(ground_state(c.model, a, b));
    auto decohered = as_requested(apply_z_channel(pure_state, Channel::z_all(c.model).edges()), p);
    double f_dec = swssb_fidelity(decohered, cls, open);
    double f_pure = swssb_fidelity(pure_state, cls, open);
    bool flagged = f_dec >= 1 - 1e-8 && f_pure < 0.99;
    o.results = {{"class", c.group.element_name(c.group.classes()[cls].representative)},
                 {"open", open.to_json()},
                 {"fidelity_decohered", f_dec},
                 {"fidelity_pure", f_pure},
                 {"swssb", flagged}};
    o.table = table({{"state", "fidelity"}, {"decohered", fmt(f_dec, 10)}, {"pure", fmt(f_pure, 10)}});
    return o;
}

Outcome run_cmi(const Context &c, const json &p) {
    check_keys(p, {"widths", "sector", "row", "a_rows"}, "cmi-profile");
    Outcome o;
    auto [a, b] = sector_of(c.group, p);
    int row = p.value("row", 0), a_rows = p.value("a_rows", 0);
    std::vector<int> widths;
    if (p.contains("widths")) {
        widths = p.at("widths").get<std::vector<int>>();
    } else {
        for (int w = 1; w + a_rows < c.lattice.ly() + (a_rows == 0 ? 1 : 0); w++) {
            widths.push_back(w);
        }
    }
    auto rho = decohered_sector(c.model, a, b);
    json profile = json::array();
    std::vector<std::vector<std::string>> rows{{"width", "I(A:C|B)"}};
    for (int w : widths) {
        try {
            auto part = row_tripartition(c.lattice, row, a_rows, w);
            double i = cmi(rho, part);
            profile.push_back({{"width", w}, {"cmi", i}});
            rows.push_back({std::to_string(w), fmt(i, 12)});
        } catch (const PreconditionError &e) {
            profile.push_back({{"width", w}, {"skipped", e.what()}});
            rows.push_back({std::to_string(w), "skipped"});
        }
    }
    o.results = {{"profile", profile}};
    o.table = table(rows);
    return o;
}

Outcome run_extremal(const Context &c, const json &p) {
    check_keys(p, {"overlaps", "marginals", "cmi", "buffer_width", "mixtures"}, "extremal");
    ExtremalOptions opt;
    opt.overlaps = p.value("overlaps", opt.overlaps);
    opt.marginals = p.value("marginals", opt.marginals);
    opt.cmi = p.value("cmi", opt.cmi);
    opt.buffer_width = p.value("buffer_width", opt.buffer_width);
    if (p.contains("mixtures")) {
        opt.mixtures = p.at("mixtures").get<std::vector<double>>();
    }
    if (opt.cmi) {
        // Fall back to no CMI when the buffer does not fit this torus.
        try {
            row_tripartition(c.lattice, 0, 0, opt.buffer_width);
        } catch (const PreconditionError &) {
            opt.cmi = false;
        }
    }
    Outcome o;
    auto rep = extremal_analysis(c.group, c.lattice, opt);
    o.results = rep.to_json(c.group);
    o.results["cmi_computed"] = opt.cmi;
    o.passed = rep.overlap_deviation <= 1e-10 && rep.marginal_deviation <= 1e-10 && rep.max_cmi <= 1e-10 &&
               rep.mixtures_ok;
    o.table = table({{"quantity", "value"},
                     {"extremal points", std::to_string(rep.sectors.size())},
                     {"overlap deviation", fmt(rep.overlap_deviation, 12)},
                     {"marginal deviation", fmt(rep.marginal_deviation, 12)},
                     {"max CMI", fmt(rep.max_cmi, 12)},
                     {"mixture bound", rep.mixtures_ok ? "holds" : "violated"}});
    return o;
}

const std::map<std::string, Runner> &runners() {
    static const std::map<std::string, Runner> r{
        {"gsd", run_gsd},         {"smatrix", run_smatrix},   {"fusion", run_fusion},
        {"decohere", run_decohere}, {"symmetry-audit", run_audit}, {"anomaly", run_anomaly},
        {"swssb", run_swssb},     {"cmi-profile", run_cmi},   {"extremal", run_extremal}};
    return r;
}

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::pair<int, int> parse_lattice(const std::string &s) {
    auto x = s.find('x');
    try {
        if (x == std::string::npos) {
            throw std::invalid_argument(s);
        }
        size_t used = 0;
        int lx = std::stoi(s.substr(0, x), &used);
        if (used != x) {
            throw std::invalid_argument(s);
        }
        std::string rest = s.substr(x + 1);
        int ly = std::stoi(rest, &used);
        if (used != rest.size()) {
            throw std::invalid_argument(s);
        }
        return {lx, ly};
    } catch (const std::exception &) {
        throw ConfigError("lattice must look like 3x2, got '" + s + "'");
    }
}

FiniteGroup make_group(const json &spec) {
    try {
        if (spec.is_string()) {
            return build_group(spec.get<std::string>());
        }
        if (spec.is_object()) {
            check_keys(spec, {"name", "table", "elements"}, "group");
            auto table = spec.at("table").get<std::vector<std::vector<int>>>();
            std::vector<std::string> names;
            if (spec.contains("elements")) {
                names = spec.at("elements").get<std::vector<std::string>>();
            }
            return FiniteGroup(spec.value("name", std::string("custom")), std::move(table), std::move(names));
        }
    } catch (const ValidationError &e) {
        throw ConfigError(e.what());
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed group: ") + e.what());
    }
    throw ConfigError("group must be a builtin name or an object with a multiplication table");
}

ExperimentConfig parse_config(const json &j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    check_keys(j, {"group", "lattice", "experiments", "output", "tables"}, "config");
    ExperimentConfig cfg;
    cfg.raw = j;
    if (!j.contains("group")) {
        throw ConfigError("config needs a group");
    }
    cfg.group = j.at("group");
    if (j.contains("lattice")) {
        const auto &l = j.at("lattice");
        if (l.is_string()) {
            std::tie(cfg.lx, cfg.ly) = parse_lattice(l.get<std::string>());
        } else if (l.is_object()) {
            check_keys(l, {"lx", "ly"}, "lattice");
            cfg.lx = l.value("lx", 2);
            cfg.ly = l.value("ly", 2);
        } else {
            throw ConfigError("lattice must be \"LxxLy\" or {\"lx\", \"ly\"}");
        }
    }
    if (!j.contains("experiments") || !j.at("experiments").is_array() || j.at("experiments").empty()) {
        throw ConfigError("config needs a non-empty experiments list");
    }
    for (const auto &e : j.at("experiments")) {
        ExperimentSpec spec;
        if (e.is_string()) {
            spec.name = e.get<std::string>();
        } else if (e.is_object() && e.contains("name")) {
            spec.name = e.at("name").get<std::string>();
            spec.params = e;
            spec.params.erase("name");
        } else {
            throw ConfigError("experiments are names or objects with a name");
        }
        if (!runners().count(spec.name)) {
            throw ConfigError("unknown experiment '" + spec.name + "'");
        }
        cfg.experiments.push_back(std::move(spec));
    }
    cfg.output = j.value("output", std::string());
    cfg.tables = j.value("tables", false);
    return cfg;
}

Ribbon ribbon_from_spec(const TorusLattice &lat, const json &spec) {
    try {
        if (spec.is_string()) {
            std::string s = spec.get<std::string>();
            auto index = [&](size_t from, size_t to) {
                size_t used = 0;
                std::string digits = s.substr(from, to - from);
                int k = std::stoi(digits, &used);
                if (used != digits.size()) {
                    throw ConfigError("bad ribbon name '" + s + "'");
                }
                return k;
            };
            if (s.rfind("xi_x[", 0) == 0 && s.back() == ']') {
                int y = index(5, s.size() - 1);
                if (y < 0 || y >= lat.ly()) {
                    throw ConfigError("row out of range in '" + s + "'");
                }
                return ribbon_x(lat, y);
            }
            if (s.rfind("xi_y[", 0) == 0 && s.back() == ']') {
                int x = index(5, s.size() - 1);
                if (x < 0 || x >= lat.lx()) {
                    throw ConfigError("column out of range in '" + s + "'");
                }
                return ribbon_y(lat, x);
            }
            if (s.rfind("vertex:", 0) == 0) {
                int v = index(7, s.size());
                if (v < 0 || v >= lat.num_vertices()) {
                    throw ConfigError("vertex out of range in '" + s + "'");
                }
                return vertex_loop(lat, v);
            }
            if (s.rfind("plaquette:", 0) == 0) {
                int p = index(10, s.size());
                if (p < 0 || p >= lat.num_plaquettes()) {
                    throw ConfigError("plaquette out of range in '" + s + "'");
                }
                return plaquette_loop(lat, p);
            }
            throw ConfigError("unknown ribbon '" + s + "'");
        }
        if (spec.is_object() && spec.contains("from")) {
            check_keys(spec, {"from", "to"}, "ribbon");
            return open_ribbon(lat, site_of(lat, spec.at("from")), site_of(lat, spec.at("to")));
        }
        if (spec.is_object() && spec.contains("triangles")) {
            return Ribbon::from_json(lat, spec);
        }
    } catch (const ValidationError &e) {
        throw ConfigError(std::string("invalid ribbon: ") + e.what());
    } catch (const std::invalid_argument &) {
        throw ConfigError("bad ribbon index");
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed ribbon: ") + e.what());
    }
    throw ConfigError("ribbons are names, {\"from\", \"to\"} site pairs or serialized ribbons");
}

json merge_flags(json config, const json &flags, std::ostream &warn) {
    for (const auto &[k, v] : flags.items()) {
        if (v.is_null()) {
            continue;
        }
        if (config.contains(k)) {
            if (config.at(k) != v) {
                warn << "warning: --" << k << "=" << v.dump() << " ignored; config sets " << k << "="
                     << config.at(k).dump() << "\n";
            }
        } else {
            config[k] = v;
        }
    }
    return config;
}

RunResult run(const ExperimentConfig &cfg) {
    RunResult out;
    json report{{"schema_version", kSchemaVersion},
                {"timestamp", utc_timestamp()},
                {"config", cfg.raw},
                {"lattice", {{"lx", cfg.lx}, {"ly", cfg.ly}}}};
    json records = json::array();
    bool config_error = false, capacity_error = false, failed = false;
    std::unique_ptr<Context> ctx;
    try {
        FiniteGroup g = make_group(cfg.group);
        TorusLattice lat(cfg.lx, cfg.ly);
        auto m = make_model(g, lat);
        ctx = std::make_unique<Context>(Context{g, lat, m});
        report["group"] = {{"name", g.name()}, {"order", g.order()}};
    } catch (const ConfigError &e) {
        report["error"] = {{"kind", "config"}, {"message", e.what()}};
        config_error = true;
    } catch (const PreconditionError &e) {
        report["error"] = {{"kind", "config"}, {"message", e.what()}};
        config_error = true;
    } catch (const CapacityError &e) {
        report["error"] = {{"kind", "capacity"}, {"message", e.what()}};
        capacity_error = true;
    }
    if (ctx) {
        for (const auto &spec : cfg.experiments) {
            json rec{{"name", spec.name}, {"inputs", spec.params}};
            auto start = std::chrono::steady_clock::now();
            try {
                Outcome o = runners().at(spec.name)(*ctx, spec.params);
                rec["results"] = o.results;
                rec["status"] = o.passed ? "ok" : "check_failed";
                failed = failed || !o.passed;
                if (!o.table.empty()) {
                    out.tables += "== " + spec.name + " ==\n" + o.table + "\n";
                }
            } catch (const ConfigError &e) {
                rec["status"] = "config_error";
                rec["error"] = e.what();
                config_error = true;
            } catch (const CapacityError &e) {
                rec["status"] = "capacity_error";
                rec["error"] = e.what();
                capacity_error = true;
            } catch (const json::exception &e) {
                rec["status"] = "config_error";
                rec["error"] = std::string("malformed parameter: ") + e.what();
                config_error = true;
            } catch (const Error &e) {
                rec["status"] = "error";
                rec["error"] = e.what();
                failed = true;
            }
            rec["runtime_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            records.push_back(std::move(rec));
        }
    }
    report["experiments"] = records;
    out.exit_code = config_error ? kConfigError : capacity_error ? kCapacityError : failed ? kCheckFailed : kOk;
    report["ok"] = out.exit_code == kOk;
    report["exit_code"] = out.exit_code;
    out.report = std::move(report);
    return out;
}

}  // namespace qdouble::cli
