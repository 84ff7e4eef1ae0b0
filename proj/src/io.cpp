#include "cubelink/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace cubelink {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

const ojson& field(const ojson& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_field(const ojson& j, const char* key) {
    const ojson& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

bool contains_terminal(const Instance& inst, int v) {
    for (auto [s, t] : inst.pairs)
        if (s == v || t == v) return true;
    return std::find(inst.avoid.begin(), inst.avoid.end(), v) != inst.avoid.end();
}

std::string label_of(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    bad("vertex must be a label string or an integer");
}

}  // namespace

// ---------------------------------------------------------------- hosts

int Host::dim() const {
    if (kind == "cube") return cube_dim;
    if (kind == "link") return cube_dim - 1;
    return polytope->dim();
}

std::string Host::label(int v) const {
    if (kind == "cube") return to_string(static_cast<Bits>(v), cube_dim);
    return polytope->label(v);
}

int Host::vertex(const std::string& text) const {
    if (kind == "cube") {
        if (static_cast<int>(text.size()) != cube_dim ||
            text.find_first_not_of("01") != std::string::npos)
            bad("\"" + text + "\" is not a vertex label of Q_" + std::to_string(cube_dim));
        return static_cast<int>(parse_bits(text));
    }
    auto v = polytope->vertex_by_label(text);
    if (!v) bad("unknown vertex label \"" + text + "\"");
    return *v;
}

const Polytope& Host::lattice() const {
    if (!polytope) bad("the face lattice of this host is not materialized");
    return *polytope;
}

Host make_cube_host(int d) {
    if (d < 1 || d > 20) bad("cube dimension must be in [1, 20]");
    Host h;
    h.kind = "cube";
    h.cube_dim = d;
    h.graph = cube_graph(d);
    if (d <= 8) h.polytope = build_cube_polytope(d);
    h.spec = ojson{{"kind", "cube"}, {"dim", d}};
    return h;
}

Host make_link_host(int cube_dim, const std::string& vertex_label) {
    if (cube_dim < 3 || cube_dim > 8) bad("link hosts need an ambient cube of dimension 3..8");
    std::string label = vertex_label.empty() ? std::string(static_cast<size_t>(cube_dim), '0') : vertex_label;
    if (static_cast<int>(label.size()) != cube_dim || label.find_first_not_of("01") != std::string::npos)
        bad("\"" + label + "\" is not a vertex label of Q_" + std::to_string(cube_dim));
    Host h;
    h.kind = "link";
    h.cube_dim = cube_dim;
    h.center = parse_bits(label);
    h.polytope = link_polytope_of_cube(cube_dim, h.center);
    h.graph = h.polytope->graph();
    h.spec = ojson{{"kind", "link"}, {"cube_dim", cube_dim}, {"vertex", label}};
    return h;
}

Host make_lattice_host(const ojson& j) {
    const int d = int_field(j, "dim");
    const ojson& facets_json = field(j, "facets");
    if (!facets_json.is_array() || facets_json.empty()) bad("\"facets\" must be a nonempty array");
    std::vector<std::string> labels;
    std::map<std::string, int> id;
    if (j.contains("vertices")) {
        for (const ojson& v : j.at("vertices")) {
            labels.push_back(label_of(v));
            if (!id.emplace(labels.back(), static_cast<int>(labels.size()) - 1).second)
                bad("duplicate vertex label \"" + labels.back() + "\"");
        }
    }
    std::vector<std::vector<int>> facets;
    int n = static_cast<int>(labels.size());
    for (const ojson& f : facets_json) {
        if (!f.is_array()) bad("each facet must be an array of vertices");
        std::vector<int> vs;
        for (const ojson& v : f) {
            if (!labels.empty()) {
                auto it = id.find(label_of(v));
                if (it == id.end()) bad("facet names unknown vertex \"" + label_of(v) + "\"");
                vs.push_back(it->second);
            } else {
                if (!v.is_number_integer() || v.get<int>() < 0) bad("facet vertices must be labels or ids");
                vs.push_back(v.get<int>());
            }
        }
        facets.push_back(vs);
    }
    if (labels.empty())
        for (auto& f : facets)
            for (int v : f) n = std::max(n, v + 1);
    Host h;
    h.kind = "lattice";
    try {
        h.polytope = build_from_incidence(d, n, facets, labels);
    } catch (const NotCubical& e) {
        bad(std::string("lattice is not cubical: ") + e.what());
    } catch (const InconsistentIncidence& e) {
        bad(std::string("inconsistent lattice: ") + e.what());
    }
    h.graph = h.polytope->graph();
    h.spec = polytope_to_json(*h.polytope);
    return h;
}

ojson read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) bad("cannot open " + file.string());
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        bad(file.string() + ": " + e.what());
    }
}

Host load_lattice_file(const std::filesystem::path& file) {
    ojson j = read_json_file(file);
    if (j.contains("kind") && j.at("kind") != "lattice") return host_from_json(j, file.parent_path());
    return make_lattice_host(j);
}

Host host_from_json(const ojson& spec, const std::filesystem::path& base_dir) {
    if (!spec.is_object()) bad("polytope description must be an object");
    const ojson& kind = field(spec, "kind");
    if (kind == "cube") return make_cube_host(int_field(spec, "dim"));
    if (kind == "link") {
        std::string v = spec.contains("vertex") ? label_of(spec.at("vertex")) : std::string();
        return make_link_host(int_field(spec, "cube_dim"), v);
    }
    if (kind == "lattice") {
        if (spec.contains("file")) {
            std::filesystem::path p = spec.at("file").get<std::string>();
            return load_lattice_file(p.is_absolute() ? p : base_dir / p);
        }
        return make_lattice_host(spec);
    }
    bad("unknown polytope kind " + kind.dump());
}

ojson polytope_to_json(const Polytope& P) {
    ojson facets = ojson::array();
    for (int F : P.facets()) {
        ojson f = ojson::array();
        for (int v : P.face(F).vertices) f.push_back(P.label(v));
        facets.push_back(f);
    }
    return ojson{{"kind", "lattice"}, {"dim", P.dim()}, {"vertices", P.labels()}, {"facets", facets}};
}

// ---------------------------------------------------------------- instances

Pairing parse_pairs(const Host& host, const std::string& text) {
    Pairing Y;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto dash = item.find('-');
        if (dash == std::string::npos) bad("pair \"" + item + "\" must be written s-t");
        Y.emplace_back(host.vertex(item.substr(0, dash)), host.vertex(item.substr(dash + 1)));
    }
    if (Y.empty()) bad("no pairs given");
    return Y;
}

std::vector<int> parse_vertices(const Host& host, const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(host.vertex(item));
    return out;
}

namespace {

void check_terminals(const Instance& inst) {
    std::set<int> seen;
    for (int x : terminals_of(inst.pairs))
        if (!seen.insert(x).second) bad("terminals must be distinct");
    for (int x : inst.avoid)
        if (!seen.insert(x).second) bad("avoid vertices must be distinct from the terminals");
    if (inst.pairs.empty()) bad("at least one pair is required");
}

}  // namespace

Instance instance_from_json(const ojson& j, const std::filesystem::path& base_dir) {
    Instance inst;
    inst.host = host_from_json(field(j, "polytope"), base_dir);
    const ojson& terms = field(j, "terminals");
    if (!terms.is_array()) bad("\"terminals\" must be a list of pairs");
    for (const ojson& p : terms) {
        if (!p.is_array() || p.size() != 2) bad("each terminal pair must have two vertices");
        inst.pairs.emplace_back(inst.host.vertex(label_of(p[0])), inst.host.vertex(label_of(p[1])));
    }
    if (j.contains("avoid"))
        for (const ojson& v : j.at("avoid")) inst.avoid.push_back(inst.host.vertex(label_of(v)));
    check_terminals(inst);
    return inst;
}

ojson instance_to_json(const Instance& inst) {
    ojson terms = ojson::array();
    for (auto [s, t] : inst.pairs) terms.push_back(ojson::array({inst.host.label(s), inst.host.label(t)}));
    ojson j{{"polytope", inst.host.spec}, {"terminals", terms}};
    if (!inst.avoid.empty()) {
        ojson a = ojson::array();
        for (int v : inst.avoid) a.push_back(inst.host.label(v));
        j["avoid"] = a;
    }
    return j;
}

Instance random_instance(const Host& host, int k, bool strong, std::uint64_t seed) {
    const int need = 2 * k + (strong ? 1 : 0);
    if (k < 1 || need > host.vertex_count()) bad("not enough vertices for the requested number of pairs");
    std::mt19937_64 rng(seed);
    std::vector<int> V(static_cast<size_t>(host.vertex_count()));
    for (int i = 0; i < host.vertex_count(); ++i) V[static_cast<size_t>(i)] = i;
    // Partial Fisher-Yates with explicit arithmetic keeps the draw identical across standard libraries.
    for (int i = 0; i < need; ++i) {
        int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(host.vertex_count() - i));
        std::swap(V[static_cast<size_t>(i)], V[static_cast<size_t>(j)]);
    }
    Instance inst;
    inst.host = host;
    for (int i = 0; i < k; ++i) inst.pairs.emplace_back(V[static_cast<size_t>(2 * i)], V[static_cast<size_t>(2 * i + 1)]);
    if (strong) inst.avoid.push_back(V[static_cast<size_t>(2 * k)]);
    return inst;
}

// ---------------------------------------------------------------- solving

Method parse_method(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "constructive") return Method::Constructive;
    if (s == "oracle") return Method::Oracle;
    bad("method must be auto, constructive or oracle");
}

const char* to_string(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Constructive: return "constructive";
        case Method::Oracle: return "oracle";
    }
    return "auto";
}

namespace {

std::optional<ObstructionWitness> three_dim_witness(const Host& host, const Pairing& Y) {
    if (host.dim() != 3 || !host.polytope || Y.size() != 2) return std::nullopt;
    return detect_config_3F(*host.polytope, Y);
}

LinkageCertificate solve_by_oracle(const Instance& inst) {
    OracleBudget budget;
    budget.timeout = default_oracle_timeout();
    OracleResult r = oracle_linkage(inst.host.graph, inst.pairs, inst.avoid, budget);
    LinkageCertificate cert;
    cert.trace.push_back("oracle");
    if (r.verdict == Verdict::Timeout) throw OracleTimeout("oracle timed out after " + std::to_string(r.nodes) + " nodes");
    if (r.verdict == Verdict::Linked) {
        cert.linked = true;
        for (size_t i = 0; i < inst.pairs.size(); ++i) {
            Path p = r.paths[i];
            if (p.front() != inst.pairs[i].first) std::reverse(p.begin(), p.end());
            cert.paths.push_back(p);
        }
        return cert;
    }
    if (inst.avoid.empty()) cert.obstruction = three_dim_witness(inst.host, inst.pairs);
    if (!cert.obstruction) cert.obstruction = ObstructionWitness{"exhaustive-search", {}, inst.pairs.front(), {}};
    return cert;
}

}  // namespace

LinkageCertificate solve_instance(const Instance& inst, bool strong, Method method) {
    check_terminals(inst);
    if (strong && inst.avoid.size() != 1) bad("a strong instance needs exactly one leftover vertex (--avoid)");
    if (method == Method::Oracle) return solve_by_oracle(inst);
    const Host& h = inst.host;
    const int d = h.dim();
    try {
        if (h.kind == "cube") {
            if (strong && d % 2 == 0) return solve_cube_strong(d, inst.pairs, inst.avoid[0]);
            return solve_cube(d, inst.pairs, inst.avoid);
        }
        if (h.kind == "link" && inst.avoid.empty() && !strong) {
            const auto& parent = h.polytope->parent_ids();
            Pairing Yc;
            for (auto [s, t] : inst.pairs) Yc.emplace_back(parent[static_cast<size_t>(s)], parent[static_cast<size_t>(t)]);
            LinkageCertificate c = solve_link(h.cube_dim, h.center, Yc);
            std::map<int, int> local;
            for (int i = 0; i < h.vertex_count(); ++i) local[parent[static_cast<size_t>(i)]] = i;
            for (Path& p : c.paths)
                for (int& u : p) u = local.at(u);
            if (c.obstruction) {
                auto& w = *c.obstruction;
                for (int& u : w.facet) u = local.at(u);
                std::sort(w.facet.begin(), w.facet.end());
                w.pair = {local.at(w.pair.first), local.at(w.pair.second)};
                for (int& u : w.blocking) u = local.at(u);
                std::sort(w.blocking.begin(), w.blocking.end());
            }
            return c;
        }
        if (strong) return solve_cubical_strong(*h.polytope, inst.pairs, inst.avoid[0]);
        return solve_cubical(*h.polytope, inst.pairs, inst.avoid);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

// ---------------------------------------------------------------- certificates

ojson certificate_to_json(const Instance& inst, bool strong, Method method, const LinkageCertificate& cert) {
    const Host& h = inst.host;
    auto labels = [&](const std::vector<int>& vs) {
        ojson a = ojson::array();
        for (int v : vs) a.push_back(h.label(v));
        return a;
    };
    ojson j;
    j["instance"] = instance_to_json(inst);
    j["strong"] = strong;
    j["method"] = to_string(method);
    if (cert.linked) {
        ojson paths = ojson::array();
        for (const Path& p : cert.paths) paths.push_back(labels(p));
        j["result"] = ojson{{"linkage", paths}};
    } else if (cert.obstruction) {
        const auto& w = *cert.obstruction;
        j["result"] = ojson{{"obstruction", ojson{{"kind", w.kind},
                                                  {"facet", labels(w.facet)},
                                                  {"pair", ojson::array({h.label(w.pair.first), h.label(w.pair.second)})},
                                                  {"blocking", labels(w.blocking)}}}};
    }
    j["trace"] = cert.trace;
    // The certificate records whether it replays; verification itself ignores this field.
    j["valid"] = verify_certificate(j).ok;
    return j;
}

VerifyReport verify_certificate(const ojson& cert, const std::filesystem::path& base_dir) {
    VerifyReport rep;
    try {
        if (!cert.is_object() || !cert.contains("instance") || !cert.contains("result")) {
            rep.message = "not a linkage certificate (needs \"instance\" and \"result\")";
            return rep;
        }
        Instance inst = instance_from_json(field(cert, "instance"), base_dir);
        const ojson& result = field(cert, "result");
        const bool strong = cert.value("strong", false);
        if (strong && inst.avoid.size() != 1) {
            rep.message = "strong certificate must list exactly one leftover vertex";
            return rep;
        }
        if (result.contains("linkage")) {
            PathSystem L;
            for (const ojson& p : result.at("linkage")) {
                Path path;
                for (const ojson& v : p) path.push_back(inst.host.vertex(label_of(v)));
                L.push_back(path);
            }
            ValidationReport v = validate_linkage(inst.host.graph, inst.pairs, L, inst.avoid);
            rep.ok = v.ok;
            rep.message = v.ok ? "linkage valid" : v.message;
            return rep;
        }
        if (!result.contains("obstruction")) {
            rep.message = "result holds neither a linkage nor an obstruction";
            return rep;
        }
        const ojson& o = result.at("obstruction");
        const std::string kind = field(o, "kind").get<std::string>();
        if (kind == "exhaustive-search") {
            OracleBudget budget;
            budget.timeout = default_oracle_timeout();
            OracleResult r = oracle_linkage(inst.host.graph, inst.pairs, inst.avoid, budget);
            rep.ok = r.verdict == Verdict::Unlinkable;
            rep.message = rep.ok ? "exhaustive search confirms no linkage"
                                 : std::string("exhaustive search disagrees: ") + cubelink::to_string(r.verdict);
            return rep;
        }
        ObstructionWitness w;
        w.kind = kind;
        for (const ojson& v : field(o, "facet")) w.facet.push_back(inst.host.vertex(label_of(v)));
        std::sort(w.facet.begin(), w.facet.end());
        const ojson& pr = field(o, "pair");
        if (!pr.is_array() || pr.size() != 2) bad("obstruction pair must have two vertices");
        w.pair = {inst.host.vertex(label_of(pr[0])), inst.host.vertex(label_of(pr[1]))};
        for (const ojson& v : field(o, "blocking")) w.blocking.push_back(inst.host.vertex(label_of(v)));
        std::sort(w.blocking.begin(), w.blocking.end());
        std::string why;
        rep.ok = check_witness(inst.host.lattice(), inst.pairs, w, &why);
        rep.message = rep.ok ? "configuration conditions hold" : why;
        return rep;
    } catch (const InputError& e) {
        rep.message = e.what();
    } catch (const nlohmann::json::exception& e) {
        rep.message = std::string("malformed certificate: ") + e.what();
    }
    rep.ok = false;
    return rep;
}

std::string to_dot(const Instance& inst, const LinkageCertificate& cert) {
    static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
    const Host& h = inst.host;
    std::map<std::pair<int, int>, int> edge_colour;
    std::map<int, int> vertex_colour;
    for (size_t i = 0; i < cert.paths.size(); ++i) {
        const Path& p = cert.paths[i];
        for (int v : p) vertex_colour[v] = static_cast<int>(i);
        for (size_t j = 1; j < p.size(); ++j)
            edge_colour[{std::min(p[j - 1], p[j]), std::max(p[j - 1], p[j])}] = static_cast<int>(i);
    }
    std::ostringstream out;
    out << "graph host {\n  node [shape=circle, fontsize=10];\n";
    for (int v = 0; v < h.vertex_count(); ++v) {
        out << "  v" << v << " [label=\"" << h.label(v) << "\"";
        if (auto it = vertex_colour.find(v); it != vertex_colour.end())
            out << ", color=" << palette[it->second % 8] << ", penwidth=2";
        if (contains_terminal(inst, v)) out << ", style=bold";
        out << "];\n";
    }
    for (int u = 0; u < h.vertex_count(); ++u)
        for (int w : h.graph.neighbors(u)) {
            if (w < u) continue;
            out << "  v" << u << " -- v" << w;
            if (auto it = edge_colour.find({u, w}); it != edge_colour.end())
                out << " [color=" << palette[it->second % 8] << ", penwidth=3]";
            else
                out << " [color=gray80]";
            out << ";\n";
        }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------- census

WitnessDetector detector_for(const Host& host) {
    if (host.dim() != 3 || !host.polytope) return {};
    const Polytope* P = &*host.polytope;
    return [P](const Pairing& Y) -> std::optional<std::string> {
        if (auto w = detect_config_3F(*P, Y)) return w->kind;
        return std::nullopt;
    };
}

CensusHost census_host(const Host& host) {
    CensusHost c;
    c.name = host.kind == "cube"   ? "Q_" + std::to_string(host.cube_dim)
             : host.kind == "link" ? "link(Q_" + std::to_string(host.cube_dim) + ", " + host.spec.at("vertex").get<std::string>() + ")"
                                   : "lattice(d=" + std::to_string(host.dim()) + ")";
    c.graph = host.graph;
    for (int v = 0; v < host.vertex_count(); ++v) c.labels.push_back(host.label(v));
    if (host.kind == "cube") c.cube_dim = host.cube_dim;
    return c;
}

}  // namespace cubelink
