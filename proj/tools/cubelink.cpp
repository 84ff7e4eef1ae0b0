// cubelink: solve, verify, census, generate and benchmark linkage instances.
//
// Exit codes: 0 linked (or verified), 1 malformed input or failed verification,
// 2 obstruction, 3 case analysis gap or oracle timeout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubelink/io.hpp"

using namespace cubelink;

namespace {

enum Exit { kLinked = 0, kMalformed = 1, kObstruction = 2, kGap = 3 };

struct HostFlags {
    int cube = 0;
    int link = 0;
    std::string vertex;
    std::string lattice;

    void add(CLI::App* app) {
        auto* c = app->add_option("--cube", cube, "Host is the d-cube");
        auto* l = app->add_option("--link", link, "Host is the link of a vertex in the d-cube");
        auto* f = app->add_option("--lattice", lattice, "Host is a cubical lattice file");
        c->excludes(l)->excludes(f);
        l->excludes(f);
        app->add_option("--vertex", vertex, "Vertex label whose link is taken (default 0...0)")->needs(l);
    }
    bool given() const { return cube > 0 || link > 0 || !lattice.empty(); }
    Host make() const {
        if (cube > 0) return make_cube_host(cube);
        if (link > 0) return make_link_host(link, vertex);
        if (!lattice.empty()) return load_lattice_file(lattice);
        throw InputError("choose a host with --cube, --link or --lattice");
    }
};

void write_text(const std::string& file, const std::string& text) {
    if (file.empty() || file == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(file);
    if (!out) throw InputError("cannot write " + file);
    out << text;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- solve

struct SolveFlags {
    HostFlags host;
    std::string instance_file;
    std::string pairs;
    std::string avoid;
    bool strong = false;
    std::string method = "auto";
    bool trace = false;
    bool json = false;
    std::string dot;
    std::string out;
};

int cmd_solve(SolveFlags f, bool method_given) {
    Instance inst;
    if (!f.instance_file.empty()) {
        if (f.host.given() || !f.pairs.empty()) throw InputError("give either an instance file or --cube/--link/--lattice with --pairs");
        const ojson j = read_json_file(f.instance_file);
        inst = instance_from_json(j, std::filesystem::path(f.instance_file).parent_path());
        // Instance files may carry defaults for --strong and --method.
        if (j.contains("strong")) f.strong = f.strong || j.at("strong").get<bool>();
        if (j.contains("method") && !method_given) f.method = j.at("method").get<std::string>();
    } else {
        inst.host = f.host.make();
        if (f.pairs.empty()) throw InputError("--pairs is required without an instance file");
        inst.pairs = parse_pairs(inst.host, f.pairs);
        inst.avoid = parse_vertices(inst.host, f.avoid);
    }
    const Method method = parse_method(f.method);
    LinkageCertificate cert;
    try {
        cert = solve_instance(inst, f.strong, method);
    } catch (const CaseNotCovered& e) {
        std::cerr << "case not covered: " << e.what() << "\n";
        if (f.trace)
            for (const auto& step : e.trace) std::cerr << "  " << step << "\n";
        return kGap;
    } catch (const OracleTimeout& e) {
        std::cerr << e.what() << "\n";
        return kGap;
    }
    if (f.trace)
        for (const auto& step : cert.trace) std::cerr << step << "\n";

    ojson j = certificate_to_json(inst, f.strong, method, cert);
    // Never emit a certificate that does not replay.
    if (!j.at("valid").get<bool>()) {
        std::cerr << "internal error: certificate does not verify: " << verify_certificate(j).message << "\n";
        return kGap;
    }
    write_text(f.out, f.json ? j.dump() + "\n" : dump(j));
    if (!f.dot.empty()) write_text(f.dot, to_dot(inst, cert));
    return cert.linked ? kLinked : kObstruction;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& file) {
    ojson j = read_json_file(file);
    VerifyReport r = verify_certificate(j, std::filesystem::path(file).parent_path());
    std::cout << (r.ok ? "PASS: " : "FAIL: ") << r.message << "\n";
    return r.ok ? 0 : kMalformed;
}

// ---------------------------------------------------------------- census

struct CensusFlags {
    HostFlags host;
    int k = 2;
    bool exhaustive = false;
    long long sample = 0;
    std::uint64_t seed = 0;
    bool no_symmetry = false;
    int threads = 0;
    std::string out;
};

int cmd_census(const CensusFlags& f) {
    if (f.exhaustive == (f.sample > 0)) throw InputError("choose exactly one of --exhaustive and --sample N");
    Host h = f.host.make();
    CensusOptions o;
    o.k = f.k;
    o.exhaustive = f.exhaustive;
    o.samples = f.sample;
    o.seed = f.seed;
    o.use_symmetry = !f.no_symmetry;
    o.threads = f.threads;
    o.timeout = default_oracle_timeout();
    ojson report;
    try {
        report = census(census_host(h), o, detector_for(h));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    write_text(f.out, dump(report));
    return report.at("timeouts").get<long long>() > 0 ? kGap : 0;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
    int dim = 0;
    HostFlags host;
    int cube = 0;
    std::string vertex;
    int k = 0;
    std::uint64_t seed = 0;
    bool strong = false;
    std::string out;
};

int cmd_gen_cube(const GenFlags& f) {
    if (f.dim < 1 || f.dim > 8) throw InputError("gen cube needs --dim in [1, 8]");
    write_text(f.out, dump(polytope_to_json(build_cube_polytope(f.dim))));
    return 0;
}

int cmd_gen_link(const GenFlags& f) {
    Host h = make_link_host(f.cube, f.vertex);
    write_text(f.out, dump(polytope_to_json(h.lattice())));
    return 0;
}

int cmd_gen_random(const GenFlags& f) {
    Host h = f.host.make();
    int k = f.k;
    if (k == 0) k = (h.dim() + 1) / 2;
    write_text(f.out, dump(instance_to_json(random_instance(h, k, f.strong, f.seed))));
    return 0;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
    HostFlags host;
    int k = 0;
    int count = 100;
    std::uint64_t seed = 0;
    bool strong = false;
    std::string method = "constructive";
};

int cmd_bench(const BenchFlags& f) {
    Host h = f.host.make();
    const Method method = parse_method(f.method);
    int k = f.k;
    if (k == 0) k = f.strong ? h.dim() / 2 : (h.dim() + 1) / 2;
    long long linked = 0, obstructed = 0, gaps = 0, invalid = 0;
    double worst_ms = 0, total = 0;
    for (int i = 0; i < f.count; ++i) {
        Instance inst = random_instance(h, k, f.strong, f.seed + static_cast<std::uint64_t>(i));
        auto t0 = std::chrono::steady_clock::now();
        try {
            LinkageCertificate c = solve_instance(inst, f.strong, method);
            if (c.linked) {
                ++linked;
                if (!validate_linkage(h.graph, inst.pairs, c.paths, inst.avoid).ok) ++invalid;
            } else {
                ++obstructed;
            }
        } catch (const CaseNotCovered&) {
            ++gaps;
        } catch (const OracleTimeout&) {
            ++gaps;
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        worst_ms = std::max(worst_ms, ms);
        total += ms;
    }
    ojson r{{"host", census_host(h).name}, {"k", k},           {"strong", f.strong},
            {"method", to_string(method)}, {"instances", f.count}, {"linked", linked},
            {"obstructions", obstructed},  {"case_not_covered", gaps}, {"invalid", invalid},
            {"solve_ms", total},           {"mean_ms", f.count ? total / f.count : 0.0}, {"max_ms", worst_ms}};
    std::cout << dump(r);
    return gaps || invalid ? kGap : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linkage solver for cubes and cubical polytopes"};
    app.require_subcommand(1);

    SolveFlags sf;
    auto* solve = app.add_subcommand("solve", "Link terminal pairs or report an obstruction");
    solve->add_option("instance", sf.instance_file, "Instance JSON file");
    sf.host.add(solve);
    solve->add_option("--pairs", sf.pairs, "Terminal pairs, e.g. \"000-111,001-110\"");
    solve->add_option("--avoid", sf.avoid, "Vertices the paths must avoid, e.g. \"010\"");
    solve->add_flag("--strong", sf.strong, "Strong linkage: the single --avoid vertex is the leftover terminal");
    solve->add_option("--method", sf.method, "auto, constructive or oracle")->check(CLI::IsMember({"auto", "constructive", "oracle"}));
    solve->add_flag("--trace", sf.trace, "Print the visited construction steps to stderr");
    solve->add_flag("--json", sf.json, "Compact single-line JSON output");
    solve->add_option("--dot", sf.dot, "Also write a Graphviz rendering to this file");
    solve->add_option("-o,--out", sf.out, "Write the certificate here instead of stdout");

    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "Replay a certificate");
    verify->add_option("certificate", verify_file, "Certificate JSON file")->required();

    CensusFlags cf;
    auto* cen = app.add_subcommand("census", "Classify every (or a sample of) k-pairing with the oracle");
    cf.host.add(cen);
    cen->add_option("--k", cf.k, "Number of pairs");
    cen->add_flag("--exhaustive", cf.exhaustive, "All pairings of all 2k-subsets");
    cen->add_option("--sample", cf.sample, "Number of random pairings");
    cen->add_option("--seed", cf.seed, "Sampling seed");
    cen->add_flag("--no-symmetry", cf.no_symmetry, "Disable cube symmetry reduction");
    cen->add_option("--threads", cf.threads, "Worker threads (0: hardware concurrency)");
    cen->add_option("-o,--out", cf.out, "Write the report here instead of stdout");
    cen->add_flag("--json", [](std::int64_t) {}, "Report is always JSON; accepted for symmetry");

    GenFlags gf;
    auto* gen = app.add_subcommand("gen", "Generate lattices and instances");
    gen->require_subcommand(1);
    auto* gen_cube = gen->add_subcommand("cube", "Face lattice of the d-cube");
    gen_cube->add_option("--dim", gf.dim, "Cube dimension")->required();
    gen_cube->add_option("-o,--out", gf.out, "Output file");
    auto* gen_link = gen->add_subcommand("link", "Face lattice of the link of a cube vertex");
    gen_link->add_option("--cube", gf.cube, "Ambient cube dimension")->required();
    gen_link->add_option("--vertex", gf.vertex, "Vertex label (default 0...0)");
    gen_link->add_option("-o,--out", gf.out, "Output file");
    auto* gen_rand = gen->add_subcommand("random-instance", "Random terminal pairs on a host");
    gf.host.add(gen_rand);
    gen_rand->add_option("--k", gf.k, "Number of pairs (default: the linkedness of the host)");
    gen_rand->add_option("--seed", gf.seed, "Seed");
    gen_rand->add_flag("--strong", gf.strong, "Add a leftover vertex as avoid");
    gen_rand->add_option("-o,--out", gf.out, "Output file");

    BenchFlags bf;
    auto* bench = app.add_subcommand("bench", "Time the solver on random instances");
    bf.host.add(bench);
    bench->add_option("--k", bf.k, "Number of pairs (default: the linkedness of the host)");
    bench->add_option("--count", bf.count, "Number of instances");
    bench->add_option("--seed", bf.seed, "First seed");
    bench->add_flag("--strong", bf.strong, "Strong instances");
    bench->add_option("--method", bf.method, "auto, constructive or oracle")->check(CLI::IsMember({"auto", "constructive", "oracle"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kMalformed;
    }

    try {
        if (*solve) return cmd_solve(sf, solve->count("--method") > 0);
        if (*verify) return cmd_verify(verify_file);
        if (*cen) return cmd_census(cf);
        if (*gen_cube) return cmd_gen_cube(gf);
        if (*gen_link) return cmd_gen_link(gf);
        if (*gen_rand) return cmd_gen_random(gf);
        if (*bench) return cmd_bench(bf);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
    return kMalformed;
}
