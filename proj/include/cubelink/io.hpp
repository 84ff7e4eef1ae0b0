#pragma once

// Instance files, certificates and host construction shared by the command-line
// tool, the tests and the acceptance runner.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubelink/linkage.hpp"
#include "cubelink/oracle.hpp"
#include "cubelink/polytope.hpp"

namespace cubelink {

using ojson = nlohmann::ordered_json;

// Malformed instance, certificate or flag value.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The oracle ran out of time before reaching a verdict.
class OracleTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A polytope to link in. Cube hosts use coordinate bits as vertex ids; link and
// lattice hosts use the ids of their polytope. Labels are the external names.
struct Host {
    std::string kind;                  // "cube", "link" or "lattice"
    int cube_dim = 0;                  // cube: d; link: dimension of the ambient cube
    Bits center = 0;                   // link: the vertex whose link this is
    std::optional<Polytope> polytope;  // always for link and lattice; cube when d <= 8
    Graph graph;
    ojson spec;                        // normalized description, echoed in certificates

    int dim() const;
    int vertex_count() const { return graph.size(); }
    std::string label(int v) const;
    int vertex(const std::string& label) const;  // throws InputError
    const Polytope& lattice() const;             // throws InputError when not materialized
};

Host make_cube_host(int d);
Host make_link_host(int cube_dim, const std::string& vertex_label);
Host make_lattice_host(const ojson& lattice);
// Accepts {"kind":"cube","dim":d}, {"kind":"link","cube_dim":D,"vertex":label},
// {"kind":"lattice", "dim", "vertices", "facets"} or {"kind":"lattice","file":path}.
Host host_from_json(const ojson& spec, const std::filesystem::path& base_dir = {});
Host load_lattice_file(const std::filesystem::path& file);

// {"kind":"lattice","dim","vertices":[labels],"facets":[[labels]]}
ojson polytope_to_json(const Polytope& P);

struct Instance {
    Host host;
    Pairing pairs;
    std::vector<int> avoid;
};

Instance instance_from_json(const ojson& j, const std::filesystem::path& base_dir = {});
ojson instance_to_json(const Instance& inst);
ojson read_json_file(const std::filesystem::path& file);

// "000-111,001-110" -> pairs of vertex ids.
Pairing parse_pairs(const Host& host, const std::string& text);
// "010,100" -> vertex ids.
std::vector<int> parse_vertices(const Host& host, const std::string& text);

enum class Method { Auto, Constructive, Oracle };
Method parse_method(const std::string& s);
const char* to_string(Method m);

// Solves with the constructive solver matching the host (or the oracle when asked).
// With `strong`, the single avoid vertex is the leftover terminal of a strong instance.
// Throws CaseNotCovered, OracleTimeout or InputError.
LinkageCertificate solve_instance(const Instance& inst, bool strong, Method method);

ojson certificate_to_json(const Instance& inst, bool strong, Method method, const LinkageCertificate& cert);

struct VerifyReport {
    bool ok = false;
    std::string message;
};

// Replays a certificate: path validity and disjointness for linkages, the
// configuration conditions (or an exhaustive search) for obstructions.
VerifyReport verify_certificate(const ojson& cert, const std::filesystem::path& base_dir = {});

// Graphviz rendering of the host with the linkage paths coloured.
std::string to_dot(const Instance& inst, const LinkageCertificate& cert);

// 2k distinct terminals (plus one leftover vertex when strong) drawn with the seed.
Instance random_instance(const Host& host, int k, bool strong, std::uint64_t seed);

// Obstruction detector for census runs on a host (3-dimensional hosts only).
WitnessDetector detector_for(const Host& host);
CensusHost census_host(const Host& host);

}  // namespace cubelink
