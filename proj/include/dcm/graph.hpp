#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcm/matching.hpp"

namespace dcm {

// Raised when a request exceeds the configured k bound or memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DCM_MAX_K from the environment if set to a positive integer, else 12.
int max_k();

struct BuildOptions {
  unsigned threads = 0;              // 0 = all hardware threads
  std::uint64_t memory_cap_mb = 0;   // 0 = no cap
};

// Vertices in canonical order (vertex i is unrank(k, i)); adjacency in CSR
// form with every neighbour list sorted ascending.
struct DcmGraph {
  int k = 0;
  std::vector<Matching> vertices;
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint32_t> adjacency;

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(vertices.size()); }
  std::uint64_t edge_count() const { return adjacency.size() / 2; }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adjacency.data() + offsets[v], adjacency.data() + offsets[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]); }
  std::uint32_t index_of(const Matching& m) const;
};

DcmGraph build_graph(int k, const BuildOptions& options = {});

// Upper estimate of the bytes build_graph(k) needs.
std::uint64_t estimated_graph_bytes(int k);

enum class ComponentClass { kSmall, kMedium, kBig };

std::string_view to_string(ComponentClass c);

struct ComponentReport {
  std::uint32_t id = 0;
  std::uint64_t order = 0;
  std::uint64_t edges = 0;
  ComponentClass cls = ComponentClass::kBig;
  std::map<std::string, std::uint64_t> profile;  // classify label -> count
  Matching representative;                       // smallest member
  bool bipartite = true;
  std::vector<std::uint32_t> members;            // ascending
};

struct Census {
  int k = 0;
  std::vector<std::uint32_t> component_of;
  std::vector<ComponentReport> components;  // ordered by smallest member
};

// Small = smallest component order, medium = the next one, big = the rest.
Census components(const DcmGraph& g, bool with_profile = true);

struct BipartiteResult {
  bool bipartite = true;
  std::vector<std::uint8_t> side;         // per member, when bipartite
  std::vector<std::uint32_t> odd_cycle;   // closed walk v0 .. v_{n-1}, when not
};

BipartiteResult is_bipartite(const DcmGraph& g, const ComponentReport& c);

// A graph on 0..n-1 given by sorted adjacency lists.
using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

AdjacencyList induced_subgraph(const DcmGraph& g, const std::vector<std::uint32_t>& members);

// Sorted edge list of the graph relabelled by a canonical labelling; two
// graphs are isomorphic iff their forms are equal.
std::vector<std::pair<std::uint32_t, std::uint32_t>> canonical_form(const AdjacencyList& adj);

struct IsoClasses {
  std::size_t count = 0;
  std::vector<std::uint32_t> class_of;  // per component, numbered by first appearance
};

IsoClasses isomorphism_classes(const DcmGraph& g, const Census& census);

struct DegreeStats {
  std::uint32_t max_degree = 0;
  std::vector<std::uint32_t> argmax;
};

DegreeStats degree_stats(const DcmGraph& g);

struct StructureReport {
  bool ok = true;
  std::size_t components_checked = 0;
  std::string failure;
};

// Every medium component of an even k >= 4 against the path + chords +
// leaves template.
StructureReport verify_medium_even_structure(const DcmGraph& g, const Census& census);

// The template itself: path M_1..M_{k-2}, chords M_a M_b for even a, odd b,
// a <= b-3, and two leaves on every path vertex.
AdjacencyList medium_even_template(int k);

struct AlmostPerfectReport {
  int k = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t components = 0;
  bool connected = false;
  bool rings_form_cycle = false;
};

// Matchings of 2k+1 points in convex position leaving one point unmatched.
// k is limited to 7.
AlmostPerfectReport build_almost_perfect_graph(int k);

void write_dot(const DcmGraph& g, std::ostream& out);
void write_json(const DcmGraph& g, std::ostream& out);
void write_census_csv(const Census& census, std::ostream& out, bool header = true);

}  // namespace dcm
