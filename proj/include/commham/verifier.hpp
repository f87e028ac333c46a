#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "commham/decompose.hpp"
#include "commham/lattice.hpp"
#include "commham/linalg.hpp"
#include "commham/model.hpp"

namespace commham {

// Per-factor magnitude below which a factor counts as an exact zero.
inline constexpr double zero_floor = 1e-12;
inline constexpr double support_prune_tol = 1e-9;

// One slice label per split vertex of each layer, keyed by vertex label.
struct Certificate {
	std::map<int, int> alpha; // black layer
	std::map<int, int> beta;  // white layer

	const std::map<int, int>& labels(Color c) const { return c == Color::Black ? alpha : beta; }
	bool operator==(const Certificate&) const = default;
};

class CertificateError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// A model together with its ground projectors and layer decompositions.
class PreparedModel {
public:
	explicit PreparedModel(const CommutingModel& model, SplitPolicy policy = SplitPolicy::PairOnly);

	const LatticeSpec& spec() const { return projectors_.spec(); }
	int num_qubits() const { return spec().num_vertices(); }
	const GroundProjectors& projectors() const { return projectors_; }
	const LayerPair& layers() const { return layers_; }
	const CertificateSpace& space() const { return space_; }

	// Throws CertificateError unless the certificate labels exactly the split
	// vertices of each layer with values in {0, 1}.
	void validate(const Certificate& cert) const;

	// Certificate with every label 0.
	Certificate zero_certificate() const;

private:
	GroundProjectors projectors_;
	LayerPair layers_;
	CertificateSpace space_;
};

// Plaquette projectors of one layer sandwiched at every split corner of that
// layer by the chosen rank-1 slice.  std::nullopt when some sandwich
// vanishes; zero_at then names the plaquette.
struct SlicedLayer {
	std::map<PlaquetteId, Matrix> projectors;
	std::optional<PlaquetteId> zero_at;
	bool zero() const { return zero_at.has_value(); }
};

// One plaquette projector sandwiched at the split corners of its own layer.
Matrix slice_plaquette(const PreparedModel& prep, const PlaquetteId& p, const std::map<int, int>& labels);

SlicedLayer slice_layer(const PreparedModel& prep, Color color, const std::map<int, int>& labels);

struct SlicedProjectors {
	SlicedLayer black;
	SlicedLayer white;
	bool zero() const { return black.zero() || white.zero(); }
};

SlicedProjectors apply_certificate(const PreparedModel& prep, const Certificate& cert);

// rho_p: the sliced projector with every split vertex (of either layer)
// traced out against its slice state, and identity factors pruned from the
// support.  Positive semidefinite.
struct EffectiveState {
	PlaquetteId plaquette;
	std::vector<int> support; // vertex labels, corner order
	Matrix op;                // on support; 1x1 when the support is empty

	Color color() const { return plaquette.color(); }
	LabeledOperator labeled() const { return {op, support}; }
};

struct VertexOverlap {
	int vertex = -1;
	double value = 0.0; // tr[pi_alpha pibar_beta]
};

struct EffectiveStates {
	std::vector<EffectiveState> black;
	std::vector<EffectiveState> white;
	std::vector<VertexOverlap> overlaps; // vertices split in both layers
	std::vector<int> free_qubits;        // in no split set and no support
};

// Precondition: no sandwich in `sliced` vanished.
EffectiveStates effective_states(const PreparedModel& prep, const SlicedProjectors& sliced, const Certificate& cert);

class DegreeViolation : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Two effective states of the same color acting on one vertex.
class SupportConflict : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class MalformedComponent : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct OverlapEdge {
	int a = -1;
	int b = -1;
	std::vector<int> shared; // vertex labels, ascending
};

struct Component {
	enum class Shape { Isolated, Path, Cycle };
	Shape shape = Shape::Isolated;
	std::vector<int> nodes; // in chain order
};

// Nodes are the effective states with non-empty support; edges join black
// and white states sharing support.
struct OverlapGraph {
	std::vector<EffectiveState> nodes;
	std::vector<OverlapEdge> edges;
	std::vector<std::vector<int>> adjacency;
	std::vector<Component> components;

	int max_degree() const;
};

// Throws SupportConflict or DegreeViolation (a node with more than two
// neighbours); neither happens for commuting input.
OverlapGraph build_overlap_graph(std::span<const EffectiveState> black, std::span<const EffectiveState> white);

// tr[(prod of black states) (prod of white states)] over the union of the
// supports of nodes, which must form a chain in the given order (closed
// when cycle is set).  Uses a frontier of at most two shared qubits per
// side.
Complex contract_chain(std::span<const EffectiveState> nodes, bool cycle);

double contract_component(const OverlapGraph& graph, const Component& component);

struct OmegaFactor {
	enum class Kind { VertexOverlap, Component, FreeQubits };
	Kind kind = Kind::Component;
	std::string id;
	double value = 0.0;      // linear value; 0 for FreeQubits (see log2_value)
	double log2_value = 0.0; // -inf when the factor vanishes
};

std::string to_string(OmegaFactor::Kind kind);

struct OmegaResult {
	bool zero = false;
	double log2_magnitude = 0.0; // meaningful when !zero
	std::vector<OmegaFactor> factors;
	std::optional<PlaquetteId> zero_sandwich;

	// Linear value; underflows to 0 for very small Omega.
	double value() const;
};

OmegaResult omega_from_sliced(const PreparedModel& prep, const SlicedProjectors& sliced, const Certificate& cert);
OmegaResult compute_omega(const PreparedModel& prep, const Certificate& cert);
OmegaResult compute_omega(const CommutingModel& model, const Certificate& cert);

// The default acceptance threshold 2^-(2N+1), in log2.
double default_log2_threshold(int num_qubits);

struct Verdict {
	bool accept = false;
	double log2_threshold = 0.0;
	OmegaResult omega;
};

Verdict verify(const PreparedModel& prep, const Certificate& cert, std::optional<double> log2_threshold = {});
Verdict verify(const CommutingModel& model, const Certificate& cert, std::optional<double> log2_threshold = {});

} // namespace commham
