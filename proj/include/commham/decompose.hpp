#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "commham/lattice.hpp"
#include "commham/linalg.hpp"
#include "commham/model.hpp"

namespace commham {

inline constexpr double slice_commutation_tol = 1e-8;
inline constexpr double scalar_factor_tol = 1e-9;

class DecompositionError : public std::runtime_error {
public:
	enum class Kind { ImpossibleAlgebraPair, BasisMismatch };
	DecompositionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_{kind} {}
	Kind kind() const { return kind_; }

private:
	Kind kind_;
};

// How a vertex is treated when exactly one incident same-color projector
// acts on it, and that action generates a two-dimensional abelian algebra.
// PairOnly leaves it trivial with that projector as owner and splits only
// when both sides are abelian.  EveryAbelian splits it as well, which turns
// every effective state into a scalar on qubit lattices.
enum class SplitPolicy { PairOnly, EveryAbelian };

struct TrivialSlice {
	std::optional<PlaquetteId> owner; // the one projector acting non-trivially, if any
};

struct SplitSlice {
	std::array<QubitState, 2> basis; // canonical order and phase
	Matrix slice(int label) const { return projector(basis[static_cast<std::size_t>(label)]); }
};

struct VertexDecomposition {
	std::variant<TrivialSlice, SplitSlice> value;

	bool is_split() const { return std::holds_alternative<SplitSlice>(value); }
	const SplitSlice& split() const { return std::get<SplitSlice>(value); }
	const TrivialSlice& trivial() const { return std::get<TrivialSlice>(value); }
};

struct IncidentProjector {
	PlaquetteId plaquette;
	LabeledOperator projector;
};

// Classifies the action of the (at most two) same-color projectors at vertex
// label v and returns the slice structure there.
VertexDecomposition vertex_decomposition(std::span<const IncidentProjector> incident, int v,
                                         SplitPolicy policy = SplitPolicy::PairOnly,
                                         std::uint64_t seed = 0x5eedULL);

// True when the single-qubit Schmidt factors of op at label v are all
// scalars within scalar_factor_tol (relative).
bool acts_trivially(const LabeledOperator& op, int v);

class LayerDecomposition {
public:
	LayerDecomposition(Color color, std::map<int, VertexDecomposition> vertices);

	Color color() const { return color_; }
	const VertexDecomposition& at(int v) const { return vertices_.at(v); }
	const std::map<int, VertexDecomposition>& vertices() const { return vertices_; }
	// Vertex labels with a non-trivial decomposition, ascending.
	const std::vector<int>& split_vertices() const { return split_; }
	bool is_split(int v) const;

private:
	Color color_;
	std::map<int, VertexDecomposition> vertices_;
	std::vector<int> split_;
};

struct LayerPair {
	LayerDecomposition black;
	LayerDecomposition white;

	const LayerDecomposition& layer(Color c) const { return c == Color::Black ? black : white; }
};

LayerPair decompose_layers(const GroundProjectors& proj, SplitPolicy policy = SplitPolicy::PairOnly);

// Label alphabet per vertex for each layer: {0, 1} on split vertices and the
// single empty choice elsewhere.
struct CertificateSpace {
	std::vector<int> black_labels; // split vertices of the black layer
	std::vector<int> white_labels;

	int num_labels() const { return static_cast<int>(black_labels.size() + white_labels.size()); }
	// log2 of the number of certificates.
	int log2_size() const { return num_labels(); }
};

CertificateSpace certificate_space(const LayerPair& layers);

} // namespace commham
