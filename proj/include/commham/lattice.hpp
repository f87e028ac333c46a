#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace commham {

enum class Boundary { Open, Periodic };
enum class Color { Black, White };

inline Color opposite(Color c) { return c == Color::Black ? Color::White : Color::Black; }
std::string to_string(Boundary b);
std::string to_string(Color c);

struct VertexId {
	int x = 0;
	int y = 0;
	auto operator<=>(const VertexId&) const = default;
};

struct PlaquetteId {
	int x = 0; // top-left corner
	int y = 0;
	auto operator<=>(const PlaquetteId&) const = default;

	Color color() const { return (x + y) % 2 == 0 ? Color::Black : Color::White; }
};

std::string to_string(const VertexId& v);
std::string to_string(const PlaquetteId& p);

class LatticeError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Square lattice of qubits on the vertices.  Plaquette corners are ordered
// [TL, TR, BR, BL]; in every 16-dimensional plaquette operator corner 0 is
// the most significant bit of the basis index.
class LatticeSpec {
public:
	LatticeSpec(int lx, int ly, Boundary boundary);

	int lx() const { return lx_; }
	int ly() const { return ly_; }
	Boundary boundary() const { return boundary_; }
	int num_vertices() const { return lx_ * ly_; }

	// Row-major: index = y * lx + x.  Used as the qubit label everywhere.
	int index(const VertexId& v) const;
	VertexId vertex(int index) const;
	bool contains(const VertexId& v) const;
	bool contains(const PlaquetteId& p) const;

	std::vector<VertexId> vertices() const;
	std::vector<PlaquetteId> plaquettes() const;
	std::vector<PlaquetteId> plaquettes(Color color) const;
	std::array<VertexId, 4> corners(const PlaquetteId& p) const;
	std::array<int, 4> corner_labels(const PlaquetteId& p) const;
	std::vector<PlaquetteId> incident_plaquettes(const VertexId& v, Color color) const;

	bool operator==(const LatticeSpec&) const = default;

private:
	int lx_;
	int ly_;
	Boundary boundary_;
};

} // namespace commham
