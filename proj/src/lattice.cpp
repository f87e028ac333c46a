#include "commham/lattice.hpp"

#include <algorithm>

namespace commham {

std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }
std::string to_string(Color c) { return c == Color::Black ? "black" : "white"; }

std::string to_string(const VertexId& v)
{
	return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

std::string to_string(const PlaquetteId& p)
{
	return "[" + std::to_string(p.x) + "," + std::to_string(p.y) + "]";
}

LatticeSpec::LatticeSpec(int lx, int ly, Boundary boundary) : lx_{lx}, ly_{ly}, boundary_{boundary}
{
	if(lx < 2 || ly < 2)
		throw LatticeError("lattice needs at least 2 vertices along each axis");
	if(boundary == Boundary::Periodic) {
		if(lx % 2 != 0 || ly % 2 != 0)
			throw LatticeError("periodic lattice needs even lx and ly for a checkerboard coloring");
		// On a 2-wide torus two plaquettes of the same color share every corner.
		if(lx < 4 || ly < 4)
			throw LatticeError("periodic lattice needs lx, ly >= 4");
	}
}

int LatticeSpec::index(const VertexId& v) const
{
	if(!contains(v))
		throw LatticeError("vertex out of range: " + to_string(v));
	return v.y * lx_ + v.x;
}

VertexId LatticeSpec::vertex(int index) const
{
	if(index < 0 || index >= num_vertices())
		throw LatticeError("vertex index out of range: " + std::to_string(index));
	return {index % lx_, index / lx_};
}

bool LatticeSpec::contains(const VertexId& v) const
{
	return v.x >= 0 && v.x < lx_ && v.y >= 0 && v.y < ly_;
}

bool LatticeSpec::contains(const PlaquetteId& p) const
{
	if(boundary_ == Boundary::Periodic)
		return p.x >= 0 && p.x < lx_ && p.y >= 0 && p.y < ly_;
	return p.x >= 0 && p.x < lx_ - 1 && p.y >= 0 && p.y < ly_ - 1;
}

std::vector<VertexId> LatticeSpec::vertices() const
{
	std::vector<VertexId> out;
	out.reserve(num_vertices());
	for(int y = 0; y < ly_; ++y)
		for(int x = 0; x < lx_; ++x)
			out.push_back({x, y});
	return out;
}

std::vector<PlaquetteId> LatticeSpec::plaquettes() const
{
	const int px = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
	const int py = boundary_ == Boundary::Periodic ? ly_ : ly_ - 1;
	std::vector<PlaquetteId> out;
	out.reserve(px * py);
	for(int y = 0; y < py; ++y)
		for(int x = 0; x < px; ++x)
			out.push_back({x, y});
	return out;
}

std::vector<PlaquetteId> LatticeSpec::plaquettes(Color color) const
{
	auto all = plaquettes();
	std::erase_if(all, [color](const PlaquetteId& p) { return p.color() != color; });
	return all;
}

std::array<VertexId, 4> LatticeSpec::corners(const PlaquetteId& p) const
{
	if(!contains(p))
		throw LatticeError("plaquette out of range: " + to_string(p));
	const int x1 = (p.x + 1) % lx_;
	const int y1 = (p.y + 1) % ly_;
	return {VertexId{p.x, p.y}, VertexId{x1, p.y}, VertexId{x1, y1}, VertexId{p.x, y1}};
}

std::array<int, 4> LatticeSpec::corner_labels(const PlaquetteId& p) const
{
	const auto c = corners(p);
	return {index(c[0]), index(c[1]), index(c[2]), index(c[3])};
}

std::vector<PlaquetteId> LatticeSpec::incident_plaquettes(const VertexId& v, Color color) const
{
	if(!contains(v))
		throw LatticeError("vertex out of range: " + to_string(v));
	std::vector<PlaquetteId> out;
	for(int dy = -1; dy <= 0; ++dy) {
		for(int dx = -1; dx <= 0; ++dx) {
			PlaquetteId p{v.x + dx, v.y + dy};
			if(boundary_ == Boundary::Periodic) {
				p.x = (p.x + lx_) % lx_;
				p.y = (p.y + ly_) % ly_;
			}
			if(contains(p) && p.color() == color)
				out.push_back(p);
		}
	}
	std::sort(out.begin(), out.end(), [](const PlaquetteId& a, const PlaquetteId& b) {
		return std::tie(a.y, a.x) < std::tie(b.y, b.x);
	});
	return out;
}

} // namespace commham
