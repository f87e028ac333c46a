#include "commham/decompose.hpp"

#include <algorithm>
#include <string>

namespace commham {

namespace {

bool is_scalar(const Matrix& site)
{
	const double norm = site.norm();
	if(norm == 0.0)
		return true;
	const Matrix traceless = site - (site.trace() / 2.0) * Matrix::Identity(2, 2);
	return traceless.norm() <= scalar_factor_tol * norm;
}

struct SideClass {
	AlgebraKind kind = AlgebraKind::Trivial;
	std::vector<Matrix> generators; // non-scalar site factors
};

SideClass classify_side(const LabeledOperator& op, int v, std::uint64_t seed)
{
	SideClass out;
	for(auto& t : operator_schmidt(op, v).terms)
		if(!is_scalar(t.site))
			out.generators.push_back(std::move(t.site));
	if(out.generators.empty())
		return out;
	out.kind = algebra_classify(out.generators, scalar_factor_tol, seed).kind;
	return out;
}

std::string kind_name(AlgebraKind k)
{
	switch(k) {
	case AlgebraKind::Trivial: return "trivial";
	case AlgebraKind::Abelian: return "abelian";
	case AlgebraKind::Full: return "full";
	}
	return "?";
}

} // namespace

bool acts_trivially(const LabeledOperator& op, int v)
{
	for(const auto& t : operator_schmidt(op, v).terms)
		if(!is_scalar(t.site))
			return false;
	return true;
}

VertexDecomposition vertex_decomposition(std::span<const IncidentProjector> incident, int v,
                                         SplitPolicy policy, std::uint64_t seed)
{
	if(incident.size() > 2)
		throw std::invalid_argument("a vertex has at most two incident plaquettes per color");

	std::vector<SideClass> sides;
	for(const auto& ip : incident)
		sides.push_back(classify_side(ip.projector, v, seed));

	std::vector<std::size_t> full, abelian;
	for(std::size_t i = 0; i < sides.size(); ++i) {
		if(sides[i].kind == AlgebraKind::Full)
			full.push_back(i);
		else if(sides[i].kind == AlgebraKind::Abelian)
			abelian.push_back(i);
	}

	if(!full.empty() && full.size() + abelian.size() > 1) {
		std::string what = "vertex " + std::to_string(v) + ": incompatible algebras";
		for(const auto& s : sides)
			what += " " + kind_name(s.kind);
		throw DecompositionError(DecompositionError::Kind::ImpossibleAlgebraPair, what);
	}
	if(full.size() == 1)
		return {TrivialSlice{incident[full[0]].plaquette}};
	if(abelian.empty())
		return {TrivialSlice{}};
	if(policy == SplitPolicy::PairOnly && abelian.size() == 1)
		return {TrivialSlice{incident[abelian[0]].plaquette}};

	std::vector<Matrix> generators;
	for(auto i : abelian)
		generators.insert(generators.end(), sides[i].generators.begin(), sides[i].generators.end());
	SplitSlice split{common_eigenbasis(generators, seed)};
	for(int a = 0; a < 2; ++a) {
		const Matrix pi = split.slice(a);
		for(const auto& g : generators) {
			if((pi * g - g * pi).norm() > slice_commutation_tol * std::max(1.0, g.norm()))
				throw DecompositionError(DecompositionError::Kind::BasisMismatch,
				                         "vertex " + std::to_string(v) +
				                             ": abelian algebras share no common eigenbasis");
		}
	}
	return {split};
}

LayerDecomposition::LayerDecomposition(Color color, std::map<int, VertexDecomposition> vertices)
    : color_{color}, vertices_{std::move(vertices)}
{
	for(const auto& [v, d] : vertices_)
		if(d.is_split())
			split_.push_back(v);
}

bool LayerDecomposition::is_split(int v) const
{
	return std::binary_search(split_.begin(), split_.end(), v);
}

LayerPair decompose_layers(const GroundProjectors& proj, SplitPolicy policy)
{
	const auto& spec = proj.spec();
	auto layer = [&](Color color) {
		std::map<int, VertexDecomposition> out;
		for(const auto& v : spec.vertices()) {
			std::vector<IncidentProjector> incident;
			for(const auto& p : spec.incident_plaquettes(v, color))
				incident.push_back({p, proj.labeled(p)});
			out.emplace(spec.index(v), vertex_decomposition(incident, spec.index(v), policy));
		}
		return LayerDecomposition(color, std::move(out));
	};
	return {layer(Color::Black), layer(Color::White)};
}

CertificateSpace certificate_space(const LayerPair& layers)
{
	return {layers.black.split_vertices(), layers.white.split_vertices()};
}

} // namespace commham
