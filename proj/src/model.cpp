#include "commham/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace commham {

namespace {

std::vector<int> to_vector(const std::array<int, 4>& a) { return {a.begin(), a.end()}; }

// Pairs of distinct plaquettes sharing at least one vertex.
std::vector<std::pair<PlaquetteId, PlaquetteId>> touching_pairs(const LatticeSpec& spec)
{
	std::set<std::pair<PlaquetteId, PlaquetteId>> pairs;
	for(const auto& v : spec.vertices()) {
		auto around = spec.incident_plaquettes(v, Color::Black);
		const auto white = spec.incident_plaquettes(v, Color::White);
		around.insert(around.end(), white.begin(), white.end());
		for(std::size_t i = 0; i < around.size(); ++i)
			for(std::size_t j = i + 1; j < around.size(); ++j)
				pairs.insert(std::minmax(around[i], around[j]));
	}
	return {pairs.begin(), pairs.end()};
}

// Z eigenvalue (+1 for bit 0) of corner k in a 4-corner basis index.
int z_sign(int index, int corner) { return ((index >> (3 - corner)) & 1) ? -1 : 1; }

Matrix four_fold(const Matrix& single)
{
	const std::array<Matrix, 4> f{single, single, single, single};
	return kron(f);
}

Matrix haar_unitary(std::mt19937_64& rng)
{
	std::normal_distribution<double> gauss(0.0, 1.0);
	Matrix g(2, 2);
	for(int i = 0; i < 2; ++i)
		for(int j = 0; j < 2; ++j)
			g(i, j) = Complex{gauss(rng), gauss(rng)};
	Eigen::HouseholderQR<Matrix> qr(g);
	Matrix q = qr.householderQ();
	const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
	for(int k = 0; k < 2; ++k) {
		const Complex d = r(k, k);
		if(std::abs(d) > 0.0)
			q.col(k) *= d / std::abs(d);
	}
	return q;
}

} // namespace

CommutingModel::CommutingModel(LatticeSpec spec) : spec_{spec}
{
	for(const auto& p : spec_.plaquettes())
		terms_.emplace(p, Matrix::Zero(16, 16));
}

void CommutingModel::set_term(const PlaquetteId& p, Matrix term)
{
	if(!spec_.contains(p))
		throw ModelError("plaquette out of range: " + to_string(p));
	if(term.rows() != 16 || term.cols() != 16)
		throw ModelError("plaquette term must be 16x16");
	if(!is_hermitian(term, hermitian_tol))
		throw ModelError("plaquette term at " + to_string(p) + " is not Hermitian");
	terms_[p] = std::move(term);
}

const Matrix& CommutingModel::term(const PlaquetteId& p) const
{
	const auto it = terms_.find(p);
	if(it == terms_.end())
		throw ModelError("no term at plaquette " + to_string(p));
	return it->second;
}

LabeledOperator CommutingModel::labeled_term(const PlaquetteId& p) const
{
	return {term(p), to_vector(spec_.corner_labels(p))};
}

CommutationReport check_commuting(const CommutingModel& model, double tol)
{
	CommutationReport report;
	for(const auto& [p, q] : touching_pairs(model.spec())) {
		++report.pairs_checked;
		const double norm = commutator_norm(model.labeled_term(p), model.labeled_term(q));
		if(norm > tol)
			report.violations.push_back({p, q, norm});
	}
	return report;
}

GroundProjectors::GroundProjectors(LatticeSpec spec, std::map<PlaquetteId, Matrix> projectors)
    : spec_{spec}, projectors_{std::move(projectors)}
{
}

const Matrix& GroundProjectors::at(const PlaquetteId& p) const
{
	const auto it = projectors_.find(p);
	if(it == projectors_.end())
		throw ModelError("no projector at plaquette " + to_string(p));
	return it->second;
}

LabeledOperator GroundProjectors::labeled(const PlaquetteId& p) const
{
	return {at(p), to_vector(spec_.corner_labels(p))};
}

GroundProjectors ground_projectors(const CommutingModel& model, double tol)
{
	std::map<PlaquetteId, Matrix> projectors;
	for(const auto& [p, h] : model.terms())
		projectors.emplace(p, ground_space_projector(h));
	GroundProjectors out(model.spec(), std::move(projectors));

	CommutationReport report;
	for(const auto& [p, q] : touching_pairs(model.spec())) {
		++report.pairs_checked;
		const double norm = commutator_norm(out.labeled(p), out.labeled(q));
		if(norm > tol)
			report.violations.push_back({p, q, norm});
	}
	if(!report.ok())
		throw NonCommutingError("ground-space projectors do not commute", std::move(report));
	return out;
}

CommutingModel gen_toric(const LatticeSpec& spec)
{
	return gen_signed_toric(spec, {});
}

CommutingModel gen_signed_toric(const LatticeSpec& spec, const std::map<PlaquetteId, int>& signs)
{
	CommutingModel model(spec);
	const Matrix zzzz = four_fold(pauli_z());
	const Matrix xxxx = four_fold(pauli_x());
	for(const auto& p : spec.plaquettes()) {
		const auto it = signs.find(p);
		const double s = (it == signs.end() || it->second >= 0) ? 1.0 : -1.0;
		model.set_term(p, -s * (p.color() == Color::Black ? zzzz : xxxx));
	}
	return model;
}

CommutingModel gen_zero(const LatticeSpec& spec) { return CommutingModel(spec); }

IsingParameters IsingParameters::uniform(const LatticeSpec& spec, double coupling, double field)
{
	const auto n = static_cast<std::size_t>(spec.num_vertices());
	return {std::vector<double>(n, coupling), std::vector<double>(n, coupling), std::vector<double>(n, field)};
}

CommutingModel gen_ising(const LatticeSpec& spec, const IsingParameters& params)
{
	const auto n = static_cast<std::size_t>(spec.num_vertices());
	if(params.horizontal.size() != n || params.vertical.size() != n || params.field.size() != n)
		throw ModelError("Ising parameters need one entry per vertex");

	// Diagonal energies per plaquette, indexed by the 4-corner basis state.
	std::map<PlaquetteId, std::array<double, 16>> energy;
	for(const auto& p : spec.plaquettes())
		energy[p].fill(0.0);

	auto owner = [&](const PlaquetteId& a, const PlaquetteId& b) -> std::optional<PlaquetteId> {
		const bool has_a = spec.contains(a), has_b = spec.contains(b);
		if(has_a && has_b)
			return a.color() == Color::Black ? a : b;
		if(has_a)
			return a;
		if(has_b)
			return b;
		return std::nullopt;
	};
	auto wrap = [&](PlaquetteId p) {
		if(spec.boundary() == Boundary::Periodic) {
			p.x = (p.x + spec.lx()) % spec.lx();
			p.y = (p.y + spec.ly()) % spec.ly();
		}
		return p;
	};
	auto add_edge = [&](const PlaquetteId& p, const VertexId& u, const VertexId& w, double j) {
		const auto c = spec.corners(p);
		const int cu = static_cast<int>(std::find(c.begin(), c.end(), u) - c.begin());
		const int cw = static_cast<int>(std::find(c.begin(), c.end(), w) - c.begin());
		for(int s = 0; s < 16; ++s)
			energy[p][s] -= j * z_sign(s, cu) * z_sign(s, cw);
	};

	const bool periodic = spec.boundary() == Boundary::Periodic;
	for(const auto& v : spec.vertices()) {
		const auto idx = static_cast<std::size_t>(spec.index(v));
		if(periodic || v.x + 1 < spec.lx()) {
			const VertexId right{(v.x + 1) % spec.lx(), v.y};
			// Plaquettes with this edge on their top and bottom side.
			if(auto p = owner(wrap({v.x, v.y}), wrap({v.x, v.y - 1})))
				add_edge(*p, v, right, params.horizontal[idx]);
		}
		if(periodic || v.y + 1 < spec.ly()) {
			const VertexId down{v.x, (v.y + 1) % spec.ly()};
			// Plaquettes with this edge on their left and right side.
			if(auto p = owner(wrap({v.x, v.y}), wrap({v.x - 1, v.y})))
				add_edge(*p, v, down, params.vertical[idx]);
		}
		std::vector<PlaquetteId> around = spec.incident_plaquettes(v, Color::Black);
		const auto white = spec.incident_plaquettes(v, Color::White);
		around.insert(around.end(), white.begin(), white.end());
		const double share = params.field[idx] / static_cast<double>(around.size());
		for(const auto& p : around) {
			const auto c = spec.corners(p);
			const int cv = static_cast<int>(std::find(c.begin(), c.end(), v) - c.begin());
			for(int s = 0; s < 16; ++s)
				energy[p][s] -= share * z_sign(s, cv);
		}
	}

	CommutingModel model(spec);
	for(const auto& [p, e] : energy) {
		Matrix h = Matrix::Zero(16, 16);
		for(int s = 0; s < 16; ++s)
			h(s, s) = e[s];
		model.set_term(p, std::move(h));
	}
	return model;
}

std::string to_string(RandomMethod m)
{
	switch(m) {
	case RandomMethod::RotatedClassical: return "rotated-classical";
	case RandomMethod::SignedToric: return "signed-toric";
	case RandomMethod::DiagonalField: return "diagonal-field";
	}
	return "unknown";
}

std::optional<RandomMethod> parse_random_method(const std::string& name)
{
	for(auto m : {RandomMethod::RotatedClassical, RandomMethod::SignedToric, RandomMethod::DiagonalField})
		if(to_string(m) == name)
			return m;
	return std::nullopt;
}

RotatedClassicalModel gen_rotated_classical(const LatticeSpec& spec, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	std::uniform_int_distribution<int> level(0, 2);
	std::bernoulli_distribution coin(0.5);

	const bool planted = coin(rng);
	std::vector<int> config(static_cast<std::size_t>(spec.num_vertices()));
	for(auto& bit : config)
		bit = coin(rng) ? 1 : 0;

	std::vector<Matrix> unitaries;
	for(int v = 0; v < spec.num_vertices(); ++v)
		unitaries.push_back(haar_unitary(rng));

	CommutingModel model(spec);
	for(const auto& p : spec.plaquettes()) {
		Matrix d = Matrix::Zero(16, 16);
		for(int s = 0; s < 16; ++s)
			d(s, s) = static_cast<double>(level(rng));
		const auto labels = spec.corner_labels(p);
		if(planted) {
			int s = 0;
			for(int k = 0; k < 4; ++k)
				s = (s << 1) | config[static_cast<std::size_t>(labels[k])];
			d(s, s) = 0.0;
		}
		std::array<Matrix, 4> local;
		for(int k = 0; k < 4; ++k)
			local[k] = unitaries[static_cast<std::size_t>(labels[k])];
		const Matrix u = kron(local);
		Matrix h = u * d * u.adjoint();
		h = 0.5 * (h + h.adjoint());
		model.set_term(p, std::move(h));
	}
	return {std::move(model), std::move(unitaries)};
}

CommutingModel gen_random(const LatticeSpec& spec, std::uint64_t seed, RandomMethod method)
{
	switch(method) {
	case RandomMethod::RotatedClassical: return gen_rotated_classical(spec, seed).model;
	case RandomMethod::SignedToric: {
		std::mt19937_64 rng(seed);
		std::bernoulli_distribution flip(0.5);
		std::map<PlaquetteId, int> signs;
		for(const auto& p : spec.plaquettes())
			signs[p] = flip(rng) ? -1 : 1;
		return gen_signed_toric(spec, signs);
	}
	case RandomMethod::DiagonalField: {
		std::mt19937_64 rng(seed);
		std::bernoulli_distribution flip(0.5);
		std::uniform_int_distribution<int> field(-1, 1);
		auto params = IsingParameters::uniform(spec, 1.0, 0.0);
		for(auto& j : params.horizontal)
			j = flip(rng) ? -1.0 : 1.0;
		for(auto& j : params.vertical)
			j = flip(rng) ? -1.0 : 1.0;
		for(auto& f : params.field)
			f = 0.5 * field(rng);
		return gen_ising(spec, params);
	}
	}
	throw ModelError("unknown random method");
}

} // namespace commham
