#include "commham/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace commham {

namespace {

std::vector<int> corner_vector(const LatticeSpec& spec, const PlaquetteId& p)
{
	const auto c = spec.corner_labels(p);
	return {c.begin(), c.end()};
}

const QubitState& slice_state(const LayerDecomposition& layer, const std::map<int, int>& labels, int v)
{
	return layer.at(v).split().basis[static_cast<std::size_t>(labels.at(v))];
}

// Removes qubits on which op acts as the identity.  Returns the pruned
// state; dropped qubits become candidates for free qubits.
EffectiveState prune_support(EffectiveState state)
{
	for(std::size_t k = 0; k < state.support.size();) {
		const int q = state.support[k];
		std::vector<int> keep;
		for(int l : state.support)
			if(l != q)
				keep.push_back(l);
		LabeledOperator reduced = partial_trace(state.labeled(), keep);
		reduced.matrix *= 0.5;
		const Matrix completion = embed(reduced, state.support); // identity on q
		const double norm = state.op.norm();
		if(norm == 0.0 || (state.op - completion).norm() <= support_prune_tol * norm) {
			state.op = std::move(reduced.matrix);
			state.support = std::move(reduced.labels);
		} else {
			++k;
		}
	}
	return state;
}

std::string plaquette_list(const OverlapGraph& graph, const Component& c)
{
	std::string out;
	for(int n : c.nodes)
		out += to_string(graph.nodes[static_cast<std::size_t>(n)].plaquette);
	return out;
}

std::vector<int> shared_labels(const std::vector<int>& a, const std::vector<int>& b)
{
	std::vector<int> out;
	for(int l : a)
		if(std::find(b.begin(), b.end(), l) != b.end())
			out.push_back(l);
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace

PreparedModel::PreparedModel(const CommutingModel& model, SplitPolicy policy)
    : projectors_{ground_projectors(model)},
      layers_{decompose_layers(projectors_, policy)},
      space_{certificate_space(layers_)}
{
}

void PreparedModel::validate(const Certificate& cert) const
{
	auto check = [&](const std::map<int, int>& labels, const std::vector<int>& domain, const char* name) {
		if(labels.size() != domain.size())
			throw CertificateError(std::string(name) + " labels " + std::to_string(labels.size()) +
			                       " vertices, expected " + std::to_string(domain.size()));
		for(const auto& [v, a] : labels) {
			if(!std::binary_search(domain.begin(), domain.end(), v))
				throw CertificateError(std::string(name) + " labels vertex " + to_string(spec().vertex(v)) +
				                       " which has no split in that layer");
			if(a != 0 && a != 1)
				throw CertificateError(std::string(name) + " label must be 0 or 1");
		}
	};
	check(cert.alpha, space_.black_labels, "alpha");
	check(cert.beta, space_.white_labels, "beta");
}

Certificate PreparedModel::zero_certificate() const
{
	Certificate c;
	for(int v : space_.black_labels)
		c.alpha[v] = 0;
	for(int v : space_.white_labels)
		c.beta[v] = 0;
	return c;
}

Matrix slice_plaquette(const PreparedModel& prep, const PlaquetteId& p, const std::map<int, int>& labels)
{
	const auto& layer = prep.layers().layer(p.color());
	LabeledOperator op = prep.projectors().labeled(p);
	for(int v : op.labels)
		if(layer.is_split(v))
			op.matrix = sandwich_site(op, v, slice_state(layer, labels, v));
	return std::move(op.matrix);
}

SlicedLayer slice_layer(const PreparedModel& prep, Color color, const std::map<int, int>& labels)
{
	SlicedLayer out;
	for(const auto& p : prep.spec().plaquettes(color)) {
		Matrix m = slice_plaquette(prep, p, labels);
		if(m.norm() <= zero_floor) {
			out.zero_at = p;
			out.projectors.clear();
			return out;
		}
		out.projectors.emplace(p, std::move(m));
	}
	return out;
}

SlicedProjectors apply_certificate(const PreparedModel& prep, const Certificate& cert)
{
	prep.validate(cert);
	SlicedProjectors out;
	out.black = slice_layer(prep, Color::Black, cert.alpha);
	if(!out.black.zero())
		out.white = slice_layer(prep, Color::White, cert.beta);
	return out;
}

EffectiveStates effective_states(const PreparedModel& prep, const SlicedProjectors& sliced, const Certificate& cert)
{
	const auto& spec = prep.spec();
	const auto& black = prep.layers().black;
	const auto& white = prep.layers().white;
	EffectiveStates out;

	for(int v : black.split_vertices()) {
		if(white.is_split(v)) {
			const Complex amp = slice_state(black, cert.alpha, v).dot(slice_state(white, cert.beta, v));
			out.overlaps.push_back({v, std::norm(amp)});
		}
	}

	auto reduce = [&](Color color, const SlicedLayer& layer) {
		const auto& own = prep.layers().layer(color);
		const auto& other = prep.layers().layer(opposite(color));
		const auto& own_labels = cert.labels(color);
		const auto& other_labels = cert.labels(opposite(color));
		std::vector<EffectiveState> states;
		for(const auto& [p, m] : layer.projectors) {
			LabeledOperator op(m, corner_vector(spec, p));
			for(int v : corner_vector(spec, p)) {
				if(own.is_split(v))
					op = contract_site(op, v, slice_state(own, own_labels, v));
				else if(other.is_split(v))
					op = contract_site(op, v, slice_state(other, other_labels, v));
			}
			states.push_back(prune_support({p, std::move(op.labels), std::move(op.matrix)}));
		}
		return states;
	};
	out.black = reduce(Color::Black, sliced.black);
	out.white = reduce(Color::White, sliced.white);

	std::set<int> covered;
	for(const auto* states : {&out.black, &out.white})
		for(const auto& s : *states)
			covered.insert(s.support.begin(), s.support.end());
	for(int v = 0; v < spec.num_vertices(); ++v)
		if(!black.is_split(v) && !white.is_split(v) && !covered.contains(v))
			out.free_qubits.push_back(v);
	return out;
}

int OverlapGraph::max_degree() const
{
	std::size_t d = 0;
	for(const auto& adj : adjacency)
		d = std::max(d, adj.size());
	return static_cast<int>(d);
}

OverlapGraph build_overlap_graph(std::span<const EffectiveState> black, std::span<const EffectiveState> white)
{
	OverlapGraph g;
	for(const auto* states : {&black, &white})
		for(const auto& s : *states)
			if(!s.support.empty())
				g.nodes.push_back(s);
	const int n = static_cast<int>(g.nodes.size());
	g.adjacency.assign(static_cast<std::size_t>(n), {});

	for(int i = 0; i < n; ++i) {
		for(int j = i + 1; j < n; ++j) {
			const auto& a = g.nodes[static_cast<std::size_t>(i)];
			const auto& b = g.nodes[static_cast<std::size_t>(j)];
			auto shared = shared_labels(a.support, b.support);
			if(shared.empty())
				continue;
			if(a.color() == b.color())
				throw SupportConflict("effective states at " + to_string(a.plaquette) + " and " +
				                      to_string(b.plaquette) + " of the same color share a vertex");
			g.edges.push_back({i, j, std::move(shared)});
			g.adjacency[static_cast<std::size_t>(i)].push_back(j);
			g.adjacency[static_cast<std::size_t>(j)].push_back(i);
		}
	}
	for(int i = 0; i < n; ++i) {
		if(g.adjacency[static_cast<std::size_t>(i)].size() > 2)
			throw DegreeViolation("effective state at " + to_string(g.nodes[static_cast<std::size_t>(i)].plaquette) +
			                      " overlaps " + std::to_string(g.adjacency[static_cast<std::size_t>(i)].size()) +
			                      " others; the overlap pattern branches");
	}

	std::vector<bool> seen(static_cast<std::size_t>(n), false);
	for(int start = 0; start < n; ++start) {
		if(seen[static_cast<std::size_t>(start)])
			continue;
		std::vector<int> members;
		std::vector<int> stack{start};
		seen[static_cast<std::size_t>(start)] = true;
		while(!stack.empty()) {
			const int u = stack.back();
			stack.pop_back();
			members.push_back(u);
			for(int w : g.adjacency[static_cast<std::size_t>(u)])
				if(!seen[static_cast<std::size_t>(w)]) {
					seen[static_cast<std::size_t>(w)] = true;
					stack.push_back(w);
				}
		}
		std::sort(members.begin(), members.end());

		Component c;
		if(members.size() == 1) {
			c.shape = Component::Shape::Isolated;
			c.nodes = members;
		} else {
			int first = -1;
			for(int m : members)
				if(g.adjacency[static_cast<std::size_t>(m)].size() == 1) {
					first = m;
					break;
				}
			c.shape = first < 0 ? Component::Shape::Cycle : Component::Shape::Path;
			if(first < 0)
				first = members.front();
			int prev = -1, cur = first;
			while(cur >= 0) {
				c.nodes.push_back(cur);
				int next = -1;
				auto adj = g.adjacency[static_cast<std::size_t>(cur)];
				std::sort(adj.begin(), adj.end());
				for(int w : adj)
					if(w != prev && w != first) {
						next = w;
						break;
					}
				prev = cur;
				cur = next;
			}
		}
		g.components.push_back(std::move(c));
	}
	return g;
}

Complex contract_chain(std::span<const EffectiveState> nodes, bool cycle)
{
	const std::size_t k = nodes.size();
	if(k == 0)
		throw MalformedComponent("empty component");
	if(cycle && k < 3)
		throw MalformedComponent("a cycle needs at least three nodes");

	// Every qubit must be touched by at most two nodes; consecutive nodes
	// must overlap and non-consecutive ones must not.
	for(std::size_t i = 0; i < k; ++i) {
		for(std::size_t j = i + 1; j < k; ++j) {
			const bool adjacent = j == i + 1 || (cycle && i == 0 && j == k - 1);
			const bool overlap = !shared_labels(nodes[i].support, nodes[j].support).empty();
			if(adjacent && !overlap)
				throw MalformedComponent("consecutive chain nodes " + to_string(nodes[i].plaquette) + " and " +
				                         to_string(nodes[j].plaquette) + " do not overlap");
			if(!adjacent && overlap)
				throw MalformedComponent("chain nodes " + to_string(nodes[i].plaquette) + " and " +
				                         to_string(nodes[j].plaquette) + " overlap out of order");
			if(adjacent && nodes[i].color() == nodes[j].color())
				throw MalformedComponent("overlapping chain nodes must alternate in color");
		}
	}

	// Node i becomes a transfer matrix from the (ket, bra) index pairs of the
	// qubits it shares with node i-1 to those it shares with node i+1.  White
	// states enter transposed: tr[B W] = sum_{i,j} B[i,j] W^T[i,j].
	auto transfer = [&](std::size_t i) {
		const auto& node = nodes[i];
		std::vector<int> prev, next;
		if(i > 0 || cycle)
			prev = shared_labels(node.support, nodes[(i + k - 1) % k].support);
		if(i + 1 < k || cycle)
			next = shared_labels(node.support, nodes[(i + 1) % k].support);
		if(k == 1)
			prev.clear(), next.clear();
		std::vector<int> keep = prev;
		keep.insert(keep.end(), next.begin(), next.end());
		LabeledOperator reduced = partial_trace(node.labeled(), keep);
		if(node.color() == Color::White)
			reduced.matrix.transposeInPlace();

		const int m = reduced.num_qubits();
		auto bit_for = [&](int label) {
			const auto pos = std::find(reduced.labels.begin(), reduced.labels.end(), label) - reduced.labels.begin();
			return m - 1 - static_cast<int>(pos);
		};
		auto expand = [&](const std::vector<int>& labels, int pair_index, int& ket, int& bra) {
			const int s = static_cast<int>(labels.size());
			for(int q = 0; q < s; ++q) {
				const int pair = (pair_index >> (2 * (s - 1 - q))) & 3;
				ket |= (pair >> 1) << bit_for(labels[static_cast<std::size_t>(q)]);
				bra |= (pair & 1) << bit_for(labels[static_cast<std::size_t>(q)]);
			}
		};
		const int rows = 1 << (2 * prev.size());
		const int cols = 1 << (2 * next.size());
		Matrix t(rows, cols);
		for(int r = 0; r < rows; ++r)
			for(int c = 0; c < cols; ++c) {
				int ket = 0, bra = 0;
				expand(prev, r, ket, bra);
				expand(next, c, ket, bra);
				t(r, c) = reduced.matrix(ket, bra);
			}
		return t;
	};

	Matrix frontier = transfer(0);
	for(std::size_t i = 1; i < k; ++i)
		frontier = frontier * transfer(i);
	return cycle ? frontier.trace() : frontier(0, 0);
}

double contract_component(const OverlapGraph& graph, const Component& component)
{
	std::vector<EffectiveState> ordered;
	for(int n : component.nodes)
		ordered.push_back(graph.nodes[static_cast<std::size_t>(n)]);
	const Complex v = contract_chain(ordered, component.shape == Component::Shape::Cycle);
	return v.real();
}

std::string to_string(OmegaFactor::Kind kind)
{
	switch(kind) {
	case OmegaFactor::Kind::VertexOverlap: return "vertex-overlap";
	case OmegaFactor::Kind::Component: return "component";
	case OmegaFactor::Kind::FreeQubits: return "free-qubits";
	}
	return "?";
}

double OmegaResult::value() const { return zero ? 0.0 : std::exp2(log2_magnitude); }

OmegaResult omega_from_sliced(const PreparedModel& prep, const SlicedProjectors& sliced, const Certificate& cert)
{
	OmegaResult out;
	constexpr double neg_inf = -std::numeric_limits<double>::infinity();
	if(sliced.zero()) {
		out.zero = true;
		out.log2_magnitude = neg_inf;
		out.zero_sandwich = sliced.black.zero() ? sliced.black.zero_at : sliced.white.zero_at;
		return out;
	}

	auto add = [&](OmegaFactor::Kind kind, std::string id, double value) {
		const bool vanishes = value <= zero_floor;
		out.factors.push_back({kind, std::move(id), value, vanishes ? neg_inf : std::log2(value)});
		if(vanishes)
			out.zero = true;
		else
			out.log2_magnitude += std::log2(value);
	};

	const auto states = effective_states(prep, sliced, cert);
	for(const auto& ov : states.overlaps)
		add(OmegaFactor::Kind::VertexOverlap, to_string(prep.spec().vertex(ov.vertex)), ov.value);

	for(const auto* layer : {&states.black, &states.white})
		for(const auto& s : *layer)
			if(s.support.empty())
				add(OmegaFactor::Kind::Component, to_string(s.plaquette), s.op(0, 0).real());

	const auto graph = build_overlap_graph(states.black, states.white);
	for(const auto& c : graph.components)
		add(OmegaFactor::Kind::Component, plaquette_list(graph, c), contract_component(graph, c));

	const auto nfree = static_cast<double>(states.free_qubits.size());
	out.factors.push_back({OmegaFactor::Kind::FreeQubits, std::to_string(states.free_qubits.size()), 0.0, nfree});
	out.log2_magnitude += nfree;
	if(out.zero)
		out.log2_magnitude = neg_inf;
	return out;
}

OmegaResult compute_omega(const PreparedModel& prep, const Certificate& cert)
{
	return omega_from_sliced(prep, apply_certificate(prep, cert), cert);
}

OmegaResult compute_omega(const CommutingModel& model, const Certificate& cert)
{
	return compute_omega(PreparedModel(model), cert);
}

double default_log2_threshold(int num_qubits) { return -(2.0 * num_qubits + 1.0); }

Verdict verify(const PreparedModel& prep, const Certificate& cert, std::optional<double> log2_threshold)
{
	Verdict v;
	v.log2_threshold = log2_threshold.value_or(default_log2_threshold(prep.num_qubits()));
	v.omega = compute_omega(prep, cert);
	v.accept = !v.omega.zero && v.omega.log2_magnitude >= v.log2_threshold;
	return v;
}

Verdict verify(const CommutingModel& model, const Certificate& cert, std::optional<double> log2_threshold)
{
	return verify(PreparedModel(model), cert, log2_threshold);
}

} // namespace commham
