#include "commham/prover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>

namespace commham {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

struct LabelSlot {
	Color color;
	int vertex;
};

std::vector<LabelSlot> label_slots(const CertificateSpace& space)
{
	std::vector<LabelSlot> slots;
	for(int v : space.black_labels)
		slots.push_back({Color::Black, v});
	for(int v : space.white_labels)
		slots.push_back({Color::White, v});
	return slots;
}

std::map<int, int>& labels_of(Certificate& cert, Color c) { return c == Color::Black ? cert.alpha : cert.beta; }

SlicedLayer& layer_of(SlicedProjectors& s, Color c) { return c == Color::Black ? s.black : s.white; }

double vertex_overlap(const PreparedModel& prep, const Certificate& cert, int v)
{
	const auto& a = prep.layers().black.at(v).split().basis[static_cast<std::size_t>(cert.alpha.at(v))];
	const auto& b = prep.layers().white.at(v).split().basis[static_cast<std::size_t>(cert.beta.at(v))];
	return std::norm(a.dot(b));
}

bool split_in_both(const PreparedModel& prep, int v)
{
	return prep.layers().black.is_split(v) && prep.layers().white.is_split(v);
}

class Exhaustive {
public:
	explicit Exhaustive(const PreparedModel& prep) : prep_{prep}, slots_{label_slots(prep.space())}
	{
		completes_.resize(slots_.size());
		std::map<std::pair<Color, int>, std::size_t> position;
		for(std::size_t i = 0; i < slots_.size(); ++i)
			position[{slots_[i].color, slots_[i].vertex}] = i;

		cert_ = prep.zero_certificate();
		for(const auto& p : prep.spec().plaquettes()) {
			const Color c = p.color();
			std::optional<std::size_t> last;
			for(int v : prep.spec().corner_labels(p))
				if(auto it = position.find({c, v}); it != position.end())
					last = std::max(last.value_or(0), it->second);
			if(last) {
				completes_[*last].push_back(p);
				continue;
			}
			Matrix m = slice_plaquette(prep, p, cert_.labels(c));
			if(m.norm() <= zero_floor)
				hopeless_ = true;
			layer_of(sliced_, c).projectors[p] = std::move(m);
		}
	}

	std::optional<SearchResult> run()
	{
		if(!hopeless_)
			descend(0);
		return best_;
	}

private:
	void descend(std::size_t i)
	{
		if(i == slots_.size()) {
			leaf();
			return;
		}
		const auto& slot = slots_[i];
		for(int label : {0, 1}) {
			labels_of(cert_, slot.color)[slot.vertex] = label;
			if(viable(i))
				descend(i + 1);
		}
		labels_of(cert_, slot.color)[slot.vertex] = 0;
	}

	bool viable(std::size_t i)
	{
		const auto& slot = slots_[i];
		for(const auto& p : completes_[i]) {
			Matrix m = slice_plaquette(prep_, p, cert_.labels(slot.color));
			if(m.norm() <= zero_floor)
				return false;
			layer_of(sliced_, slot.color).projectors[p] = std::move(m);
		}
		if(slot.color == Color::White && split_in_both(prep_, slot.vertex))
			return vertex_overlap(prep_, cert_, slot.vertex) > zero_floor;
		return true;
	}

	void leaf()
	{
		++evaluated_;
		auto omega = omega_from_sliced(prep_, sliced_, cert_);
		if(omega.zero)
			return;
		if(!best_ || omega.log2_magnitude > best_->omega.log2_magnitude + zero_floor)
			best_ = SearchResult{cert_, std::move(omega), 0};
		best_->evaluated = evaluated_;
	}

	const PreparedModel& prep_;
	std::vector<LabelSlot> slots_;
	std::vector<std::vector<PlaquetteId>> completes_;
	Certificate cert_;
	SlicedProjectors sliced_;
	bool hopeless_ = false;
	std::uint64_t evaluated_ = 0;
	std::optional<SearchResult> best_;
};

struct Score {
	int zeros = 0;
	double log2 = neg_inf;
};

bool better(const Score& a, const Score& b)
{
	if(a.zeros != b.zeros)
		return a.zeros < b.zeros;
	if(std::isinf(b.log2))
		return !std::isinf(a.log2);
	return !std::isinf(a.log2) && a.log2 > b.log2 + zero_floor;
}

bool same(const Score& a, const Score& b) { return !better(a, b) && !better(b, a); }

// Local factors are keyed by plaquette (sliced projectors) or by vertex
// (overlaps).  Tracks which ones vanish for the current certificate.
class LocalState {
public:
	LocalState(const PreparedModel& prep, Certificate cert) : prep_{prep}, cert_{std::move(cert)}
	{
		for(const auto& p : prep.spec().plaquettes())
			set(zero_plaquettes_, p, plaquette_vanishes(cert_, p));
		for(int v : prep.space().white_labels)
			if(split_in_both(prep, v))
				set(zero_vertices_, v, vertex_overlap(prep, cert_, v) <= zero_floor);
		score_ = full_score(cert_, zeros());
	}

	const Certificate& certificate() const { return cert_; }
	const Score& score() const { return score_; }
	std::uint64_t evaluated() const { return evaluated_; }

	Score try_flip(const LabelSlot& slot)
	{
		Certificate next = flipped(slot);
		int delta = 0;
		for(const auto& p : touched(slot))
			delta += int(plaquette_vanishes(next, p)) - int(zero_plaquettes_.contains(p));
		if(split_in_both(prep_, slot.vertex))
			delta += int(vertex_overlap(prep_, next, slot.vertex) <= zero_floor) -
			         int(zero_vertices_.contains(slot.vertex));
		return full_score(next, zeros() + delta);
	}

	void apply_flip(const LabelSlot& slot, const Score& score)
	{
		cert_ = flipped(slot);
		for(const auto& p : touched(slot))
			set(zero_plaquettes_, p, plaquette_vanishes(cert_, p));
		if(split_in_both(prep_, slot.vertex))
			set(zero_vertices_, slot.vertex, vertex_overlap(prep_, cert_, slot.vertex) <= zero_floor);
		score_ = score;
	}

private:
	template <class Set, class Key> static void set(Set& s, const Key& k, bool on)
	{
		if(on)
			s.insert(k);
		else
			s.erase(k);
	}

	int zeros() const { return static_cast<int>(zero_plaquettes_.size() + zero_vertices_.size()); }

	Certificate flipped(const LabelSlot& slot) const
	{
		Certificate next = cert_;
		auto& label = labels_of(next, slot.color)[slot.vertex];
		label = 1 - label;
		return next;
	}

	std::vector<PlaquetteId> touched(const LabelSlot& slot) const
	{
		return prep_.spec().incident_plaquettes(prep_.spec().vertex(slot.vertex), slot.color);
	}

	bool plaquette_vanishes(const Certificate& cert, const PlaquetteId& p) const
	{
		return slice_plaquette(prep_, p, cert.labels(p.color())).norm() <= zero_floor;
	}

	Score full_score(const Certificate& cert, int zeros)
	{
		Score s{zeros, neg_inf};
		if(zeros == 0) {
			++evaluated_;
			const auto omega = compute_omega(prep_, cert);
			if(!omega.zero)
				s.log2 = omega.log2_magnitude;
		}
		return s;
	}

	const PreparedModel& prep_;
	Certificate cert_;
	std::set<PlaquetteId> zero_plaquettes_;
	std::set<int> zero_vertices_;
	Score score_;
	std::uint64_t evaluated_ = 0;
};

Certificate random_certificate(const PreparedModel& prep, std::mt19937_64& rng)
{
	Certificate c = prep.zero_certificate();
	std::bernoulli_distribution coin(0.5);
	for(auto* labels : {&c.alpha, &c.beta})
		for(auto& [v, label] : *labels)
			label = coin(rng) ? 1 : 0;
	return c;
}

} // namespace

std::optional<SearchResult> exhaustive_search(const PreparedModel& prep, int max_labels)
{
	const int n = prep.space().num_labels();
	if(n > max_labels)
		throw CapExceeded("certificate space has 2^" + std::to_string(n) + " elements, cap is 2^" +
		                  std::to_string(max_labels));
	return Exhaustive(prep).run();
}

std::optional<SearchResult> greedy_search(const PreparedModel& prep, const GreedyOptions& options)
{
	const auto slots = label_slots(prep.space());
	const double threshold = options.log2_threshold.value_or(default_log2_threshold(prep.num_qubits()));
	std::mt19937_64 rng(options.seed);
	std::uint64_t evaluated = 0;

	for(int restart = 0; restart < std::max(1, options.restarts); ++restart) {
		LocalState state(prep, restart == 0 ? prep.zero_certificate() : random_certificate(prep, rng));
		int sideways = 0;
		for(;;) {
			if(state.score().zeros == 0 && state.score().log2 >= threshold)
				break;
			std::optional<std::size_t> best_move;
			Score best = state.score();
			std::vector<std::pair<std::size_t, Score>> plateau;
			for(std::size_t i = 0; i < slots.size(); ++i) {
				const Score s = state.try_flip(slots[i]);
				if(better(s, best)) {
					best = s;
					best_move = i;
				} else if(same(s, state.score())) {
					plateau.emplace_back(i, s);
				}
			}
			if(best_move) {
				state.apply_flip(slots[*best_move], best);
				continue;
			}
			if(plateau.empty() || sideways >= options.max_sideways)
				break;
			std::uniform_int_distribution<std::size_t> pick(0, plateau.size() - 1);
			const auto& [i, s] = plateau[pick(rng)];
			state.apply_flip(slots[i], s);
			++sideways;
		}
		evaluated += state.evaluated();

		auto verdict = verify(prep, state.certificate(), threshold);
		if(verdict.accept)
			return SearchResult{state.certificate(), std::move(verdict.omega), evaluated};
	}
	return std::nullopt;
}

} // namespace commham
