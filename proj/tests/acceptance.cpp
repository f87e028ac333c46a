// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "commham/oracle.hpp"
#include "commham/prover.hpp"

using namespace commham;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Instance {
	std::string name;
	CommutingModel model;
	SplitPolicy policy = SplitPolicy::PairOnly;
};

CommutingModel signed_toric_with_flip(const LatticeSpec& spec)
{
	std::map<PlaquetteId, int> signs;
	for(const auto& p : spec.plaquettes())
		signs[p] = 1;
	signs[{0, 0}] = -1;
	return gen_signed_toric(spec, signs);
}

std::string shape(int lx, int ly, Boundary b)
{
	return std::to_string(lx) + "x" + std::to_string(ly) + (b == Boundary::Open ? "o" : "p");
}

// Models on at most 12 qubits with enumerable certificate spaces.
std::vector<Instance> small_suite()
{
	std::vector<Instance> out;
	const std::vector<std::pair<int, int>> shapes{{3, 3}, {4, 3}, {3, 4}};
	for(auto method : {RandomMethod::RotatedClassical, RandomMethod::SignedToric, RandomMethod::DiagonalField})
		for(auto [lx, ly] : shapes)
			for(std::uint64_t seed = 0; seed < 4; ++seed)
				out.push_back({to_string(method) + " " + shape(lx, ly, Boundary::Open) + " seed " + std::to_string(seed),
				               gen_random(LatticeSpec(lx, ly, Boundary::Open), seed, method)});
	for(auto method : {RandomMethod::RotatedClassical, RandomMethod::SignedToric, RandomMethod::DiagonalField})
		for(std::uint64_t seed = 0; seed < 2; ++seed)
			out.push_back({to_string(method) + " 3x3o seed " + std::to_string(seed) + " every-abelian",
			               gen_random(LatticeSpec(3, 3, Boundary::Open), seed, method), SplitPolicy::EveryAbelian});
	for(auto [lx, ly] : shapes) {
		const LatticeSpec spec(lx, ly, Boundary::Open);
		const std::string s = shape(lx, ly, Boundary::Open);
		out.push_back({"toric " + s, gen_toric(spec)});
		out.push_back({"ferromagnet " + s, gen_ising(spec, IsingParameters::uniform(spec, 1.0, 0.0))});
		out.push_back({"ferromagnet+field " + s, gen_ising(spec, IsingParameters::uniform(spec, 1.0, 0.5))});
		out.push_back({"antiferromagnet+field " + s, gen_ising(spec, IsingParameters::uniform(spec, -1.0, 0.5))});
	}
	out.push_back({"identity 3x3o", gen_zero(LatticeSpec(3, 3, Boundary::Open))});
	return out;
}

// Larger instances (up to 16 qubits) with sparse projectors.
std::vector<Instance> large_suite()
{
	std::vector<Instance> out;
	for(auto b : {Boundary::Open, Boundary::Periodic}) {
		const LatticeSpec spec(4, 4, b);
		const std::string s = shape(4, 4, b);
		for(auto method : {RandomMethod::SignedToric, RandomMethod::DiagonalField})
			for(std::uint64_t seed = 0; seed < 4; ++seed)
				out.push_back({to_string(method) + " " + s + " seed " + std::to_string(seed), gen_random(spec, seed, method)});
		out.push_back({"toric " + s, gen_toric(spec)});
		out.push_back({"ferromagnet " + s, gen_ising(spec, IsingParameters::uniform(spec, 1.0, 0.0))});
		out.push_back({"ferromagnet+field " + s, gen_ising(spec, IsingParameters::uniform(spec, 1.0, 0.5))});
	}
	out.push_back({"frustrated signed-toric 4x4p", signed_toric_with_flip(LatticeSpec(4, 4, Boundary::Periodic))});
	return out;
}

struct Outcome {
	bool pass = true;
	std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o)
{
	std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
	std::fflush(stdout);
	if(!o.pass)
		++failures;
}

std::string fmt(const char* f, double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, f, v);
	return buf;
}

Outcome toric_certificate()
{
	const auto start = Clock::now();
	const auto model = gen_toric(LatticeSpec(4, 4, Boundary::Periodic));
	const PreparedModel prep(model);
	const auto v = verify(prep, prep.zero_certificate());
	const double t = seconds_since(start);
	Outcome o;
	o.pass = v.accept && std::abs(v.omega.log2_magnitude + 16.0) <= 1e-10 && t < 1.0;
	o.detail = "log2 omega " + fmt("%.12f", v.omega.log2_magnitude) + ", " + fmt("%.3f", t) + " s";
	return o;
}

// Per-model results reused across criteria.
struct Audit {
	std::string name;
	int qubits = 0;
	double total = 0.0;
	bool small = false;
	std::optional<CertificateSum> sum;
	std::optional<SearchResult> best;
	bool found = false; // exhaustive result accepted by verify
	int max_degree = 0;
	std::string error;
	double worst_chain_dense = 0.0; // relative to max(1, dense)
	std::uint64_t pairs = 0;
};

std::vector<Certificate> pairs_for(const PreparedModel& prep, const CertificateSum& sum, std::mt19937_64& rng)
{
	const auto& space = prep.space();
	std::vector<Certificate> out;
	if(space.num_labels() <= 10) {
		for(std::uint64_t i = 0; i < (std::uint64_t{1} << space.num_labels()); ++i)
			out.push_back(certificate_at(space, i));
		return out;
	}
	// Every nonzero certificate up to 64, spread over the table, plus random ones.
	const std::size_t step = std::max<std::size_t>(1, sum.table.size() / 64);
	for(std::size_t i = 0; i < sum.table.size(); i += step)
		out.push_back(certificate_at(space, sum.table[i].first));
	std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << space.num_labels()) - 1);
	for(int k = 0; k < 32; ++k)
		out.push_back(certificate_at(space, pick(rng)));
	return out;
}

Audit audit(const Instance& inst, bool small, std::mt19937_64& rng)
{
	Audit a;
	a.name = inst.name;
	a.qubits = inst.model.num_qubits();
	a.small = small;
	try {
		if(!check_commuting(inst.model).ok()) {
			a.error = "model does not commute";
			return a;
		}
		const PreparedModel prep(inst.model, inst.policy);
		a.total = total_overlap(prep.projectors());

		a.best = exhaustive_search(prep, 40);
		a.found = a.best && verify(prep, a.best->certificate).accept;

		auto check_degree = [&](const Certificate& cert) {
			const auto sliced = apply_certificate(prep, cert);
			if(sliced.zero())
				return;
			const auto states = effective_states(prep, sliced, cert);
			a.max_degree = std::max(a.max_degree, build_overlap_graph(states.black, states.white).max_degree());
		};
		check_degree(prep.zero_certificate());
		if(a.best)
			check_degree(a.best->certificate);

		if(small) {
			a.sum = certificate_sum(prep);
			auto certs = pairs_for(prep, *a.sum, rng);
			if(a.best)
				certs.push_back(a.best->certificate);
			for(const auto& cert : certs) {
				const double chain = compute_omega(prep, cert).value();
				const double dense = dense_omega(prep, cert);
				a.worst_chain_dense = std::max(a.worst_chain_dense, std::abs(chain - dense) / std::max(1.0, dense));
				check_degree(cert);
				++a.pairs;
			}
		} else {
			for(int k = 0; k < 16; ++k) {
				Certificate c = prep.zero_certificate();
				for(auto* labels : {&c.alpha, &c.beta})
					for(auto& [v, l] : *labels)
						l = static_cast<int>(rng() & 1);
				check_degree(c);
			}
		}
	} catch(const std::exception& e) {
		a.error = e.what();
	}
	return a;
}

Outcome integrality(const std::vector<Audit>& audits)
{
	Outcome o;
	int count = 0;
	double worst = 0.0;
	std::string bad;
	for(const auto& a : audits) {
		if(!a.error.empty()) {
			o.pass = false;
			bad += " " + a.name + " (" + a.error + ")";
			continue;
		}
		++count;
		const double r = integrality_residual(a.total);
		worst = std::max(worst, r);
		if(r > integrality_tol || a.total < -integrality_tol) {
			o.pass = false;
			bad += " " + a.name;
		}
	}
	o.pass = o.pass && count >= 50;
	o.detail = std::to_string(count) + " models, worst residual " + fmt("%.2e", worst) + bad;
	return o;
}

Outcome sum_identity(const std::vector<Audit>& audits)
{
	Outcome o;
	int count = 0;
	double worst = 0.0;
	std::string bad;
	for(const auto& a : audits) {
		if(!a.small || !a.sum)
			continue;
		++count;
		const double d = std::abs(a.sum->sum - a.total);
		worst = std::max(worst, d);
		if(d > sum_identity_tol) {
			o.pass = false;
			bad += " " + a.name;
		}
	}
	o.pass = o.pass && count >= 20;
	o.detail = std::to_string(count) + " models, worst |sum - total| " + fmt("%.2e", worst) + bad;
	return o;
}

Outcome chain_vs_dense(const std::vector<Audit>& audits)
{
	Outcome o;
	std::uint64_t pairs = 0;
	double worst = 0.0;
	std::string bad;
	for(const auto& a : audits) {
		if(!a.small)
			continue;
		pairs += a.pairs;
		worst = std::max(worst, a.worst_chain_dense);
		if(a.worst_chain_dense > 1e-9 || !a.error.empty()) {
			o.pass = false;
			bad += " " + a.name;
		}
	}
	o.pass = o.pass && pairs > 0;
	o.detail = std::to_string(pairs) + " pairs, worst relative gap " + fmt("%.2e", worst) + bad;
	return o;
}

Outcome completeness(const std::vector<Audit>& audits)
{
	Outcome o;
	int accept = 0, reject = 0;
	bool frustrated_seen = false, ferromagnet_seen = false;
	std::string bad;
	for(const auto& a : audits) {
		if(!a.error.empty())
			continue;
		const bool expected = a.total >= 0.5;
		if(expected != a.found) {
			o.pass = false;
			bad += " " + a.name;
		}
		(a.found ? accept : reject)++;
		if(a.name.starts_with("frustrated") && !a.found && a.total < 0.5)
			frustrated_seen = true;
		if(a.name.starts_with("ferromagnet ") && a.found)
			ferromagnet_seen = true;
	}
	o.pass = o.pass && frustrated_seen && ferromagnet_seen;
	o.detail = std::to_string(accept) + " accepted, " + std::to_string(reject) + " rejected, all matching the oracle" +
	           (frustrated_seen ? "; frustrated instance rejected" : "; frustrated instance missing") +
	           (ferromagnet_seen ? "; ferromagnet accepted" : "; ferromagnet missing") + bad;
	return o;
}

Outcome pigeonhole(const std::vector<Audit>& audits)
{
	Outcome o;
	int count = 0;
	double margin = std::numeric_limits<double>::infinity();
	std::string bad;
	for(const auto& a : audits) {
		if(!a.error.empty() || a.total < 1.0 - integrality_tol)
			continue;
		++count;
		const double floor = -2.0 * a.qubits;
		const double got = a.best ? a.best->omega.log2_magnitude : -std::numeric_limits<double>::infinity();
		margin = std::min(margin, got - floor);
		if(!(got >= floor)) {
			o.pass = false;
			bad += " " + a.name;
		}
	}
	o.detail = std::to_string(count) + " models with total >= 1, smallest log2 omega - (-2N) = " + fmt("%.3f", margin) + bad;
	return o;
}

Outcome degree_bound(const std::vector<Audit>& audits)
{
	Outcome o;
	int worst = 0, count = 0;
	std::string bad;
	for(const auto& a : audits) {
		if(!a.error.empty()) {
			o.pass = false;
			bad += " " + a.name + " (" + a.error + ")";
			continue;
		}
		++count;
		worst = std::max(worst, a.max_degree);
		if(a.max_degree > 2) {
			o.pass = false;
			bad += " " + a.name;
		}
	}

	// Black plaquette (1,1) acting on all its corners, three white
	// neighbours each touching one of them.
	const LatticeSpec spec(4, 3, Boundary::Open);
	std::mt19937_64 rng(8);
	auto psd = [&](int dim) {
		std::normal_distribution<double> g;
		Matrix m(dim, dim);
		for(int r = 0; r < dim; ++r)
			for(int c = 0; c < dim; ++c)
				m(r, c) = {g(rng), g(rng)};
		return Matrix(m * m.adjoint());
	};
	const auto c = spec.corner_labels({1, 1});
	const std::vector<EffectiveState> black{{{1, 1}, {c.begin(), c.end()}, psd(16)}};
	const std::vector<EffectiveState> white{{{0, 1}, {spec.index({1, 2})}, psd(2)},
	                                        {{1, 0}, {spec.index({1, 1})}, psd(2)},
	                                        {{2, 1}, {spec.index({2, 1})}, psd(2)}};
	bool raised = false;
	try {
		build_overlap_graph(black, white);
	} catch(const DegreeViolation&) {
		raised = true;
	}
	o.pass = o.pass && raised;
	o.detail = std::to_string(count) + " commuting models, max degree " + std::to_string(worst) +
	           (raised ? "; branching input raises DegreeViolation" : "; branching input NOT rejected") + bad;
	return o;
}

Outcome scale()
{
	Outcome o;
	const LatticeSpec spec(20, 20, Boundary::Open);
	const std::vector<std::pair<std::string, CommutingModel>> models{
	    {"toric", gen_toric(spec)}, {"ferromagnet", gen_ising(spec, IsingParameters::uniform(spec, 1.0, 0.0))}};
	for(const auto& [name, model] : models) {
		const auto proof = greedy_search(PreparedModel(model));
		if(!proof) {
			o.pass = false;
			o.detail += name + ": prover found nothing; ";
			continue;
		}
		const auto start = Clock::now();
		const auto v = verify(model, proof->certificate);
		const double t = seconds_since(start);
		const bool ok = v.accept && std::isfinite(v.omega.log2_magnitude) && t < 1.0;
		o.pass = o.pass && ok;
		o.detail += name + " 400 qubits: log2 omega " + fmt("%.6f", v.omega.log2_magnitude) + " in " + fmt("%.3f", t) +
		            " s; ";
	}
	if(o.detail.ends_with("; "))
		o.detail.resize(o.detail.size() - 2);
	return o;
}

} // namespace

int main()
{
	const auto start = Clock::now();
	report(1, "toric certificate on 4x4 periodic", toric_certificate());

	std::mt19937_64 rng(2024);
	std::vector<Audit> audits;
	for(const auto& inst : small_suite())
		audits.push_back(audit(inst, true, rng));
	for(const auto& inst : large_suite())
		audits.push_back(audit(inst, false, rng));

	report(2, "integrality of tr[Pi_B Pi_W]", integrality(audits));
	report(3, "sum of omega over certificates equals tr[Pi_B Pi_W]", sum_identity(audits));
	report(4, "chain contraction equals dense evaluation", chain_vs_dense(audits));
	report(5, "exhaustive prover accepts iff tr[Pi_B Pi_W] >= 1/2", completeness(audits));
	report(6, "best omega >= 2^-2N whenever tr[Pi_B Pi_W] >= 1", pigeonhole(audits));
	report(7, "overlap graph degree <= 2", degree_bound(audits));
	report(8, "verification on a 20x20 lattice", scale());

	std::printf("%d of 8 criteria failed, %.1f s\n", failures, seconds_since(start));
	return failures == 0 ? 0 : 1;
}
