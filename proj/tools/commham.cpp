#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commham/io.hpp"
#include "commham/oracle.hpp"
#include "commham/prover.hpp"

using namespace commham;

namespace {

enum Exit { ok = 0, rejected = 1, invalid = 2, noncommuting = 3 };

struct GenArgs {
	std::string model = "toric";
	std::string method = "rotated-classical";
	int lx = 4;
	int ly = 4;
	std::string boundary = "periodic";
	std::uint64_t seed = 0;
	double coupling = 1.0;
	double field = 0.0;
	std::vector<std::string> flips;
	std::string output;
};

struct CheckArgs {
	std::string model;
};

struct VerifyArgs {
	std::string model;
	std::string cert;
	std::optional<double> threshold;
	std::optional<double> log2_threshold;
};

struct ProveArgs {
	std::string model;
	bool exhaustive = false;
	bool greedy = false;
	std::uint64_t seed = 0;
	int restarts = 8;
	int max_labels = exhaustive_label_cap;
	std::optional<double> log2_threshold;
	std::string output;
};

struct OracleArgs {
	std::string model;
	bool sum_check = false;
	int max_qubits = default_qubit_cap;
	int max_labels = sum_label_cap;
};

int fail(int code, const std::string& msg)
{
	std::cerr << "error: " << msg << "\n";
	return code;
}

PlaquetteId parse_plaquette(const std::string& s)
{
	const auto comma = s.find(',');
	if(comma == std::string::npos)
		throw std::invalid_argument("expected x,y but got '" + s + "'");
	return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

void print_violations(const CommutationReport& report)
{
	for(const auto& v : report.violations)
		std::cout << "non-commuting: " << to_string(v.first) << " " << to_string(v.second) << " norm "
		          << v.norm << "\n";
}

int run_gen(const GenArgs& a)
{
	const LatticeSpec spec(a.lx, a.ly, a.boundary == "open" ? Boundary::Open : Boundary::Periodic);
	std::optional<CommutingModel> model;
	if(a.model == "toric") {
		std::map<PlaquetteId, int> signs;
		for(const auto& p : spec.plaquettes())
			signs[p] = 1;
		for(const auto& f : a.flips) {
			const auto p = parse_plaquette(f);
			if(!spec.contains(p))
				throw LatticeError("plaquette " + f + " is outside the lattice");
			signs[p] = -signs[p];
		}
		model = gen_signed_toric(spec, signs);
	} else if(a.model == "ising") {
		model = gen_ising(spec, IsingParameters::uniform(spec, a.coupling, a.field));
	} else if(a.model == "zero") {
		model = gen_zero(spec);
	} else {
		const auto method = parse_random_method(a.method);
		if(!method)
			return fail(invalid, "unknown method '" + a.method + "'");
		model = gen_random(spec, a.seed, *method);
	}
	if(a.output.empty())
		std::cout << model_to_json(*model);
	else
		save_model(a.output, *model);
	return ok;
}

int run_check(const CheckArgs& a)
{
	const auto model = load_model(a.model);
	const auto report = check_commuting(model);
	std::cout << "lattice: " << model.spec().lx() << "x" << model.spec().ly() << " "
	          << to_string(model.spec().boundary()) << "\n";
	std::cout << "pairs checked: " << report.pairs_checked << "\n";
	for(const auto& p : model.spec().plaquettes()) {
		const Matrix proj = ground_space_projector(model.term(p));
		std::cout << "ground dim " << to_string(p) << ": " << std::llround(proj.trace().real()) << "\n";
	}
	if(!report.ok()) {
		print_violations(report);
		return noncommuting;
	}
	std::cout << "commuting: yes\n";
	return ok;
}

std::optional<double> resolve_threshold(std::optional<double> linear, std::optional<double> log2)
{
	if(linear) {
		if(!(*linear > 0.0))
			throw std::invalid_argument("--threshold must be positive");
		return std::log2(*linear);
	}
	return log2;
}

void print_omega(const OmegaResult& omega)
{
	if(omega.zero_sandwich)
		std::cout << "vanishing slice: " << to_string(*omega.zero_sandwich) << "\n";
	for(const auto& f : omega.factors) {
		if(f.kind == OmegaFactor::Kind::FreeQubits)
			std::cout << "factor " << to_string(f.kind) << " " << f.id << ": log2 " << f.log2_value << "\n";
		else
			std::cout << "factor " << to_string(f.kind) << " " << f.id << ": " << f.value << " (log2 "
			          << f.log2_value << ")\n";
	}
	if(omega.zero)
		std::cout << "omega: 0\n";
	else
		std::printf("log2 omega: %.12g\n", omega.log2_magnitude);
}

int run_verify(const VerifyArgs& a)
{
	const auto model = load_model(a.model);
	const auto cert = load_certificate(a.cert, model.spec());
	const auto threshold = resolve_threshold(a.threshold, a.log2_threshold);
	const PreparedModel prep(model);
	Verdict verdict;
	try {
		verdict = verify(prep, cert, threshold);
	} catch(const CertificateError& e) {
		return fail(invalid, e.what());
	}
	print_omega(verdict.omega);
	std::cout << "log2 threshold: " << verdict.log2_threshold << "\n";
	std::cout << (verdict.accept ? "accept" : "reject") << "\n";
	return verdict.accept ? ok : rejected;
}

int run_prove(const ProveArgs& a)
{
	if(a.exhaustive == a.greedy)
		return fail(invalid, "choose exactly one of --exhaustive and --greedy");
	const auto model = load_model(a.model);
	const PreparedModel prep(model);
	const double threshold = a.log2_threshold.value_or(default_log2_threshold(prep.num_qubits()));
	std::cout << "labels: " << prep.space().num_labels() << "\n";

	std::optional<SearchResult> found;
	if(a.exhaustive) {
		try {
			found = exhaustive_search(prep, a.max_labels);
		} catch(const CapExceeded& e) {
			return fail(invalid, e.what());
		}
	} else {
		found = greedy_search(prep, {a.seed, a.restarts, 64, threshold});
	}
	if(!found || found->omega.zero || found->omega.log2_magnitude < threshold) {
		std::cout << "no accepting certificate found\n";
		return rejected;
	}
	std::printf("log2 omega: %.12g\n", found->omega.log2_magnitude);
	std::cout << "evaluated: " << found->evaluated << "\n";
	if(a.output.empty())
		std::cout << certificate_to_json(found->certificate, prep.spec());
	else
		save_certificate(a.output, found->certificate, prep.spec());
	return ok;
}

int run_oracle(const OracleArgs& a)
{
	const auto model = load_model(a.model);
	if(model.num_qubits() > a.max_qubits)
		return fail(invalid, "model has " + std::to_string(model.num_qubits()) + " qubits, oracle cap is " +
		                         std::to_string(a.max_qubits));
	const PreparedModel prep(model);
	const double total = total_overlap(prep.projectors(), a.max_qubits);
	const double residual = integrality_residual(total);
	const bool integral = residual <= integrality_tol && total > -integrality_tol;
	std::printf("tr[Pi_B Pi_W]: %.12g\n", total);
	std::cout << "integrality: " << (integral ? "pass" : "fail") << " (residual " << residual << ")\n";
	try {
		std::cout << "ground dim: " << ground_dim(model, a.max_qubits) << "\n";
	} catch(const IntegralityError& e) {
		std::cout << "ground dim: " << e.what() << "\n";
	}
	bool pass = integral;
	if(a.sum_check) {
		CertificateSum sum;
		try {
			sum = certificate_sum(prep, OmegaRoute::Chain, a.max_labels);
		} catch(const CapExceeded& e) {
			return fail(invalid, e.what());
		}
		std::printf("sum omega: %.12g over %llu certificates\n", sum.sum,
		            static_cast<unsigned long long>(sum.certificates));
		std::cout << "sum identity: " << (sum.matches ? "pass" : "fail") << "\n";
		pass = pass && sum.matches;
	}
	return pass ? ok : rejected;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Verifier, prover and exact oracle for commuting plaquette Hamiltonians on qubit lattices"};
	app.require_subcommand(1);

	GenArgs gen;
	auto* g = app.add_subcommand("gen", "Write a model file");
	g->add_option("--model", gen.model)->check(CLI::IsMember({"toric", "ising", "zero", "random"}));
	g->add_option("--method", gen.method, "rotated-classical, signed-toric or diagonal-field")
	    ->check(CLI::IsMember({"rotated-classical", "signed-toric", "diagonal-field"}));
	g->add_option("--lx", gen.lx);
	g->add_option("--ly", gen.ly);
	g->add_option("--boundary", gen.boundary)->check(CLI::IsMember({"open", "periodic"}));
	g->add_option("--seed", gen.seed);
	g->add_option("--coupling", gen.coupling, "Ising coupling J");
	g->add_option("--field", gen.field, "Ising field f");
	g->add_option("--flip", gen.flips, "toric plaquette x,y whose sign is flipped");
	g->add_option("-o,--output", gen.output);

	CheckArgs check;
	auto* c = app.add_subcommand("check", "Check pairwise commutation of a model");
	c->add_option("model", check.model)->required();

	VerifyArgs ver;
	auto* v = app.add_subcommand("verify", "Verify a certificate");
	v->add_option("model", ver.model)->required();
	v->add_option("certificate", ver.cert)->required();
	auto* thr = v->add_option("--threshold", ver.threshold, "acceptance threshold on Omega");
	v->add_option("--log2-threshold", ver.log2_threshold, "acceptance threshold on log2 Omega")->excludes(thr);

	ProveArgs prove;
	auto* p = app.add_subcommand("prove", "Search for an accepting certificate");
	p->add_option("model", prove.model)->required();
	p->add_flag("--exhaustive", prove.exhaustive);
	p->add_flag("--greedy", prove.greedy);
	p->add_option("--seed", prove.seed);
	p->add_option("--restarts", prove.restarts);
	p->add_option("--max-labels", prove.max_labels);
	p->add_option("--log2-threshold", prove.log2_threshold);
	p->add_option("-o,--output", prove.output);

	OracleArgs oracle;
	auto* o = app.add_subcommand("oracle", "Brute-force overlap audit");
	o->add_option("model", oracle.model)->required();
	o->add_flag("--sum-check", oracle.sum_check, "also sum Omega over every certificate");
	o->add_option("--max-qubits", oracle.max_qubits);
	o->add_option("--max-labels", oracle.max_labels);

	try {
		app.parse(argc, argv);
	} catch(const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? ok : invalid;
	}

	try {
		if(*g)
			return run_gen(gen);
		if(*c)
			return run_check(check);
		if(*v)
			return run_verify(ver);
		if(*p)
			return run_prove(prove);
		return run_oracle(oracle);
	} catch(const NonCommutingError& e) {
		print_violations(e.report());
		return fail(noncommuting, e.what());
	} catch(const DecompositionError& e) {
		return fail(noncommuting, e.what());
	} catch(const FormatError& e) {
		return fail(invalid, e.what());
	} catch(const CertificateError& e) {
		return fail(invalid, e.what());
	} catch(const CapExceeded& e) {
		return fail(invalid, e.what());
	} catch(const std::invalid_argument& e) {
		return fail(invalid, e.what());
	} catch(const std::exception& e) {
		return fail(invalid, e.what());
	}
}
