#include "commham/oracle.hpp"

#include <cmath>
#include <string>

namespace commham {

namespace {

std::vector<int> all_labels(const LatticeSpec& spec)
{
	std::vector<int> labels(static_cast<std::size_t>(spec.num_vertices()));
	for(int v = 0; v < spec.num_vertices(); ++v)
		labels[static_cast<std::size_t>(v)] = v;
	return labels;
}

std::vector<int> corner_vector(const LatticeSpec& spec, const PlaquetteId& p)
{
	const auto c = spec.corner_labels(p);
	return {c.begin(), c.end()};
}

} // namespace

SparseOperatorProgram plaquette_program(const LatticeSpec& spec, const std::vector<LabeledOperator>& ops,
                                        int max_qubits)
{
	SparseOperatorProgram program(all_labels(spec), max_qubits);
	for(const auto& op : ops)
		program.push_back(op);
	return program;
}

double total_overlap(const GroundProjectors& proj, int max_qubits)
{
	std::vector<LabeledOperator> ops;
	for(auto color : {Color::Black, Color::White})
		for(const auto& p : proj.spec().plaquettes(color))
			ops.push_back(proj.labeled(p));
	return plaquette_program(proj.spec(), ops, max_qubits).trace().real();
}

double total_overlap(const CommutingModel& model, int max_qubits)
{
	if(model.num_qubits() > max_qubits)
		throw CapExceeded("model has " + std::to_string(model.num_qubits()) + " qubits, cap is " +
		                  std::to_string(max_qubits));
	return total_overlap(ground_projectors(model), max_qubits);
}

double integrality_residual(double value) { return std::abs(value - std::round(value)); }

std::int64_t ground_dim(const CommutingModel& model, int max_qubits)
{
	if(model.num_qubits() > max_qubits)
		throw CapExceeded("model has " + std::to_string(model.num_qubits()) + " qubits, cap is " +
		                  std::to_string(max_qubits));
	const auto proj = ground_projectors(model);
	std::vector<LabeledOperator> ops;
	for(const auto& p : model.spec().plaquettes())
		ops.push_back(proj.labeled(p));
	const double value = plaquette_program(model.spec(), ops, max_qubits).trace().real();
	if(integrality_residual(value) > integrality_tol)
		throw IntegralityError("tr[Pi_GS] = " + std::to_string(value) + " is not an integer");
	return static_cast<std::int64_t>(std::llround(value));
}

double dense_omega(const PreparedModel& prep, const Certificate& cert, int max_qubits)
{
	if(prep.num_qubits() > max_qubits)
		throw CapExceeded("dense evaluation limited to " + std::to_string(max_qubits) + " qubits");
	const auto sliced = apply_certificate(prep, cert);
	if(sliced.zero())
		return 0.0;
	std::vector<LabeledOperator> ops;
	for(const auto* layer : {&sliced.black, &sliced.white})
		for(const auto& [p, m] : layer->projectors)
			ops.emplace_back(m, corner_vector(prep.spec(), p));
	return plaquette_program(prep.spec(), ops, max_qubits).trace().real();
}

Certificate certificate_at(const CertificateSpace& space, std::uint64_t index)
{
	Certificate c;
	int bit = space.num_labels() - 1;
	for(int v : space.black_labels)
		c.alpha[v] = static_cast<int>((index >> bit--) & 1);
	for(int v : space.white_labels)
		c.beta[v] = static_cast<int>((index >> bit--) & 1);
	return c;
}

CertificateSum certificate_sum(const PreparedModel& prep, OmegaRoute route, int max_labels)
{
	const auto& space = prep.space();
	if(space.num_labels() > max_labels)
		throw CapExceeded("certificate space has 2^" + std::to_string(space.num_labels()) +
		                  " elements, cap is 2^" + std::to_string(max_labels));
	CertificateSum out;
	out.total_overlap = total_overlap(prep.projectors());
	out.certificates = std::uint64_t{1} << space.num_labels();

	const auto nwhite = static_cast<int>(space.white_labels.size());
	const std::uint64_t white_count = std::uint64_t{1} << nwhite;
	for(std::uint64_t black = 0; black < (std::uint64_t{1} << space.black_labels.size()); ++black) {
		const Certificate black_only = certificate_at(space, black << nwhite);
		SlicedProjectors sliced;
		sliced.black = slice_layer(prep, Color::Black, black_only.alpha);
		if(sliced.black.zero())
			continue;
		for(std::uint64_t white = 0; white < white_count; ++white) {
			const std::uint64_t index = (black << nwhite) | white;
			const Certificate cert = certificate_at(space, index);
			double omega = 0.0;
			if(route == OmegaRoute::Dense) {
				omega = dense_omega(prep, cert);
			} else {
				sliced.white = slice_layer(prep, Color::White, cert.beta);
				omega = omega_from_sliced(prep, sliced, cert).value();
			}
			if(omega != 0.0) {
				out.sum += omega;
				out.table.emplace_back(index, omega);
			}
		}
	}
	out.matches = std::abs(out.sum - out.total_overlap) <= sum_identity_tol;
	return out;
}

} // namespace commham
