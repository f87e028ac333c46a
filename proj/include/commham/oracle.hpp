#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "commham/model.hpp"
#include "commham/operator_program.hpp"
#include "commham/verifier.hpp"

namespace commham {

// Brute-force reference values on the full 2^N-dimensional register.

using SparseOperatorProgram = OperatorProgram;

inline constexpr double integrality_tol = 1e-6;
inline constexpr double sum_identity_tol = 1e-8;
inline constexpr int dense_qubit_cap = 12;
inline constexpr int sum_label_cap = 24;

class IntegralityError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Program applying the given plaquette operators in order to a register
// holding every vertex of spec.
SparseOperatorProgram plaquette_program(const LatticeSpec& spec, const std::vector<LabeledOperator>& ops,
                                        int max_qubits = default_qubit_cap);

// tr[Pi_B Pi_W].
double total_overlap(const CommutingModel& model, int max_qubits = default_qubit_cap);
double total_overlap(const GroundProjectors& proj, int max_qubits = default_qubit_cap);

// Distance from the nearest integer.
double integrality_residual(double value);

// tr[prod_p Pi_p]; throws IntegralityError when the trace is further than
// integrality_tol from an integer.
std::int64_t ground_dim(const CommutingModel& model, int max_qubits = default_qubit_cap);

// Omega evaluated as tr[prod of all sliced plaquette operators], black
// first, with each operator padded by identities on the full register.
double dense_omega(const PreparedModel& prep, const Certificate& cert, int max_qubits = dense_qubit_cap);

// The certificate at position `index` in lexicographic order over
// (alpha, beta): black labels outermost, lower vertex labels more
// significant.
Certificate certificate_at(const CertificateSpace& space, std::uint64_t index);

enum class OmegaRoute { Chain, Dense };

struct CertificateSum {
	double sum = 0.0;
	double total_overlap = 0.0;
	bool matches = false;
	std::uint64_t certificates = 0;
	// Nonzero terms only: (lexicographic index, Omega).
	std::vector<std::pair<std::uint64_t, double>> table;
};

// Sum of Omega over the whole certificate space compared against
// tr[Pi_B Pi_W].  Throws CapExceeded for more than max_labels labels.
CertificateSum certificate_sum(const PreparedModel& prep, OmegaRoute route = OmegaRoute::Chain,
                               int max_labels = sum_label_cap);

} // namespace commham
