#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace commham {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using QubitState = Eigen::Vector2cd;

class LinalgError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// A dense operator on a set of labelled qubits.  labels[0] is the most
// significant bit of the basis index; dim == 2^labels.size().
struct LabeledOperator {
	Matrix matrix;
	std::vector<int> labels;

	LabeledOperator() = default;
	LabeledOperator(Matrix m, std::vector<int> l);

	int num_qubits() const { return static_cast<int>(labels.size()); }
	Eigen::Index dim() const { return matrix.rows(); }
};

Matrix pauli_i();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::span<const Matrix> factors);
Matrix projector(const QubitState& psi);
double frobenius(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);

struct EigenSystem {
	Eigen::VectorXd values; // ascending
	Matrix vectors;         // columns
};

// Throws LinalgError when m is not Hermitian within tol (Frobenius).
EigenSystem herm_eig(const Matrix& m, double tol = 1e-10);

// Projector onto the eigenvectors whose eigenvalue lies within
// gap_tol * (lambda_max - lambda_min + 1) of lambda_min.
Matrix ground_space_projector(const Matrix& h, double gap_tol = 1e-9);

struct SchmidtTerm {
	Matrix rest; // on OperatorSchmidt::rest_labels
	Matrix site; // 2x2 on the split qubit, unit Frobenius norm
};

// m = sum_i rest_i (x) site_i, with the split qubit moved to the least
// significant position.  Terms are pairwise trace-orthogonal on both sides.
struct OperatorSchmidt {
	std::vector<int> rest_labels;
	int site_label = -1;
	std::vector<SchmidtTerm> terms;

	int rank() const { return static_cast<int>(terms.size()); }
	// Reassembled operator in the original label order.
	LabeledOperator reconstruct(std::span<const int> original_labels) const;
};

OperatorSchmidt operator_schmidt(const LabeledOperator& m, int split_label, double rank_tol = 1e-10);

enum class AlgebraKind { Trivial, Abelian, Full };

// Unital *-algebra generated by a set of single-qubit operators.  For
// Abelian, basis holds the two common eigenstates: each phased so its first
// non-negligible amplitude is real positive, ordered by larger |<0|psi>|,
// then larger Re<1|psi>, then larger Im<1|psi>.
struct AlgebraClass {
	AlgebraKind kind = AlgebraKind::Trivial;
	int dimension = 1;
	std::array<QubitState, 2> basis{};
};

AlgebraClass algebra_classify(std::span<const Matrix> ops, double tol = 1e-9,
                              std::uint64_t seed = 0x5eedULL);

// Eigenbasis of a generic Hermitian element of the span of ops.  Used when
// ops are known to generate an abelian algebra.
std::array<QubitState, 2> common_eigenbasis(std::span<const Matrix> ops, std::uint64_t seed = 0x5eedULL);
void canonicalize_basis(std::array<QubitState, 2>& basis);

// Traces out every qubit not in keep.  Output labels follow the input order.
LabeledOperator partial_trace(const LabeledOperator& m, std::span<const int> keep);

// <psi| m |psi> on the given qubit, leaving an operator on the other labels.
LabeledOperator contract_site(const LabeledOperator& m, int label, const QubitState& psi);

// (|psi><psi| (x) 1) m (|psi><psi| (x) 1).
Matrix sandwich_site(const LabeledOperator& m, int label, const QubitState& psi);

// The identity-padded embedding of op onto target labels (a superset).
Matrix embed(const LabeledOperator& op, std::span<const int> target_labels);

// Union of label sets in order of first appearance.
std::vector<int> label_union(std::span<const LabeledOperator> ops);

// Frobenius norm of ab - ba on the union of both label sets.
double commutator_norm(const LabeledOperator& a, const LabeledOperator& b);

class CapExceeded : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

inline constexpr int default_qubit_cap = 22;

// tr[op_0 op_1 ... op_k] with every operator padded by identities on the
// union of all labels.  Evaluated by streaming basis vectors through the
// operators, so the memory cost is O(2^n) rather than O(4^n).
Complex trace_product_embedded(std::span<const LabeledOperator> ops, int max_qubits = default_qubit_cap);

} // namespace commham
