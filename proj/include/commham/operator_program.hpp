#pragma once

#include <cstdint>
#include <vector>

#include "commham/linalg.hpp"

namespace commham {

// Ordered list of local operators acting on a register of n qubits, applied
// to full-space vectors one local operator at a time.  Vectors are stored
// densely with a list of touched indices, so states that stay sparse under
// the program (diagonal or monomial terms) cost only their support.
class OperatorProgram {
public:
	// Qubit labels are mapped to register bits in the order given by
	// register_labels (first label = most significant bit).
	OperatorProgram(std::vector<int> register_labels, int max_qubits = default_qubit_cap);

	void push_back(const LabeledOperator& op);

	int num_qubits() const { return static_cast<int>(register_labels_.size()); }
	std::size_t size() const { return steps_.size(); }
	const std::vector<int>& register_labels() const { return register_labels_; }

	// tr[step_0 step_1 ... step_last] over the full register.
	Complex trace() const;

	// <i| step_0 ... step_last |i> for one basis index.
	Complex diagonal_element(std::uint64_t index) const;

	class Workspace;

private:
	struct Step {
		std::vector<std::uint64_t> local_offsets; // register bit pattern for each local index
		std::vector<int> bit_positions;           // register bit of each local qubit, MSB first
		std::uint64_t mask = 0;
		// Nonzero entries per column: (row, value).
		std::vector<std::vector<std::pair<int, Complex>>> columns;
	};

	Complex diagonal_element(std::uint64_t index, Workspace& ws) const;
	static void apply(const Step& step, Workspace& ws);

	std::vector<int> register_labels_;
	std::vector<Step> steps_;
};

class OperatorProgram::Workspace {
public:
	explicit Workspace(int num_qubits);

private:
	friend class OperatorProgram;
	struct Buffer {
		std::vector<Complex> amp;
		std::vector<std::uint64_t> support;
		std::vector<unsigned char> touched;
		void clear();
		void add(std::uint64_t index, Complex value);
	};
	Buffer in_;
	Buffer out_;
};

} // namespace commham
