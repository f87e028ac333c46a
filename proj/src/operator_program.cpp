#include "commham/operator_program.hpp"

#include <algorithm>
#include <string>

namespace commham {

OperatorProgram::OperatorProgram(std::vector<int> register_labels, int max_qubits)
    : register_labels_{std::move(register_labels)}
{
	if(num_qubits() > max_qubits)
		throw CapExceeded("register of " + std::to_string(num_qubits()) + " qubits exceeds cap of " +
		                  std::to_string(max_qubits));
}

void OperatorProgram::push_back(const LabeledOperator& op)
{
	const int n = num_qubits();
	const int m = op.num_qubits();
	Step step;
	step.bit_positions.resize(m);
	for(int k = 0; k < m; ++k) {
		const auto it = std::find(register_labels_.begin(), register_labels_.end(), op.labels[k]);
		if(it == register_labels_.end())
			throw LinalgError("operator label " + std::to_string(op.labels[k]) + " not in register");
		step.bit_positions[k] = n - 1 - static_cast<int>(it - register_labels_.begin());
		step.mask |= std::uint64_t{1} << step.bit_positions[k];
	}
	const int local_dim = 1 << m;
	step.local_offsets.resize(local_dim);
	for(int l = 0; l < local_dim; ++l) {
		std::uint64_t offset = 0;
		for(int k = 0; k < m; ++k)
			if((l >> (m - 1 - k)) & 1)
				offset |= std::uint64_t{1} << step.bit_positions[k];
		step.local_offsets[l] = offset;
	}
	step.columns.resize(local_dim);
	for(int col = 0; col < local_dim; ++col)
		for(int row = 0; row < local_dim; ++row)
			if(op.matrix(row, col) != Complex{0.0, 0.0})
				step.columns[col].emplace_back(row, op.matrix(row, col));
	steps_.push_back(std::move(step));
}

OperatorProgram::Workspace::Workspace(int num_qubits)
{
	const std::size_t dim = std::size_t{1} << num_qubits;
	for(Buffer* b : {&in_, &out_}) {
		b->amp.assign(dim, Complex{});
		b->touched.assign(dim, 0);
	}
}

void OperatorProgram::Workspace::Buffer::clear()
{
	for(auto idx : support) {
		amp[idx] = Complex{};
		touched[idx] = 0;
	}
	support.clear();
}

void OperatorProgram::Workspace::Buffer::add(std::uint64_t index, Complex value)
{
	if(!touched[index]) {
		touched[index] = 1;
		support.push_back(index);
	}
	amp[index] += value;
}

void OperatorProgram::apply(const Step& step, Workspace& ws)
{
	ws.out_.clear();
	const int m = static_cast<int>(step.bit_positions.size());
	for(auto idx : ws.in_.support) {
		const Complex a = ws.in_.amp[idx];
		if(a == Complex{})
			continue;
		int local = 0;
		for(int k = 0; k < m; ++k)
			local = (local << 1) | static_cast<int>((idx >> step.bit_positions[k]) & 1);
		const std::uint64_t rest = idx & ~step.mask;
		for(const auto& [row, value] : step.columns[local])
			ws.out_.add(rest | step.local_offsets[row], value * a);
	}
	std::swap(ws.in_, ws.out_);
}

Complex OperatorProgram::diagonal_element(std::uint64_t index, Workspace& ws) const
{
	ws.in_.clear();
	ws.in_.add(index, Complex{1.0, 0.0});
	for(auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
		apply(*it, ws);
		if(ws.in_.support.empty())
			return Complex{};
	}
	return ws.in_.amp[index];
}

Complex OperatorProgram::diagonal_element(std::uint64_t index) const
{
	Workspace ws(num_qubits());
	return diagonal_element(index, ws);
}

Complex OperatorProgram::trace() const
{
	Workspace ws(num_qubits());
	const std::uint64_t dim = std::uint64_t{1} << num_qubits();
	Complex sum{};
	for(std::uint64_t i = 0; i < dim; ++i)
		sum += diagonal_element(i, ws);
	return sum;
}

} // namespace commham
