#include "commham/linalg.hpp"

#include <algorithm>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "commham/operator_program.hpp"

namespace commham {

namespace {

int position_of(std::span<const int> labels, int label)
{
	const auto it = std::find(labels.begin(), labels.end(), label);
	if(it == labels.end())
		throw LinalgError("unknown qubit label " + std::to_string(label));
	return static_cast<int>(it - labels.begin());
}

// Bit (from the least significant end) that holds qubit position pos of an
// n-qubit index.
constexpr int bit_of(int n, int pos) { return n - 1 - pos; }

// Compose an index of an n-qubit register from the bits of `sub` placed at
// the given positions (MSB first) and `rest` filling the remaining positions.
std::uint64_t scatter_bits(std::uint64_t sub, std::span<const int> positions, int n)
{
	const int m = static_cast<int>(positions.size());
	std::uint64_t out = 0;
	for(int k = 0; k < m; ++k)
		if((sub >> (m - 1 - k)) & 1)
			out |= std::uint64_t{1} << bit_of(n, positions[k]);
	return out;
}

// Gram-Schmidt over vectorized 2x2 matrices.
struct SpanBuilder {
	std::vector<Eigen::Vector4cd> basis;
	double tol;

	bool add(const Matrix& m)
	{
		Eigen::Vector4cd v(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
		const double norm = v.norm();
		if(norm == 0.0)
			return false;
		v /= norm;
		for(const auto& b : basis)
			v -= b.dot(v) * b;
		const double residual = v.norm();
		if(residual <= tol)
			return false;
		basis.push_back(v / residual);
		return true;
	}

	static Matrix unvec(const Eigen::Vector4cd& v)
	{
		Matrix m(2, 2);
		m << v(0), v(1), v(2), v(3);
		return m;
	}
};

} // namespace

LabeledOperator::LabeledOperator(Matrix m, std::vector<int> l) : matrix{std::move(m)}, labels{std::move(l)}
{
	if(matrix.rows() != matrix.cols() || matrix.rows() != (Eigen::Index{1} << labels.size()))
		throw LinalgError("operator dimension does not match its " + std::to_string(labels.size()) + " labels");
	auto sorted = labels;
	std::sort(sorted.begin(), sorted.end());
	if(std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
		throw LinalgError("duplicate qubit label");
}

Matrix pauli_i() { return Matrix::Identity(2, 2); }

Matrix pauli_x()
{
	Matrix m(2, 2);
	m << 0.0, 1.0, 1.0, 0.0;
	return m;
}

Matrix pauli_y()
{
	Matrix m(2, 2);
	m << Complex{0.0, 0.0}, Complex{0.0, -1.0}, Complex{0.0, 1.0}, Complex{0.0, 0.0};
	return m;
}

Matrix pauli_z()
{
	Matrix m(2, 2);
	m << 1.0, 0.0, 0.0, -1.0;
	return m;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
	Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
	for(Eigen::Index i = 0; i < a.rows(); ++i)
		for(Eigen::Index j = 0; j < a.cols(); ++j)
			out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
	return out;
}

Matrix kron(std::span<const Matrix> factors)
{
	Matrix out = Matrix::Identity(1, 1);
	for(const auto& f : factors)
		out = kron(out, f);
	return out;
}

Matrix projector(const QubitState& psi) { return psi * psi.adjoint(); }

double frobenius(const Matrix& m) { return m.norm(); }

bool is_hermitian(const Matrix& m, double tol)
{
	return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

EigenSystem herm_eig(const Matrix& m, double tol)
{
	if(!is_hermitian(m, tol))
		throw LinalgError("herm_eig: matrix is not Hermitian");
	const Matrix sym = 0.5 * (m + m.adjoint());
	Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
	if(es.info() != Eigen::Success)
		throw LinalgError("herm_eig: eigensolver failed");
	return {es.eigenvalues(), es.eigenvectors()};
}

Matrix ground_space_projector(const Matrix& h, double gap_tol)
{
	const auto es = herm_eig(h);
	const double lo = es.values(0);
	const double hi = es.values(es.values.size() - 1);
	const double band = gap_tol * (hi - lo + 1.0);
	Matrix p = Matrix::Zero(h.rows(), h.cols());
	for(Eigen::Index k = 0; k < es.values.size() && es.values(k) <= lo + band; ++k)
		p += es.vectors.col(k) * es.vectors.col(k).adjoint();
	return p;
}

LabeledOperator OperatorSchmidt::reconstruct(std::span<const int> original_labels) const
{
	std::vector<int> labels = rest_labels;
	labels.push_back(site_label);
	const Eigen::Index dim = Eigen::Index{1} << labels.size();
	Matrix sum = Matrix::Zero(dim, dim);
	for(const auto& t : terms)
		sum += kron(t.rest, t.site);
	const LabeledOperator site_last(sum, labels);
	std::vector<int> target(original_labels.begin(), original_labels.end());
	return {embed(site_last, target), target};
}

OperatorSchmidt operator_schmidt(const LabeledOperator& m, int split_label, double rank_tol)
{
	const int n = m.num_qubits();
	const int pos = position_of(m.labels, split_label);
	OperatorSchmidt out;
	out.site_label = split_label;
	std::vector<int> rest_positions;
	for(int k = 0; k < n; ++k) {
		if(k != pos) {
			out.rest_labels.push_back(m.labels[k]);
			rest_positions.push_back(k);
		}
	}
	const Eigen::Index rdim = Eigen::Index{1} << (n - 1);
	const std::uint64_t site_bit = std::uint64_t{1} << bit_of(n, pos);

	// Realignment: R[(a,a'),(s,s')] = m[(a,s),(a',s')].
	Matrix realigned(rdim * rdim, 4);
	for(Eigen::Index a = 0; a < rdim; ++a) {
		const auto ia = scatter_bits(a, rest_positions, n);
		for(Eigen::Index ap = 0; ap < rdim; ++ap) {
			const auto iap = scatter_bits(ap, rest_positions, n);
			for(int s = 0; s < 2; ++s)
				for(int sp = 0; sp < 2; ++sp)
					realigned(a * rdim + ap, s * 2 + sp) =
					    m.matrix(ia | (s ? site_bit : 0), iap | (sp ? site_bit : 0));
		}
	}

	Eigen::JacobiSVD<Matrix> svd(realigned, Eigen::ComputeThinU | Eigen::ComputeThinV);
	const auto& sv = svd.singularValues();
	if(sv.size() == 0 || sv(0) == 0.0)
		return out;
	for(Eigen::Index k = 0; k < sv.size(); ++k) {
		if(sv(k) <= rank_tol * sv(0))
			break;
		SchmidtTerm t;
		t.rest.resize(rdim, rdim);
		for(Eigen::Index a = 0; a < rdim; ++a)
			for(Eigen::Index ap = 0; ap < rdim; ++ap)
				t.rest(a, ap) = sv(k) * svd.matrixU()(a * rdim + ap, k);
		t.site.resize(2, 2);
		for(int s = 0; s < 2; ++s)
			for(int sp = 0; sp < 2; ++sp)
				t.site(s, sp) = std::conj(svd.matrixV()(s * 2 + sp, k));
		out.terms.push_back(std::move(t));
	}
	return out;
}

void canonicalize_basis(std::array<QubitState, 2>& basis)
{
	constexpr double eps = 1e-12;
	constexpr double order_tol = 1e-9;
	for(auto& v : basis) {
		v.normalize();
		for(int k = 0; k < 2; ++k) {
			if(std::abs(v(k)) > eps) {
				v *= std::conj(v(k)) / std::abs(v(k));
				v(k) = std::abs(v(k));
				break;
			}
		}
	}
	auto before = [&](const QubitState& a, const QubitState& b) {
		const double a0 = std::abs(a(0)), b0 = std::abs(b(0));
		if(std::abs(a0 - b0) > order_tol)
			return a0 > b0;
		if(std::abs(a(1).real() - b(1).real()) > order_tol)
			return a(1).real() > b(1).real();
		return a(1).imag() > b(1).imag();
	};
	if(before(basis[1], basis[0]))
		std::swap(basis[0], basis[1]);
}

std::array<QubitState, 2> common_eigenbasis(std::span<const Matrix> ops, std::uint64_t seed)
{
	std::vector<Matrix> hermitian;
	for(const auto& op : ops) {
		hermitian.push_back(0.5 * (op + op.adjoint()));
		hermitian.push_back(Complex{0.0, -0.5} * (op - op.adjoint()));
	}
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> coeff(-1.0, 1.0);
	constexpr int max_draws = 64;
	for(int draw = 0; draw < max_draws; ++draw) {
		Matrix combo = Matrix::Zero(2, 2);
		for(const auto& h : hermitian)
			combo += coeff(rng) * h;
		const auto es = herm_eig(combo, 1e-8);
		if(es.values(1) - es.values(0) < 1e-8)
			continue;
		std::array<QubitState, 2> basis{es.vectors.col(0), es.vectors.col(1)};
		canonicalize_basis(basis);
		return basis;
	}
	throw LinalgError("common_eigenbasis: operators span only scalars");
}

AlgebraClass algebra_classify(std::span<const Matrix> ops, double tol, std::uint64_t seed)
{
	SpanBuilder span{{}, tol};
	span.add(pauli_i());
	for(const auto& op : ops) {
		if(op.rows() != 2 || op.cols() != 2)
			throw LinalgError("algebra_classify expects single-qubit operators");
		span.add(op);
		span.add(op.adjoint());
	}
	// Close under products; the span of a unital *-subalgebra of M_2 has
	// dimension 1, 2 or 4.
	bool grew = true;
	while(grew && span.basis.size() < 4) {
		grew = false;
		const auto snapshot = span.basis;
		for(const auto& a : snapshot)
			for(const auto& b : snapshot)
				if(span.basis.size() < 4 && span.add(SpanBuilder::unvec(a) * SpanBuilder::unvec(b)))
					grew = true;
	}

	AlgebraClass out;
	out.dimension = static_cast<int>(span.basis.size());
	if(out.dimension == 1) {
		out.kind = AlgebraKind::Trivial;
		out.basis = {QubitState(1.0, 0.0), QubitState(0.0, 1.0)};
	} else if(out.dimension == 2) {
		out.kind = AlgebraKind::Abelian;
		std::vector<Matrix> generators;
		for(const auto& b : span.basis)
			generators.push_back(SpanBuilder::unvec(b));
		out.basis = common_eigenbasis(generators, seed);
	} else {
		out.kind = AlgebraKind::Full;
		out.dimension = 4;
		out.basis = {QubitState(1.0, 0.0), QubitState(0.0, 1.0)};
	}
	return out;
}

LabeledOperator partial_trace(const LabeledOperator& m, std::span<const int> keep)
{
	const int n = m.num_qubits();
	for(int label : keep)
		position_of(m.labels, label);
	std::vector<int> keep_positions, traced_positions;
	std::vector<int> out_labels;
	for(int k = 0; k < n; ++k) {
		if(std::find(keep.begin(), keep.end(), m.labels[k]) != keep.end()) {
			keep_positions.push_back(k);
			out_labels.push_back(m.labels[k]);
		} else {
			traced_positions.push_back(k);
		}
	}
	const std::uint64_t kdim = std::uint64_t{1} << keep_positions.size();
	const std::uint64_t tdim = std::uint64_t{1} << traced_positions.size();
	Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(kdim));
	for(std::uint64_t t = 0; t < tdim; ++t) {
		const auto it = scatter_bits(t, traced_positions, n);
		for(std::uint64_t i = 0; i < kdim; ++i) {
			const auto ii = scatter_bits(i, keep_positions, n) | it;
			for(std::uint64_t j = 0; j < kdim; ++j) {
				const auto jj = scatter_bits(j, keep_positions, n) | it;
				out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
				    m.matrix(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj));
			}
		}
	}
	return {std::move(out), std::move(out_labels)};
}

LabeledOperator contract_site(const LabeledOperator& m, int label, const QubitState& psi)
{
	const int n = m.num_qubits();
	const int pos = position_of(m.labels, label);
	std::vector<int> rest_positions, out_labels;
	for(int k = 0; k < n; ++k) {
		if(k != pos) {
			rest_positions.push_back(k);
			out_labels.push_back(m.labels[k]);
		}
	}
	const std::uint64_t site_bit = std::uint64_t{1} << bit_of(n, pos);
	const Eigen::Index rdim = Eigen::Index{1} << (n - 1);
	Matrix out = Matrix::Zero(rdim, rdim);
	for(Eigen::Index a = 0; a < rdim; ++a) {
		const auto ia = scatter_bits(a, rest_positions, n);
		for(Eigen::Index b = 0; b < rdim; ++b) {
			const auto ib = scatter_bits(b, rest_positions, n);
			Complex sum{};
			for(int s = 0; s < 2; ++s)
				for(int t = 0; t < 2; ++t)
					sum += std::conj(psi(s)) * psi(t) * m.matrix(ia | (s ? site_bit : 0), ib | (t ? site_bit : 0));
			out(a, b) = sum;
		}
	}
	return {std::move(out), std::move(out_labels)};
}

Matrix sandwich_site(const LabeledOperator& m, int label, const QubitState& psi)
{
	std::vector<int> site{label};
	const Matrix p = embed(LabeledOperator(projector(psi), site), m.labels);
	return p * m.matrix * p;
}

Matrix embed(const LabeledOperator& op, std::span<const int> target_labels)
{
	const int n = static_cast<int>(target_labels.size());
	std::vector<int> positions;
	for(int label : op.labels)
		positions.push_back(position_of(target_labels, label));
	std::vector<int> rest_positions;
	for(int k = 0; k < n; ++k)
		if(std::find(positions.begin(), positions.end(), k) == positions.end())
			rest_positions.push_back(k);
	const Eigen::Index dim = Eigen::Index{1} << n;
	const std::uint64_t ldim = std::uint64_t{1} << positions.size();
	const std::uint64_t rdim = std::uint64_t{1} << rest_positions.size();
	std::vector<std::uint64_t> local(ldim);
	for(std::uint64_t l = 0; l < ldim; ++l)
		local[l] = scatter_bits(l, positions, n);
	Matrix out = Matrix::Zero(dim, dim);
	for(std::uint64_t r = 0; r < rdim; ++r) {
		const auto ir = scatter_bits(r, rest_positions, n);
		for(std::uint64_t a = 0; a < ldim; ++a)
			for(std::uint64_t b = 0; b < ldim; ++b)
				out(static_cast<Eigen::Index>(ir | local[a]), static_cast<Eigen::Index>(ir | local[b])) =
				    op.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
	}
	return out;
}

std::vector<int> label_union(std::span<const LabeledOperator> ops)
{
	std::vector<int> out;
	for(const auto& op : ops)
		for(int label : op.labels)
			if(std::find(out.begin(), out.end(), label) == out.end())
				out.push_back(label);
	return out;
}

double commutator_norm(const LabeledOperator& a, const LabeledOperator& b)
{
	// With a = A (x) 1 and b = 1 (x) B overlapping on the shared qubits c:
	//   (ab)[i,j] = sum_c'' A[(a_i,c_i),(a_j,c'')] B[(c'',b_i),(c_j,b_j)]
	//   (ba)[i,j] = sum_c'' B[(c_i,b_i),(c'',b_j)] A[(a_i,c''),(a_j,c_j)]
	const std::array<LabeledOperator, 2> pair{a, b};
	const auto labels = label_union(pair);
	const int n = static_cast<int>(labels.size());
	std::vector<int> shared;
	for(int label : a.labels)
		if(std::find(b.labels.begin(), b.labels.end(), label) != b.labels.end())
			shared.push_back(label);
	if(shared.empty())
		return 0.0;

	auto local_index = [&](const LabeledOperator& op, std::uint64_t global) {
		std::uint64_t out = 0;
		for(int label : op.labels)
			out = (out << 1) | ((global >> bit_of(n, position_of(labels, label))) & 1);
		return out;
	};
	auto shared_mask_and_offsets = [&](const LabeledOperator& op) {
		const int m = op.num_qubits();
		std::uint64_t mask = 0;
		std::vector<std::uint64_t> offsets(std::size_t{1} << shared.size(), 0);
		for(std::size_t s = 0; s < shared.size(); ++s) {
			const int bit = bit_of(m, position_of(op.labels, shared[s]));
			mask |= std::uint64_t{1} << bit;
			for(std::uint64_t c = 0; c < offsets.size(); ++c)
				if((c >> (shared.size() - 1 - s)) & 1)
					offsets[c] |= std::uint64_t{1} << bit;
		}
		return std::pair{mask, offsets};
	};

	const std::uint64_t dim = std::uint64_t{1} << n;
	std::vector<std::uint64_t> ai(dim), bi(dim);
	for(std::uint64_t i = 0; i < dim; ++i) {
		ai[i] = local_index(a, i);
		bi[i] = local_index(b, i);
	}
	const auto [mask_a, off_a] = shared_mask_and_offsets(a);
	const auto [mask_b, off_b] = shared_mask_and_offsets(b);

	double sum_sq = 0.0;
	for(std::uint64_t i = 0; i < dim; ++i) {
		for(std::uint64_t j = 0; j < dim; ++j) {
			Complex ab{}, ba{};
			for(std::size_t c = 0; c < off_a.size(); ++c) {
				const auto ac_i = static_cast<Eigen::Index>((ai[i] & ~mask_a) | off_a[c]);
				const auto ac_j = static_cast<Eigen::Index>((ai[j] & ~mask_a) | off_a[c]);
				const auto bc_i = static_cast<Eigen::Index>((bi[i] & ~mask_b) | off_b[c]);
				const auto bc_j = static_cast<Eigen::Index>((bi[j] & ~mask_b) | off_b[c]);
				ab += a.matrix(static_cast<Eigen::Index>(ai[i]), ac_j) *
				      b.matrix(bc_i, static_cast<Eigen::Index>(bi[j]));
				ba += b.matrix(static_cast<Eigen::Index>(bi[i]), bc_j) *
				      a.matrix(ac_i, static_cast<Eigen::Index>(ai[j]));
			}
			sum_sq += std::norm(ab - ba);
		}
	}
	return std::sqrt(sum_sq);
}

Complex trace_product_embedded(std::span<const LabeledOperator> ops, int max_qubits)
{
	OperatorProgram program(label_union(ops), max_qubits);
	for(const auto& op : ops)
		program.push_back(op);
	return program.trace();
}

} // namespace commham
