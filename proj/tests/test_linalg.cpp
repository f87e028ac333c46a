#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "commham/linalg.hpp"
#include "support.hpp"

using namespace commham;
using namespace testing_support;

namespace {

Matrix kron4(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d)
{
	return kron(kron(a, b), kron(c, d));
}

} // namespace

TEST(Linalg, KronPutsFirstFactorOnMostSignificantBit)
{
	const Matrix m = kron(pauli_z(), pauli_i());
	EXPECT_NEAR(m(0, 0).real(), 1.0, 1e-15);
	EXPECT_NEAR(m(1, 1).real(), 1.0, 1e-15);
	EXPECT_NEAR(m(2, 2).real(), -1.0, 1e-15);
	EXPECT_NEAR(m(3, 3).real(), -1.0, 1e-15);
}

TEST(Linalg, HermEigPauliZ)
{
	const auto e = herm_eig(pauli_z());
	EXPECT_NEAR(e.values(0), -1.0, 1e-12);
	EXPECT_NEAR(e.values(1), 1.0, 1e-12);
	EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-12);
	EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-12);
}

TEST(Linalg, HermEigProjectorSpectrum)
{
	const Matrix p = (Matrix::Identity(4, 4) + kron(pauli_z(), pauli_z())) / 2.0;
	const auto e = herm_eig(p);
	EXPECT_NEAR(e.values(0), 0.0, 1e-12);
	EXPECT_NEAR(e.values(1), 0.0, 1e-12);
	EXPECT_NEAR(e.values(2), 1.0, 1e-12);
	EXPECT_NEAR(e.values(3), 1.0, 1e-12);
	EXPECT_THROW(herm_eig(pauli_z() * pauli_x()), LinalgError);
}

TEST(Linalg, GroundProjectorOfParityTerm)
{
	const Matrix z4 = kron4(pauli_z(), pauli_z(), pauli_z(), pauli_z());
	const Matrix expected = (Matrix::Identity(16, 16) + z4) / 2.0;
	EXPECT_LT((ground_space_projector(-z4) - expected).norm(), 1e-10);
	EXPECT_LT((ground_space_projector(Matrix::Zero(16, 16)) - Matrix::Identity(16, 16)).norm(), 1e-12);
}

TEST(Linalg, GroundProjectorIsIdempotentProperty)
{
	std::mt19937_64 rng(11);
	for(int trial = 0; trial < 20; ++trial) {
		const Matrix h = random_hermitian(16, rng);
		const Matrix p = ground_space_projector(h);
		EXPECT_LT((p * p - p).norm(), 1e-10);
		EXPECT_LT((p - p.adjoint()).norm(), 1e-10);
		EXPECT_LT((h * p - p * h).norm(), 1e-9);
		EXPECT_NEAR(p.trace().real(), 1.0, 1e-10);
	}
}

TEST(Linalg, SchmidtOfProduct)
{
	const LabeledOperator zz(kron(pauli_z(), pauli_z()), {4, 9});
	const auto s = operator_schmidt(zz, 9);
	ASSERT_EQ(s.rank(), 1);
	EXPECT_EQ(s.rest_labels, std::vector<int>{4});
	const Matrix site = s.terms[0].site;
	EXPECT_NEAR(std::abs((site.adjoint() * pauli_z()).trace()) / std::sqrt(2.0), 1.0, 1e-12);
}

TEST(Linalg, SchmidtOfParityProjectorHasRankTwo)
{
	const Matrix z4 = kron4(pauli_z(), pauli_z(), pauli_z(), pauli_z());
	const LabeledOperator p((Matrix::Identity(16, 16) + z4) / 2.0, {0, 1, 2, 3});
	EXPECT_EQ(operator_schmidt(p, 2).rank(), 2);
}

TEST(Linalg, SchmidtOfBellProjectorHasRankFour)
{
	Vector bell = Vector::Zero(4);
	bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
	const LabeledOperator p(bell * bell.adjoint(), {0, 1});
	const auto s = operator_schmidt(p, 1);
	ASSERT_EQ(s.rank(), 4);
	for(const auto& t : s.terms)
		EXPECT_NEAR(t.rest.norm(), 0.5, 1e-12);
}

TEST(Linalg, SchmidtReconstructsRandomHermitianProperty)
{
	std::mt19937_64 rng(5);
	const std::vector<int> labels{7, 3, 12, 8};
	for(int trial = 0; trial < 25; ++trial) {
		const LabeledOperator h(random_hermitian(16, rng), labels);
		for(int site : labels) {
			const auto s = operator_schmidt(h, site);
			EXPECT_LE(s.rank(), 4);
			const auto back = s.reconstruct(labels);
			EXPECT_EQ(back.labels, labels);
			EXPECT_LT((back.matrix - h.matrix).norm(), 1e-9);
			for(int i = 0; i < s.rank(); ++i)
				for(int j = i + 1; j < s.rank(); ++j) {
					EXPECT_LT(std::abs((s.terms[i].site.adjoint() * s.terms[j].site).trace()), 1e-9);
					EXPECT_LT(std::abs((s.terms[i].rest.adjoint() * s.terms[j].rest).trace()), 1e-9);
				}
		}
	}
}

TEST(Linalg, AlgebraClassification)
{
	const std::vector<Matrix> trivial{pauli_i()};
	EXPECT_EQ(algebra_classify(trivial).kind, AlgebraKind::Trivial);

	const std::vector<Matrix> z{pauli_i(), pauli_z()};
	const auto cz = algebra_classify(z);
	ASSERT_EQ(cz.kind, AlgebraKind::Abelian);
	EXPECT_EQ(cz.dimension, 2);
	EXPECT_NEAR(std::abs(cz.basis[0](0)), 1.0, 1e-12);
	EXPECT_NEAR(std::abs(cz.basis[1](1)), 1.0, 1e-12);

	const std::vector<Matrix> xz{pauli_i(), pauli_x(), pauli_z()};
	const auto cxz = algebra_classify(xz);
	EXPECT_EQ(cxz.kind, AlgebraKind::Full);
	EXPECT_EQ(cxz.dimension, 4);

	// A single non-normal generator already generates everything.
	Matrix raise = Matrix::Zero(2, 2);
	raise(0, 1) = 1.0;
	const std::vector<Matrix> r{raise};
	EXPECT_EQ(algebra_classify(r).kind, AlgebraKind::Full);
}

TEST(Linalg, CanonicalBasisOfX)
{
	const std::vector<Matrix> x{pauli_x()};
	const auto c = algebra_classify(x);
	ASSERT_EQ(c.kind, AlgebraKind::Abelian);
	const double h = 1.0 / std::sqrt(2.0);
	// |+> before |->: equal |<0|psi>|, larger Re<1|psi> first.
	EXPECT_NEAR(c.basis[0](0).real(), h, 1e-12);
	EXPECT_NEAR(c.basis[0](1).real(), h, 1e-12);
	EXPECT_NEAR(c.basis[1](0).real(), h, 1e-12);
	EXPECT_NEAR(c.basis[1](1).real(), -h, 1e-12);
}

TEST(Linalg, CanonicalBasisOfY)
{
	const std::vector<Matrix> y{pauli_y()};
	const auto c = algebra_classify(y);
	ASSERT_EQ(c.kind, AlgebraKind::Abelian);
	EXPECT_NEAR(c.basis[0](1).imag(), 1.0 / std::sqrt(2.0), 1e-12);
	EXPECT_NEAR(c.basis[1](1).imag(), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Linalg, CanonicalizationIsPhaseInvariant)
{
	std::mt19937_64 rng(3);
	std::uniform_real_distribution<double> angle(0.0, 6.283);
	for(int trial = 0; trial < 20; ++trial) {
		const Matrix u = random_matrix(2, rng).householderQr().householderQ();
		std::array<QubitState, 2> a{u.col(0), u.col(1)};
		std::array<QubitState, 2> b{u.col(1) * std::polar(1.0, angle(rng)), u.col(0) * std::polar(1.0, angle(rng))};
		canonicalize_basis(a);
		canonicalize_basis(b);
		for(int k = 0; k < 2; ++k)
			EXPECT_LT((a[k] - b[k]).norm(), 1e-12);
		EXPECT_LT(std::abs(a[0].dot(a[1])), 1e-12);
	}
}

TEST(Linalg, PartialTraces)
{
	const LabeledOperator z1(kron(pauli_z(), pauli_i()), {1, 2});
	const std::vector<int> keep1{1};
	EXPECT_LT((partial_trace(z1, keep1).matrix - 2.0 * pauli_z()).norm(), 1e-12);

	Vector bell = Vector::Zero(4);
	bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
	const LabeledOperator b(bell * bell.adjoint(), {1, 2});
	const std::vector<int> keep2{2};
	EXPECT_LT((partial_trace(b, keep2).matrix - pauli_i() / 2.0).norm(), 1e-12);
	const std::vector<int> none;
	const auto scalar = partial_trace(b, none);
	EXPECT_EQ(scalar.dim(), 1);
	EXPECT_NEAR(scalar.matrix(0, 0).real(), 1.0, 1e-12);
}

TEST(Linalg, ContractAndSandwich)
{
	const QubitState zero = ket(1, 0, 0, 0);
	const QubitState plus = ket(1, 0, 1, 0);
	const LabeledOperator zz(kron(pauli_z(), pauli_x()), {0, 1});
	const auto c = contract_site(zz, 0, zero);
	EXPECT_EQ(c.labels, std::vector<int>{1});
	EXPECT_LT((c.matrix - pauli_x()).norm(), 1e-12);
	const auto c2 = contract_site(zz, 1, plus);
	EXPECT_LT((c2.matrix - pauli_z()).norm(), 1e-12);

	const Matrix s = sandwich_site(zz, 1, plus);
	EXPECT_LT((s - kron(pauli_z(), projector(plus))).norm(), 1e-12);
}

TEST(Linalg, TraceOfProductOfEmbeddedOperators)
{
	const QubitState zero = ket(1, 0, 0, 0);
	const QubitState plus = ket(1, 0, 1, 0);
	const std::vector<LabeledOperator> ops{{projector(zero), {1}}, {projector(plus), {1}}};
	EXPECT_NEAR(trace_product_embedded(ops).real(), 0.5, 1e-12);

	const std::vector<LabeledOperator> id{{Matrix::Identity(4, 4), {1, 2}}};
	EXPECT_NEAR(trace_product_embedded(id).real(), 4.0, 1e-12);
}

TEST(Linalg, TraceProductMatchesDenseProperty)
{
	std::mt19937_64 rng(9);
	for(int trial = 0; trial < 10; ++trial) {
		const std::vector<LabeledOperator> ops{
		    {random_matrix(4, rng), {0, 3}}, {random_matrix(8, rng), {2, 3, 1}}, {random_matrix(4, rng), {4, 0}}};
		const std::vector<int> all{0, 1, 2, 3, 4};
		Matrix dense = Matrix::Identity(32, 32);
		for(const auto& op : ops)
			dense = dense * embed(op, all);
		EXPECT_LT(std::abs(trace_product_embedded(ops) - dense.trace()), 1e-9 * std::max(1.0, std::abs(dense.trace())));
	}
}

TEST(Linalg, CommutatorNorms)
{
	const LabeledOperator a(kron(kron(pauli_z(), pauli_z()), pauli_i()), {1, 2, 3});
	const LabeledOperator b(kron(kron(pauli_i(), pauli_x()), pauli_x()), {1, 2, 3});
	EXPECT_NEAR(commutator_norm(a, b), 2.0 * std::sqrt(8.0), 1e-12);

	const LabeledOperator zz(kron(pauli_z(), pauli_z()), {1, 2});
	const LabeledOperator xx(kron(pauli_x(), pauli_x()), {2, 1});
	EXPECT_NEAR(commutator_norm(zz, xx), 0.0, 1e-12);

	const LabeledOperator z(pauli_z(), {1});
	const LabeledOperator x(pauli_x(), {1});
	EXPECT_NEAR(commutator_norm(z, x), 2.0 * std::sqrt(2.0), 1e-12);

	const LabeledOperator far(pauli_x(), {5});
	EXPECT_EQ(commutator_norm(z, far), 0.0);
}

TEST(Linalg, CommutatorMatchesDenseProperty)
{
	std::mt19937_64 rng(21);
	for(int trial = 0; trial < 10; ++trial) {
		const LabeledOperator a(random_matrix(16, rng), {0, 1, 4, 5});
		const LabeledOperator b(random_matrix(16, rng), {1, 2, 5, 6});
		const std::vector<int> all{0, 1, 2, 4, 5, 6};
		const Matrix ea = embed(a, all), eb = embed(b, all);
		EXPECT_NEAR(commutator_norm(a, b), (ea * eb - eb * ea).norm(), 1e-9);
	}
}

TEST(Linalg, RejectsBadLabels)
{
	EXPECT_THROW(LabeledOperator(Matrix::Identity(4, 4), {1}), LinalgError);
	EXPECT_THROW(LabeledOperator(Matrix::Identity(4, 4), {1, 1}), LinalgError);
}
