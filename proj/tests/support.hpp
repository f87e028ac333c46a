#pragma once

#include <random>

#include "commham/linalg.hpp"

namespace testing_support {

inline commham::Matrix random_matrix(int dim, std::mt19937_64& rng)
{
	std::normal_distribution<double> g;
	commham::Matrix m(dim, dim);
	for(int r = 0; r < dim; ++r)
		for(int c = 0; c < dim; ++c)
			m(r, c) = {g(rng), g(rng)};
	return m;
}

inline commham::Matrix random_hermitian(int dim, std::mt19937_64& rng)
{
	const commham::Matrix a = random_matrix(dim, rng);
	return (a + a.adjoint()) / 2.0;
}

inline commham::Matrix random_psd(int dim, std::mt19937_64& rng)
{
	const commham::Matrix a = random_matrix(dim, rng);
	return a * a.adjoint() / static_cast<double>(dim);
}

inline commham::QubitState ket(double a0r, double a0i, double a1r, double a1i)
{
	commham::QubitState v;
	v << commham::Complex{a0r, a0i}, commham::Complex{a1r, a1i};
	return v.normalized();
}

// Equal up to a global phase.
inline bool same_ray(const commham::QubitState& a, const commham::QubitState& b, double tol = 1e-9)
{
	return std::abs(std::abs(a.dot(b)) - 1.0) < tol;
}

} // namespace testing_support
