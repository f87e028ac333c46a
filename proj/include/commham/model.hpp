#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commham/lattice.hpp"
#include "commham/linalg.hpp"

namespace commham {

inline constexpr double hermitian_tol = 1e-10;
inline constexpr double commutation_tol = 1e-9;

class ModelError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Hamiltonian H = sum_p h_p with one 16x16 Hermitian term per plaquette,
// in corner order TL, TR, BR, BL (corner 0 = most significant bit).
class CommutingModel {
public:
	explicit CommutingModel(LatticeSpec spec);

	const LatticeSpec& spec() const { return spec_; }
	int num_qubits() const { return spec_.num_vertices(); }

	// Throws ModelError for non-16x16 or non-Hermitian terms.
	void set_term(const PlaquetteId& p, Matrix term);
	const Matrix& term(const PlaquetteId& p) const;
	const std::map<PlaquetteId, Matrix>& terms() const { return terms_; }

	// The term on its corner labels.
	LabeledOperator labeled_term(const PlaquetteId& p) const;

private:
	LatticeSpec spec_;
	std::map<PlaquetteId, Matrix> terms_;
};

struct CommutationViolation {
	PlaquetteId first;
	PlaquetteId second;
	double norm = 0.0;
};

struct CommutationReport {
	std::vector<CommutationViolation> violations;
	int pairs_checked = 0;
	bool ok() const { return violations.empty(); }
};

// Checks every pair of plaquettes sharing at least one vertex.
CommutationReport check_commuting(const CommutingModel& model, double tol = commutation_tol);

class GroundProjectors {
public:
	GroundProjectors(LatticeSpec spec, std::map<PlaquetteId, Matrix> projectors);

	const LatticeSpec& spec() const { return spec_; }
	const Matrix& at(const PlaquetteId& p) const;
	LabeledOperator labeled(const PlaquetteId& p) const;
	const std::map<PlaquetteId, Matrix>& all() const { return projectors_; }

private:
	LatticeSpec spec_;
	std::map<PlaquetteId, Matrix> projectors_;
};

class NonCommutingError : public std::runtime_error {
public:
	NonCommutingError(const std::string& what, CommutationReport report)
	    : std::runtime_error(what), report_{std::move(report)} {}
	const CommutationReport& report() const { return report_; }

private:
	CommutationReport report_;
};

// Per-term ground-space projectors.  Throws NonCommutingError when the
// resulting projectors fail to commute pairwise within tol.
GroundProjectors ground_projectors(const CommutingModel& model, double tol = commutation_tol);

// h_p = -Z^4 on black plaquettes and -X^4 on white ones.
CommutingModel gen_toric(const LatticeSpec& spec);

// Toric code with a sign per plaquette: h_p = -s_p Z^4 (black) or -s_p X^4
// (white), whose ground projector is (1 + s_p P^4)/2.
CommutingModel gen_signed_toric(const LatticeSpec& spec, const std::map<PlaquetteId, int>& signs);

// All terms zero (every ground projector is the identity).
CommutingModel gen_zero(const LatticeSpec& spec);

// Classical Ising couplings and fields.  horizontal[index(v)] couples v to
// its right neighbour, vertical[index(v)] couples v to the one below; entries
// for edges that do not exist on an open lattice are ignored.
struct IsingParameters {
	std::vector<double> horizontal;
	std::vector<double> vertical;
	std::vector<double> field;

	static IsingParameters uniform(const LatticeSpec& spec, double coupling, double field);
};

// Each edge -J Z_i Z_j goes to exactly one plaquette containing it (the black
// one when both exist) and each field -f Z_v is split evenly over the
// plaquettes containing v.
CommutingModel gen_ising(const LatticeSpec& spec, const IsingParameters& params);

enum class RandomMethod { RotatedClassical, SignedToric, DiagonalField };

std::string to_string(RandomMethod m);
std::optional<RandomMethod> parse_random_method(const std::string& name);

struct RotatedClassicalModel {
	CommutingModel model;
	std::vector<Matrix> unitaries; // one 2x2 unitary per vertex index
};

// Random integer-valued diagonal terms conjugated by a Haar-random
// single-qubit unitary per vertex.  About half the seeds plant a common
// zero-energy configuration so both frustrated and frustration-free
// instances occur.
RotatedClassicalModel gen_rotated_classical(const LatticeSpec& spec, std::uint64_t seed);

CommutingModel gen_random(const LatticeSpec& spec, std::uint64_t seed, RandomMethod method);

} // namespace commham
