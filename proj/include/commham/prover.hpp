#pragma once

#include <cstdint>
#include <optional>

#include "commham/verifier.hpp"

namespace commham {

inline constexpr int exhaustive_label_cap = 26;

struct SearchResult {
	Certificate certificate;
	OmegaResult omega;
	std::uint64_t evaluated = 0; // certificates whose Omega was computed in full
};

// Depth-first scan of the certificate space in lexicographic order (black
// labels outermost), pruning every branch in which a sliced projector or a
// vertex overlap already vanishes.  Returns the first certificate of
// maximal Omega, or std::nullopt when every Omega is zero.  Throws
// CapExceeded when the space has more than 2^max_labels elements.
std::optional<SearchResult> exhaustive_search(const PreparedModel& prep, int max_labels = exhaustive_label_cap);

struct GreedyOptions {
	std::uint64_t seed = 0;
	int restarts = 8;
	int max_sideways = 64; // plateau moves allowed per restart
	std::optional<double> log2_threshold;
};

// Steepest-ascent over single label flips.  The first restart starts from
// the all-zero certificate, the others from random labels.  The objective
// is (number of vanishing local factors, log2 Omega) compared
// lexicographically; local factors are the sliced projectors and vertex
// overlaps, and only those touching the flipped vertex are recomputed.
// Whatever is returned has been accepted by verify().
std::optional<SearchResult> greedy_search(const PreparedModel& prep, const GreedyOptions& options = {});

} // namespace commham
