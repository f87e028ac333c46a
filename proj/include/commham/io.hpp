#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "commham/model.hpp"
#include "commham/verifier.hpp"

namespace commham {

// Malformed or unreadable model/certificate files.
class FormatError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Model: {"lattice": {"lx", "ly", "boundary"}, "terms": [{"plaquette": [x, y],
// "matrix": 16x16 rows of [re, im]}]}, one term per plaquette.
std::string model_to_json(const CommutingModel& model);
CommutingModel model_from_json(const std::string& text);

// Certificate: {"alpha": {"x,y": 0|1, ...}, "beta": {...}}.
std::string certificate_to_json(const Certificate& cert, const LatticeSpec& spec);
Certificate certificate_from_json(const std::string& text, const LatticeSpec& spec);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

CommutingModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const CommutingModel& model);
Certificate load_certificate(const std::filesystem::path& path, const LatticeSpec& spec);
void save_certificate(const std::filesystem::path& path, const Certificate& cert, const LatticeSpec& spec);

} // namespace commham
