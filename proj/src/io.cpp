#include "commham/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace commham {

using nlohmann::json;

namespace {

Boundary parse_boundary(const std::string& s)
{
	if(s == "open")
		return Boundary::Open;
	if(s == "periodic")
		return Boundary::Periodic;
	throw FormatError("unknown boundary '" + s + "'");
}

const json& field(const json& obj, const char* key)
{
	if(!obj.is_object() || !obj.contains(key))
		throw FormatError(std::string("missing field '") + key + "'");
	return obj.at(key);
}

int as_int(const json& j, const char* what)
{
	if(!j.is_number_integer())
		throw FormatError(std::string(what) + " must be an integer");
	return j.get<int>();
}

double as_double(const json& j)
{
	if(!j.is_number())
		throw FormatError("matrix entries must be numbers");
	return j.get<double>();
}

std::string vertex_key(const VertexId& v) { return std::to_string(v.x) + "," + std::to_string(v.y); }

VertexId parse_vertex_key(const std::string& key)
{
	const auto comma = key.find(',');
	if(comma == std::string::npos)
		throw FormatError("bad vertex key '" + key + "'");
	try {
		std::size_t nx = 0, ny = 0;
		const std::string xs = key.substr(0, comma), ys = key.substr(comma + 1);
		VertexId v{std::stoi(xs, &nx), std::stoi(ys, &ny)};
		if(nx != xs.size() || ny != ys.size())
			throw FormatError("bad vertex key '" + key + "'");
		return v;
	} catch(const std::logic_error&) {
		throw FormatError("bad vertex key '" + key + "'");
	}
}

json labels_to_json(const std::map<int, int>& labels, const LatticeSpec& spec)
{
	json out = json::object();
	for(const auto& [v, label] : labels)
		out[vertex_key(spec.vertex(v))] = label;
	return out;
}

std::map<int, int> labels_from_json(const json& j, const LatticeSpec& spec)
{
	if(!j.is_object())
		throw FormatError("labels must be an object");
	std::map<int, int> out;
	for(const auto& [key, value] : j.items()) {
		const VertexId v = parse_vertex_key(key);
		if(!spec.contains(v))
			throw FormatError("vertex " + key + " is outside the lattice");
		out[spec.index(v)] = as_int(value, "label");
	}
	return out;
}

} // namespace

std::string model_to_json(const CommutingModel& model)
{
	const auto& spec = model.spec();
	json terms = json::array();
	for(const auto& p : spec.plaquettes()) {
		const Matrix& m = model.term(p);
		json rows = json::array();
		for(Eigen::Index r = 0; r < m.rows(); ++r) {
			json row = json::array();
			for(Eigen::Index c = 0; c < m.cols(); ++c)
				row.push_back({m(r, c).real(), m(r, c).imag()});
			rows.push_back(std::move(row));
		}
		terms.push_back({{"plaquette", {p.x, p.y}}, {"matrix", std::move(rows)}});
	}
	json out = {{"lattice", {{"lx", spec.lx()}, {"ly", spec.ly()}, {"boundary", to_string(spec.boundary())}}},
	            {"terms", std::move(terms)}};
	return out.dump(1, '\t') + "\n";
}

CommutingModel model_from_json(const std::string& text)
{
	json doc;
	try {
		doc = json::parse(text);
	} catch(const json::parse_error& e) {
		throw FormatError(std::string("not valid JSON: ") + e.what());
	}
	const json& lat = field(doc, "lattice");
	const json& boundary = field(lat, "boundary");
	if(!boundary.is_string())
		throw FormatError("boundary must be a string");
	std::optional<LatticeSpec> spec;
	try {
		spec.emplace(as_int(field(lat, "lx"), "lx"), as_int(field(lat, "ly"), "ly"),
		             parse_boundary(boundary.get<std::string>()));
	} catch(const LatticeError& e) {
		throw FormatError(std::string("bad lattice: ") + e.what());
	}

	CommutingModel model(*spec);
	const json& terms = field(doc, "terms");
	if(!terms.is_array())
		throw FormatError("terms must be an array");
	std::set<PlaquetteId> seen;
	for(const auto& t : terms) {
		const json& pj = field(t, "plaquette");
		if(!pj.is_array() || pj.size() != 2)
			throw FormatError("plaquette must be [x, y]");
		const PlaquetteId p{as_int(pj[0], "plaquette x"), as_int(pj[1], "plaquette y")};
		if(!spec->contains(p))
			throw FormatError("plaquette " + to_string(p) + " is outside the lattice");
		if(!seen.insert(p).second)
			throw FormatError("duplicate term for plaquette " + to_string(p));

		const json& rows = field(t, "matrix");
		if(!rows.is_array() || rows.size() != 16)
			throw FormatError("matrix of " + to_string(p) + " must have 16 rows");
		Matrix m(16, 16);
		for(std::size_t r = 0; r < 16; ++r) {
			if(!rows[r].is_array() || rows[r].size() != 16)
				throw FormatError("matrix of " + to_string(p) + " must have 16 columns");
			for(std::size_t c = 0; c < 16; ++c) {
				const json& e = rows[r][c];
				if(!e.is_array() || e.size() != 2)
					throw FormatError("matrix entries must be [re, im]");
				m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {as_double(e[0]), as_double(e[1])};
			}
		}
		try {
			model.set_term(p, m);
		} catch(const ModelError& e) {
			throw FormatError(e.what());
		}
	}
	if(seen.size() != spec->plaquettes().size())
		throw FormatError("model has " + std::to_string(seen.size()) + " terms, lattice has " +
		                  std::to_string(spec->plaquettes().size()) + " plaquettes");
	return model;
}

std::string certificate_to_json(const Certificate& cert, const LatticeSpec& spec)
{
	json out = {{"alpha", labels_to_json(cert.alpha, spec)}, {"beta", labels_to_json(cert.beta, spec)}};
	return out.dump(1, '\t') + "\n";
}

Certificate certificate_from_json(const std::string& text, const LatticeSpec& spec)
{
	json doc;
	try {
		doc = json::parse(text);
	} catch(const json::parse_error& e) {
		throw FormatError(std::string("not valid JSON: ") + e.what());
	}
	return {labels_from_json(field(doc, "alpha"), spec), labels_from_json(field(doc, "beta"), spec)};
}

std::string read_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if(!in)
		throw FormatError("cannot read " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
	std::ofstream out(path, std::ios::binary);
	if(!out || !(out << text))
		throw std::runtime_error("cannot write " + path.string());
}

CommutingModel load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

void save_model(const std::filesystem::path& path, const CommutingModel& model)
{
	write_file(path, model_to_json(model));
}

Certificate load_certificate(const std::filesystem::path& path, const LatticeSpec& spec)
{
	return certificate_from_json(read_file(path), spec);
}

void save_certificate(const std::filesystem::path& path, const Certificate& cert, const LatticeSpec& spec)
{
	write_file(path, certificate_to_json(cert, spec));
}

} // namespace commham
