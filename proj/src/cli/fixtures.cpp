#include "cli/fixtures.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qsurv::cli {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("fixture: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("fixture '" + path + "': JSON parse failure: " + e.what());
  }
}

Complex parse_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("fixture: " + where + " entries must be [re, im] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

ComplexVector parse_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError("fixture: " + where + " must be an array");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = parse_complex(v[i], where);
  }
  return out;
}

ComplexMatrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError("fixture: " + where + " must be an array");
  const std::size_t rows = v.size();
  ComplexMatrix out;
  for (std::size_t i = 0; i < rows; ++i) {
    const ComplexVector row = parse_vector(v[i], where);
    if (i == 0) {
      out.resize(static_cast<Eigen::Index>(rows), row.size());
    } else if (row.size() != out.cols()) {
      throw ConfigError("fixture: " + where + " rows have inconsistent lengths");
    }
    out.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return out;
}

}  // namespace

ObservableFixture load_observable_fixture(const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_object()) throw ConfigError("fixture: top level must be an object");
  for (const auto& item : doc.items()) {
    static const std::set<std::string> known{"eigenvalues", "blocks", "rho", "hamiltonian",
                                             "rotations"};
    if (!known.count(item.key())) {
      throw ConfigError("fixture: unknown key '" + item.key() + "'");
    }
  }
  if (!doc.contains("eigenvalues") || !doc.contains("blocks") || !doc.contains("rho")) {
    throw ConfigError("fixture: requires 'eigenvalues', 'blocks' and 'rho'");
  }
  std::vector<double> eigenvalues;
  for (const json& v : doc.at("eigenvalues")) {
    if (!v.is_number()) throw ConfigError("fixture: eigenvalues must be numbers");
    eigenvalues.push_back(v.get<double>());
  }
  std::vector<ComplexMatrix> blocks;
  for (std::size_t alpha = 0; alpha < doc.at("blocks").size(); ++alpha) {
    const json& b = doc.at("blocks")[alpha];
    if (!b.is_array() || b.empty()) throw ConfigError("fixture: each block is a vector list");
    ComplexMatrix block;
    for (std::size_t s = 0; s < b.size(); ++s) {
      const ComplexVector col = parse_vector(b[s], "blocks");
      if (s == 0) block.resize(col.size(), static_cast<Eigen::Index>(b.size()));
      block.col(static_cast<Eigen::Index>(s)) = col;
    }
    blocks.push_back(std::move(block));
  }

  try {
    SpectralObservable obs(std::move(eigenvalues), std::move(blocks));

    DegenerateRotation rot = DegenerateRotation::identity(obs);
    if (doc.contains("rotations")) {
      std::vector<ComplexMatrix> rots;
      for (const json& r : doc.at("rotations")) rots.push_back(parse_matrix(r, "rotations"));
      rot = DegenerateRotation(std::move(rots));
    }

    ComplexMatrix rho = parse_matrix(doc.at("rho"), "rho");
    if (rho.rows() != obs.dim()) throw ConfigError("fixture: rho dimension mismatch");
    if (!is_density_matrix(rho, 1e-8)) {
      throw ConfigError("fixture: rho is not a density matrix");
    }

    ComplexMatrix h = doc.contains("hamiltonian")
                          ? parse_matrix(doc.at("hamiltonian"), "hamiltonian")
                          : obs.matrix();
    if (h.rows() != obs.dim()) throw ConfigError("fixture: hamiltonian dimension mismatch");

    return {std::move(obs), std::move(rot), std::move(rho), std::move(h)};
  } catch (const std::invalid_argument& e) {
    // Spectral/rotation invariants violated by the file contents.
    throw ConfigError(std::string("fixture: ") + e.what());
  }
}

ModelFixture load_model_fixture(const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_object()) throw ConfigError("fixture: top level must be an object");
  for (const auto& item : doc.items()) {
    static const std::set<std::string> known{"h0", "hi", "hbar"};
    if (!known.count(item.key())) {
      throw ConfigError("fixture: unknown key '" + item.key() + "'");
    }
  }
  if (!doc.contains("h0") || !doc.contains("hi")) {
    throw ConfigError("fixture: requires 'h0' and 'hi'");
  }
  ModelFixture out;
  out.h0 = parse_matrix(doc.at("h0"), "h0");
  out.hi = parse_matrix(doc.at("hi"), "hi");
  if (doc.contains("hbar")) {
    if (!doc.at("hbar").is_number()) throw ConfigError("fixture: hbar must be a number");
    out.hbar = doc.at("hbar").get<double>();
  }
  if (!(out.hbar > 0.0)) throw ConfigError("fixture: hbar must be positive");
  if (!is_hermitian(out.h0, 1e-8)) throw ConfigError("fixture: h0 is not Hermitian");
  if (!is_hermitian(out.hi, 1e-8)) throw ConfigError("fixture: hi is not Hermitian");
  return out;
}

}  // namespace qsurv::cli
