// spec_io.cpp
#include "qms/spec_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "qms/models.hpp"

namespace qms {

namespace {

using nlohmann::json;

double number_from_json(const json& j, const std::string& field) {
  if (!j.is_number())
    throw SchemaError("spec: field '" + field + "' must be a number");
  return j.get<double>();
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError("spec: field '" + field +
                      "' must be a complex [re, im] pair");
  return Complex(number_from_json(j[0], field), number_from_json(j[1], field));
}

}  // namespace

nlohmann::json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

nlohmann::json matrix_to_json(const Operator& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator matrix_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw SchemaError("spec: field '" + field +
                      "' must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array())
    throw SchemaError("spec: field '" + field + "' rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Operator a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw SchemaError("spec: field '" + field + "' row " +
                        std::to_string(r) + " has inconsistent length");
    for (Index c = 0; c < cols; ++c)
      a(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], field);
  }
  if (!all_finite(a))
    throw SchemaError("spec: field '" + field + "' has non-finite entries");
  return a;
}

GeneratorSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("spec: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "dim" && key != "form" && key != "G" && key != "kraus" &&
        key != "matrix" && key != "name" && key != "V" && key != "G0" &&
        key != "delta" && key != "steps" && key != "metadata")
      throw SchemaError("spec: unknown field '" + key + "'");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw SchemaError("spec: missing or non-integer field 'dim'");
  if (!j.contains("form") || !j["form"].is_string())
    throw SchemaError("spec: missing or non-string field 'form'");

  GeneratorSpec spec;
  spec.dim = j["dim"].get<Index>();
  if (spec.dim < 1) throw SchemaError("spec: 'dim' must be at least 1");

  const std::string form = j["form"].get<std::string>();
  if (form == "lindblad_terms") {
    spec.form = GeneratorSpec::Form::LindbladTerms;
    if (!j.contains("G"))
      throw SchemaError("spec: lindblad_terms form requires field 'G'");
    spec.terms.g = matrix_from_json(j["G"], "G");
    if (spec.terms.g.rows() != spec.dim || spec.terms.g.cols() != spec.dim)
      throw SchemaError("spec: 'G' must be dim x dim");
    if (j.contains("kraus")) {
      if (!j["kraus"].is_array())
        throw SchemaError("spec: 'kraus' must be an array of matrices");
      for (std::size_t k = 0; k < j["kraus"].size(); ++k) {
        Operator v = matrix_from_json(j["kraus"][k], "kraus");
        if (v.rows() != spec.dim || v.cols() != spec.dim)
          throw SchemaError("spec: kraus[" + std::to_string(k) +
                            "] must be dim x dim");
        spec.terms.kraus.push_back(std::move(v));
      }
    }
  } else if (form == "superop_matrix") {
    spec.form = GeneratorSpec::Form::SuperopMatrix;
    if (!j.contains("matrix"))
      throw SchemaError("spec: superop_matrix form requires field 'matrix'");
    spec.matrix = matrix_from_json(j["matrix"], "matrix");
    if (spec.matrix.rows() != spec.dim * spec.dim ||
        spec.matrix.cols() != spec.dim * spec.dim)
      throw SchemaError("spec: 'matrix' must be dim^2 x dim^2");
  } else if (form == "example") {
    spec.form = GeneratorSpec::Form::Example;
    if (!j.contains("name") || !j["name"].is_string())
      throw SchemaError("spec: example form requires string field 'name'");
    spec.name = j["name"].get<std::string>();
    for (const char* key : {"V", "G0", "delta", "steps"})
      if (j.contains(key)) spec.params[key] = j[key];
  } else {
    throw SchemaError("spec: unknown form '" + form + "'");
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object())
      throw SchemaError("spec: 'metadata' must be an object of strings");
    for (const auto& [key, value] : j["metadata"].items()) {
      if (!value.is_string())
        throw SchemaError("spec: metadata '" + key + "' must be a string");
      spec.metadata[key] = value.get<std::string>();
    }
  }
  return spec;
}

GeneratorSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open spec file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("spec: " + std::string(e.what()));
  }
  return spec_from_json(j);
}

nlohmann::json spec_to_json(const GeneratorSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  switch (spec.form) {
    case GeneratorSpec::Form::LindbladTerms: {
      j["form"] = "lindblad_terms";
      j["G"] = matrix_to_json(spec.terms.g);
      json kraus = json::array();
      for (const Operator& v : spec.terms.kraus)
        kraus.push_back(matrix_to_json(v));
      j["kraus"] = std::move(kraus);
      break;
    }
    case GeneratorSpec::Form::SuperopMatrix:
      j["form"] = "superop_matrix";
      j["matrix"] = matrix_to_json(spec.matrix);
      break;
    case GeneratorSpec::Form::Example:
      j["form"] = "example";
      j["name"] = spec.name;
      for (const auto& [key, value] : spec.params.items()) j[key] = value;
      break;
  }
  if (!spec.metadata.empty()) {
    json meta;
    for (const auto& [key, value] : spec.metadata) meta[key] = value;
    j["metadata"] = std::move(meta);
  }
  return j;
}

namespace {

Operator pauli_or_matrix(const json& v, Index dim) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (dim != 2)
      throw SchemaError("spec: named Pauli 'V' requires dim = 2");
    Operator m(2, 2);
    if (name == "pauli_z")
      m << 1, 0, 0, -1;
    else if (name == "pauli_x")
      m << 0, 1, 1, 0;
    else if (name == "pauli_y")
      m << 0, Complex(0, -1), Complex(0, 1), 0;
    else
      throw SchemaError("spec: unknown operator name '" + name + "'");
    return m;
  }
  Operator m = matrix_from_json(v, "V");
  if (m.rows() != dim || m.cols() != dim)
    throw SchemaError("spec: 'V' must be dim x dim");
  return m;
}

}  // namespace

SuperOperator spec_to_superop(const GeneratorSpec& spec) {
  switch (spec.form) {
    case GeneratorSpec::Form::LindbladTerms:
      return from_lindblad_terms(spec.terms);
    case GeneratorSpec::Form::SuperopMatrix:
      return SuperOperator(spec.dim, spec.matrix);
    case GeneratorSpec::Form::Example:
      break;
  }
  if (spec.name == "dephasing") {
    if (!spec.params.contains("V"))
      throw SchemaError("spec: dephasing example requires field 'V'");
    return dephasing_generator(pauli_or_matrix(spec.params["V"], spec.dim));
  }
  if (spec.name == "heat_flow") return heat_flow_generator(spec.dim);
  if (spec.name == "conjugation") {
    if (!spec.params.contains("G0"))
      throw SchemaError("spec: conjugation example requires field 'G0'");
    Operator g0 = matrix_from_json(spec.params["G0"], "G0");
    if (g0.rows() != spec.dim || g0.cols() != spec.dim)
      throw SchemaError("spec: 'G0' must be dim x dim");
    return conjugation_generator(g0);
  }
  if (spec.name == "shift_reset") {
    double delta = 0.25;
    Index steps = 1;
    if (spec.params.contains("delta"))
      delta = number_from_json(spec.params["delta"], "delta");
    if (spec.params.contains("steps")) {
      if (!spec.params["steps"].is_number_integer())
        throw SchemaError("spec: 'steps' must be an integer");
      steps = spec.params["steps"].get<Index>();
    }
    const ShiftResetModel model = make_shift_reset(spec.dim, delta);
    return shift_reset_map(model, steps);
  }
  throw SchemaError("spec: unknown example name '" + spec.name + "'");
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file for digest: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << hash;
  return out.str();
}

}  // namespace qms
