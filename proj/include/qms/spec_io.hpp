// spec_io.hpp -- generator spec files: parsing, validation, emission
#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "qms/superop.hpp"

namespace qms {

// A generator described by a JSON file. Three forms:
//   "lindblad_terms":  fields G (d x d) and kraus (list of d x d)
//   "superop_matrix":  field matrix (d^2 x d^2)
//   "example":         field name plus per-model parameters
// Matrices are nested row-major arrays, complex entries as [re, im].
struct GeneratorSpec {
  enum class Form { LindbladTerms, SuperopMatrix, Example };
  Index dim = 0;
  Form form = Form::LindbladTerms;
  LindbladTerms terms;                          // Form::LindbladTerms
  Operator matrix;                              // Form::SuperopMatrix
  std::string name;                             // Form::Example
  nlohmann::json params;                        // example parameters
  std::map<std::string, std::string> metadata;  // optional free-form notes
};

// Throws ParseError for malformed JSON (message carries the byte offset)
// and SchemaError for structurally valid JSON that does not match the
// GeneratorSpec layout (message names the offending field).
GeneratorSpec load_spec(const std::string& path);
GeneratorSpec spec_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const GeneratorSpec& spec);

// Builds the dense superoperator (subject to the dimension cap).
SuperOperator spec_to_superop(const GeneratorSpec& spec);

// JSON encoding helpers shared with report emission.
nlohmann::json complex_to_json(const Complex& z);
nlohmann::json matrix_to_json(const Operator& a);
Operator matrix_from_json(const nlohmann::json& j, const std::string& field);

// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

}  // namespace qms
