// JSON framework files (format 1) and custom matrix-space files.
//
//   {
//     "format": 1,
//     "dimension": 2,
//     "period_vectors": [[1, 0], [0.5, 0.8660254037844386]],
//     "vertices": [{"id": "p1", "position": [0, 0]},
//                  {"id": "p2", "position": [0.5, 0], "frac": false}],
//     "edges": [{"from": {"v": "p1", "cell": [0, 0]},
//                "to":   {"v": "p2", "cell": [-1, 0]}}],
//     "symmetries": [{"name": "rot3", "linear": [[..], [..]],
//                     "translation": [..]}],
//     "tolerance": 1e-9
//   }
//
// "frac": true positions are fractional and multiplied by Z. "cell" may be
// omitted (cell 0). Matrices are lists of rows.

#ifndef CRYSRIG_FRAMEWORK_IO_HPP_
#define CRYSRIG_FRAMEWORK_IO_HPP_

#include "crysrig/lattice.hpp"
#include "crysrig/rigidity.hpp"

#include <string>

namespace crysrig {

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& path, const std::string& what)
      : InvalidInput(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline constexpr int kFormatVersion = 1;

/// Parses, validates and resolves declared symmetries. Throws ParseError for
/// syntax ("line L, column C") and schema ("field path") problems,
/// InvalidInput for invariant violations, SymmetryError for symmetries.
CrystalFramework parse_framework(const std::string& text);

std::string serialize_framework(const CrystalFramework& fw);

/// A list of d x d matrices, or {"matrices": [...]}. Dependent lists are
/// rejected.
MatrixSpace parse_matrix_space(const std::string& text, int d, double tol = kDefaultTolerance);

std::string read_file(const std::string& path);

}  // namespace crysrig

#endif  // CRYSRIG_FRAMEWORK_IO_HPP_
