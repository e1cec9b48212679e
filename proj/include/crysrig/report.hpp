// Analysis reports for the command line tool: text in the Maxwell-Calladine
// layout, or JSON with stable field names and ordering.

#ifndef CRYSRIG_REPORT_HPP_
#define CRYSRIG_REPORT_HPP_

#include "crysrig/rigidity.hpp"
#include "crysrig/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crysrig {

struct FrameworkSummary {
  std::string label;
  int dimension = 0;
  int num_vertices = 0;
  int num_edges = 0;
  double det_Z = 0.0;
  double tolerance = kDefaultTolerance;
  AffineRigidity affine_rigidity;
};

struct ModeAnalysis {
  CountReport counts;
  std::vector<AffineVelocity> flexes;  // decoded (u, A)
  std::vector<Vec> raw_flexes;         // (u, vec(AZ))
  std::vector<Vec> stresses;
};

struct SymmetryAnalysis {
  SymmetryCountReport counts;
  double equation_residual = 0.0;  // full affine domain
  std::optional<CharacterRow> characters;
};

struct AnalysisReport {
  FrameworkSummary summary;
  std::vector<ModeAnalysis> modes;
  std::vector<SymmetryAnalysis> symmetries;
  std::vector<std::string> diagnostics;

  /// False when any count identity fails or a residual exceeds its bound.
  bool consistent() const { return diagnostics.empty(); }
};

FrameworkSummary summarize(const CrystalFramework& fw, const std::string& label);

ModeAnalysis analyze_mode(const CrystalFramework& fw, const MatrixSpace& space);

/// Symmetry analysis for the identity plus every declared element, or only
/// `element` when given. Character rows use E = E_g.
std::vector<SymmetryAnalysis> analyze_symmetries(const CrystalFramework& fw,
                                                 const std::optional<std::string>& element,
                                                 bool characters);

/// Fills `diagnostics` from the integer identities and residual bounds.
void check_consistency(AnalysisReport& report);

enum class ReportFormat { Text, Json };

std::string emit_report(const AnalysisReport& report, ReportFormat format);

}  // namespace crysrig

#endif  // CRYSRIG_REPORT_HPP_
