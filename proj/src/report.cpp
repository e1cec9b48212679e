#include "crysrig/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace crysrig {

namespace {

using nlohmann::ordered_json;

// Values are rounded to 12 decimals for display so that output does not
// depend on round-off noise.
double display(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", display(x));
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

std::string fmt_mat(const Mat& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + fmt_vec(m.row(i).transpose());
  return s + "]";
}

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(display(v[i]));
  return a;
}

ordered_json mat_json(const Mat& m) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

double bound(double tol) { return 10.0 * tol; }

}  // namespace

FrameworkSummary summarize(const CrystalFramework& fw, const std::string& label) {
  FrameworkSummary s;
  s.label = label;
  s.dimension = fw.dim();
  s.num_vertices = fw.num_vertices();
  s.num_edges = fw.num_edges();
  s.det_Z = fw.lattice.Z.determinant();
  s.tolerance = fw.tolerance;
  s.affine_rigidity = is_affinely_rigid(fw);
  return s;
}

ModeAnalysis analyze_mode(const CrystalFramework& fw, const MatrixSpace& space) {
  ModeAnalysis m;
  m.counts = analyze_counts(fw, space);
  const SubspaceBasis flex = flex_space(fw, space);
  for (int j = 0; j < flex.dim(); ++j) {
    AffineVelocity v = decode_velocity(fw, space, flex.basis.col(j));
    m.raw_flexes.push_back(v.raw(fw.lattice.Z));
    m.flexes.push_back(std::move(v));
  }
  const SubspaceBasis stress = stress_space(fw, space);
  for (int j = 0; j < stress.dim(); ++j) m.stresses.push_back(stress.basis.col(j));
  return m;
}

std::vector<SymmetryAnalysis> analyze_symmetries(const CrystalFramework& fw,
                                                 const std::optional<std::string>& element,
                                                 bool characters) {
  std::vector<SymmetryElement> elements;
  const std::vector<SymmetryElement> declared = resolve_declared(fw);
  if (element) {
    if (*element == "identity") elements.push_back(identity_element(fw));
    for (const auto& g : declared) {
      if (g.name == *element) elements.push_back(g);
    }
    if (elements.empty()) throw InvalidInput("no symmetry element named '" + *element + "'");
    elements.resize(1);
  } else {
    elements.push_back(identity_element(fw));
    for (const auto& g : declared) {
      if (g.name != "identity") elements.push_back(g);
    }
  }

  std::vector<SymmetryAnalysis> out;
  for (const SymmetryElement& g : elements) {
    SymmetryAnalysis a;
    a.counts = symmetry_counts(fw, g);
    a.equation_residual = verify_symmetry_equation(fw, g);
    if (characters) a.characters = character_row(fw, g, commutant_basis(g.B, fw.tolerance));
    out.push_back(std::move(a));
  }
  return out;
}

void check_consistency(AnalysisReport& report) {
  const double tol = report.summary.tolerance;
  for (const ModeAnalysis& m : report.modes) {
    const CountReport& c = m.counts;
    if (c.identity_residual != 0) {
      report.diagnostics.push_back("mode " + c.mode + ": count identity residual " +
                                   std::to_string(c.identity_residual));
    }
    if (!c.rigid_in_flex) {
      report.diagnostics.push_back("mode " + c.mode +
                                   ": rigid motions are not contained in the flex space");
    }
  }
  for (const SymmetryAnalysis& s : report.symmetries) {
    const std::string who = "symmetry " + s.counts.name;
    if (s.counts.identity_residual != 0) {
      report.diagnostics.push_back(who + ": count identity residual " +
                                   std::to_string(s.counts.identity_residual));
    }
    if (s.equation_residual > bound(tol)) {
      report.diagnostics.push_back(who + ": symmetry equation residual " + fmt(s.equation_residual));
    }
    if (s.characters && std::abs(s.characters->residual) > bound(tol)) {
      report.diagnostics.push_back(who + ": character identity residual " +
                                   fmt(s.characters->residual));
    }
  }
}

namespace {

std::string emit_text(const AnalysisReport& r) {
  std::ostringstream os;
  const FrameworkSummary& s = r.summary;
  os << "framework: " << s.label << "\n";
  os << "  d = " << s.dimension << ", |Fv| = " << s.num_vertices << ", |Fe| = " << s.num_edges
     << ", det Z = " << fmt(s.det_Z) << ", tol = " << s.tolerance << "\n";
  os << "  affine rank = " << s.affine_rigidity.rank << " (rigid iff "
     << s.affine_rigidity.required_rank << "): "
     << (s.affine_rigidity.rigid ? "affinely rigid" : "not affinely rigid") << "\n";

  for (const ModeAnalysis& m : r.modes) {
    const CountReport& c = m.counts;
    os << "\nmode: " << c.mode << " (dim E = " << c.dim_space << ")\n";
    os << "  m - s = d|Fv| + dimE - |Fe| - f\n";
    os << "  " << c.m << " - " << c.s << " = " << c.dof << " + " << c.dim_space << " - "
       << c.num_edges << " - " << c.f << "\n";
    os << "  m=" << c.m << " s=" << c.s << " f=" << c.f << " identity residual="
       << c.identity_residual << "\n";
    os << "  flex basis (u; A), dim " << m.flexes.size() << ":\n";
    for (std::size_t i = 0; i < m.flexes.size(); ++i) {
      os << "    [" << i + 1 << "] u = " << fmt_vec(m.flexes[i].u) << "  A = "
         << fmt_mat(m.flexes[i].A) << "\n";
    }
    os << "  stress basis, dim " << m.stresses.size() << ":\n";
    for (std::size_t i = 0; i < m.stresses.size(); ++i) {
      os << "    [" << i + 1 << "] " << fmt_vec(m.stresses[i]) << "\n";
    }
  }

  for (const SymmetryAnalysis& a : r.symmetries) {
    const SymmetryCountReport& c = a.counts;
    os << "\nsymmetry: " << c.name << (c.separable ? " (separable)" : " (nonseparable)") << "\n";
    if (c.separable) {
      os << "  m_g - s_g = dim F_g + dim E_g - e_g - f_g\n";
      os << "  " << c.m_g << " - " << c.s_g << " = " << c.dim_F_g << " + " << c.dim_E_g
         << " - " << c.e_g << " - " << c.f_g << "\n";
    } else {
      os << "  m_g - s_g = dim H_v^g - e_g - f_g\n";
      os << "  " << c.m_g << " - " << c.s_g << " = " << c.dim_H_v_g << " - " << c.e_g << " - "
         << c.f_g << "\n";
    }
    os << "  m_g=" << c.m_g << " s_g=" << c.s_g << " f_g=" << c.f_g << " e_g=" << c.e_g
       << " identity residual=" << c.identity_residual << "\n";
    os << "  predictor: "
       << (c.predictor_fires ? "fires (g-symmetric mechanism exists)" : "inconclusive") << "\n";
    os << "  symmetry equation residual = " << fmt(a.equation_residual) << "\n";
    if (a.characters) {
      const CharacterRow& ch = *a.characters;
      os << "  characters (E = " << ch.space << "): tr pi_v=" << fmt(ch.trace_v)
         << " tr pi_e=" << fmt(ch.trace_e) << " tr pi_rig=" << fmt(ch.trace_rig)
         << " tr pi_mech=" << fmt(ch.trace_mech) << " tr pi_str=" << fmt(ch.trace_str)
         << " residual=" << fmt(ch.residual) << "\n";
    }
  }

  if (!r.diagnostics.empty()) {
    os << "\nINCONSISTENT:\n";
    for (const auto& d : r.diagnostics) os << "  " << d << "\n";
  }
  return os.str();
}

std::string emit_json(const AnalysisReport& r) {
  ordered_json doc;
  const FrameworkSummary& s = r.summary;
  doc["framework"] = {{"label", s.label},
                      {"dimension", s.dimension},
                      {"num_vertices", s.num_vertices},
                      {"num_edges", s.num_edges},
                      {"det_Z", display(s.det_Z)},
                      {"tolerance", s.tolerance},
                      {"affine_rank", s.affine_rigidity.rank},
                      {"affine_rank_required", s.affine_rigidity.required_rank},
                      {"affinely_rigid", s.affine_rigidity.rigid}};
  ordered_json modes = ordered_json::array();
  for (const ModeAnalysis& m : r.modes) {
    const CountReport& c = m.counts;
    ordered_json j;
    j["mode"] = c.mode;
    j["dim_E"] = c.dim_space;
    j["dof"] = c.dof;
    j["num_edges"] = c.num_edges;
    j["m"] = c.m;
    j["s"] = c.s;
    j["f"] = c.f;
    j["flex_dim"] = c.flex_dim;
    j["identity_residual"] = c.identity_residual;
    j["rigid_in_flex"] = c.rigid_in_flex;
    ordered_json flexes = ordered_json::array();
    for (std::size_t i = 0; i < m.flexes.size(); ++i) {
      flexes.push_back({{"u", vec_json(m.flexes[i].u)},
                        {"A", mat_json(m.flexes[i].A)},
                        {"raw", vec_json(m.raw_flexes[i])}});
    }
    j["flexes"] = flexes;
    ordered_json stresses = ordered_json::array();
    for (const Vec& w : m.stresses) stresses.push_back(vec_json(w));
    j["stresses"] = stresses;
    modes.push_back(j);
  }
  doc["modes"] = modes;

  ordered_json syms = ordered_json::array();
  for (const SymmetryAnalysis& a : r.symmetries) {
    const SymmetryCountReport& c = a.counts;
    ordered_json j;
    j["name"] = c.name;
    j["separable"] = c.separable;
    j["dim_F_g"] = c.dim_F_g;
    j["dim_E_g"] = c.dim_E_g;
    j["dim_H_v_g"] = c.dim_H_v_g;
    j["e_g"] = c.e_g;
    j["f_g"] = c.f_g;
    j["m_g"] = c.m_g;
    j["s_g"] = c.s_g;
    j["identity_residual"] = c.identity_residual;
    j["predictor_fires"] = c.predictor_fires;
    j["equation_residual"] = display(a.equation_residual);
    if (a.characters) {
      const CharacterRow& ch = *a.characters;
      j["characters"] = {{"space", ch.space},
                         {"trace_v", display(ch.trace_v)},
                         {"trace_e", display(ch.trace_e)},
                         {"trace_rig", display(ch.trace_rig)},
                         {"trace_flex", display(ch.trace_flex)},
                         {"trace_mech", display(ch.trace_mech)},
                         {"trace_str", display(ch.trace_str)},
                         {"residual", display(ch.residual)}};
    }
    syms.push_back(j);
  }
  doc["symmetries"] = syms;
  doc["diagnostics"] = r.diagnostics;
  doc["consistent"] = r.consistent();
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(report) : emit_text(report);
}

}  // namespace crysrig
