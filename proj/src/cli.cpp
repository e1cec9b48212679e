#include "crysrig/cli.hpp"

#include "crysrig/framework_io.hpp"
#include "crysrig/report.hpp"
#include "crysrig/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace crysrig {

namespace {

struct Source {
  std::string file;
  std::string builtin;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("file", src.file, "framework JSON file");
  cmd->add_option("--builtin", src.builtin, "built-in framework name");
}

CrystalFramework load(const Source& src, std::string& label) {
  if (src.file.empty() == src.builtin.empty()) {
    throw InvalidInput("give exactly one of a framework file or --builtin NAME");
  }
  if (!src.builtin.empty()) {
    label = src.builtin;
    return builtin_framework(src.builtin);
  }
  label = src.file;
  return parse_framework(read_file(src.file));
}

std::vector<int> parse_int_list(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("expected an integer, got '" + item + "'");
    }
    if (used != item.size()) throw InvalidInput("expected an integer, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

CellBox parse_cells(const std::string& text, int d) {
  CellBox box{CellIndex(d), CellIndex(d)};
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
      const auto ends = parse_int_list(part, ':');
      if (i >= d || ends.size() != 2) throw InvalidInput("bad cell range '" + text + "'");
      box.lo[i] = ends[0];
      box.hi[i] = ends[1];
      ++i;
    }
    if (i != d) throw InvalidInput("cell range must have " + std::to_string(d) + " axes");
  } else {
    const auto n = parse_int_list(text, 'x');
    if (static_cast<int>(n.size()) != d) {
      throw InvalidInput("cell range must have " + std::to_string(d) + " axes");
    }
    for (int i = 0; i < d; ++i) {
      if (n[i] < 1) throw InvalidInput("cell counts must be positive");
      box.lo[i] = 0;
      box.hi[i] = n[i] - 1;
    }
  }
  if ((box.hi.array() < box.lo.array()).any()) throw InvalidInput("cell range is empty");
  return box;
}

MatrixSpace parse_mode(const std::vector<std::string>& mode, int d, double tol) {
  const std::string& kind = mode.at(0);
  if (kind == "strict") return MatrixSpace::zero(d);
  if (kind == "affine") return MatrixSpace::full(d);
  if (kind != "space") throw InvalidInput("unknown mode '" + kind + "'");
  if (mode.size() < 2) throw InvalidInput("--mode space requires a SPEC");
  const std::string& spec = mode[1];
  if (spec.rfind("custom:", 0) == 0) return parse_matrix_space(read_file(spec.substr(7)), d, tol);
  if (!is_named_space(spec)) throw InvalidInput("unknown matrix space '" + spec + "'");
  return MatrixSpace::named(spec, d);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
}

int finish(AnalysisReport& report, bool json, std::ostream& out, std::ostream& err) {
  check_consistency(report);
  out << emit_report(report, json ? ReportFormat::Json : ReportFormat::Text);
  if (!report.consistent()) {
    err << "error: internal inconsistency detected\n";
    return kExitInconsistent;
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infinitesimal rigidity analysis of periodic bar-joint frameworks", "crysrig"};
  app.require_subcommand(1, 1);

  Source src;
  std::vector<std::string> mode{"strict"};
  std::optional<double> tol;
  bool json = false;
  auto* analyze = app.add_subcommand("analyze", "Maxwell-Calladine counts, flexes and stresses");
  add_source(analyze, src);
  analyze->add_option("--mode", mode, "strict | affine | space SPEC")->expected(1, 2);
  analyze->add_option("--tol", tol, "rank tolerance");
  analyze->add_flag("--json", json, "JSON output");

  std::optional<std::string> element;
  bool characters = false;
  auto* symmetry = app.add_subcommand("symmetry", "symmetry-adapted counts");
  add_source(symmetry, src);
  symmetry->add_option("--element", element, "analyse only this element");
  symmetry->add_flag("--characters", characters, "include character rows");
  symmetry->add_option("--tol", tol, "rank tolerance");
  symmetry->add_flag("--json", json, "JSON output");

  std::string multiplicities;
  std::string output;
  auto* super = app.add_subcommand("supercell", "write the n1 x ... x nd supercell");
  add_source(super, src);
  super->add_option("--n", multiplicities, "n1,...,nd")->required();
  super->add_option("-o,--output", output, "output file (default stdout)");

  std::string cells;
  auto* svg = app.add_subcommand("svg", "render a planar fragment");
  add_source(svg, src);
  svg->add_option("--cells", cells, "3x3 or a:b,c:d")->required();
  svg->add_option("-o,--output", output, "output SVG file")->required();

  auto* builtins = app.add_subcommand("builtins", "list built-in frameworks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    if (builtins->parsed()) {
      for (const auto& name : builtin_names()) out << name << "\n";
      return kExitOk;
    }

    // "--mode strict FILE" lets the file ride along as a second mode token.
    if (analyze->parsed() && mode.size() == 2 && mode[0] != "space") {
      if (!src.file.empty()) throw InvalidInput("unexpected argument '" + mode[1] + "'");
      src.file = mode[1];
      mode.resize(1);
    }

    std::string label;
    CrystalFramework fw = load(src, label);
    if (tol) {
      if (!(*tol > 0.0)) throw InvalidInput("--tol must be positive");
      fw.tolerance = *tol;
    }

    if (analyze->parsed()) {
      const MatrixSpace space = parse_mode(mode, fw.dim(), fw.tolerance);
      AnalysisReport report;
      report.summary = summarize(fw, label);
      report.modes.push_back(analyze_mode(fw, space));
      return finish(report, json, out, err);
    }
    if (symmetry->parsed()) {
      AnalysisReport report;
      report.summary = summarize(fw, label);
      report.symmetries = analyze_symmetries(fw, element, characters);
      return finish(report, json, out, err);
    }
    if (super->parsed()) {
      const auto n = parse_int_list(multiplicities, ',');
      CellIndex k(static_cast<Eigen::Index>(n.size()));
      for (std::size_t i = 0; i < n.size(); ++i) k[static_cast<Eigen::Index>(i)] = n[i];
      write_output(output, serialize_framework(supercell(fw, k)), out);
      return kExitOk;
    }
    if (svg->parsed()) {
      write_output(output, render_svg(fw, parse_cells(cells, fw.dim())), out);
      return kExitOk;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
  return kExitInputError;
}

}  // namespace crysrig
