#include "thimac/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>

#include "thimac/analysis.hpp"
#include "thimac/isomorphism.hpp"
#include "thimac/parser.hpp"
#include "thimac/render.hpp"
#include "thimac/runs.hpp"
#include "thimac/simulator.hpp"
#include "thimac/validator.hpp"

namespace thimac {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model is invalid; diagnostics already reported.
struct Invalid {};

void emit_block(std::ostream& out, const json& j) { out << "```json\n" << j.dump(2) << "\n```\n"; }

json to_json(const Diagnostic& d) {
  return {{"code", d.code},
          {"severity", d.severity == Severity::Error ? "error" : "warning"},
          {"file", d.span.file},
          {"line", d.span.line},
          {"column", d.span.column},
          {"message", d.message},
          {"elements", d.elements}};
}

json to_json(const CoverageReport& r) {
  json stages = json::array();
  for (const auto& s : r.uncovered_stages) stages.push_back(to_string(s));
  return {{"uncovered_stages", stages},
          {"uncovered_arcs", r.uncovered_arcs},
          {"multiply_covered", r.multiply_covered},
          {"total", r.total()}};
}

void report(std::ostream& err, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) err << format(d) << '\n';
}

Document load(const std::string& path, std::ostream& err) {
  try {
    return parse(read_source(path));
  } catch (const ParseError& e) {
    report(err, e.diagnostics());
    throw Invalid{};
  }
}

/// Analysis that must be free of errors.
Analysis load_valid(const Document& doc, std::ostream& err) {
  Analysis a = analyze(doc);
  if (!a.ok()) {
    report(err, a.diagnostics);
    throw Invalid{};
  }
  return a;
}

const Chronology& pick_chronology(const Analysis& a, const std::string& id) {
  if (a.chronologies.count(id) == 0) throw UsageError("unknown chronology '" + id + "'");
  return a.chronologies.at(id);
}

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
  Document doc = load(file, err);
  Analysis a = analyze(doc);
  report(err, a.diagnostics);
  std::size_t errors = 0, warnings = 0;
  json diags = json::array();
  for (const auto& d : a.diagnostics) {
    (d.severity == Severity::Error ? errors : warnings)++;
    diags.push_back(to_json(d));
  }
  out << (a.ok() ? "valid" : "invalid") << ": " << errors << " error(s), " << warnings
      << " warning(s)\n";
  json j = {{"command", "check"},     {"file", file},         {"valid", a.ok()},
            {"errors", errors},       {"warnings", warnings}, {"diagnostics", diags},
            {"subdiagrams", doc.subdiagrams.size()}, {"events", doc.events.size()},
            {"chronologies", doc.chronologies.size()}};
  if (a.coverage) {
    out << format_coverage(*a.coverage);
    j["coverage"] = to_json(*a.coverage);
  }
  emit_block(out, j);
  return a.ok() ? kExitOk : kExitFalse;
}

int cmd_desugar(const std::string& file, std::ostream& out, std::ostream& err) {
  Document doc = load(file, err);
  load_valid(doc, err);
  try {
    out << print(desugar_document(doc));
  } catch (const DesugarError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFalse;
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& file, const std::string& chron_id,
                 const std::string& trace_id, std::ostream& out, std::ostream& err) {
  Document doc = load(file, err);
  Analysis a = load_valid(doc, err);
  const Chronology& chron = pick_chronology(a, chron_id);
  const TraceDecl* trace = doc.find_trace(trace_id);
  if (!trace) throw UsageError("unknown trace '" + trace_id + "'");
  Verdict v = evaluate_trace(chron, *trace);
  json j = {{"command", "evaluate"}, {"chronology", chron_id}, {"trace", trace_id},
            {"truth", v.truth},      {"summary", v.summary()}};
  if (v.truth) {
    j["run"] = v.run;
    out << v.summary() << '\n';
  } else {
    err << v.summary() << '\n';
    j["reason"] = {{"kind", to_string(v.violation->kind)},
                   {"events", v.violation->events},
                   {"group", v.violation->group},
                   {"detail", v.violation->detail}};
  }
  emit_block(out, j);
  return v.truth ? kExitOk : kExitFalse;
}

int cmd_simulate(const std::string& file, const std::string& chron_id,
                 const std::optional<std::uint64_t>& seed, const std::vector<std::string>& choose,
                 std::ostream& out, std::ostream& err) {
  if (seed.has_value() == !choose.empty())
    throw UsageError("simulate needs exactly one of --seed or --choose");
  Document doc = load(file, err);
  load_valid(doc, err);
  if (doc.model.notation == Notation::Simplified) doc = desugar_document(doc);
  Analysis a = load_valid(doc, err);
  const Chronology& chron = pick_chronology(a, chron_id);
  BranchPolicy policy = Seeded{};
  if (seed) {
    policy = Seeded{*seed};
  } else {
    Scripted script;
    for (const auto& c : choose) {
      auto eq = c.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == c.size())
        throw UsageError("--choose expects group=event, got '" + c + "'");
      script.choices[c.substr(0, eq)] = c.substr(eq + 1);
    }
    policy = std::move(script);
  }
  try {
    out << print_trace(simulate(*a.model, a.subdiagrams, chron, policy));
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFalse;
  }
  return kExitOk;
}

int cmd_runs(const std::string& file, const std::string& chron_id, std::size_t bound,
             std::ostream& out, std::ostream& err) {
  Document doc = load(file, err);
  Analysis a = load_valid(doc, err);
  const Chronology& chron = pick_chronology(a, chron_id);
  std::vector<std::vector<EventId>> runs;
  try {
    runs = enumerate_runs(chron, bound);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitFalse;
  }
  for (const auto& run : runs) {
    out << '[';
    for (std::size_t i = 0; i < run.size(); ++i) out << (i ? "," : "") << run[i];
    out << "]\n";
  }
  emit_block(out, {{"command", "runs"}, {"chronology", chron_id}, {"count", runs.size()},
                   {"runs", runs}});
  return kExitOk;
}

int cmd_render(const std::string& file, const std::string& level, const std::string& output,
               const std::string& chron_id, const std::vector<std::string>& highlight,
               bool flat, std::ostream& out, std::ostream& err) {
  auto lvl = parse_render_level(level);
  if (!lvl) throw UsageError("unknown level '" + level + "'");
  Document doc = load(file, err);
  load_valid(doc, err);
  if (!chron_id.empty() && !doc.find_chronology(chron_id))
    throw UsageError("unknown chronology '" + chron_id + "'");
  RenderOptions opt{*lvl, {highlight.begin(), highlight.end()}, !flat, chron_id};
  std::string dot;
  try {
    dot = to_dot(doc, opt);
  } catch (const UnknownHighlightId& e) {
    throw UsageError(e.what());
  }
  if (output.empty()) {
    out << dot;
    return kExitOk;
  }
  std::ofstream f(output, std::ios::binary);
  if (!(f << dot)) throw IoError("cannot write '" + output + "'");
  return kExitOk;
}

int cmd_iso(const std::string& a_file, const std::string& b_file, std::size_t bound,
            bool normalize, std::ostream& out, std::ostream& err) {
  auto model_of = [&](const std::string& file) {
    Document doc = load(file, err);
    Analysis a = load_valid(doc, err);
    if (normalize && a.model->notation() == Notation::Simplified) return desugar(*a.model).model;
    return *a.model;
  };
  StaticModel a = model_of(a_file);
  StaticModel b = model_of(b_file);
  IsoResult r;
  try {
    r = models_isomorphic(a, b, bound);
  } catch (const SizeLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << (r.isomorphic ? "true" : "false") << '\n';
  json j = {{"command", "iso"}, {"isomorphic", r.isomorphic}};
  if (r.isomorphic) j["mapping"] = r.mapping;
  emit_block(out, j);
  return r.isomorphic ? kExitOk : kExitFalse;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thinging machine modeling toolkit", "thimac"};
  app.require_subcommand(1);

  std::string file, file_b, chron_id, trace_id, level, output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> choose, highlight;
  std::size_t run_bound = kDefaultRunBound, iso_bound = kDefaultIsoBound;
  bool flat = false, normalize = false;

  auto* check = app.add_subcommand("check", "Parse and validate a document");
  check->add_option("file", file, "Model file")->required();

  auto* desugar_cmd = app.add_subcommand("desugar", "Print the full-notation document");
  desugar_cmd->add_option("file", file, "Model file")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Judge a trace against a chronology");
  evaluate->add_option("file", file, "Model file")->required();
  evaluate->add_option("--chronology", chron_id, "Chronology id")->required();
  evaluate->add_option("--trace", trace_id, "Trace id")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Produce a trace by token simulation");
  simulate_cmd->add_option("file", file, "Model file")->required();
  simulate_cmd->add_option("--chronology", chron_id, "Chronology id")->required();
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Random branch seed");
  simulate_cmd->add_option("--choose", choose, "Scripted choice group=event")
      ->excludes(seed_opt);

  auto* runs = app.add_subcommand("runs", "List every complete run");
  runs->add_option("file", file, "Model file")->required();
  runs->add_option("--chronology", chron_id, "Chronology id")->required();
  runs->add_option("--bound", run_bound, "Maximum number of runs");

  auto* render = app.add_subcommand("render", "Emit DOT text");
  render->add_option("file", file, "Model file")->required();
  render->add_option("--level", level, "static, overlay or behavior")
      ->required()
      ->check(CLI::IsMember({"static", "overlay", "behavior"}));
  render->add_option("-o,--output", output, "Output file");
  render->add_option("--chronology", chron_id, "Chronology for the behavior level");
  render->add_option("--highlight", highlight, "Ids to emphasize");
  render->add_flag("--flat", flat, "Do not nest clusters");

  auto* iso = app.add_subcommand("iso", "Check two models for isomorphism");
  iso->add_option("file_a", file, "First model")->required();
  iso->add_option("file_b", file_b, "Second model")->required();
  iso->add_option("--bound", iso_bound, "Maximum number of thimacs");
  iso->add_flag("--desugar", normalize, "Compare simplified models after desugaring");

  std::vector<const char*> argv{"thimac"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file, out, err);
    if (desugar_cmd->parsed()) return cmd_desugar(file, out, err);
    if (evaluate->parsed()) return cmd_evaluate(file, chron_id, trace_id, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(file, chron_id, seed, choose, out, err);
    if (runs->parsed()) return cmd_runs(file, chron_id, run_bound, out, err);
    if (render->parsed())
      return cmd_render(file, level, output, chron_id, highlight, flat, out, err);
    if (iso->parsed()) return cmd_iso(file, file_b, iso_bound, normalize, out, err);
  } catch (const Invalid&) {
    return kExitFalse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace thimac
