// nc — narrative categories: schemas, instances, Kleisli laws, narrative
// programs and composed wiring diagrams, end to end on flat files.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nc/io.hpp"
#include "nc/kleisli.hpp"
#include "nc/render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    nc::io::write_file(out_path, content);
}

struct PipelineArgs {
  std::string plan_path, corpus_path, actants_path;
  bool expand = false;

  nc::OpenHypergraph evaluate_plan(nc::TermPtr* term_out = nullptr) const {
    nc::NPCorpus corpus = nc::io::load_corpus(corpus_path, actants_path);
    nc::TrajectoryPlan plan = nc::io::load_plan(plan_path);
    nc::TermPtr term = expand ? nc::expand_trajectory(corpus, plan)
                              : nc::build_trajectory(corpus, plan);
    if (term_out) *term_out = term;
    return nc::evaluate(term);
  }

  void add_options(CLI::App* cmd) {
    cmd->add_option("--plan", plan_path, "trajectory plan file")->required();
    cmd->add_option("--corpus", corpus_path, "narrative-program table CSV")->required();
    cmd->add_option("--actants", actants_path, "actant table CSV")->required();
    cmd->add_flag("--expand", expand, "substitute registered definitions for dependent NPs");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"narrative categories toolkit"};
  app.require_subcommand(1);

  // schema validate | builtin
  auto* schema_cmd = app.add_subcommand("schema", "categorical schemas");
  schema_cmd->require_subcommand(1);
  std::string schema_file;
  auto* schema_validate = schema_cmd->add_subcommand("validate", "check schema well-formedness");
  schema_validate->add_option("file", schema_file, "schema file")->required();
  std::string builtin_name, emit_path;
  auto* schema_builtin = schema_cmd->add_subcommand("builtin", "emit a built-in schema");
  schema_builtin->add_option("name", builtin_name, "A, A_refined, A_prime or N")->required();
  schema_builtin->add_option("--emit,-o", emit_path, "output file (default stdout)");

  // instance check
  auto* instance_cmd = app.add_subcommand("instance", "tabular instances");
  instance_cmd->require_subcommand(1);
  std::string inst_schema, inst_dir;
  auto* instance_check = instance_cmd->add_subcommand("check", "load tables and verify functoriality");
  instance_check->add_option("--schema", inst_schema, "schema file")->required();
  instance_check->add_option("--tables", inst_dir, "directory of <vertex>.csv files")->required();

  // laws
  std::string monad_name;
  int max_carrier = 4, max_list_len = 3;
  auto* laws_cmd = app.add_subcommand("laws", "exhaustive monad/Kleisli law checks");
  laws_cmd->add_option("--monad", monad_name, "list or maybe")->required();
  laws_cmd->add_option("--max-carrier", max_carrier, "largest carrier size")
      ->check(CLI::Range(1, 4));
  laws_cmd->add_option("--max-list-len", max_list_len, "list length bound")
      ->check(CLI::Range(1, 3));

  // np parse | formula | order
  auto* np_cmd = app.add_subcommand("np", "narrative programs");
  np_cmd->require_subcommand(1);
  std::string np_csv, np_actants, np_id;
  bool np_inline = false, np_ascii = false;
  auto* np_parse = np_cmd->add_subcommand("parse", "parse and validate an NP table");
  np_parse->add_option("csv", np_csv, "NP table CSV")->required();
  np_parse->add_option("--actants", np_actants, "actant table CSV")->required();
  auto* np_formula = np_cmd->add_subcommand("formula", "emit Greimas formula notation");
  np_formula->add_option("id", np_id, "NP id")->required();
  np_formula->add_option("--corpus", np_csv, "NP table CSV")->required();
  np_formula->add_option("--actants", np_actants, "actant table CSV")->required();
  np_formula->add_flag("--inline", np_inline, "expand dependencies recursively");
  np_formula->add_flag("--ascii", np_ascii, "ASCII junction symbols");
  auto* np_order = np_cmd->add_subcommand("order", "print a dependency-respecting order");
  np_order->add_option("--corpus", np_csv, "NP table CSV")->required();
  np_order->add_option("--actants", np_actants, "actant table CSV")->required();

  // trajectory build
  auto* traj_cmd = app.add_subcommand("trajectory", "composed wiring diagrams");
  traj_cmd->require_subcommand(1);
  PipelineArgs traj_args;
  std::string traj_out;
  auto* traj_build = traj_cmd->add_subcommand("build", "build a trajectory and emit DOT");
  traj_args.add_options(traj_build);
  traj_build->add_option("-o,--output", traj_out, "output file (default stdout)");

  // render
  PipelineArgs render_args;
  std::string render_out, format_name = "dot", rank_name = "lr";
  bool show_roles = false, render_ascii = false;
  auto* render_cmd = app.add_subcommand("render", "render a trajectory diagram");
  render_args.add_options(render_cmd);
  render_cmd->add_option("--format", format_name, "dot, svg or text")
      ->check(CLI::IsMember({"dot", "svg", "text"}));
  render_cmd->add_option("--rank-dir", rank_name, "lr or tb")->check(CLI::IsMember({"lr", "tb"}));
  render_cmd->add_flag("--show-roles", show_roles, "label wires entity_Role");
  render_cmd->add_flag("--ascii", render_ascii, "ASCII junction symbols");
  render_cmd->add_option("-o,--output", render_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*schema_validate) {
      nc::Schema s = nc::io::load_schema(schema_file);
      nc::ValidationReport report = validate_schema(s);
      std::cout << report.to_string();
      return report.ok() ? kExitOk : kExitValidation;
    }
    if (*schema_builtin) {
      emit(nc::serialize_schema(nc::builtin_schema(builtin_name)), emit_path);
      return kExitOk;
    }
    if (*instance_check) {
      nc::Schema s = nc::io::load_schema(inst_schema);
      nc::ValidationReport schema_report = validate_schema(s);
      if (!schema_report.ok()) {
        std::cout << schema_report.to_string();
        return kExitValidation;
      }
      nc::Instance inst = nc::io::load_instance_dir(s, inst_dir);
      nc::ValidationReport report = check_functoriality(inst);
      std::cout << report.to_string();
      return report.ok() ? kExitOk : kExitValidation;
    }
    if (*laws_cmd) {
      auto carriers = nc::default_carriers(max_carrier);
      nc::LawReport report;
      if (monad_name == "list")
        report = nc::check_monad_laws<nc::ListMonad>(carriers, max_list_len);
      else if (monad_name == "maybe")
        report = nc::check_monad_laws<nc::MaybeMonad>(carriers, max_list_len);
      else
        throw nc::error("unknown monad '" + monad_name + "' (expected list or maybe)");
      std::cout << report.to_string();
      return report.ok() ? kExitOk : kExitValidation;
    }
    if (*np_parse) {
      nc::NPCorpus corpus = nc::io::load_corpus(np_csv, np_actants);
      std::cout << "parsed " << corpus.programs.size() << " narrative programs over "
                << corpus.actants.size() << " actants\n";
      for (const auto& p : corpus.programs)
        std::cout << "  " << p.id << " " << junction_symbol(p.junction, true)
                  << (p.depends_on ? " depends on " + *p.depends_on : " basic") << ", "
                  << p.participant_count() << " participant(s)\n";
      return kExitOk;
    }
    if (*np_formula) {
      nc::NPCorpus corpus = nc::io::load_corpus(np_csv, np_actants);
      std::cout << emit_formula(corpus, np_id, {np_inline, np_ascii}) << "\n";
      return kExitOk;
    }
    if (*np_order) {
      nc::NPCorpus corpus = nc::io::load_corpus(np_csv, np_actants);
      for (const auto& id : dependency_order(corpus)) std::cout << id << "\n";
      return kExitOk;
    }
    if (*traj_build) {
      emit(render_dot(traj_args.evaluate_plan()), traj_out);
      return kExitOk;
    }
    if (*render_cmd) {
      nc::RenderOptions opts;
      opts.format = format_name == "svg"
                        ? nc::RenderFormat::Svg
                        : format_name == "text" ? nc::RenderFormat::Text : nc::RenderFormat::Dot;
      opts.show_roles = show_roles;
      opts.ascii = render_ascii;
      opts.rank_direction =
          rank_name == "tb" ? nc::RankDirection::TopToBottom : nc::RankDirection::LeftToRight;
      emit(nc::render(render_args.evaluate_plan(), opts), render_out);
      return kExitOk;
    }
  } catch (const nc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
