#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpm/adversary.hpp"
#include "cpm/coordinated_attack.hpp"
#include "cpm/dot.hpp"
#include "cpm/error.hpp"
#include "cpm/formula.hpp"
#include "cpm/json_io.hpp"
#include "cpm/semantics.hpp"
#include "cpm/verify.hpp"

namespace cpm::cli {

namespace {

namespace fs = std::filesystem;

// Raised for command-line mistakes the parser itself cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(Errc::invalid_argument, "cannot write '" + path.string() + "'");
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
      out_ << text;
    } else {
      write_file(path, text);
    }
  }

  void flush_warnings(Warnings& warnings) {
    for (const auto& w : warnings) err_ << "warning: " << w << "\n";
    warnings.clear();
  }

  EpistemicModel load_model(const std::string& path) {
    Warnings warnings;
    auto m = model_from_json(parse_json(read_file(path)), &warnings);
    flush_warnings(warnings);
    return m;
  }

  Adversary load_adversary(const std::string& path) {
    Warnings warnings;
    auto adv = adversary_from_json(parse_json(read_file(path)), &warnings);
    flush_warnings(warnings);
    return adv;
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

Roster roster_arg(const std::string& agents) {
  auto names = split(agents, ',');
  if (names.size() < 2) throw UsageError("--agents needs at least two agents");
  return Roster(std::move(names));
}

// `0,1` gives every agent the same domain; `a=d,n b=none` sets per-agent
// domains.
InputSpace inputs_arg(const Roster& roster, const std::vector<std::string>& items) {
  if (items.empty()) throw UsageError("--inputs is required");
  if (items.size() == 1 && items[0].find('=') == std::string::npos) {
    return InputSpace::uniform(roster.size(), split(items[0], ','));
  }
  std::vector<std::vector<Value>> domains(roster.size());
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("mix of shared and per-agent --inputs");
    auto a = roster.find(item.substr(0, eq));
    if (!a) throw UsageError("--inputs names unknown agent '" + item.substr(0, eq) + "'");
    domains[*a] = split(item.substr(eq + 1), ',');
  }
  for (std::size_t a = 0; a < roster.size(); ++a) {
    if (domains[a].empty()) throw UsageError("no --inputs given for '" + roster[a] + "'");
  }
  return InputSpace::per_agent(std::move(domains));
}

std::size_t model_round(const EpistemicModel& model) {
  const auto r = model.world(0).id.rounds();
  for (const auto& w : model.worlds()) {
    if (w.id.rounds() != r) fail(Errc::invalid_argument, "worlds of the model belong to different rounds");
  }
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session(out, err);
  CLI::App app{"Communication pattern models for full-information protocols", "cpm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // init
  std::string agents, out_path;
  std::vector<std::string> inputs;
  auto* init = app.add_subcommand("init", "Write the initial model for a roster and input space");
  init->add_option("--agents", agents, "Comma-separated agent names")->required();
  init->add_option("--inputs", inputs, "Shared values `0,1` or per agent `a=d,n`")->required();
  init->add_option("--out", out_path, "Output file (default stdout)");

  // iis
  auto* iis = app.add_subcommand("iis", "Write the IIS adversary for a roster");
  iis->add_option("--agents", agents, "Comma-separated agent names")->required();
  iis->add_option("--out", out_path, "Output file (default stdout)");

  // step
  std::string model_path, cpm_path, adversary_path;
  std::size_t rounds = 1;
  auto* step = app.add_subcommand("step", "Apply pattern-model products to a model");
  step->add_option("--model", model_path, "Model JSON")->required();
  auto* step_cpm = step->add_option("--cpm", cpm_path, "Pattern model JSON, applied once");
  auto* step_adv = step->add_option("--adversary", adversary_path,
                                    "Adversary JSON; rounds continue from the model's provenance");
  auto* step_rounds = step->add_option("--rounds", rounds, "Rounds to apply with --adversary");
  step_cpm->excludes(step_adv);
  step_rounds->needs(step_adv);
  step->add_option("--out", out_path, "Output file (default stdout)");

  // check
  std::string world, formula_text;
  auto* check = app.add_subcommand("check", "Evaluate a formula at a world");
  check->add_option("--model", model_path, "Model JSON")->required();
  check->add_option("--world", world, "World id, e.g. (0,1)|{a}{b}")->required();
  check->add_option("--formula", formula_text, "Formula text")->required();

  // export
  std::string format = "dot", action_path;
  auto* exp = app.add_subcommand("export", "Render a model, update model or adversary graphs");
  auto* exp_model = exp->add_option("--model", model_path, "Model JSON");
  auto* exp_cpm = exp->add_option("--cpm", cpm_path, "Pattern model JSON");
  auto* exp_action = exp->add_option("--action", action_path, "Action model JSON");
  auto* exp_adv = exp->add_option("--adversary", adversary_path,
                                  "Adversary JSON; one file per graph with --out DIR");
  exp->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  exp->add_option("--out", out_path, "Output file, or directory for adversary graphs");
  for (auto* a : {exp_model, exp_cpm, exp_action, exp_adv}) {
    for (auto* b : {exp_model, exp_cpm, exp_action, exp_adv}) {
      if (a != b) a->excludes(b);
    }
  }

  // verify
  bool use_iis = false, break_odot = false;
  std::size_t cap = VerifyOptions{}.world_cap;
  auto* verify = app.add_subcommand("verify", "Check the pattern-model sequence against the protocol");
  auto* v_iis = verify->add_flag("--iis", use_iis, "Use the IIS adversary over --agents");
  verify->add_option("--agents", agents, "Roster for --iis")->needs(v_iis);
  auto* v_adv = verify->add_option("--adversary", adversary_path, "Adversary JSON");
  v_iis->excludes(v_adv);
  verify->add_option("--inputs", inputs, "Shared values `0,1` or per agent `a=d,n`")->required();
  verify->add_option("--rounds", rounds, "Rounds to verify")->required();
  verify->add_option("--cap", cap, "Maximum number of product worlds");
  verify->add_flag("--break-odot", break_odot,
                   "Debug: drop the in-neighborhood clauses of the product");
  verify->add_option("--out", out_path, "Report file (default stdout)");

  // fixture
  std::string preferences = "d,n", out_dir;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in example");
  fixture->require_subcommand(1);
  auto* attack = fixture->add_subcommand("coordinated-attack", "Two generals over a lossy link");
  attack->add_option("--preferences", preferences, "a's preferences, comma-separated");
  attack->add_option("--out-dir", out_dir,
                     "Write model/action/cpm/adversary JSON files here (default: one bundle "
                     "on stdout)");

  std::vector<std::string> argv_store{"cpm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*init) {
      auto roster = roster_arg(agents);
      auto model = build_initial_model(roster, inputs_arg(roster, inputs));
      session.emit(dump(model_to_json(model)), out_path);
      return kOk;
    }

    if (*iis) {
      session.emit(dump(adversary_to_json(iis_adversary(roster_arg(agents)))), out_path);
      return kOk;
    }

    if (*step) {
      if (cpm_path.empty() && adversary_path.empty()) {
        throw UsageError("step needs --cpm or --adversary");
      }
      if (!adversary_path.empty() && rounds == 0) {
        // Nothing to apply: reproduce the input exactly, after validating it.
        auto text = read_file(model_path);
        session.load_model(model_path);
        session.emit(text, out_path);
        return kOk;
      }
      auto model = session.load_model(model_path);
      if (!cpm_path.empty()) {
        auto patterns = cpm_from_json(parse_json(read_file(cpm_path)));
        model = product_cpm(model, patterns);
      } else {
        auto adv = session.load_adversary(adversary_path);
        CpmSequence sequence(adv, model.inputs());
        const auto done = model_round(model);
        for (std::size_t i = done + 1; i <= done + rounds; ++i) {
          model = product_cpm(model, *sequence.at(i));
        }
      }
      session.emit(dump(model_to_json(model)), out_path);
      return kOk;
    }

    if (*check) {
      auto model = session.load_model(model_path);
      auto f = parse_formula(formula_text);
      bool verdict = satisfies(model, world, f);
      out << (verdict ? "true" : "false") << "\n";
      return verdict ? kOk : kFalse;
    }

    if (*exp) {
      if (model_path.empty() && cpm_path.empty() && action_path.empty() &&
          adversary_path.empty()) {
        throw UsageError("export needs one of --model, --cpm, --action, --adversary");
      }
      const bool dot = format == "dot";
      if (!model_path.empty()) {
        auto m = session.load_model(model_path);
        session.emit(dot ? model_to_dot(m) : dump(model_to_json(m)), out_path);
      } else if (!cpm_path.empty()) {
        auto p = cpm_from_json(parse_json(read_file(cpm_path)));
        session.emit(dot ? cpm_to_dot(p) : dump(cpm_to_json(p)), out_path);
      } else if (!action_path.empty()) {
        auto a = action_model_from_json(parse_json(read_file(action_path)));
        session.emit(dot ? action_model_to_dot(a) : dump(action_model_to_json(a)), out_path);
      } else {
        auto adv = session.load_adversary(adversary_path);
        if (out_path.empty()) {
          for (const auto& g : adv.graphs()) out << (dot ? graph_to_dot(g) : dump(graph_to_json(g)));
        } else {
          fs::create_directories(out_path);
          std::size_t index = 0;
          for (const auto& g : adv.graphs()) {
            // Graph ids contain braces and commas; files are numbered in id
            // order and the id is kept inside the file.
            auto name = "graph" + std::to_string(index++) + (dot ? ".dot" : ".json");
            write_file(fs::path(out_path) / name, dot ? graph_to_dot(g) : dump(graph_to_json(g)));
          }
        }
      }
      return kOk;
    }

    if (*verify) {
      if (!use_iis && adversary_path.empty()) throw UsageError("verify needs --iis or --adversary");
      auto adv = use_iis ? iis_adversary(roster_arg(agents)) : session.load_adversary(adversary_path);
      auto space = inputs_arg(adv.agents(), inputs);
      VerifyOptions options;
      options.world_cap = cap;
      options.break_odot = break_odot;
      auto report = verify_reflects(adv, space, rounds, options);
      session.emit(dump(report_to_json(report)), out_path);
      if (!report.pass) {
        err << "verification failed: " << report.mismatched_pairs
            << " world pairs disagree with configuration indistinguishability\n";
      }
      return report.pass ? kOk : kFalse;
    }

    if (*attack) {
      auto fx = build_coordinated_attack_fixture(split(preferences, ','));
      if (out_dir.empty()) {
        Json bundle;
        bundle["model"] = model_to_json(fx.model);
        bundle["action"] = action_model_to_json(fx.action);
        bundle["cpm"] = cpm_to_json(fx.patterns);
        bundle["adversary"] = adversary_to_json(fx.adversary);
        out << dump(bundle);
      } else {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "model.json", dump(model_to_json(fx.model)));
        write_file(fs::path(out_dir) / "action.json", dump(action_model_to_json(fx.action)));
        write_file(fs::path(out_dir) / "cpm.json", dump(cpm_to_json(fx.patterns)));
        write_file(fs::path(out_dir) / "adversary.json", dump(adversary_to_json(fx.adversary)));
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kInvalid;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}

}  // namespace cpm::cli
