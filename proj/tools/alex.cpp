// Command-line front end: computes invariants of weighted presentations,
// checks pencil structure of polynomial families, predicts and verifies
// union invariants, and drives skew reduction sessions.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "alex/alexander.hpp"
#include "alex/pencil.hpp"
#include "alex/presentations.hpp"
#include "alex/skew.hpp"
#include "alex/unions.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

alex::WeightedPresentation resolve_presentation(const std::string& arg) {
  if (auto entry = alex::corpus_lookup(arg)) return entry->pres;
  alex::WeightedPresentation p = alex::parse_presentation(read_file(arg));
  auto bad = alex::validate(p);
  if (!bad.empty()) {
    std::string msg = "invalid presentation '" + arg + "':";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw std::invalid_argument(msg);
  }
  return p;
}

json record_json(const alex::InvariantRecord& r) {
  json j;
  j["m"] = r.m;
  j["l"] = r.l;
  j["s"] = r.s;
  j["multi"] = alex::print_laurent(r.multi);
  j["uni"] = alex::print_laurent(r.uni);
  if (r.d0.infinite) {
    j["delta0"] = "infinite";
  } else {
    j["delta0"] = r.d0.value;
  }
  return j;
}

json prediction_json(const alex::PredictionReport& p) {
  json j;
  j["level0"] = {{"value", alex::to_string(p.level0.value)},
                 {"rule", p.level0.rule},
                 {"detail", p.level0.detail}};
  j["higher"] = {{"value", alex::to_string(p.higher.value)},
                 {"rule", p.higher.rule},
                 {"detail", p.higher.detail}};
  j["finite_all"] = p.finite_all;
  j["finite_rule"] = p.finite_rule;
  j["multi"] = {{"kind", alex::to_string(p.multi.kind)},
                {"max_power", p.multi.max_power},
                {"rule", p.multi.rule},
                {"detail", p.multi.detail}};
  return j;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "YES") return true;
  if (s == "0" || s == "false" || s == "no" || s == "NO") return false;
  throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

alex::Finiteness parse_finiteness(const std::string& s) {
  if (s == "finite" || s == "FINITE") return alex::Finiteness::FINITE;
  if (s == "infinite" || s == "INFINITE") return alex::Finiteness::INFINITE;
  if (s == "unknown" || s == "UNKNOWN") return alex::Finiteness::UNKNOWN;
  throw std::invalid_argument("finiteness flag must be finite|infinite|unknown");
}

alex::ComponentMeta meta_for(const std::string& arg,
                             const alex::WeightedPresentation& p) {
  alex::ComponentMeta meta;
  meta.components = p.components;
  long total = 0;
  bool known = !p.degrees.empty();
  for (long d : p.degrees) {
    if (d <= 0) known = false;
    total += d;
  }
  meta.degree = known ? total : 0;
  if (auto entry = alex::corpus_lookup(arg)) {
    meta.irreducible = entry->irreducible;
    switch (entry->delta0_class) {
      case 1: meta.delta0_class = alex::Delta0Class::ZERO; break;
      case 2: meta.delta0_class = alex::Delta0Class::FINITE_NONZERO; break;
      case 3: meta.delta0_class = alex::Delta0Class::INFINITE; break;
      default: meta.delta0_class = alex::Delta0Class::UNKNOWN; break;
    }
    switch (entry->pencil_class) {
      case 1: meta.pencil_type = alex::PencilType::YES; break;
      case 2: meta.pencil_type = alex::PencilType::NO; break;
      default: meta.pencil_type = alex::PencilType::UNKNOWN; break;
    }
    switch (entry->higher_class) {
      case 1: meta.higher[0] = alex::Finiteness::FINITE; break;
      case 2: meta.higher[0] = alex::Finiteness::INFINITE; break;
      default: break;
    }
  }
  return meta;
}

int cmd_record(const std::string& verb, const std::string& arg) {
  alex::WeightedPresentation p = resolve_presentation(arg);
  if (verb == "delta0") {
    alex::Delta0 d = alex::delta0(p);
    json j;
    if (d.infinite) {
      j["delta0"] = "infinite";
    } else {
      j["delta0"] = d.value;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  alex::InvariantRecord r = alex::invariant_record(p);
  std::cout << record_json(r).dump(1) << "\n";
  return 0;
}

int cmd_pencil(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<alex::AffinePoly> polys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = line;
    t.erase(0, t.find_first_not_of(" \t\r\n"));
    if (t.empty() || t.find_first_not_of(" \t\r\n") == std::string::npos) {
      continue;
    }
    try {
      polys.push_back(alex::parse_affine(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  alex::PencilVerdict v = alex::pencil_check(polys);
  json j;
  j["pencil"] = v.pencil;
  if (v.pencil) {
    j["witness"] = alex::print_affine(v.witness);
    json ls = json::array();
    for (const auto& l : v.lambdas) ls.push_back(l.get_str());
    j["lambdas"] = ls;
  } else {
    j["reason"] = v.reason;
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

int cmd_union(const std::string& left_arg, const std::string& right_arg,
              bool verify, const std::string& left_irred,
              const std::string& right_pencil, const std::string& finiteness) {
  alex::WeightedPresentation left = resolve_presentation(left_arg);
  alex::WeightedPresentation right = resolve_presentation(right_arg);
  alex::ComponentMeta lm = meta_for(left_arg, left);
  alex::ComponentMeta rm = meta_for(right_arg, right);
  if (!left_irred.empty()) lm.irreducible = parse_bool(left_irred);
  if (!right_pencil.empty()) {
    rm.pencil_type = parse_bool(right_pencil) ? alex::PencilType::YES
                                              : alex::PencilType::NO;
  }
  if (!finiteness.empty()) {
    std::istringstream fs(finiteness);
    std::string item;
    while (std::getline(fs, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--finiteness items must look like n=FLAG");
      }
      rm.higher[std::stoi(item.substr(0, eq))] =
          parse_finiteness(item.substr(eq + 1));
    }
  }
  json j;
  int rc = 0;
  if (verify) {
    alex::CrosscheckReport rep = alex::crosscheck(left, right, lm, rm);
    j["prediction"] = prediction_json(rep.predicted);
    j["computed"] = record_json(rep.computed);
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["all_pass"] = rep.all_pass;
    if (!rep.all_pass) rc = 1;
  } else {
    j["prediction"] = prediction_json(alex::predict_union(lm, rm));
  }
  std::cout << j.dump(1) << "\n";
  return rc;
}

int cmd_skew(const std::string& arg, int level_n, const std::string& facts_path,
             const std::string& script_path, bool auto_mode) {
  if (level_n < 0) throw std::invalid_argument("--level must be >= 0");
  if (script_path.empty() == !auto_mode) {
    throw std::invalid_argument("choose exactly one of --script or --auto");
  }
  alex::WeightedPresentation p = resolve_presentation(arg);
  alex::FactSet facts;
  if (!facts_path.empty()) {
    facts = alex::parse_facts(read_file(facts_path), p.alphabet());
  }
  int level = level_n == 0 ? 0 : 1;
  alex::ScriptResult res =
      auto_mode ? alex::run_auto(p, facts, level)
                : alex::run_script(p, facts, level, read_file(script_path));
  json j;
  j["level"] = level_n;
  j["mode"] = auto_mode ? "auto" : "script";
  j["ok"] = res.ok;
  if (!res.ok) {
    j["failed_move"] = res.failed_move;
    j["error"] = res.error;
  }
  if (res.readout) {
    json r;
    r["conclusive"] = res.readout->conclusive;
    if (res.readout->conclusive) {
      r["delta"] = res.readout->delta;
    } else {
      r["reason"] = res.readout->reason;
    }
    r["diagonal"] = res.readout->diagonal;
    r["deletions"] = res.readout->deletions;
    j["readout"] = r;
  }
  j["replay_identical"] = res.replay_identical;
  j["ledger"] = json::parse(res.ledger);
  std::cout << j.dump(1) << "\n";
  return res.ok ? 0 : 1;
}

int cmd_examples(const std::vector<std::string>& args) {
  if (args.empty() || args[0] == "list") {
    json out = json::array();
    for (const auto& name : alex::corpus_names()) {
      auto entry = alex::corpus_lookup(name);
      // Parameterized family names (like "parallel-lines:k") only resolve
      // once a concrete count is substituted.
      std::string summary =
          entry ? entry->summary
                : "family; substitute a count for k, e.g. parallel-lines:3";
      out.push_back({{"name", name}, {"summary", summary}});
    }
    std::cout << out.dump(1) << "\n";
    return 0;
  }
  if (args[0] == "show") {
    if (args.size() < 2) {
      throw std::invalid_argument("examples show needs a name");
    }
    auto entry = alex::corpus_lookup(args[1]);
    if (!entry) throw std::invalid_argument("unknown example: " + args[1]);
    json j;
    j["name"] = entry->name;
    j["summary"] = entry->summary;
    j["presentation"] = alex::print_presentation(entry->pres);
    std::cout << j.dump(1) << "\n";
    return 0;
  }
  throw std::invalid_argument("examples accepts 'list' or 'show NAME'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alexander-type invariants of plane-curve presentations"};
  app.require_subcommand(1);

  std::string pres_arg;
  auto* multi = app.add_subcommand("multi", "full invariant record");
  multi->add_option("presentation", pres_arg, "file or corpus name")
      ->required();
  auto* uni = app.add_subcommand("uni", "full invariant record");
  uni->add_option("presentation", pres_arg, "file or corpus name")->required();
  auto* d0 = app.add_subcommand("delta0", "degree spread of the gcd");
  d0->add_option("presentation", pres_arg, "file or corpus name")->required();

  std::string poly_path;
  auto* pencil = app.add_subcommand("pencil", "pencil membership check");
  pencil->add_option("polyfile", poly_path, "one polynomial per line")
      ->required();

  std::string left_arg, right_arg, left_irred, right_pencil, finiteness;
  bool verify = false;
  auto* uni_cmd = app.add_subcommand("union", "transversal union prediction");
  uni_cmd->add_option("--left", left_arg, "first piece")->required();
  uni_cmd->add_option("--right", right_arg, "second piece")->required();
  uni_cmd->add_flag("--verify", verify, "crosscheck against the product");
  uni_cmd->add_option("--left-irreducible", left_irred,
                      "override irreducibility of the first piece");
  uni_cmd->add_option("--right-pencil", right_pencil,
                      "override pencil type of the second piece");
  uni_cmd->add_option("--finiteness", finiteness,
                      "higher finiteness of the second piece, n=FLAG,...");

  std::string facts_path, script_path;
  int level_n = 0;
  bool auto_mode = false;
  auto* skew = app.add_subcommand("skew", "ledgered reduction session");
  skew->add_option("presentation", pres_arg, "file or corpus name")
      ->required();
  skew->add_option("--level", level_n, "0, or any n >= 1")->required();
  skew->add_option("--facts", facts_path, "declared-facts file");
  skew->add_option("--script", script_path, "move script to run");
  skew->add_flag("--auto", auto_mode, "search for a reduction automatically");

  std::vector<std::string> example_args;
  auto* examples = app.add_subcommand("examples", "built-in presentations");
  examples->add_option("args", example_args, "list | show NAME");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(multi)) return cmd_record("multi", pres_arg);
    if (app.got_subcommand(uni)) return cmd_record("uni", pres_arg);
    if (app.got_subcommand(d0)) return cmd_record("delta0", pres_arg);
    if (app.got_subcommand(pencil)) return cmd_pencil(poly_path);
    if (app.got_subcommand(uni_cmd)) {
      return cmd_union(left_arg, right_arg, verify, left_irred, right_pencil,
                       finiteness);
    }
    if (app.got_subcommand(skew)) {
      return cmd_skew(pres_arg, level_n, facts_path, script_path, auto_mode);
    }
    if (app.got_subcommand(examples)) return cmd_examples(example_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
