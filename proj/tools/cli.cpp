#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cichon/error.hpp"
#include "cichon/finrel.hpp"
#include "cichon/recipe_file.hpp"

namespace cichon::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadParameters, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadParameters, "cannot write '" + path + "'");
  out << text;
}

RecipeFile load(const std::string& path) {
  return path.empty() ? default_library() : parse_recipe_file(read_file(path));
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Unpinned:
    case ErrorKind::InconsistentBounds: return kExitFailed;
    default: return kExitInput;
  }
}

json interval_json(const Interval& iv, const CardContext& ctx) {
  json j;
  j["lo"] = iv.lo.str();
  j["hi"] = iv.hi ? json(iv.hi->str()) : json(nullptr);
  j["pinned"] = iv.pinned(ctx);
  return j;
}

json constellation_json(const Constellation& c, const CardContext& ctx) {
  json j = json::object();
  for (Entry e : kEntries) j[std::string(key(e))] = interval_json(c.at(e), ctx);
  return j;
}

json facts_json(const FactDB& db) {
  json arr = json::array();
  for (FactId id = 0; id < db.facts().size(); ++id) {
    const auto& f = db.fact(id);
    arr.push_back({{"id", id},
                   {"lhs", db.expr(f.lhs).str()},
                   {"rhs", db.expr(f.rhs).str()},
                   {"rule", f.why.rule},
                   {"premises", f.why.premises},
                   {"citation", f.why.citation},
                   {"params", f.why.params}});
  }
  return arr;
}

const RecipeEntry& need_recipe(const RecipeFile& f, const std::string& name) {
  const auto* e = f.recipe(name);
  if (!e) throw Error(ErrorKind::UnresolvedName, "no recipe '" + name + "'");
  return *e;
}

const Plan& need_plan(const RecipeFile& f, const std::string& name) {
  const auto* p = f.plan(name);
  if (!p) throw Error(ErrorKind::UnresolvedName, "no plan '" + name + "'");
  return *p;
}

struct Opts {
  std::string file;
  std::string recipe;
  std::string plan;
  std::string assign;
  std::string dot;
  std::string json_path;
  std::string trace_path;
  bool trace = false;
  bool tables = false;
  std::optional<std::uint32_t> seed;
  std::string finite_cmd;
  std::vector<std::string> sys_files;
  std::size_t max_side = Limits{}.max_side;
  double search_space = Limits{}.search_space;
};

int cmd_derive(const Opts& o, std::ostream& out) {
  const RecipeFile f = load(o.file);
  const RecipeEntry& e = need_recipe(f, o.recipe);
  const auto ctx = build_file_context(f);
  RunOptions ro;
  ro.shuffle_seed = o.seed;
  const DerivedModel m = run_entry(ctx, e, ro);
  out << "recipe " << e.name << '\n' << format_table(m.constellation, *ctx);
  if (o.trace) out << format_trace(m.db);
  if (!o.dot.empty()) write_file(o.dot, format_dot(m.constellation, *ctx, e.name));
  if (!o.json_path.empty()) {
    json j{{"recipe", e.name},
           {"constellation", constellation_json(m.constellation, *ctx)},
           {"applied", m.applied},
           {"facts", facts_json(m.db)}};
    write_file(o.json_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_intersect(const Opts& o, std::ostream& out) {
  const RecipeFile f = load(o.file);
  const Plan& p = need_plan(f, o.plan);
  const auto ctx = build_file_context(f);
  const PlanResult r = run_plan(ctx, p);
  const auto targets = plan_targets(p);
  if (o.tables) out << format_tables(r.log, targets, *ctx);
  for (const auto& [i, bound] : r.log.product_bounds) out << "R" << i << " <= " << bound.str() << '\n';
  for (const auto& n : r.log.notes) out << "note: " << n << '\n';
  out << "plan " << p.name << '\n' << format_table(r.constellation, *ctx);
  if (o.trace) out << format_trace(r.db);
  if (!o.dot.empty()) write_file(o.dot, format_dot(r.constellation, *ctx, p.name));
  if (!o.json_path.empty()) {
    json snaps = json::array();
    for (const auto& s : r.log.snapshots) {
      json rows = json::array();
      for (int i = 0; i < 4; ++i) {
        const auto& st = s.states[i];
        json below = json::array();
        for (const auto& mu : st.below) below.push_back(mu.str());
        rows.push_back({{"i", i + 1},
                        {"below", below},
                        {"below_text", format_below(st.below, targets, *ctx)},
                        {"b", st.b.str()},
                        {"d", st.d.str()}});
      }
      snaps.push_back({{"label", s.label}, {"rows", rows}});
    }
    json bounds = json::object();
    for (const auto& [i, b] : r.log.product_bounds) bounds[std::to_string(i)] = b.str();
    json j{{"plan", p.name},
           {"snapshots", snaps},
           {"product_bounds", bounds},
           {"notes", r.log.notes},
           {"constellation", constellation_json(r.constellation, *ctx)},
           {"facts", facts_json(r.db)}};
    write_file(o.json_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_check(const Opts& o, std::ostream& out) {
  const RecipeFile f = load(o.file);
  const auto* a = f.assign(o.assign);
  if (!a) throw Error(ErrorKind::UnresolvedName, "no assignment '" + o.assign + "'");
  const auto ctx = build_file_context(f);
  const auto v = check_assignment(*ctx, a->values);
  if (v.empty()) {
    out << "ok\n";
    return kExitOk;
  }
  for (const auto& x : v) out << to_string(x.kind) << ": " << x.message << '\n';
  return kExitFailed;
}

int cmd_verify(const Opts& o, std::ostream& out) {
  const RecipeFile f = load(o.file);
  const auto ctx = build_file_context(f);
  if (o.recipe.empty() == o.plan.empty()) throw Error(ErrorKind::BadParameters, "give exactly one of --recipe, --plan");
  FactDB db = o.recipe.empty() ? empty_plan_db(ctx, need_plan(f, o.plan)) : empty_entry_db(ctx, need_recipe(f, o.recipe));
  const ReplayReport r = replay_trace(db, read_file(o.trace_path));
  out << "checked " << r.checked << ", failed " << r.failures.size() << '\n';
  for (const auto& [id, why] : r.failures) out << "#" << id << ": " << why << '\n';
  return r.ok() ? kExitOk : kExitFailed;
}

int cmd_finite(const Opts& o, std::ostream& out) {
  Limits lim;
  lim.max_side = o.max_side;
  lim.search_space = o.search_space;
  const std::size_t want = o.finite_cmd == "product" || o.finite_cmd == "search" ? 2 : 1;
  if (o.sys_files.size() != want) {
    throw Error(ErrorKind::BadParameters,
                "finite " + o.finite_cmd + " takes " + std::to_string(want) + " system file(s)");
  }
  std::vector<FinSys> sys;
  for (const auto& p : o.sys_files) sys.push_back(parse_finsys(read_file(p)));
  if (o.finite_cmd == "b") {
    out << to_string(b_num(sys[0], lim)) << '\n';
  } else if (o.finite_cmd == "d") {
    out << to_string(d_num(sys[0], lim)) << '\n';
  } else if (o.finite_cmd == "dual") {
    out << format_finsys(dual(sys[0]));
  } else if (o.finite_cmd == "product") {
    out << format_finsys(product(sys[0], sys[1], lim));
  } else {
    const auto m = tukey_search(sys[0], sys[1], lim);
    if (!m) {
      out << "none\n";
      return kExitOk;
    }
    auto row = [&](const char* label, const std::vector<std::size_t>& v) {
      out << label;
      for (auto x : v) out << ' ' << x;
      out << '\n';
    };
    row("psi_minus:", m->psi_minus);
    row("psi_plus:", m->psi_plus);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tukey connections and Cichon's diagram constellations", "cichon"};
  app.require_subcommand(1);
  Opts o;

  auto* derive = app.add_subcommand("derive", "run a recipe and print its constellation");
  derive->add_option("file", o.file, "recipe file (default: the built-in library)");
  derive->add_option("--recipe", o.recipe, "recipe name")->required();
  derive->add_flag("--trace", o.trace, "print every fact with its justification");
  derive->add_option("--dot", o.dot, "write the annotated diagram as DOT");
  derive->add_option("--json", o.json_path, "write a JSON report");
  derive->add_option("--seed", o.seed, "shuffle rule applications with this seed");

  auto* intersect = app.add_subcommand("intersect", "run a submodel plan");
  intersect->add_option("file", o.file, "recipe file (default: the built-in library)");
  intersect->add_option("--plan", o.plan, "plan name")->required();
  intersect->add_flag("--tables", o.tables, "print every snapshot");
  intersect->add_flag("--trace", o.trace, "print every fact with its justification");
  intersect->add_option("--dot", o.dot, "write the annotated diagram as DOT");
  intersect->add_option("--json", o.json_path, "write a JSON report");

  auto* check = app.add_subcommand("check", "check an assignment against the diagram");
  check->add_option("file", o.file, "recipe file (default: the built-in library)");
  check->add_option("--assign", o.assign, "assignment name")->required();

  auto* verify = app.add_subcommand("verify-trace", "replay a trace printed by --trace");
  verify->add_option("file", o.file, "recipe file (default: the built-in library)");
  verify->add_option("--recipe", o.recipe, "recipe the trace came from");
  verify->add_option("--plan", o.plan, "plan the trace came from");
  verify->add_option("--trace", o.trace_path, "trace file, - for stdin")->required();

  auto* print = app.add_subcommand("print", "print a recipe file in canonical form");
  print->add_option("file", o.file, "recipe file (default: the built-in library)");

  auto* finite = app.add_subcommand("finite", "finite relational systems");
  finite->add_option("command", o.finite_cmd, "b, d, dual, product or search")
      ->required()
      ->check(CLI::IsMember({"b", "d", "dual", "product", "search"}));
  finite->add_option("systems", o.sys_files, "system files")->required();
  finite->add_option("--max-side", o.max_side, "largest side for b and d");
  finite->add_option("--search-space", o.search_space, "largest search space for search");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (derive->parsed()) return cmd_derive(o, out);
    if (intersect->parsed()) return cmd_intersect(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (print->parsed()) {
      out << print_recipe_file(load(o.file));
      return kExitOk;
    }
    return cmd_finite(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace cichon::cli
