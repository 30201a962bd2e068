#include "cichon/factdb.hpp"

#include <algorithm>
#include <sstream>

#include "cichon/error.hpp"

namespace cichon {

namespace {

const char* const kCiteTrans = "Tukey connections compose";
const char* const kCiteDual = "R <= R' implies dual(R') <= dual(R)";
const char* const kCiteProj = "each factor is Tukey below the product";
const char* const kCiteRegularEmbed = "every regular mu in [theta, lambda] is Tukey below C_[lambda]^<theta";
const char* const kCiteCollapse = "C_[X]^<theta ~ [X]^<theta for regular theta with |X|^<theta = |X|";
const char* const kCiteTrivial = "C_I <= I and dual(C_I) <= I";
const char* const kCiteSmall = "C_[X]^<theta <= C_[X']^<theta' when theta' <= theta <= |X| <= |X'|";
const char* const kCiteCof = "a product of regulars is Tukey equivalent to its cofinality";
const char* const kCiteDiagram = "Cichon's diagram as Tukey connections";
const char* const kCitePrs = "C_M <= R for every Polish relational system R";

SysExpr atom(Atom a) { return SysExpr::atom(a); }
SysExpr dual(const SysExpr& e) { return SysExpr::dual(e); }

}  // namespace

FactDB::FactDB(std::shared_ptr<const CardContext> ctx, std::optional<CardinalName> forced_c)
    : ctx_(std::move(ctx)), forced_c_(std::move(forced_c)) {
  if (!ctx_) throw Error(ErrorKind::BadParameters, "fact database needs a context");
  if (forced_c_) ctx_->index_of(*forced_c_);
}

ExprId FactDB::intern(const SysExpr& e) {
  if (auto it = expr_index_.find(e.str()); it != expr_index_.end()) return it->second;
  for (const auto& a : e.args()) intern(a);
  const ExprId id = exprs_.size();
  exprs_.push_back(e);
  expr_index_.emplace(e.str(), id);
  out_.emplace_back();
  in_.emplace_back();
  closed_ = false;
  return id;
}

std::optional<ExprId> FactDB::find(const SysExpr& e) const {
  if (auto it = expr_index_.find(e.str()); it != expr_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<FactId> FactDB::add(const SysExpr& lhs, const SysExpr& rhs, Justification why) {
  for (FactId p : why.premises) {
    if (p >= facts_.size()) {
      throw Error(ErrorKind::PreconditionFailed, "premise #" + std::to_string(p) + " does not exist");
    }
  }
  if (lhs == rhs) return std::nullopt;
  const ExprId l = intern(lhs);
  const ExprId r = intern(rhs);
  if (fact_index_.contains({l, r})) return std::nullopt;
  const FactId id = facts_.size();
  facts_.push_back({l, r, std::move(why)});
  fact_index_.emplace(std::make_pair(l, r), id);
  out_[l].push_back(id);
  in_[r].push_back(id);
  closed_ = false;
  return id;
}

std::optional<FactId> FactDB::find_fact(const SysExpr& lhs, const SysExpr& rhs) const {
  auto l = find(lhs);
  auto r = find(rhs);
  if (!l || !r) return std::nullopt;
  if (auto it = fact_index_.find({*l, *r}); it != fact_index_.end()) return it->second;
  return std::nullopt;
}

bool FactDB::leq(const SysExpr& a, const SysExpr& b) const { return a == b || find_fact(a, b).has_value(); }

void FactDB::close(const CloseOptions& opts) {
  for (;;) {
    if (exprs_.size() > opts.max_universe) {
      throw Error(ErrorKind::DivergentUniverse, "expression universe grew past " +
                                                    std::to_string(opts.max_universe) + " members");
    }
    if (grounded_ < exprs_.size()) {
      ground(grounded_++);
    } else if (propagated_ < facts_.size()) {
      propagate(propagated_++);
    } else {
      break;
    }
  }
  closed_ = true;
}

void FactDB::ground(ExprId id) {
  const SysExpr e = exprs_[id];
  const CardContext& c = *ctx_;
  switch (e.kind()) {
    case SysExpr::Kind::Prod:
      for (const auto& a : e.args()) add(a, e, {"proj", {}, kCiteProj, {}});
      break;
    case SysExpr::Kind::CIdeal: {
      for (const auto& mu : c.names()) {
        if (c.is_regular(mu) && c.known_leq(e.theta(), mu) && c.known_leq(mu, e.index_size())) {
          add(SysExpr::card(mu), e, {"regular-embed", {}, kCiteRegularEmbed, {}});
        }
      }
      if (c.is_regular(e.theta()) && c.has_pow_lt(e.index_size(), e.theta())) {
        SysExpr i = SysExpr::ideal(e.index_size(), e.theta());
        add(e, i, {"ideal-collapse", {}, kCiteCollapse, {}});
        add(i, e, {"ideal-collapse", {}, kCiteCollapse, {}});
      }
      for (ExprId other = 0; other < id; ++other) {
        const SysExpr o = exprs_[other];
        if (o.kind() != SysExpr::Kind::CIdeal) continue;
        for (const auto& [lo, hi] : {std::pair{e, o}, std::pair{o, e}}) {
          if (c.known_leq(hi.theta(), lo.theta()) && c.known_leq(lo.theta(), lo.index_size()) &&
              c.known_leq(lo.index_size(), hi.index_size())) {
            add(lo, hi, {"small-ideal", {}, kCiteSmall, {}});
          }
        }
      }
      break;
    }
    case SysExpr::Kind::Ideal: {
      SysExpr ci = SysExpr::cideal(e.index_size(), e.theta());
      add(ci, e, {"ideal-trivial", {}, kCiteTrivial, {}});
      add(dual(ci), e, {"ideal-trivial", {}, kCiteTrivial, {}});
      break;
    }
    case SysExpr::Kind::Ord: {
      SysExpr k = SysExpr::card(cf(c, e.ordinal()));
      add(e, k, {"cofinality", {}, kCiteCof, {}});
      add(k, e, {"cofinality", {}, kCiteCof, {}});
      break;
    }
    default: break;
  }
}

void FactDB::propagate(FactId id) {
  const ExprId a = facts_[id].lhs;
  const ExprId b = facts_[id].rhs;
  const std::vector<FactId> into_a = in_[a];
  for (FactId g : into_a) add(exprs_[facts_[g].lhs], exprs_[b], {"trans", {g, id}, kCiteTrans, {}});
  const std::vector<FactId> from_b = out_[b];
  for (FactId g : from_b) add(exprs_[a], exprs_[facts_[g].rhs], {"trans", {id, g}, kCiteTrans, {}});
  add(dual(exprs_[b]), dual(exprs_[a]), {"dual", {id}, kCiteDual, {}});
}

void FactDB::register_checker(const std::string& rule, RuleChecker fn) { checkers_[rule] = std::move(fn); }

std::string FactDB::verify(const SysExpr& lhs, const SysExpr& rhs, const Justification& why) const {
  for (FactId p : why.premises) {
    if (p >= facts_.size()) return "premise #" + std::to_string(p) + " does not exist";
  }
  if (lhs == rhs) return "reflexive facts are never stored";
  if (auto it = checkers_.find(why.rule); it != checkers_.end()) return it->second(*this, lhs, rhs, why);
  try {
    return verify_builtin(lhs, rhs, why);
  } catch (const Error& e) {
    return e.what();
  }
}

std::string FactDB::verify_builtin(const SysExpr& lhs, const SysExpr& rhs, const Justification& why) const {
  using K = SysExpr::Kind;
  const CardContext& c = *ctx_;
  const auto& r = why.rule;
  auto no_premises = [&]() -> std::string {
    return why.premises.empty() ? "" : r + " takes no premises";
  };

  if (r == "trans") {
    if (why.premises.size() != 2) return "trans needs two premises";
    const auto& f = facts_[why.premises[0]];
    const auto& g = facts_[why.premises[1]];
    if (f.rhs != g.lhs) return "premises do not chain";
    if (exprs_[f.lhs] != lhs || exprs_[g.rhs] != rhs) return "conclusion does not match the chained premises";
    return "";
  }
  if (r == "dual") {
    if (why.premises.size() != 1) return "dual needs one premise";
    const auto& f = facts_[why.premises[0]];
    if (dual(exprs_[f.rhs]) != lhs || dual(exprs_[f.lhs]) != rhs) return "conclusion is not the dual of the premise";
    return "";
  }
  if (r == "proj") {
    if (rhs.kind() != K::Prod) return "proj needs a product on the right";
    const auto& args = rhs.args();
    if (std::find(args.begin(), args.end(), lhs) == args.end()) return "left side is not a factor";
    return no_premises();
  }
  if (r == "regular-embed") {
    if (lhs.kind() != K::Card || rhs.kind() != K::CIdeal) return "regular-embed relates Card(mu) to C(lambda,theta)";
    const auto& mu = lhs.card_name();
    if (!c.is_regular(mu)) return "'" + mu.str() + "' is not regular";
    if (!c.known_leq(rhs.theta(), mu) || !c.known_leq(mu, rhs.index_size())) {
      return "'" + mu.str() + "' is not known to lie in [" + rhs.theta().str() + ", " + rhs.index_size().str() + "]";
    }
    return no_premises();
  }
  if (r == "ideal-collapse") {
    const SysExpr* ci = lhs.kind() == K::CIdeal ? &lhs : &rhs;
    const SysExpr* id = lhs.kind() == K::CIdeal ? &rhs : &lhs;
    if (ci->kind() != K::CIdeal || id->kind() != K::Ideal || ci->index_size() != id->index_size() ||
        ci->theta() != id->theta()) {
      return "ideal-collapse relates C(X,theta) and I(X,theta)";
    }
    if (!c.is_regular(ci->theta())) return "'" + ci->theta().str() + "' is not regular";
    if (!c.has_pow_lt(ci->index_size(), ci->theta())) {
      return "missing assumption pow_lt(" + ci->index_size().str() + "," + ci->theta().str() + ")";
    }
    return no_premises();
  }
  if (r == "ideal-trivial") {
    if (rhs.kind() != K::Ideal) return "ideal-trivial needs I(X,theta) on the right";
    SysExpr ci = SysExpr::cideal(rhs.index_size(), rhs.theta());
    if (lhs != ci && lhs != dual(ci)) return "left side must be C(X,theta) or its dual";
    return no_premises();
  }
  if (r == "small-ideal") {
    if (lhs.kind() != K::CIdeal || rhs.kind() != K::CIdeal) return "small-ideal relates two C(X,theta)";
    if (!c.known_leq(rhs.theta(), lhs.theta()) || !c.known_leq(lhs.theta(), lhs.index_size()) ||
        !c.known_leq(lhs.index_size(), rhs.index_size())) {
      return "the order theta' <= theta <= |X| <= |X'| is not derivable";
    }
    return no_premises();
  }
  if (r == "cofinality") {
    const SysExpr* o = lhs.kind() == K::Ord ? &lhs : &rhs;
    const SysExpr* k = lhs.kind() == K::Ord ? &rhs : &lhs;
    if (o->kind() != K::Ord || k->kind() != K::Card) return "cofinality relates Ord(...) and its cofinality";
    if (k->card_name() != cf(c, o->ordinal())) return "wrong cofinality";
    return no_premises();
  }
  if (r == "diagram") {
    for (const auto& [a, b] : diagram_edges(continuum())) {
      if (a == lhs && b == rhs) return no_premises();
    }
    return "not an edge of the diagram";
  }
  if (r == "prs") {
    if (lhs != atom(Atom::Mg) || !rhs.is_prs_atom()) return "prs relates Mg to a Polish system";
    return no_premises();
  }
  return "no checker for rule '" + r + "'";
}

ReplayReport FactDB::replay() const {
  ReplayReport rep;
  for (FactId id = 0; id < facts_.size(); ++id) {
    const auto& f = facts_[id];
    ++rep.checked;
    std::string err;
    for (FactId p : f.why.premises) {
      if (p >= id) err = "premise #" + std::to_string(p) + " does not precede the fact";
    }
    if (err.empty()) err = verify(exprs_[f.lhs], exprs_[f.rhs], f.why);
    if (!err.empty()) rep.failures.emplace_back(id, err);
  }
  return rep;
}

std::set<std::pair<std::string, std::string>> FactDB::relation() const {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& f : facts_) out.emplace(exprs_[f.lhs].str(), exprs_[f.rhs].str());
  return out;
}

std::vector<std::pair<SysExpr, SysExpr>> diagram_edges(const CardinalName& continuum) {
  const SysExpr lc = atom(Atom::Lc), cn = atom(Atom::Cn), ww = atom(Atom::Baire), mg = atom(Atom::Mg),
                m = atom(Atom::Meager), top = SysExpr::cideal(continuum, kAleph1);
  // N ~ Lc*, C_N = dual(Cn), C_M ~ Mg.
  return {
      {dual(top), dual(lc)}, {dual(lc), dual(cn)}, {dual(cn), dual(mg)}, {dual(mg), m},    {m, lc},
      {lc, top},             {dual(lc), dual(m)},  {dual(m), mg},        {mg, cn},         {cn, lc},
      {dual(m), dual(ww)},   {dual(ww), dual(mg)}, {mg, ww},             {ww, m},          {dual(ww), ww},
  };
}

void seed_base_facts(FactDB& db) {
  for (const auto& [a, b] : diagram_edges(db.continuum())) db.add(a, b, {"diagram", {}, kCiteDiagram, {}});
  for (Atom r : kPrsAtoms) db.add(atom(Atom::Mg), atom(r), {"prs", {}, kCitePrs, {}});
}

FactDB base_facts(std::shared_ptr<const CardContext> ctx, std::optional<CardinalName> forced_c) {
  FactDB db(std::move(ctx), std::move(forced_c));
  seed_base_facts(db);
  return db;
}

std::string format_fact(const FactDB& db, FactId id) {
  const auto& f = db.fact(id);
  std::string s = "#" + std::to_string(id) + " " + db.expr(f.lhs).str() + " <= " + db.expr(f.rhs).str() + "  [" +
                  f.why.rule + "; ";
  if (f.why.premises.empty()) s += "-";
  for (std::size_t i = 0; i < f.why.premises.size(); ++i) {
    if (i) s += ",";
    s += "#" + std::to_string(f.why.premises[i]);
  }
  s += "; \"" + f.why.citation + "\"";
  if (!f.why.params.empty()) {
    s += "; ";
    for (std::size_t i = 0; i < f.why.params.size(); ++i) {
      if (i) s += ",";
      s += f.why.params[i];
    }
  }
  return s + "]";
}

std::string format_trace(const FactDB& db) {
  std::string s;
  for (FactId id = 0; id < db.facts().size(); ++id) s += format_fact(db, id) + "\n";
  return s;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

TraceEntry parse_trace_line(std::string_view line) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::SyntaxError, "trace line '" + std::string(line) + "': " + why);
  };
  const auto open = line.find('[');
  const auto close = line.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw bad("missing justification");
  }
  std::istringstream head{std::string(line.substr(0, open))};
  std::string id, lhs, arrow, rhs, extra;
  if (!(head >> id >> lhs >> arrow >> rhs) || (head >> extra) || id.size() < 2 || id[0] != '#' || arrow != "<=") {
    throw bad("expected '#id LHS <= RHS'");
  }
  TraceEntry t{0, parse_sysexpr(lhs), parse_sysexpr(rhs), {}};
  try {
    t.id = std::stoul(id.substr(1));
  } catch (const std::exception&) {
    throw bad("bad fact id");
  }

  std::string body(line.substr(open + 1, close - open - 1));
  const auto q1 = body.find('"');
  const auto q2 = body.rfind('"');
  if (q1 == std::string::npos || q2 == q1) throw bad("missing citation");
  t.why.citation = body.substr(q1 + 1, q2 - q1 - 1);
  auto front = split(body.substr(0, q1), ';');
  if (front.size() != 3 || !front[2].empty()) throw bad("expected 'rule; premises; \"citation\"'");
  t.why.rule = front[0];
  if (front[1] != "-") {
    for (const auto& p : split(front[1], ',')) {
      if (p.size() < 2 || p[0] != '#') throw bad("bad premise '" + p + "'");
      t.why.premises.push_back(std::stoul(p.substr(1)));
    }
  }
  std::string tail = trim(body.substr(q2 + 1));
  if (!tail.empty()) {
    if (tail[0] != ';') throw bad("unexpected text after the citation");
    for (const auto& p : split(trim(tail.substr(1)), ',')) {
      if (!p.empty()) t.why.params.push_back(p);
    }
  }
  return t;
}

ReplayReport replay_trace(FactDB& db, std::string_view trace) {
  ReplayReport rep;
  std::map<FactId, FactId> remap;
  std::istringstream in{std::string(trace)};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] != '#') continue;
    TraceEntry t{0, SysExpr::atom(Atom::Mg), SysExpr::atom(Atom::Mg), {}};
    ++rep.checked;
    try {
      t = parse_trace_line(line);
    } catch (const Error& e) {
      rep.failures.emplace_back(rep.checked - 1, e.what());
      continue;
    }
    std::string err;
    for (auto& p : t.why.premises) {
      auto it = remap.find(p);
      if (it == remap.end()) {
        err = "premise #" + std::to_string(p) + " was not established earlier";
        break;
      }
      p = it->second;
    }
    if (err.empty()) err = db.verify(t.lhs, t.rhs, t.why);
    if (!err.empty()) {
      rep.failures.emplace_back(t.id, err);
      continue;
    }
    auto id = db.add(t.lhs, t.rhs, t.why);
    if (!id) {
      if (auto existing = db.find_fact(t.lhs, t.rhs)) remap[t.id] = *existing;
      continue;
    }
    remap[t.id] = *id;
  }
  return rep;
}

}  // namespace cichon
