#include "cichon/constellation.hpp"

#include <sstream>

#include "cichon/error.hpp"

namespace cichon {

std::string to_string(const Interval& iv, const CardContext& ctx) {
  if (iv.pinned(ctx)) return iv.lo.str();
  return "[" + iv.lo.str() + ", " + (iv.hi ? iv.hi->str() : std::string("?")) + "]";
}

namespace {

class Tightener {
 public:
  explicit Tightener(const CardContext& ctx) : ctx_(ctx) {}

  bool changed = false;

  void lo(Interval& iv, const CardinalName& cand) {
    if (ctx_.known_leq(iv.lo, cand) && !ctx_.known_leq(cand, iv.lo)) {
      iv.lo = cand;
      changed = true;
      check(iv);
    }
  }

  void hi(Interval& iv, const std::optional<CardinalName>& cand) {
    if (!cand) return;
    if (!iv.hi || (ctx_.known_leq(*cand, *iv.hi) && !ctx_.known_leq(*iv.hi, *cand))) {
      iv.hi = cand;
      changed = true;
      check(iv);
    }
  }

  /// Both endpoints of `to` pulled toward `from`.
  void meet(Interval& to, const Interval& from) {
    lo(to, from.lo);
    hi(to, from.hi);
  }

 private:
  void check(const Interval& iv) const {
    if (iv.hi && ctx_.known_lt(*iv.hi, iv.lo)) {
      throw Error(ErrorKind::InconsistentBounds,
                  "upper bound " + iv.hi->str() + " lies below lower bound " + iv.lo.str());
    }
  }

  const CardContext& ctx_;
};

std::optional<CardinalName> fold(const CardContext& ctx, const std::vector<std::optional<CardinalName>>& xs,
                                 bool take_min) {
  std::optional<CardinalName> acc;
  for (const auto& x : xs) {
    if (!x) return std::nullopt;
    if (!acc) {
      acc = x;
      continue;
    }
    acc = take_min ? ctx.min(*acc, *x) : ctx.max(*acc, *x);
    if (!acc) return std::nullopt;
  }
  return acc;
}

ValueBounds intrinsic(const FactDB& db, const SysExpr& e) {
  const CardContext& c = db.ctx();
  const Interval wide{kAleph1, db.continuum()};
  using K = SysExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return {wide, wide};
    case K::Card: {
      Interval p{e.card_name(), e.card_name()};
      return {p, p};
    }
    case K::Ord: {
      const CardinalName k = cf(c, e.ordinal());
      Interval p{k, k};
      return {p, p};
    }
    case K::CIdeal: {
      // non = theta; cov <= |X|, with equality for regular theta.
      Interval b{e.theta(), e.theta()};
      Interval d{c.is_regular(e.theta()) ? e.index_size() : e.theta(), e.index_size()};
      return {b, d};
    }
    case K::Ideal: {
      Interval b = c.is_regular(e.theta()) ? Interval{e.theta(), e.theta()} : Interval{kAleph1, e.theta()};
      Interval d{e.index_size(), std::nullopt};
      if (c.has_pow_lt(e.index_size(), e.theta())) d.hi = e.index_size();
      return {b, d};
    }
    case K::Prod:
    case K::Dual: return {Interval{kAleph1, std::nullopt}, Interval{kAleph1, std::nullopt}};
  }
  return {wide, wide};
}

}  // namespace

std::vector<ValueBounds> all_value_bounds(const FactDB& db) {
  const CardContext& c = db.ctx();
  const std::size_t n = db.expr_count();
  std::vector<ValueBounds> v;
  v.reserve(n);
  for (ExprId i = 0; i < n; ++i) v.push_back(intrinsic(db, db.expr(i)));

  Tightener t(c);
  do {
    t.changed = false;
    for (const auto& f : db.facts()) {
      // lhs <= rhs: b(rhs) <= b(lhs) and d(lhs) <= d(rhs).
      t.lo(v[f.lhs].b, v[f.rhs].b.lo);
      t.hi(v[f.rhs].b, v[f.lhs].b.hi);
      t.hi(v[f.lhs].d, v[f.rhs].d.hi);
      t.lo(v[f.rhs].d, v[f.lhs].d.lo);
    }
    for (ExprId i = 0; i < n; ++i) {
      const SysExpr& e = db.expr(i);
      if (e.kind() == SysExpr::Kind::Dual) {
        const ExprId in = *db.find(e.inner());
        t.meet(v[i].b, v[in].d);
        t.meet(v[i].d, v[in].b);
        t.meet(v[in].d, v[i].b);
        t.meet(v[in].b, v[i].d);
      } else if (e.kind() == SysExpr::Kind::Prod) {
        std::vector<std::optional<CardinalName>> blo, bhi, dlo, dhi;
        for (const auto& a : e.args()) {
          const ExprId ai = *db.find(a);
          blo.push_back(v[ai].b.lo);
          bhi.push_back(v[ai].b.hi);
          dlo.push_back(v[ai].d.lo);
          dhi.push_back(v[ai].d.hi);
          t.hi(v[i].b, v[ai].b.hi);
          t.lo(v[i].d, v[ai].d.lo);
          t.lo(v[ai].b, v[i].b.lo);
          t.hi(v[ai].d, v[i].d.hi);
        }
        // b is the least factor value, d the largest (all values infinite).
        if (auto m = fold(c, blo, true)) t.lo(v[i].b, *m);
        t.hi(v[i].b, fold(c, bhi, true));
        if (auto m = fold(c, dlo, false)) t.lo(v[i].d, *m);
        t.hi(v[i].d, fold(c, dhi, false));
      }
    }
  } while (t.changed);
  return v;
}

ValueBounds value_bounds(const FactDB& db, const SysExpr& e) {
  if (auto id = db.find(e)) return all_value_bounds(db)[*id];
  FactDB copy = db;
  const ExprId id = copy.intern(e);
  return all_value_bounds(copy)[id];
}

std::string_view key(Entry e) {
  switch (e) {
    case Entry::addN: return "addN";
    case Entry::covN: return "covN";
    case Entry::addM: return "addM";
    case Entry::b: return "b";
    case Entry::covM: return "covM";
    case Entry::nonM: return "nonM";
    case Entry::d: return "d";
    case Entry::cofM: return "cofM";
    case Entry::nonN: return "nonN";
    case Entry::cofN: return "cofN";
    case Entry::c: return "c";
  }
  return "?";
}

std::optional<Entry> parse_entry(std::string_view s) {
  for (Entry e : kEntries) {
    if (key(e) == s) return e;
  }
  return std::nullopt;
}

const std::vector<std::pair<Entry, Entry>>& diagram_arrows() {
  using E = Entry;
  static const std::vector<std::pair<Entry, Entry>> arrows = {
      {E::addN, E::covN}, {E::covN, E::nonM}, {E::nonM, E::cofM}, {E::cofM, E::cofN}, {E::addN, E::addM},
      {E::addM, E::covM}, {E::covM, E::nonN}, {E::nonN, E::cofN}, {E::addM, E::b},    {E::b, E::nonM},
      {E::covM, E::d},    {E::d, E::cofM},    {E::b, E::d},
  };
  return arrows;
}

bool Constellation::fully_pinned(const CardContext& ctx) const {
  for (const auto& [e, iv] : values) {
    if (!iv.pinned(ctx)) return false;
  }
  return values.size() == kEntries.size();
}

std::optional<std::map<Entry, CardinalName>> Constellation::assignment(const CardContext& ctx) const {
  if (!fully_pinned(ctx)) return std::nullopt;
  std::map<Entry, CardinalName> out;
  for (const auto& [e, iv] : values) out.emplace(e, iv.lo);
  return out;
}

Constellation constellation(const FactDB& db) {
  const CardContext& c = db.ctx();
  const CardinalName top = db.continuum();
  const auto bounds = all_value_bounds(db);
  auto of = [&](Atom a) -> ValueBounds {
    if (auto id = db.find(SysExpr::atom(a))) return bounds[*id];
    return {Interval{kAleph1, top}, Interval{kAleph1, top}};
  };

  Constellation k;
  auto put = [&](Entry e, Interval iv) { k.values.emplace(e, std::move(iv)); };
  const auto lc = of(Atom::Lc), cn = of(Atom::Cn), ww = of(Atom::Baire), mg = of(Atom::Mg), m = of(Atom::Meager);
  put(Entry::addN, lc.b);
  put(Entry::cofN, lc.d);
  put(Entry::covN, cn.b);
  put(Entry::nonN, cn.d);
  put(Entry::b, ww.b);
  put(Entry::d, ww.d);
  put(Entry::nonM, mg.b);
  put(Entry::covM, mg.d);
  put(Entry::addM, m.b);
  put(Entry::cofM, m.d);
  put(Entry::c, Interval{top, top});

  Tightener t(c);
  auto& v = k.values;
  do {
    t.changed = false;
    for (Entry e : kEntries) {
      t.lo(v[e], kAleph1);
      t.hi(v[e], top);
    }
    for (const auto& [x, y] : diagram_arrows()) {
      t.lo(v[y], v[x].lo);
      t.hi(v[x], v[y].hi);
    }
    // add(M) = min{b, cov(M)}
    if (auto lo = c.min(v[Entry::b].lo, v[Entry::covM].lo)) t.lo(v[Entry::addM], *lo);
    if (v[Entry::b].hi && v[Entry::covM].hi) t.hi(v[Entry::addM], c.min(*v[Entry::b].hi, *v[Entry::covM].hi));
    if (v[Entry::addM].hi) {
      if (c.known_lt(*v[Entry::addM].hi, v[Entry::b].lo)) t.hi(v[Entry::covM], v[Entry::addM].hi);
      if (c.known_lt(*v[Entry::addM].hi, v[Entry::covM].lo)) t.hi(v[Entry::b], v[Entry::addM].hi);
    }
    // cof(M) = max{d, non(M)}
    if (auto lo = c.max(v[Entry::d].lo, v[Entry::nonM].lo)) t.lo(v[Entry::cofM], *lo);
    if (v[Entry::d].hi && v[Entry::nonM].hi) t.hi(v[Entry::cofM], c.max(*v[Entry::d].hi, *v[Entry::nonM].hi));
    if (v[Entry::d].hi && c.known_lt(*v[Entry::d].hi, v[Entry::cofM].lo)) t.lo(v[Entry::nonM], v[Entry::cofM].lo);
    if (v[Entry::nonM].hi && c.known_lt(*v[Entry::nonM].hi, v[Entry::cofM].lo)) t.lo(v[Entry::d], v[Entry::cofM].lo);
  } while (t.changed);
  return k;
}

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Arrow: return "arrow";
    case Violation::Kind::MinEquation: return "min-equation";
    case Violation::Kind::MaxEquation: return "max-equation";
    case Violation::Kind::Floor: return "floor";
    case Violation::Kind::Ceiling: return "ceiling";
    case Violation::Kind::Incomplete: return "incomplete";
  }
  return "?";
}

std::vector<Violation> check_assignment(const CardContext& ctx, const std::map<Entry, CardinalName>& a) {
  std::vector<Violation> out;
  std::vector<Entry> missing;
  for (Entry e : kEntries) {
    if (!a.contains(e)) missing.push_back(e);
  }
  if (!missing.empty()) {
    std::string names;
    for (Entry e : missing) names += (names.empty() ? "" : ", ") + std::string(key(e));
    out.push_back({Violation::Kind::Incomplete, missing, "missing entries: " + names});
    return out;
  }
  for (const auto& [e, n] : a) ctx.index_of(n);

  auto name = [&](Entry e) { return std::string(key(e)) + "=" + a.at(e).str(); };
  for (const auto& [x, y] : diagram_arrows()) {
    if (!ctx.known_leq(a.at(x), a.at(y))) {
      out.push_back({Violation::Kind::Arrow, {x, y}, name(x) + " <= " + name(y) + " does not hold"});
    }
  }
  auto m = ctx.min(a.at(Entry::b), a.at(Entry::covM));
  if (!m || !ctx.equivalent(*m, a.at(Entry::addM))) {
    out.push_back({Violation::Kind::MinEquation,
                   {Entry::addM, Entry::b, Entry::covM},
                   name(Entry::addM) + " is not min{" + name(Entry::b) + ", " + name(Entry::covM) + "}"});
  }
  auto mx = ctx.max(a.at(Entry::d), a.at(Entry::nonM));
  if (!mx || !ctx.equivalent(*mx, a.at(Entry::cofM))) {
    out.push_back({Violation::Kind::MaxEquation,
                   {Entry::cofM, Entry::d, Entry::nonM},
                   name(Entry::cofM) + " is not max{" + name(Entry::d) + ", " + name(Entry::nonM) + "}"});
  }
  for (Entry e : kEntries) {
    if (!ctx.known_leq(kAleph1, a.at(e))) {
      out.push_back({Violation::Kind::Floor, {e}, name(e) + " is not above aleph1"});
    }
    if (e != Entry::c && !ctx.known_leq(a.at(e), a.at(Entry::c))) {
      out.push_back({Violation::Kind::Ceiling, {e, Entry::c}, name(e) + " exceeds " + name(Entry::c)});
    }
  }
  return out;
}

std::string format_table(const Constellation& k, const CardContext& ctx) {
  std::ostringstream os;
  for (Entry e : kEntries) {
    std::string label(key(e));
    label.resize(5, ' ');
    os << label << "= " << to_string(k.at(e), ctx) << "\n";
  }
  return os.str();
}

std::string format_dot(const Constellation& k, const CardContext& ctx, std::string_view title) {
  std::ostringstream os;
  os << "digraph \"" << title << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Entry e : kEntries) {
    os << "  " << key(e) << " [label=\"" << key(e) << "\\n" << to_string(k.at(e), ctx) << "\"];\n";
  }
  for (const auto& [x, y] : diagram_arrows()) os << "  " << key(x) << " -> " << key(y) << ";\n";
  os << "  cofN -> c;\n}\n";
  return os.str();
}

}  // namespace cichon
