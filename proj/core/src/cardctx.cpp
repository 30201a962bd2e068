#include "cichon/cardctx.hpp"

#include <algorithm>

#include "cichon/error.hpp"

namespace cichon {

std::string to_string(const Assumption& a) {
  switch (a.kind) {
    case Assumption::Kind::PowLt: return "pow_lt(" + a.a.str() + "," + a.b.str() + ")=" + a.a.str();
    case Assumption::Kind::Pow: return "pow(" + a.a.str() + "," + a.b.str() + ")=" + a.a.str();
    case Assumption::Kind::Inaccessible: return "inaccessible(" + a.a.str() + "," + a.b.str() + ")";
    case Assumption::Kind::Succ: return "succ(" + a.a.str() + ")=" + a.b.str();
  }
  return "?";
}

ContextSpec& ContextSpec::card(CardinalName name, bool regular) {
  cards.push_back({std::move(name), regular});
  return *this;
}
ContextSpec& ContextSpec::le(CardinalName a, CardinalName b) {
  order.push_back({std::move(a), std::move(b), false});
  return *this;
}
ContextSpec& ContextSpec::lt(CardinalName a, CardinalName b) {
  order.push_back({std::move(a), std::move(b), true});
  return *this;
}
ContextSpec& ContextSpec::assume(Assumption a) {
  assumptions.push_back(std::move(a));
  return *this;
}
ContextSpec& ContextSpec::pow_lt(CardinalName a, CardinalName b) {
  return assume({Assumption::Kind::PowLt, std::move(a), std::move(b)});
}
ContextSpec& ContextSpec::pow(CardinalName a, CardinalName b) {
  return assume({Assumption::Kind::Pow, std::move(a), std::move(b)});
}
ContextSpec& ContextSpec::inaccessible(CardinalName a, CardinalName b) {
  return assume({Assumption::Kind::Inaccessible, std::move(a), std::move(b)});
}
ContextSpec& ContextSpec::succ(CardinalName a, CardinalName b) {
  return assume({Assumption::Kind::Succ, std::move(a), std::move(b)});
}
ContextSpec& ContextSpec::chain(std::span<const CardinalName> names, bool strict) {
  for (std::size_t i = 1; i < names.size(); ++i) order.push_back({names[i - 1], names[i], strict});
  return *this;
}

std::size_t CardContext::index_of(const CardinalName& n) const {
  auto it = index_.find(n.str());
  if (it == index_.end()) throw Error(ErrorKind::UnknownName, "cardinal '" + n.str() + "' is not declared");
  return it->second;
}

void CardContext::require(const CardinalName& n) const { (void)index_of(n); }

bool CardContext::is_regular(const CardinalName& n) const { return regular_[index_of(n)]; }

Truth CardContext::leq(const CardinalName& a, const CardinalName& b) const {
  const std::size_t n = names_.size();
  const std::size_t i = index_of(a);
  const std::size_t j = index_of(b);
  if (le_[i * n + j]) return Truth::True;
  if (lt_[j * n + i]) return Truth::False;
  return Truth::Unknown;
}

std::optional<CardinalName> CardContext::min(const CardinalName& a, const CardinalName& b) const {
  if (known_leq(a, b)) return a;
  if (known_leq(b, a)) return b;
  return std::nullopt;
}

std::optional<CardinalName> CardContext::max(const CardinalName& a, const CardinalName& b) const {
  if (known_leq(a, b)) return b;
  if (known_leq(b, a)) return a;
  return std::nullopt;
}

CardinalName CardContext::trace(const CardinalName& mu, const CardinalName& model_width) const {
  auto m = min(mu, model_width);
  if (!m) {
    throw Error(ErrorKind::IncomparableNames,
                "cannot compare '" + mu.str() + "' with model width '" + model_width.str() + "'");
  }
  return *m;
}

bool CardContext::declared(const Assumption& a) const {
  return std::find(assumptions_.begin(), assumptions_.end(), a) != assumptions_.end();
}

std::optional<CardinalName> CardContext::successor_of(const CardinalName& a) const {
  require(a);
  for (const auto& as : assumptions_) {
    if (as.kind == Assumption::Kind::Succ && equivalent(as.a, a)) return as.b;
  }
  return std::nullopt;
}

bool CardContext::has_pow_lt(const CardinalName& a, const CardinalName& b) const {
  require(a);
  require(b);
  // a^{<omega} = a for infinite a.
  if (known_leq(b, kAleph0)) return true;
  for (const auto& as : assumptions_) {
    if (!equivalent(as.a, a)) continue;
    if (as.kind == Assumption::Kind::PowLt && known_leq(b, as.b)) return true;
    if (as.kind == Assumption::Kind::Pow) {
      if (known_leq(b, as.b)) return true;
      auto s = successor_of(as.b);
      if (s && known_leq(b, *s)) return true;
    }
  }
  return false;
}

bool CardContext::has_pow(const CardinalName& a, const CardinalName& b) const {
  require(a);
  require(b);
  for (const auto& as : assumptions_) {
    if (!equivalent(as.a, a)) continue;
    if (as.kind == Assumption::Kind::Pow && known_leq(b, as.b)) return true;
    if (as.kind == Assumption::Kind::PowLt) {
      if (known_lt(b, as.b)) return true;
      auto s = successor_of(b);
      if (s && known_leq(*s, as.b)) return true;
    }
  }
  return false;
}

bool CardContext::is_inaccessible(const CardinalName& a, const CardinalName& b) const {
  require(a);
  require(b);
  for (const auto& as : assumptions_) {
    if (as.kind == Assumption::Kind::Inaccessible && equivalent(as.a, a) && known_leq(b, as.b)) return true;
  }
  return false;
}

std::vector<CardinalName> CardContext::regulars_between(const CardinalName& lo, const CardinalName& hi) const {
  std::vector<CardinalName> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (regular_[i] && known_leq(lo, names_[i]) && known_leq(names_[i], hi)) out.push_back(names_[i]);
  }
  return out;
}

std::vector<CardinalName> CardContext::sorted(std::vector<CardinalName> names) const {
  // Stable selection: take the first name nothing remaining is strictly below,
  // where strictly below means a <= b derivable and b <= a not. Works for a
  // preorder, where std::sort's strict weak ordering need not hold.
  auto below = [&](const CardinalName& a, const CardinalName& b) { return known_leq(a, b) && !known_leq(b, a); };
  std::vector<CardinalName> out;
  out.reserve(names.size());
  while (!names.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < names.size() && minimal; ++j) minimal = j == i || !below(names[j], names[i]);
      if (minimal) {
        pick = i;
        break;
      }
    }
    out.push_back(std::move(names[pick]));
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

CardContext build_context(const ContextSpec& spec) {
  CardContext ctx;
  auto add = [&](const CardinalName& name, bool regular) {
    if (name.empty()) throw Error(ErrorKind::BadParameters, "empty cardinal name");
    if (ctx.index_.contains(name.str())) {
      throw Error(ErrorKind::DuplicateName, "cardinal '" + name.str() + "' declared twice");
    }
    ctx.index_.emplace(name.str(), ctx.names_.size());
    ctx.names_.push_back(name);
    ctx.regular_.push_back(regular);
  };
  add(kAleph0, true);
  add(kAleph1, true);
  add(kContinuum, false);
  for (const auto& d : spec.cards) add(d.name, d.regular);

  const std::size_t n = ctx.names_.size();
  ctx.le_.assign(n * n, false);
  ctx.lt_.assign(n * n, false);
  auto set_edge = [&](std::size_t i, std::size_t j, bool strict) {
    ctx.le_[i * n + j] = true;
    if (strict) ctx.lt_[i * n + j] = true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    set_edge(i, i, false);
    if (i != 0) set_edge(0, i, false);
  }
  set_edge(0, 1, true);
  set_edge(1, 2, false);
  for (const auto& o : spec.order) set_edge(ctx.index_of(o.lo), ctx.index_of(o.hi), o.strict);

  for (const auto& a : spec.assumptions) {
    ctx.require(a.a);
    ctx.require(a.b);
    if (a.kind == Assumption::Kind::Succ) set_edge(ctx.index_of(a.a), ctx.index_of(a.b), true);
    ctx.assumptions_.push_back(a);
  }
  ctx.assumptions_.push_back({Assumption::Kind::Succ, kAleph0, kAleph1});

  // Floyd-Warshall over (<=, <).
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!ctx.le_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!ctx.le_[k * n + j]) continue;
        ctx.le_[i * n + j] = true;
        if (ctx.lt_[i * n + k] || ctx.lt_[k * n + j]) ctx.lt_[i * n + j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.lt_[i * n + i]) {
      throw Error(ErrorKind::OrderCycle, "strict cycle through '" + ctx.names_[i].str() + "'");
    }
  }
  return ctx;
}

std::string to_string(const OrdinalExpr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.factors.size(); ++i) {
    if (i) s += "*";
    s += e.factors[i].str();
  }
  return s;
}

void check_ordinal(const CardContext& ctx, const OrdinalExpr& e) {
  if (e.factors.empty()) throw Error(ErrorKind::BadParameters, "empty ordinal product");
  for (const auto& f : e.factors) {
    if (!ctx.is_regular(f)) {
      throw Error(ErrorKind::NonRegularFactor, "factor '" + f.str() + "' of " + to_string(e) + " is not regular");
    }
  }
}

CardinalName cf(const CardContext& ctx, const OrdinalExpr& e) {
  check_ordinal(ctx, e);
  return e.factors.back();
}

CardinalName card(const CardContext& ctx, const OrdinalExpr& e) {
  if (e.factors.empty()) throw Error(ErrorKind::BadParameters, "empty ordinal product");
  CardinalName best = e.factors.front();
  ctx.index_of(best);
  for (std::size_t i = 1; i < e.factors.size(); ++i) {
    auto m = ctx.max(best, e.factors[i]);
    if (!m) {
      throw Error(ErrorKind::IncomparableFactors,
                  "'" + best.str() + "' and '" + e.factors[i].str() + "' are not comparable");
    }
    best = *m;
  }
  return best;
}

}  // namespace cichon
