#include "cichon/finrel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cichon/error.hpp"

namespace cichon {

ExtNat ext_min(ExtNat a, ExtNat b) { return a < b ? a : b; }
ExtNat ext_max(ExtNat a, ExtNat b) { return a < b ? b : a; }

ExtNat ext_mul(ExtNat a, ExtNat b) {
  if (a.is_top() || b.is_top()) return ExtNat::top();
  return a.value() * b.value();
}

std::string to_string(ExtNat n) { return n.is_top() ? "inf" : std::to_string(n.value()); }

std::ostream& operator<<(std::ostream& os, ExtNat n) { return os << to_string(n); }

FinSys::FinSys(std::size_t x_size, std::size_t y_size) : y_size_(y_size), rows_(x_size, 0) {
  if (x_size == 0 || y_size == 0) throw Error(ErrorKind::BadParameters, "both sides of a system must be non-empty");
  if (y_size > 64) throw Error(ErrorKind::SizeLimit, "at most 64 responses fit a row mask");
}

FinSys FinSys::from_rows(const std::vector<std::vector<bool>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::BadParameters, "system has no rows");
  FinSys r(rows.size(), rows.front().size());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != r.y_size()) throw Error(ErrorKind::BadParameters, "ragged relation matrix");
    for (std::size_t y = 0; y < rows[x].size(); ++y) r.set(x, y, rows[x][y]);
  }
  return r;
}

void FinSys::set(std::size_t x, std::size_t y, bool v) {
  if (y >= y_size_) throw Error(ErrorKind::BadParameters, "response index out of range");
  Mask bit = Mask{1} << y;
  rows_.at(x) = v ? (rows_.at(x) | bit) : (rows_.at(x) & ~bit);
}

Mask FinSys::cone(std::size_t y) const {
  Mask c = 0;
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    if ((rows_[x] >> y) & 1U) c |= Mask{1} << x;
  }
  return c;
}

namespace {

Mask all_of(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

void check_sides(const FinSys& r, const Limits& lim) {
  if (r.x_size() > lim.max_side || r.y_size() > lim.max_side) {
    throw Error(ErrorKind::SizeLimit, "system " + std::to_string(r.x_size()) + "x" + std::to_string(r.y_size()) +
                                          " exceeds the side limit " + std::to_string(lim.max_side));
  }
}

std::vector<Mask> cones(const FinSys& r) {
  std::vector<Mask> c(r.y_size());
  for (std::size_t y = 0; y < r.y_size(); ++y) c[y] = r.cone(y);
  return c;
}

}  // namespace

ExtNat d_num(const FinSys& r, const Limits& lim) {
  check_sides(r, lim);
  auto c = cones(r);
  auto cover = min_set_cover(all_of(r.x_size()), c);
  return cover ? ExtNat(cover->size()) : ExtNat::top();
}

ExtNat b_num(const FinSys& r, const Limits& lim) {
  check_sides(r, lim);
  std::vector<Mask> complements;
  const Mask full = all_of(r.x_size());
  for (std::size_t y = 0; y < r.y_size(); ++y) complements.push_back(full & ~r.cone(y));
  auto hit = min_hitting_set(r.x_size(), complements);
  return hit ? ExtNat(hit->size()) : ExtNat::top();
}

FinSys dual(const FinSys& r) {
  FinSys d(r.y_size(), r.x_size());
  for (std::size_t y = 0; y < r.y_size(); ++y) {
    for (std::size_t x = 0; x < r.x_size(); ++x) d.set(y, x, !r.rel(x, y));
  }
  return d;
}

FinSys product(const FinSys& r, const FinSys& r2, const Limits& lim) {
  const std::size_t xs = r.x_size() * r2.x_size();
  const std::size_t ys = r.y_size() * r2.y_size();
  if (xs > lim.max_product_side || ys > lim.max_product_side) {
    throw Error(ErrorKind::SizeLimit, "product " + std::to_string(xs) + "x" + std::to_string(ys) +
                                          " exceeds the side limit " + std::to_string(lim.max_product_side));
  }
  FinSys p(xs, ys);
  for (std::size_t x = 0; x < r.x_size(); ++x) {
    for (std::size_t x2 = 0; x2 < r2.x_size(); ++x2) {
      for (std::size_t y = 0; y < r.y_size(); ++y) {
        for (std::size_t y2 = 0; y2 < r2.y_size(); ++y2) {
          p.set(x * r2.x_size() + x2, y * r2.y_size() + y2, r.rel(x, y) && r2.rel(x2, y2));
        }
      }
    }
  }
  return p;
}

bool is_tukey(const FinSys& r, const FinSys& r2, const TukeyMorphism& m) {
  if (m.psi_minus.size() != r.x_size() || m.psi_plus.size() != r2.y_size()) return false;
  for (std::size_t x = 0; x < r.x_size(); ++x) {
    if (m.psi_minus[x] >= r2.x_size()) return false;
    for (std::size_t y2 = 0; y2 < r2.y_size(); ++y2) {
      if (m.psi_plus[y2] >= r.y_size()) return false;
      if (r2.rel(m.psi_minus[x], y2) && !r.rel(x, m.psi_plus[y2])) return false;
    }
  }
  return true;
}

std::optional<TukeyMorphism> tukey_search(const FinSys& r, const FinSys& r2, const Limits& lim) {
  const double space = std::pow(static_cast<double>(r2.x_size()), static_cast<double>(r.x_size())) *
                       std::pow(static_cast<double>(r.y_size()), static_cast<double>(r2.y_size()));
  if (space > lim.search_space) {
    std::ostringstream msg;
    msg << "search space " << space << " exceeds the limit " << lim.search_space;
    throw Error(ErrorKind::SearchSpaceTooLarge, msg.str());
  }

  // A connection forces b(r2) <= b(r) and d(r) <= d(r2).
  const bool small = r.x_size() <= lim.max_side && r.y_size() <= lim.max_side && r2.x_size() <= lim.max_side &&
                     r2.y_size() <= lim.max_side;
  if (small && (b_num(r2, lim) > b_num(r, lim) || d_num(r, lim) > d_num(r2, lim))) return std::nullopt;

  const auto cone = cones(r);
  TukeyMorphism m{std::vector<std::size_t>(r.x_size(), 0), std::vector<std::size_t>(r2.y_size(), 0)};
  for (;;) {
    bool ok = true;
    for (std::size_t y2 = 0; y2 < r2.y_size() && ok; ++y2) {
      Mask need = 0;
      for (std::size_t x = 0; x < r.x_size(); ++x) {
        if (r2.rel(m.psi_minus[x], y2)) need |= Mask{1} << x;
      }
      ok = false;
      for (std::size_t y = 0; y < r.y_size(); ++y) {
        if ((need & ~cone[y]) == 0) {
          m.psi_plus[y2] = y;
          ok = true;
          break;
        }
      }
    }
    if (ok) return m;

    // Next psi_minus in lexicographic order (x = 0 most significant).
    std::size_t pos = r.x_size();
    while (pos > 0) {
      --pos;
      if (++m.psi_minus[pos] < r2.x_size()) break;
      m.psi_minus[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

FinIdeal small_sets(std::size_t n, std::size_t k) {
  if (n > 20) throw Error(ErrorKind::SizeLimit, "ground set too large to enumerate");
  FinIdeal ideal{n, {}};
  for (std::size_t size = 0; size < k; ++size) {
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) == size) ideal.members.push_back(s);
    }
  }
  return ideal;
}

IdealSystems ideal_systems(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::BadParameters,
                "ideal_systems needs 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return ideal_systems(small_sets(n, k));
}

IdealSystems ideal_systems(const FinIdeal& ideal) {
  const auto& I = ideal.members;
  if (ideal.ground_size == 0 || I.empty()) throw Error(ErrorKind::BadParameters, "empty ideal");
  const Mask ground = all_of(ideal.ground_size);
  for (Mask a : I) {
    if (a & ~ground) throw Error(ErrorKind::BadParameters, "member outside the ground set");
    for (Mask m = a; m != 0; m &= m - 1) {
      Mask smaller = a & ~(m & -m);
      if (std::find(I.begin(), I.end(), smaller) == I.end()) {
        throw Error(ErrorKind::BadParameters, "family is not downward closed");
      }
    }
  }
  FinSys isys(I.size(), I.size());
  for (std::size_t a = 0; a < I.size(); ++a) {
    for (std::size_t b = 0; b < I.size(); ++b) isys.set(a, b, (I[a] & ~I[b]) == 0);
  }
  FinSys csys(ideal.ground_size, I.size());
  for (std::size_t x = 0; x < ideal.ground_size; ++x) {
    for (std::size_t b = 0; b < I.size(); ++b) csys.set(x, b, (I[b] >> x) & 1U);
  }
  return {isys, csys};
}

Preorder from_preorder(const std::vector<std::vector<bool>>& rel) {
  const std::size_t n = rel.size();
  if (n == 0) throw Error(ErrorKind::NotPreorder, "empty carrier");
  for (const auto& row : rel) {
    if (row.size() != n) throw Error(ErrorKind::NotPreorder, "relation matrix is not square");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!rel[a][a]) throw Error(ErrorKind::NotPreorder, "not reflexive at " + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (rel[a][b] && rel[b][c] && !rel[a][c]) {
          throw Error(ErrorKind::NotPreorder, "not transitive at " + std::to_string(a) + "," + std::to_string(b) +
                                                  "," + std::to_string(c));
        }
      }
    }
  }
  Preorder p{FinSys::from_rows(rel), true};
  for (std::size_t a = 0; a < n && p.directed; ++a) {
    for (std::size_t b = 0; b < n && p.directed; ++b) {
      bool bounded = false;
      for (std::size_t c = 0; c < n && !bounded; ++c) bounded = rel[a][c] && rel[b][c];
      p.directed = bounded;
    }
  }
  return p;
}

namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

FinSys parse_finsys(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty system file");
  std::istringstream head(lines[0]);
  std::size_t xs = 0, ys = 0;
  if (!(head >> xs >> ys) || xs == 0 || ys == 0) {
    throw Error(ErrorKind::SyntaxError, "first line must be '<x_size> <y_size>' with positive sizes");
  }
  if (lines.size() != xs + 1) {
    throw Error(ErrorKind::SyntaxError, "expected " + std::to_string(xs) + " rows, found " +
                                            std::to_string(lines.size() - 1));
  }
  FinSys r(xs, ys);
  for (std::size_t x = 0; x < xs; ++x) {
    std::string row;
    for (char ch : lines[x + 1]) {
      if (ch == '0' || ch == '1') {
        row.push_back(ch);
      } else if (ch != ' ' && ch != '\t') {
        throw Error(ErrorKind::SyntaxError, "row " + std::to_string(x) + ": unexpected character '" + ch + "'");
      }
    }
    if (row.size() != ys) {
      throw Error(ErrorKind::SyntaxError, "row " + std::to_string(x) + " has " + std::to_string(row.size()) +
                                              " entries, expected " + std::to_string(ys));
    }
    for (std::size_t y = 0; y < ys; ++y) r.set(x, y, row[y] == '1');
  }
  return r;
}

std::string format_finsys(const FinSys& r) {
  std::string s = std::to_string(r.x_size()) + " " + std::to_string(r.y_size()) + "\n";
  for (std::size_t x = 0; x < r.x_size(); ++x) {
    for (std::size_t y = 0; y < r.y_size(); ++y) s.push_back(r.rel(x, y) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

FinIdeal parse_finideal(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty ideal file");
  FinIdeal ideal;
  {
    std::istringstream head(lines[0]);
    if (!(head >> ideal.ground_size) || ideal.ground_size == 0 || ideal.ground_size > 64) {
      throw Error(ErrorKind::SyntaxError, "first line must be the ground size (1..64)");
    }
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Mask m = 0;
    if (lines[i] != "-" && lines[i] != "{}") {
      std::istringstream in(lines[i]);
      long long v = 0;
      while (in >> v) {
        if (v < 0 || static_cast<std::size_t>(v) >= ideal.ground_size) {
          throw Error(ErrorKind::SyntaxError, "index " + std::to_string(v) + " outside the ground set");
        }
        m |= Mask{1} << v;
      }
      if (!in.eof()) throw Error(ErrorKind::SyntaxError, "malformed subset line: " + lines[i]);
    }
    ideal.members.push_back(m);
  }
  return ideal;
}

std::string format_finideal(const FinIdeal& ideal) {
  std::string s = std::to_string(ideal.ground_size) + "\n";
  for (Mask m : ideal.members) {
    if (m == 0) {
      s += "-\n";
      continue;
    }
    bool first = true;
    for (Mask b = m; b != 0; b &= b - 1) {
      if (!first) s.push_back(' ');
      s += std::to_string(std::countr_zero(b));
      first = false;
    }
    s.push_back('\n');
  }
  return s;
}

}  // namespace cichon
