#include "cichon/cover.hpp"

#include <algorithm>
#include <bit>

#include "cichon/error.hpp"

namespace cichon {

namespace {

class CoverSearch {
 public:
  CoverSearch(Mask universe, std::span<const Mask> sets) : universe_(universe) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      Mask s = sets[i] & universe;
      if (s != 0) {
        sets_.push_back(s);
        index_.push_back(i);
      }
    }
  }

  std::optional<std::vector<std::size_t>> run() {
    Mask reach = 0;
    for (Mask s : sets_) reach |= s;
    if ((reach & universe_) != universe_) return std::nullopt;
    if (universe_ == 0) return std::vector<std::size_t>{};
    best_ = greedy();
    std::vector<std::size_t> chosen;
    branch(universe_, chosen);
    std::vector<std::size_t> out;
    for (std::size_t k : best_) out.push_back(index_[k]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::size_t> greedy() const {
    std::vector<std::size_t> pick;
    Mask left = universe_;
    while (left != 0) {
      std::size_t arg = 0;
      int gain = -1;
      for (std::size_t k = 0; k < sets_.size(); ++k) {
        int g = std::popcount(sets_[k] & left);
        if (g > gain) {
          gain = g;
          arg = k;
        }
      }
      pick.push_back(arg);
      left &= ~sets_[arg];
    }
    return pick;
  }

  void branch(Mask left, std::vector<std::size_t>& chosen) {
    if (left == 0) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    int widest = 0;
    for (Mask s : sets_) widest = std::max(widest, std::popcount(s & left));
    const std::size_t need = (static_cast<std::size_t>(std::popcount(left)) + widest - 1) / widest;
    if (chosen.size() + need >= best_.size()) return;

    // Branch on the point with the fewest covering sets.
    int pivot = -1;
    std::size_t fewest = sets_.size() + 1;
    for (Mask m = left; m != 0; m &= m - 1) {
      int p = std::countr_zero(m);
      std::size_t c = 0;
      for (Mask s : sets_) c += (s >> p) & 1U;
      if (c < fewest) {
        fewest = c;
        pivot = p;
      }
    }
    std::vector<std::size_t> cand;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
      if ((sets_[k] >> pivot) & 1U) cand.push_back(k);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(sets_[a] & left) > std::popcount(sets_[b] & left);
    });
    for (std::size_t k : cand) {
      chosen.push_back(k);
      branch(left & ~sets_[k], chosen);
      chosen.pop_back();
    }
  }

  Mask universe_;
  std::vector<Mask> sets_;
  std::vector<std::size_t> index_;
  std::vector<std::size_t> best_;
};

Mask full_mask(std::size_t n) {
  if (n > 64) throw Error(ErrorKind::SizeLimit, "at most 64 points fit a mask");
  return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Point p covers member j of the family when p lies in it.
std::vector<Mask> transpose(std::size_t points, std::span<const Mask> family) {
  if (family.size() > 64) throw Error(ErrorKind::SizeLimit, "at most 64 sets fit a mask");
  std::vector<Mask> t(points, 0);
  for (std::size_t j = 0; j < family.size(); ++j) {
    for (std::size_t p = 0; p < points; ++p) {
      if ((family[j] >> p) & 1U) t[p] |= Mask{1} << j;
    }
  }
  return t;
}

}  // namespace

std::optional<std::vector<std::size_t>> min_set_cover(Mask universe, std::span<const Mask> sets) {
  return CoverSearch(universe, sets).run();
}

std::optional<std::vector<std::size_t>> min_hitting_set(std::size_t points, std::span<const Mask> family) {
  auto t = transpose(points, family);
  return min_set_cover(full_mask(family.size()), t);
}

}  // namespace cichon
