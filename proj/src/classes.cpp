#include "permuton/classes.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "permuton/patterns.hpp"

namespace permuton {
namespace {

const std::vector<VincularPattern>& vincular_set(ClassId cls) {
  static const std::vector<VincularPattern> baxter{VincularPattern::p2413v, VincularPattern::p3142v};
  static const std::vector<VincularPattern> semi{VincularPattern::p2413v};
  static const std::vector<VincularPattern> strong{VincularPattern::p2413v, VincularPattern::p3142v,
                                                   VincularPattern::p3412v};
  static const std::vector<VincularPattern> none;
  switch (cls) {
    case ClassId::baxter: return baxter;
    case ClassId::semi_baxter: return semi;
    case ClassId::strong_baxter: return strong;
    case ClassId::separable: return none;
  }
  return none;
}

// An occurrence whose last entry is the newest one (index p = v.size() - 1).
bool ends_bad_vincular(ClassId cls, const std::vector<int>& v) {
  const std::size_t p = v.size() - 1;
  if (p < 3) return false;
  const int d = v[p];
  for (VincularPattern pat : vincular_set(cls)) {
    for (std::size_t j = 1; j + 1 < p; ++j) {
      const int b = v[j];
      const int c = v[j + 1];
      for (std::size_t i = 0; i < j; ++i) {
        if (vincular_chain(pat, v[i], b, c, d)) return true;
      }
    }
  }
  return false;
}

// Classical 2413 or 3142 ending at the newest entry.
bool ends_bad_separable(const std::vector<int>& v) {
  const std::size_t p = v.size() - 1;
  if (p < 3) return false;
  const int d = v[p];
  for (std::size_t l = 2; l < p; ++l) {
    const int c = v[l];
    for (std::size_t j = 1; j < l; ++j) {
      const int b = v[j];
      for (std::size_t i = 0; i < j; ++i) {
        const int a = v[i];
        if (c < a && a < d && d < b) return true;  // 2413
        if (b < d && d < a && a < c) return true;  // 3142
      }
    }
  }
  return false;
}

bool ends_bad(ClassId cls, const std::vector<int>& v) {
  return cls == ClassId::separable ? ends_bad_separable(v) : ends_bad_vincular(cls, v);
}

void extend(ClassId cls, std::size_t n, std::vector<int>& prefix, std::vector<char>& used,
            const std::function<void(const std::vector<int>&)>& visit) {
  if (prefix.size() == n) {
    visit(prefix);
    return;
  }
  for (int v = 1; v <= static_cast<int>(n); ++v) {
    if (used[v]) continue;
    prefix.push_back(v);
    if (!ends_bad(cls, prefix)) {
      used[v] = 1;
      extend(cls, n, prefix, used, visit);
      used[v] = 0;
    }
    prefix.pop_back();
  }
}

void check_ceiling(std::size_t n, std::size_t ceiling) {
  if (ceiling > kMaxCeiling) throw std::invalid_argument("enumeration ceiling above the supported maximum");
  if (n > ceiling) {
    throw std::invalid_argument("size " + std::to_string(n) + " exceeds the enumeration ceiling " +
                                std::to_string(ceiling));
  }
}

}  // namespace

ClassId parse_class(std::string_view name) {
  if (name == "baxter") return ClassId::baxter;
  if (name == "semi_baxter" || name == "semi-baxter") return ClassId::semi_baxter;
  if (name == "strong_baxter" || name == "strong-baxter") return ClassId::strong_baxter;
  if (name == "separable") return ClassId::separable;
  throw std::invalid_argument("unknown class: " + std::string(name));
}

std::string to_string(ClassId id) {
  switch (id) {
    case ClassId::baxter: return "baxter";
    case ClassId::semi_baxter: return "semi_baxter";
    case ClassId::strong_baxter: return "strong_baxter";
    case ClassId::separable: return "separable";
  }
  return "?";
}

bool is_member(ClassId cls, const Permutation& sigma) {
  if (cls == ClassId::separable) {
    if (sigma.size() < 4) return true;
    return occ(Permutation({2, 4, 1, 3}), sigma) == 0 && occ(Permutation({3, 1, 4, 2}), sigma) == 0;
  }
  for (VincularPattern p : vincular_set(cls)) {
    if (vincular_occ(p, sigma) != 0) return false;
  }
  return true;
}

ClassMembers::ClassMembers(std::size_t n, std::vector<std::uint8_t> flat) : n_(n), flat_(std::move(flat)) {}

Permutation ClassMembers::operator[](std::size_t i) const {
  if (i >= size()) throw std::out_of_range("ClassMembers: index out of range");
  std::vector<int> v(n_);
  for (std::size_t p = 0; p < n_; ++p) v[p] = flat_[i * n_ + p];
  return Permutation(std::move(v));
}

void for_each_member(ClassId cls, std::size_t n, const std::function<void(const std::vector<int>&)>& visit,
                     std::size_t ceiling) {
  check_ceiling(n, ceiling);
  std::vector<int> prefix;
  prefix.reserve(n);
  std::vector<char> used(n + 1, 0);
  extend(cls, n, prefix, used, visit);
}

std::shared_ptr<const ClassMembers> enumerate(ClassId cls, std::size_t n, std::size_t ceiling) {
  check_ceiling(n, ceiling);
  static std::mutex mutex;
  static std::map<std::pair<ClassId, std::size_t>, std::shared_ptr<const ClassMembers>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({cls, n}); it != cache.end()) return it->second;
  }
  std::vector<std::uint8_t> flat;
  for_each_member(cls, n, [&](const std::vector<int>& v) {
    for (int x : v) flat.push_back(static_cast<std::uint8_t>(x));
  }, ceiling);
  auto members = std::make_shared<const ClassMembers>(n, std::move(flat));
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(cls, n), std::move(members)).first->second;
}

std::uint64_t class_count(ClassId cls, std::size_t n, std::size_t ceiling) {
  return enumerate(cls, n, ceiling)->size();
}

Permutation uniform_sample(ClassId cls, std::size_t n, Rng& rng, std::size_t ceiling) {
  if (n <= ceiling) {
    const auto members = enumerate(cls, n, ceiling);
    return (*members)[static_cast<std::size_t>(rng.below(members->size()))];
  }
  std::vector<int> v(n);
  for (std::uint64_t attempt = 0; attempt < kRejectionCap; ++attempt) {
    std::iota(v.begin(), v.end(), 1);
    for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    Permutation sigma(v);
    if (is_member(cls, sigma)) return sigma;
  }
  throw std::runtime_error("uniform_sample: rejection cap reached for " + to_string(cls) + " at n = " +
                           std::to_string(n));
}

Permutation uniform_sample(ClassId cls, std::size_t n, std::uint64_t seed, std::size_t ceiling) {
  Rng rng(seed);
  return uniform_sample(cls, n, rng, ceiling);
}

Rational exact_expected_pocc(ClassId cls, std::size_t n, const Permutation& pi, std::size_t ceiling) {
  if (pi.size() > n) throw std::invalid_argument("exact_expected_pocc: pattern longer than n");
  const auto members = enumerate(cls, n, ceiling);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < members->size(); ++i) total += occ(pi, (*members)[i]);
  const std::uint64_t denom = members->size() * binomial(n, pi.size());
  return Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(denom));
}

}  // namespace permuton
