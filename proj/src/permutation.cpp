#include "permuton/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace permuton {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  std::vector<char> seen(values_.size() + 1, 0);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > values_.size() || seen[v]) {
      throw std::invalid_argument("Permutation: values are not a bijection on 1..n");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(n - i);
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  const bool separated = text.find_first_of(", \t;") != std::string_view::npos;
  std::vector<int> v;
  if (!separated) {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("Permutation::parse: unexpected character");
      }
      v.push_back(c - '0');
    }
  } else {
    std::string token;
    auto flush = [&] {
      if (!token.empty()) {
        v.push_back(std::stoi(token));
        token.clear();
      }
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        token.push_back(c);
      } else if (c == ',' || c == ' ' || c == '\t' || c == ';') {
        flush();
      } else {
        throw std::invalid_argument("Permutation::parse: unexpected character");
      }
    }
    flush();
  }
  if (v.empty()) throw std::invalid_argument("Permutation::parse: empty input");
  return Permutation(std::move(v));
}

Permutation Permutation::reverse() const {
  return Permutation(std::vector<int>(values_.rbegin(), values_.rend()));
}

Permutation Permutation::complement() const {
  std::vector<int> v(values_.size());
  const int n1 = static_cast<int>(values_.size()) + 1;
  std::transform(values_.begin(), values_.end(), v.begin(), [n1](int x) { return n1 - x; });
  return Permutation(std::move(v));
}

Permutation Permutation::reverse_complement() const { return reverse().complement(); }

std::string Permutation::to_string() const {
  std::string out;
  const bool compact = values_.size() <= 9;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!compact && i > 0) out.push_back(' ');
    out += std::to_string(values_[i]);
  }
  return out;
}

Permutation standardize(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r + 1);
  return Permutation(std::move(ranks));
}

std::vector<Permutation> all_permutations(std::size_t k) {
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace permuton
