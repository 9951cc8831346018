#include "peg/charset.hpp"

#include <algorithm>

namespace peg {

namespace {

std::vector<char32_t> sorted_unique(std::vector<char32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<char32_t> set_and(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<char32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<char32_t> set_or(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<char32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<char32_t> set_minus(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<char32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CharSet CharSet::of(std::u32string_view chars) {
  CharSet s;
  s.elems_ = sorted_unique(std::vector<char32_t>(chars.begin(), chars.end()));
  return s;
}

CharSet CharSet::range(char32_t lo, char32_t hi) {
  CharSet s;
  if (lo > hi) return s;
  for (char32_t c = lo; c <= hi; ++c) {
    s.elems_.push_back(c);
    if (c == hi) break;  // guard wrap-around at the top of the range
  }
  return s;
}

bool CharSet::contains(char32_t c) const {
  bool in = std::binary_search(elems_.begin(), elems_.end(), c);
  return negated_ ? !in : in;
}

CharSet CharSet::intersect(const CharSet& o) const {
  if (!negated_ && !o.negated_) return CharSet(false, set_and(elems_, o.elems_));
  if (!negated_ && o.negated_) return CharSet(false, set_minus(elems_, o.elems_));
  if (negated_ && !o.negated_) return CharSet(false, set_minus(o.elems_, elems_));
  return CharSet(true, set_or(elems_, o.elems_));
}

CharSet CharSet::unite(const CharSet& o) const {
  if (!negated_ && !o.negated_) return CharSet(false, set_or(elems_, o.elems_));
  if (!negated_ && o.negated_) return CharSet(true, set_minus(o.elems_, elems_));
  if (negated_ && !o.negated_) return CharSet(true, set_minus(elems_, o.elems_));
  return CharSet(true, set_and(elems_, o.elems_));
}

bool CharSet::subset_of(const CharSet& other) const {
  return intersect(other) == *this;
}

std::size_t hash_value(const CharSet& s) {
  std::size_t h = s.negated() ? 0x9E3779B97F4A7C15ull : 0;
  for (char32_t c : s.base()) h = h * 1099511628211ull ^ static_cast<std::size_t>(c);
  return h;
}

const std::vector<std::pair<std::string, CharSet>>& named_char_classes() {
  static const std::vector<std::pair<std::string, CharSet>> table = [] {
    std::vector<std::pair<std::string, CharSet>> t;
    CharSet digit = CharSet::range(U'0', U'9');
    CharSet lower = CharSet::range(U'a', U'z');
    CharSet upper = CharSet::range(U'A', U'Z');
    CharSet alpha = lower.unite(upper);
    CharSet word = alpha.unite(digit).unite(CharSet::single(U'_'));
    t.emplace_back("[0-9]", digit);
    t.emplace_back("[a-z]", lower);
    t.emplace_back("[A-Z]", upper);
    t.emplace_back("[a-zA-Z]", alpha);
    t.emplace_back("[a-zA-Z0-9_]", word);
    t.emplace_back("[.]", CharSet::all());
    return t;
  }();
  return table;
}

}  // namespace peg
