#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace peg {

// A set of Unicode scalar values, stored canonically as either the members
// themselves or, for complements, the excluded members. The empty set and the
// full alphabet are representable (ff and tt of the constraint algebra).
class CharSet {
 public:
  CharSet() = default;  // empty

  static CharSet none() { return CharSet(); }
  static CharSet all() { return CharSet(true, {}); }
  static CharSet single(char32_t c) { return CharSet(false, {c}); }
  static CharSet of(std::u32string_view chars);
  static CharSet range(char32_t lo, char32_t hi);

  bool contains(char32_t c) const;
  bool empty() const { return !negated_ && elems_.empty(); }
  bool universal() const { return negated_ && elems_.empty(); }
  bool finite() const { return !negated_; }
  // Number of members; finite sets only.
  std::size_t size() const { return elems_.size(); }

  CharSet intersect(const CharSet& other) const;
  CharSet unite(const CharSet& other) const;
  CharSet complement() const { return CharSet(!negated_, elems_); }
  bool subset_of(const CharSet& other) const;

  // Members when finite, excluded members otherwise. Sorted, unique.
  const std::vector<char32_t>& base() const { return elems_; }
  bool negated() const { return negated_; }

  bool operator==(const CharSet&) const = default;

 private:
  CharSet(bool negated, std::vector<char32_t> elems)
      : negated_(negated), elems_(std::move(elems)) {}

  bool negated_ = false;
  std::vector<char32_t> elems_;
};

std::size_t hash_value(const CharSet& s);

// Built-in character classes of the grammar surface; the order is the one
// the constraint printer uses when decomposing complements.
const std::vector<std::pair<std::string, CharSet>>& named_char_classes();

}  // namespace peg
