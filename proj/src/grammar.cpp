#include "peg/grammar.hpp"

namespace peg {

const Expr* Grammar::find_rule(const std::string& name) const {
  auto it = rules.find(name);
  return it == rules.end() ? nullptr : &it->second;
}

void Grammar::add_rule(std::string name, Expr body) {
  auto it = rules.find(name);
  if (it == rules.end()) {
    rule_order.push_back(name);
    rules.emplace(std::move(name), std::move(body));
  } else {
    it->second = std::move(body);
  }
}

}  // namespace peg
