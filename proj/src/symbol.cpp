#include "rru/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace rru {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names;  // deque: references stay valid on growth
  std::unordered_map<std::string_view, std::uint32_t> index;

  SymbolTable() {
    for (const char* n : {"true", ",", "[]", ".", "=", "\\=", "is", "<", ">", "=<", ">=", "+",
                          "-", "*", "append", "m", "clean", ":-"}) {
      add(n);
    }
  }

  std::uint32_t add(std::string_view name) {
    names.emplace_back(name);
    auto id = static_cast<std::uint32_t>(names.size() - 1);
    index.emplace(names.back(), id);
    return id;
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.index.find(name); it != t.index.end()) return Symbol(it->second);
  return Symbol(t.add(name));
}

const std::string& Symbol::name() const {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.names[index_];
}

}  // namespace rru
