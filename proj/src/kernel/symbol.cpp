#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tdbu/kernel.hpp"

namespace tdbu {

struct Symbol::Data {
  std::string name;
  std::uint32_t arity;
  SymbolKind kind;
  std::size_t hash;
};

namespace {

struct SymbolKey {
  std::string name;
  std::uint32_t arity;
  SymbolKind kind;
  bool operator==(const SymbolKey&) const = default;
};

struct SymbolKeyHash {
  std::size_t operator()(const SymbolKey& k) const {
    return std::hash<std::string>{}(k.name) * 31 + k.arity * 2 +
           static_cast<std::size_t>(k.kind);
  }
};

// Entries are never removed, so handed-out pointers stay valid for the
// lifetime of the process.
struct SymbolTable {
  std::mutex mutex;
  std::unordered_map<SymbolKey, std::unique_ptr<Symbol::Data>, SymbolKeyHash>
      entries;
};

SymbolTable& table() {
  static SymbolTable* t = new SymbolTable;
  return *t;
}

std::atomic<std::uint32_t> next_var{1};

}  // namespace

Symbol Symbol::intern(std::string_view name, std::uint32_t arity,
                      SymbolKind kind) {
  if (name.empty()) throw std::invalid_argument("symbol name must be nonempty");
  SymbolKey key{std::string(name), arity, kind};
  SymbolTable& t = table();
  std::lock_guard lock(t.mutex);
  auto it = t.entries.find(key);
  if (it == t.entries.end()) {
    auto data = std::make_unique<Data>(
        Data{key.name, arity, kind, SymbolKeyHash{}(key)});
    it = t.entries.emplace(std::move(key), std::move(data)).first;
  }
  return Symbol(it->second.get());
}

Symbol Symbol::equality() {
  static const Symbol eq = intern("=", 2, SymbolKind::kPredicate);
  return eq;
}

const std::string& Symbol::name() const { return data_->name; }
std::uint32_t Symbol::arity() const { return data_->arity; }
SymbolKind Symbol::kind() const { return data_->kind; }
bool Symbol::is_equality() const { return *this == equality(); }
std::size_t Symbol::hash() const { return data_ ? data_->hash : 0; }

std::strong_ordering operator<=>(Symbol a, Symbol b) {
  if (a.data_ == b.data_) return std::strong_ordering::equal;
  if (!a.data_) return std::strong_ordering::less;
  if (!b.data_) return std::strong_ordering::greater;
  return std::tie(a.data_->name, a.data_->arity, a.data_->kind) <=>
         std::tie(b.data_->name, b.data_->arity, b.data_->kind);
}

Var fresh_var() { return Var{next_var.fetch_add(1, std::memory_order_relaxed)}; }

}  // namespace tdbu
