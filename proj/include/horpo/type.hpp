#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace horpo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

struct SortDecl {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

/// A simple type: either a sort applied to argument types (a data type) or
/// an arrow. Immutable and cheap to copy; nodes are shared.
class Type {
 public:
  enum class Kind { Data, Arrow };

  Type() = default;

  static Type data(std::string sort, std::vector<Type> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Data;
    n->sort = std::move(sort);
    n->args = std::move(args);
    n->size = 1;
    for (const auto& a : n->args) n->size += a.size();
    return Type(std::move(n));
  }

  static Type arrow(Type domain, Type codomain) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Arrow;
    n->size = 1 + domain.size() + codomain.size();
    n->args = {std::move(domain), std::move(codomain)};
    return Type(std::move(n));
  }

  /// Right-nested arrow `domains[0] -> ... -> codomain`.
  static Type arrows(const std::vector<Type>& domains, Type codomain) {
    for (auto it = domains.rbegin(); it != domains.rend(); ++it)
      codomain = arrow(*it, std::move(codomain));
    return codomain;
  }

  bool valid() const { return node_ != nullptr; }
  explicit operator bool() const { return valid(); }

  Kind kind() const { return node_->kind; }
  bool is_data() const { return node_->kind == Kind::Data; }
  bool is_arrow() const { return node_->kind == Kind::Arrow; }

  const std::string& sort() const { return node_->sort; }
  const std::vector<Type>& args() const { return node_->args; }
  const Type& domain() const { return node_->args[0]; }
  const Type& codomain() const { return node_->args[1]; }
  std::size_t size() const { return node_ ? node_->size : 0; }

  /// Number of arrows along the codomain spine.
  std::size_t arrow_depth() const {
    std::size_t d = 0;
    for (const Type* t = this; t->is_arrow(); t = &t->codomain()) ++d;
    return d;
  }

  friend std::strong_ordering operator<=>(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (!a.node_) return std::strong_ordering::less;
    if (!b.node_) return std::strong_ordering::greater;
    if (a.kind() != b.kind())
      return a.kind() == Kind::Data ? std::strong_ordering::less
                                    : std::strong_ordering::greater;
    if (a.is_data()) {
      if (auto c = a.sort() <=> b.sort(); c != 0) return c;
    }
    const auto& xs = a.args();
    const auto& ys = b.args();
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
      if (auto c = xs[i] <=> ys[i]; c != 0) return c;
    return xs.size() <=> ys.size();
  }
  friend bool operator==(const Type& a, const Type& b) {
    return (a <=> b) == 0;
  }

  /// `Nat`, `List(Nat)`, `Nat -> Ord`, `(Nat -> Ord) -> Ord`.
  std::string str(std::string_view arrow_token = " -> ") const {
    std::string out;
    print(out, arrow_token);
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Type& t) {
    return os << (t.valid() ? t.str() : std::string("<untyped>"));
  }

 private:
  struct Node {
    Kind kind = Kind::Data;
    std::string sort;
    std::vector<Type> args;  // data arguments, or {domain, codomain}
    std::size_t size = 1;
  };

  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void print(std::string& out, std::string_view arrow_token) const {
    if (is_data()) {
      out += sort();
      if (!args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < args().size(); ++i) {
          if (i) out += ',';
          args()[i].print(out, arrow_token);
        }
        out += ')';
      }
      return;
    }
    if (domain().is_arrow()) {
      out += '(';
      domain().print(out, arrow_token);
      out += ')';
    } else {
      domain().print(out, arrow_token);
    }
    out += arrow_token;
    codomain().print(out, arrow_token);
  }

  std::shared_ptr<const Node> node_;
};

/// Collects every type subterm of `t` (including `t`).
inline void collect_type_subterms(const Type& t, std::vector<Type>& out) {
  out.push_back(t);
  for (const auto& a : t.args()) collect_type_subterms(a, out);
}

}  // namespace horpo
