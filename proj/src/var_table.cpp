#include "holoweyl/var_table.hpp"

#include <charconv>
#include <stdexcept>

namespace holoweyl {

std::string_view to_string(Ring ring) { return ring == Ring::Full ? "Full" : "Param"; }

Ring parse_ring(std::string_view text) {
  if (text == "Full" || text == "full") return Ring::Full;
  if (text == "Param" || text == "param") return Ring::Param;
  throw std::invalid_argument("unknown ring '" + std::string(text) + "'");
}

VarTable::VarTable(int n, Ring ring) : n_(n), ring_(ring) {
  if (n < 1) throw std::invalid_argument("sphere dimension n must be >= 1");
}

std::size_t VarTable::size() const {
  std::size_t d = x_count() + dim() + 1;
  return has_t() ? d + dim() : d;
}

void VarTable::check_index(int i) const {
  if (i < 1 || i > n_ + 1)
    throw std::out_of_range("variable index " + std::to_string(i) + " outside 1.." +
                            std::to_string(n_ + 1));
}

std::size_t VarTable::x(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i > j) std::swap(i, j);
  const std::size_t m = dim();
  const std::size_t a = std::size_t(i - 1);
  return a * m - a * (a - 1) / 2 + std::size_t(j - i);
}

std::size_t VarTable::y(int i) const {
  check_index(i);
  return x_count() + std::size_t(i - 1);
}

std::size_t VarTable::r() const { return x_count() + dim(); }

std::size_t VarTable::t(int i) const {
  if (!has_t()) throw std::out_of_range("the parameter ring has no t variables");
  check_index(i);
  return x_count() + dim() + 1 + std::size_t(i - 1);
}

VarKind VarTable::kind(std::size_t slot) const {
  if (slot >= size()) throw std::out_of_range("slot outside table");
  if (slot < x_count()) return VarKind::X;
  if (slot < x_count() + dim()) return VarKind::Y;
  if (slot == r()) return VarKind::R;
  return VarKind::T;
}

std::pair<int, int> VarTable::indices(std::size_t slot) const {
  switch (kind(slot)) {
    case VarKind::X: {
      std::size_t rest = slot;
      int i = 1;
      std::size_t row = dim();
      while (rest >= row) {
        rest -= row;
        --row;
        ++i;
      }
      return {i, i + int(rest)};
    }
    case VarKind::Y:
      return {int(slot - x_count()) + 1, 0};
    case VarKind::R:
      return {0, 0};
    case VarKind::T:
      return {int(slot - x_count() - dim() - 1) + 1, 0};
  }
  return {0, 0};
}

std::string VarTable::name(std::size_t slot) const {
  auto [i, j] = indices(slot);
  switch (kind(slot)) {
    case VarKind::X:
      return "x[" + std::to_string(i) + "][" + std::to_string(j) + "]";
    case VarKind::Y:
      return "y[" + std::to_string(i) + "]";
    case VarKind::R:
      return "r";
    case VarKind::T:
      return "t[" + std::to_string(i) + "]";
  }
  return {};
}

std::string VarTable::partial_name(std::size_t slot) const { return "d" + name(slot); }

std::string VarTable::symbol_name(std::size_t slot) const { return "xi_" + name(slot); }

std::vector<std::string> VarTable::names() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back(name(k));
  return out;
}

std::vector<std::size_t> VarTable::slots(VarKind k) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < size(); ++s)
    if (kind(s) == k) out.push_back(s);
  return out;
}

namespace {

// Parses "[a][b]..." into a list of integers; returns false on malformed input.
bool parse_brackets(std::string_view s, std::vector<int>& out) {
  while (!s.empty()) {
    if (s.front() != '[') return false;
    auto close = s.find(']');
    if (close == std::string_view::npos || close == 1) return false;
    int v = 0;
    auto inner = s.substr(1, close - 1);
    auto [p, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), v);
    if (ec != std::errc() || p != inner.data() + inner.size()) return false;
    out.push_back(v);
    s.remove_prefix(close + 1);
  }
  return true;
}

}  // namespace

std::optional<VarTable::Lookup> VarTable::find(std::string_view name) const {
  bool partial = false;
  if (name.size() > 1 && name.front() == 'd' && name != "d") {
    partial = true;
    name.remove_prefix(1);
  }
  if (name.empty()) return std::nullopt;
  const char head = name.front();
  std::vector<int> idx;
  if (!parse_brackets(name.substr(1), idx)) return std::nullopt;
  auto in_range = [&](int i) { return i >= 1 && i <= n_ + 1; };
  switch (head) {
    case 'x':
      if (idx.size() != 2 || !in_range(idx[0]) || !in_range(idx[1])) return std::nullopt;
      return Lookup{x(idx[0], idx[1]), partial};
    case 'y':
      if (idx.size() != 1 || !in_range(idx[0])) return std::nullopt;
      return Lookup{y(idx[0]), partial};
    case 'r':
      if (!idx.empty()) return std::nullopt;
      return Lookup{r(), partial};
    case 't':
      if (!has_t() || idx.size() != 1 || !in_range(idx[0])) return std::nullopt;
      return Lookup{t(idx[0]), partial};
    default:
      return std::nullopt;
  }
}

}  // namespace holoweyl
