#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holoweyl {

/// Full is D = C<x, y, r, t, dx, dy, dr, dt>; Param is D' (no t, dt).
enum class Ring { Full, Param };

enum class VarKind { X, Y, R, T };

std::string_view to_string(Ring ring);
Ring parse_ring(std::string_view text);

/// The ordered variable universe for sphere dimension n.
///
/// Base variables are laid out as
///   x[1][1], x[1][2], ..., x[1][n+1], x[2][2], ..., x[n+1][n+1]   (i <= j, row-major)
///   y[1], ..., y[n+1]
///   r
///   t[1], ..., t[n+1]                                            (Full only)
/// so the Param table is a prefix of the Full table. Every base variable z_k
/// has exactly one partial d_k. All indices in the public interface are
/// 1-based; the returned positions are 0-based slots in this layout.
class VarTable {
 public:
  VarTable(int n, Ring ring);

  int n() const { return n_; }
  Ring ring() const { return ring_; }
  bool has_t() const { return ring_ == Ring::Full; }

  /// Number of base variables d (the table has 2d generators).
  std::size_t size() const;
  std::size_t x_count() const { return std::size_t(n_ + 1) * std::size_t(n_ + 2) / 2; }
  std::size_t dim() const { return std::size_t(n_ + 1); }

  /// x[i][j]; a descending pair (i > j) resolves to x[j][i].
  std::size_t x(int i, int j) const;
  std::size_t y(int i) const;
  std::size_t r() const;
  std::size_t t(int i) const;

  VarKind kind(std::size_t slot) const;
  /// For x slots the (i, j) pair with i <= j; for y and t slots (i, 0).
  std::pair<int, int> indices(std::size_t slot) const;

  std::string name(std::size_t slot) const;          // "x[1][2]"
  std::string partial_name(std::size_t slot) const;  // "dx[1][2]"
  std::string symbol_name(std::size_t slot) const;   // "xi_x[1][2]"

  std::vector<std::string> names() const;

  struct Lookup {
    std::size_t slot;
    bool partial;
  };
  /// Resolves "x[2][1]", "dt[3]", "r", ...
  std::optional<Lookup> find(std::string_view name) const;

  std::vector<std::size_t> slots(VarKind kind) const;

  /// The Param table with the same n.
  VarTable param() const { return VarTable(n_, Ring::Param); }
  VarTable full() const { return VarTable(n_, Ring::Full); }

  friend bool operator==(const VarTable&, const VarTable&) = default;

 private:
  void check_index(int i) const;

  int n_;
  Ring ring_;
};

}  // namespace holoweyl
