#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace holoweyl {

using Exponent = std::uint16_t;

// Exponent vectors are short (at most a few dozen entries for the tables
// used here) so they live inline.
using Exponents = boost::container::small_vector<Exponent, 40>;

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    return boost::hash_range(e.begin(), e.end());
  }
};

inline std::size_t total_degree(const Exponents& e) {
  std::size_t d = 0;
  for (auto v : e) d += v;
  return d;
}

inline bool is_one(const Exponents& e) {
  for (auto v : e)
    if (v != 0) return false;
  return true;
}

/// True iff a divides b componentwise.
inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    if (s > 0xFFFFu) throw std::overflow_error("exponent overflow");
    r[i] = Exponent(s);
  }
  return r;
}

/// b - a, requires divides(a, b).
inline Exponents sub_exponents(const Exponents& b, const Exponents& a) {
  Exponents r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = Exponent(b[i] - a[i]);
  return r;
}

inline Exponents lcm_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] > b[i] ? a[i] : b[i];
  return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

}  // namespace holoweyl
