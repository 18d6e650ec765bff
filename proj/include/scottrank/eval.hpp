#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "scottrank/error.hpp"
#include "scottrank/linorder.hpp"

namespace scottrank {

// Value of E: -inf, a pair (l, n) of L x omega, or the root's (L, 0).
class EVal {
 public:
  enum class Kind : std::uint8_t { kNegInf = 0, kPair = 1, kTop = 2 };

  EVal() = default;

  static EVal neg_inf() { return EVal(); }
  static EVal top() {
    EVal v;
    v.kind_ = Kind::kTop;
    return v;
  }
  static EVal pair(OrderElem l, std::uint64_t n) {
    EVal v;
    v.kind_ = Kind::kPair;
    v.l_ = std::move(l);
    v.n_ = n;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  bool is_pair() const { return kind_ == Kind::kPair; }
  bool is_top() const { return kind_ == Kind::kTop; }

  const OrderElem& l() const {
    if (!is_pair()) fail(ErrorCode::kPrecondition, "E value has no L component");
    return l_;
  }
  std::uint64_t n() const {
    if (!is_pair()) fail(ErrorCode::kPrecondition, "E value has no omega component");
    return n_;
  }

  // E_L as a value with omega part 0: -inf stays -inf, top stays top
  EVal level() const { return is_pair() ? pair(l_, 0) : *this; }

  // E_omega, 0 for -inf and top
  std::uint64_t omega_part() const { return is_pair() ? n_ : 0; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kNegInf: return "-inf";
      case Kind::kTop: return "top";
      case Kind::kPair: return "(" + l_.to_string() + "," + std::to_string(n_) + ")";
    }
    return "?";
  }

  friend bool operator==(const EVal& a, const EVal& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_pair() || (a.l_ == b.l_ && a.n_ == b.n_);
  }

  friend std::strong_ordering operator<=>(const EVal& a, const EVal& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_pair()) return std::strong_ordering::equal;
    if (auto c = a.l_ <=> b.l_; c != 0) return c;
    return a.n_ <=> b.n_;
  }

 private:
  Kind kind_ = Kind::kNegInf;
  OrderElem l_;
  std::uint64_t n_ = 0;
};

inline EVal emin(const EVal& a, const EVal& b) { return b < a ? b : a; }
inline EVal emax(const EVal& a, const EVal& b) { return a < b ? b : a; }

// comparison with owner checks on both sides
inline std::strong_ordering eval_cmp(const LinOrder& order, const EVal& a, const EVal& b) {
  if (a.is_pair()) order.check(a.l());
  if (b.is_pair()) order.check(b.l());
  return a <=> b;
}

}  // namespace scottrank
