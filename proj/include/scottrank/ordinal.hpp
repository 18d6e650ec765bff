#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scottrank/error.hpp"

namespace scottrank {

struct CnfTerm {
  std::uint32_t exponent = 0;
  std::uint64_t coefficient = 1;

  friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

// Ordinal below omega^omega in Cantor normal form.
class OrdCNF {
 public:
  OrdCNF() = default;

  static OrdCNF finite(std::uint64_t n) {
    OrdCNF out;
    if (n > 0) out.terms_.push_back({0, n});
    return out;
  }

  static OrdCNF omega_pow(std::uint32_t exponent, std::uint64_t coefficient = 1) {
    OrdCNF out;
    if (coefficient > 0) out.terms_.push_back({exponent, coefficient});
    return out;
  }

  static OrdCNF omega() { return omega_pow(1); }

  static OrdCNF from_terms(std::vector<CnfTerm> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].coefficient == 0) {
        fail(ErrorCode::kInvalidSpec, "CNF coefficient must be positive");
      }
      if (i > 0 && terms[i].exponent >= terms[i - 1].exponent) {
        fail(ErrorCode::kInvalidSpec, "CNF exponents must strictly decrease");
      }
    }
    OrdCNF out;
    out.terms_ = std::move(terms);
    return out;
  }

  // coefficients[k] is the coefficient of omega^k
  static OrdCNF from_digits(const std::vector<std::uint64_t>& coefficients) {
    OrdCNF out;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
      if (coefficients[k] != 0) {
        out.terms_.push_back({static_cast<std::uint32_t>(k), coefficients[k]});
      }
    }
    return out;
  }

  const std::vector<CnfTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || terms_.front().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }

  std::uint64_t finite_value() const {
    if (!is_finite()) fail(ErrorCode::kPrecondition, "ordinal is infinite");
    return terms_.empty() ? 0 : terms_.front().coefficient;
  }

  // exponent of the leading term, 0 for zero
  std::uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().exponent; }

  std::uint64_t coefficient_of(std::uint32_t exponent) const {
    for (const auto& t : terms_) {
      if (t.exponent == exponent) return t.coefficient;
    }
    return 0;
  }

  std::vector<std::uint64_t> digits(std::size_t width) const {
    std::vector<std::uint64_t> out(width, 0);
    for (const auto& t : terms_) {
      if (t.exponent >= width) fail(ErrorCode::kPrecondition, "digit width too small");
      out[t.exponent] = t.coefficient;
    }
    return out;
  }

  std::uint64_t digit_sum() const {
    std::uint64_t s = 0;
    for (const auto& t : terms_) s += t.coefficient;
    return s;
  }

  OrdCNF successor() const { return *this + finite(1); }

  std::optional<OrdCNF> predecessor() const {
    if (!is_successor()) return std::nullopt;
    OrdCNF out = *this;
    if (--out.terms_.back().coefficient == 0) out.terms_.pop_back();
    return out;
  }

  // ordinal (left-absorbing) addition
  friend OrdCNF operator+(const OrdCNF& a, const OrdCNF& b) {
    if (b.is_zero()) return a;
    OrdCNF out;
    const std::uint32_t lead = b.terms_.front().exponent;
    for (const auto& t : a.terms_) {
      if (t.exponent > lead) out.terms_.push_back(t);
    }
    std::uint64_t carry = a.coefficient_of(lead);
    bool first = true;
    for (const auto& t : b.terms_) {
      CnfTerm u = t;
      if (first) {
        u.coefficient += carry;
        first = false;
      }
      out.terms_.push_back(u);
    }
    return out;
  }

  friend bool operator==(const OrdCNF&, const OrdCNF&) = default;

  friend std::strong_ordering operator<=>(const OrdCNF& a, const OrdCNF& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = a.terms_[i];
      const auto& y = b.terms_[i];
      if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
      if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
    }
    return a.terms_.size() <=> b.terms_.size();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += "+";
      if (t.exponent == 0) {
        out += std::to_string(t.coefficient);
        continue;
      }
      out += "w";
      if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
      if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
  }

 private:
  std::vector<CnfTerm> terms_;
};

}  // namespace scottrank
