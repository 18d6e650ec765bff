#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scottrank/error.hpp"
#include "scottrank/ordinal.hpp"

namespace scottrank {

enum class OrderKind { kFinite, kOrdinal, kLimitPlusZeta };

struct OrderSpec {
  OrderKind kind = OrderKind::kFinite;
  std::uint64_t n = 2;  // finite size
  OrdCNF lambda;        // ordinal / well-founded part

  static OrderSpec finite(std::uint64_t n) { return {OrderKind::kFinite, n, {}}; }
  static OrderSpec ordinal(OrdCNF lambda) {
    return {OrderKind::kOrdinal, 0, std::move(lambda)};
  }
  static OrderSpec limit_plus_zeta(OrdCNF lambda) {
    return {OrderKind::kLimitPlusZeta, 0, std::move(lambda)};
  }

  std::string to_string() const {
    switch (kind) {
      case OrderKind::kFinite: return "Finite(" + std::to_string(n) + ")";
      case OrderKind::kOrdinal: return "Ordinal(" + lambda.to_string() + ")";
      case OrderKind::kLimitPlusZeta: return "LimitPlusZeta(" + lambda.to_string() + ")";
    }
    return "?";
  }

  friend bool operator==(const OrderSpec& a, const OrderSpec& b) {
    if (a.kind != b.kind) return false;
    return a.kind == OrderKind::kFinite ? a.n == b.n : a.lambda == b.lambda;
  }
};

enum class ElemTag : std::uint8_t { kFin = 0, kOrd = 1, kZeta = 2 };

// Element of a LinOrder. The value ordering below is intrinsic (Fin by index,
// Ord by ordinal, every Ord below every Zeta); owners are checked by LinOrder.
class OrderElem {
 public:
  OrderElem() = default;

  ElemTag tag() const { return tag_; }
  std::uint64_t owner() const { return owner_; }
  std::uint64_t fin_index() const { return fin_; }
  const OrdCNF& ord_value() const { return ord_; }
  std::int64_t zeta_offset() const { return zeta_; }

  bool is_zeta() const { return tag_ == ElemTag::kZeta; }

  std::string to_string() const {
    switch (tag_) {
      case ElemTag::kFin: return std::to_string(fin_);
      case ElemTag::kOrd: return ord_.to_string();
      case ElemTag::kZeta: return "z" + std::to_string(zeta_);
    }
    return "?";
  }

  friend bool operator==(const OrderElem& a, const OrderElem& b) {
    if (a.tag_ != b.tag_) return false;
    switch (a.tag_) {
      case ElemTag::kFin: return a.fin_ == b.fin_;
      case ElemTag::kOrd: return a.ord_ == b.ord_;
      case ElemTag::kZeta: return a.zeta_ == b.zeta_;
    }
    return false;
  }

  friend std::strong_ordering operator<=>(const OrderElem& a, const OrderElem& b) {
    if (a.tag_ != b.tag_) return a.tag_ <=> b.tag_;
    switch (a.tag_) {
      case ElemTag::kFin: return a.fin_ <=> b.fin_;
      case ElemTag::kOrd: return a.ord_ <=> b.ord_;
      case ElemTag::kZeta: return a.zeta_ <=> b.zeta_;
    }
    return std::strong_ordering::equal;
  }

 private:
  friend class LinOrder;

  std::uint64_t owner_ = 0;
  ElemTag tag_ = ElemTag::kFin;
  std::uint64_t fin_ = 0;
  OrdCNF ord_;
  std::int64_t zeta_ = 0;
};

class LinOrder {
 public:
  static std::shared_ptr<const LinOrder> make(const OrderSpec& spec) {
    return std::shared_ptr<const LinOrder>(new LinOrder(spec));
  }

  LinOrder(const LinOrder&) = delete;
  LinOrder& operator=(const LinOrder&) = delete;

  const OrderSpec& spec() const { return spec_; }
  OrderKind kind() const { return spec_.kind; }
  std::uint64_t id() const { return id_; }

  // -- element construction ------------------------------------------------

  OrderElem fin(std::uint64_t i) const {
    if (kind() != OrderKind::kFinite || i >= spec_.n) {
      fail(ErrorCode::kInvalidSpec, "no finite element " + std::to_string(i));
    }
    OrderElem e;
    e.owner_ = id_;
    e.tag_ = ElemTag::kFin;
    e.fin_ = i;
    return e;
  }

  OrderElem ord(const OrdCNF& value) const {
    if (kind() == OrderKind::kFinite || value >= spec_.lambda) {
      fail(ErrorCode::kInvalidSpec, "no ordinal element " + value.to_string());
    }
    OrderElem e;
    e.owner_ = id_;
    e.tag_ = ElemTag::kOrd;
    e.ord_ = value;
    return e;
  }

  OrderElem ord(std::uint64_t n) const { return ord(OrdCNF::finite(n)); }

  OrderElem zeta(std::int64_t offset) const {
    if (kind() != OrderKind::kLimitPlusZeta) {
      fail(ErrorCode::kInvalidSpec, "order has no integer part");
    }
    OrderElem e;
    e.owner_ = id_;
    e.tag_ = ElemTag::kZeta;
    e.zeta_ = offset;
    return e;
  }

  // element of the well-founded part with the given order type below it
  OrderElem wf_elem(const OrdCNF& value) const {
    if (kind() == OrderKind::kFinite) return fin(value.finite_value());
    return ord(value);
  }

  bool contains(const OrderElem& a) const {
    if (a.owner_ != id_) return false;
    switch (a.tag_) {
      case ElemTag::kFin: return kind() == OrderKind::kFinite && a.fin_ < spec_.n;
      case ElemTag::kOrd: return kind() != OrderKind::kFinite && a.ord_ < spec_.lambda;
      case ElemTag::kZeta: return kind() == OrderKind::kLimitPlusZeta;
    }
    return false;
  }

  void check(const OrderElem& a) const {
    if (!contains(a)) {
      fail(ErrorCode::kForeignElement, "element " + a.to_string() + " not in " +
                                           spec_.to_string());
    }
  }

  // -- order structure -------------------------------------------------------

  std::strong_ordering cmp(const OrderElem& a, const OrderElem& b) const {
    check(a);
    check(b);
    return a <=> b;
  }

  OrderElem least() const {
    return kind() == OrderKind::kFinite ? fin(0) : ord(OrdCNF());
  }

  bool has_max() const { return max_elem().has_value(); }

  std::optional<OrderElem> max_elem() const {
    switch (kind()) {
      case OrderKind::kFinite: return fin(spec_.n - 1);
      case OrderKind::kOrdinal:
        if (auto p = spec_.lambda.predecessor()) return ord(*p);
        return std::nullopt;
      case OrderKind::kLimitPlusZeta: return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<OrderElem> succ(const OrderElem& a) const {
    check(a);
    switch (a.tag_) {
      case ElemTag::kFin:
        if (a.fin_ + 1 < spec_.n) return fin(a.fin_ + 1);
        return std::nullopt;
      case ElemTag::kOrd: {
        OrdCNF s = a.ord_.successor();
        if (s < spec_.lambda) return ord(s);
        return std::nullopt;
      }
      case ElemTag::kZeta: return zeta(a.zeta_ + 1);
    }
    return std::nullopt;
  }

  std::optional<OrderElem> pred(const OrderElem& a) const {
    check(a);
    switch (a.tag_) {
      case ElemTag::kFin:
        if (a.fin_ > 0) return fin(a.fin_ - 1);
        return std::nullopt;
      case ElemTag::kOrd:
        if (auto p = a.ord_.predecessor()) return ord(*p);
        return std::nullopt;
      case ElemTag::kZeta: return zeta(a.zeta_ - 1);
    }
    return std::nullopt;
  }

  bool is_least(const OrderElem& a) const { return a == least(); }

  bool is_limit(const OrderElem& a) const {
    check(a);
    return a.tag_ == ElemTag::kOrd && a.ord_.is_limit();
  }

  bool in_wf_part(const OrderElem& a) const {
    check(a);
    return a.tag_ != ElemTag::kZeta;
  }

  // order type of the element's initial segment, for well-founded elements
  OrdCNF ordinal_of(const OrderElem& a) const {
    if (!in_wf_part(a)) fail(ErrorCode::kBetaIllFounded, "element in the ill-founded part");
    return a.tag_ == ElemTag::kFin ? OrdCNF::finite(a.fin_) : a.ord_;
  }

  OrdCNF wf() const {
    return kind() == OrderKind::kFinite ? OrdCNF::finite(spec_.n) : spec_.lambda;
  }

  OrdCNF wfc() const {
    return kind() == OrderKind::kLimitPlusZeta ? wf().successor() : wf();
  }

  bool is_well_founded() const { return kind() != OrderKind::kLimitPlusZeta; }

  // -- enumeration -----------------------------------------------------------

  // number of elements, nullopt when infinite
  std::optional<std::uint64_t> size() const {
    switch (kind()) {
      case OrderKind::kFinite: return spec_.n;
      case OrderKind::kOrdinal:
        if (spec_.lambda.is_finite()) return spec_.lambda.finite_value();
        return std::nullopt;
      case OrderKind::kLimitPlusZeta: return std::nullopt;
    }
    return std::nullopt;
  }

  bool has_index(std::uint64_t i) const {
    auto n = size();
    return !n || i < *n;
  }

  OrderElem at(std::uint64_t i) const {
    if (!has_index(i)) fail(ErrorCode::kPrecondition, "enumeration index out of range");
    switch (kind()) {
      case OrderKind::kFinite: return fin(i);
      case OrderKind::kOrdinal: return ord(lambda_at(i));
      case OrderKind::kLimitPlusZeta:
        if (i % 2 == 0) return ord(lambda_at(i / 2));
        {
          const std::uint64_t k = i / 2;
          const std::int64_t z = (k % 2 == 0) ? static_cast<std::int64_t>(k / 2)
                                              : -static_cast<std::int64_t>((k + 1) / 2);
          return zeta(z);
        }
    }
    fail(ErrorCode::kPrecondition, "bad order kind");
  }

  std::uint64_t index_of(const OrderElem& a) const {
    check(a);
    switch (a.tag_) {
      case ElemTag::kFin: return a.fin_;
      case ElemTag::kOrd: {
        const std::uint64_t k = lambda_index(a.ord_);
        return kind() == OrderKind::kLimitPlusZeta ? 2 * k : k;
      }
      case ElemTag::kZeta: {
        const std::int64_t z = a.zeta_;
        const std::uint64_t k = z >= 0 ? static_cast<std::uint64_t>(2 * z)
                                       : static_cast<std::uint64_t>(-2 * z - 1);
        return 2 * k + 1;
      }
    }
    return 0;
  }

  std::vector<OrderElem> prefix(std::uint64_t count) const {
    std::vector<OrderElem> out;
    for (std::uint64_t i = 0; i < count && has_index(i); ++i) out.push_back(at(i));
    return out;
  }

 private:
  explicit LinOrder(const OrderSpec& spec) : spec_(spec), id_(next_id()) {
    switch (spec.kind) {
      case OrderKind::kFinite:
        if (spec.n < 2) fail(ErrorCode::kInvalidSpec, "finite order needs n >= 2");
        break;
      case OrderKind::kOrdinal:
        if (spec.lambda < OrdCNF::finite(2)) {
          fail(ErrorCode::kInvalidSpec, "ordinal order needs lambda >= 2");
        }
        break;
      case OrderKind::kLimitPlusZeta:
        if (!spec.lambda.is_limit()) {
          fail(ErrorCode::kInvalidSpec, "lambda+zeta needs a limit lambda");
        }
        break;
    }
    if (spec.kind != OrderKind::kFinite) {
      const auto& terms = spec.lambda.terms();
      const bool pure_power = terms.size() == 1 && terms[0].coefficient == 1;
      width_ = spec.lambda.degree() + (pure_power ? 0 : 1);
      if (width_ == 0) width_ = 1;
    }
  }

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  // Ordinals below lambda listed by shells of equal digit sum, each shell in
  // increasing order.
  OrdCNF lambda_at(std::uint64_t i) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (lam_enum_.size() <= i) {
      if (lam_done_) fail(ErrorCode::kPrecondition, "enumeration index out of range");
      emit_shell();
    }
    return lam_enum_[i];
  }

  std::uint64_t lambda_index(const OrdCNF& value) const {
    std::lock_guard<std::mutex> lock(mu_);
    const std::uint64_t s = value.digit_sum();
    while (next_shell_ <= s && !lam_done_) emit_shell();
    auto it = lam_index_.find(value);
    if (it == lam_index_.end()) fail(ErrorCode::kForeignElement, "ordinal not enumerated");
    return it->second;
  }

  void emit_shell() const {
    const std::uint64_t s = next_shell_++;
    std::vector<std::uint64_t> digits(width_, 0);
    bool any = false;
    compositions(s, width_, digits, any);
    if (!any && spec_.lambda.is_finite()) lam_done_ = true;
  }

  // digits[width-1] varies slowest, so the output is increasing
  void compositions(std::uint64_t rest, std::size_t slots, std::vector<std::uint64_t>& digits,
                    bool& any) const {
    const std::size_t pos = slots - 1;
    if (pos == 0) {
      digits[0] = rest;
      OrdCNF v = OrdCNF::from_digits(digits);
      if (v < spec_.lambda) {
        any = true;
        lam_index_.emplace(v, lam_enum_.size());
        lam_enum_.push_back(std::move(v));
      }
      return;
    }
    for (std::uint64_t c = 0; c <= rest; ++c) {
      digits[pos] = c;
      compositions(rest - c, slots - 1, digits, any);
    }
    digits[pos] = 0;
  }

  OrderSpec spec_;
  std::uint64_t id_;
  std::size_t width_ = 1;

  mutable std::mutex mu_;
  mutable std::vector<OrdCNF> lam_enum_;
  mutable std::map<OrdCNF, std::uint64_t> lam_index_;
  mutable std::uint64_t next_shell_ = 0;
  mutable bool lam_done_ = false;
};

using OrderPtr = std::shared_ptr<const LinOrder>;

}  // namespace scottrank
