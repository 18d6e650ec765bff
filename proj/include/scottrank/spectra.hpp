#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "scottrank/error.hpp"
#include "scottrank/linorder.hpp"
#include "scottrank/ordinal.hpp"

namespace scottrank {

enum class SpectrumMode : std::uint8_t { kWfc = 0, kWf = 1 };

inline const char* spectrum_mode_name(SpectrumMode m) { return m == SpectrumMode::kWfc ? "wfc" : "wf"; }

struct Provenance {
  OrderSpec spec;
  SpectrumMode mode = SpectrumMode::kWfc;

  friend bool operator==(const Provenance& a, const Provenance& b) { return a.spec == b.spec && a.mode == b.mode; }
};

// Set of predicted Scott ranks; each entry lists the (order, mode) pairs
// that produced it, empty for patched-in entries.
struct SpectrumDescriptor {
  std::map<OrdCNF, std::vector<Provenance>> entries;

  std::set<OrdCNF> ranks() const {
    std::set<OrdCNF> out;
    for (const auto& [r, p] : entries) out.insert(r);
    return out;
  }

  void add(const OrdCNF& r, const std::vector<Provenance>& from) {
    auto& list = entries[r];
    for (const auto& p : from) {
      if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
    }
  }

  std::string to_string() const {
    std::string out = "{";
    for (const auto& [r, p] : entries) {
      if (out.size() > 1) out += ", ";
      out += r.to_string();
    }
    return out + "}";
  }

  friend bool operator==(const SpectrumDescriptor& a, const SpectrumDescriptor& b) { return a.entries == b.entries; }
};

inline SpectrumDescriptor predicted_spectrum(const std::vector<OrderSpec>& specs, SpectrumMode mode) {
  SpectrumDescriptor d;
  for (const OrderSpec& spec : specs) {
    auto L = LinOrder::make(spec);
    d.add(mode == SpectrumMode::kWfc ? L->wfc() : L->wf(), {Provenance{spec, mode}});
  }
  return d;
}

inline SpectrumDescriptor spectrum_union(const std::vector<SpectrumDescriptor>& ds) {
  SpectrumDescriptor out;
  for (const auto& d : ds) {
    for (const auto& [r, p] : d.entries) out.add(r, p);
  }
  return out;
}

inline SpectrumDescriptor spectrum_cutoff(const SpectrumDescriptor& d, const OrdCNF& alpha) {
  SpectrumDescriptor out;
  for (const auto& [r, p] : d.entries) {
    if (r >= alpha) out.entries.emplace(r, p);
  }
  return out;
}

inline SpectrumDescriptor spectrum_patch(const SpectrumDescriptor& d, const OrdCNF& below,
                                         const std::set<OrdCNF>& replacement) {
  SpectrumDescriptor out;
  for (const OrdCNF& r : replacement) {
    if (r >= below) fail(ErrorCode::kPrecondition, "replacement " + r.to_string() + " not below " + below.to_string());
    out.entries.emplace(r, std::vector<Provenance>{});
  }
  for (const auto& [r, p] : d.entries) {
    if (r >= below) out.entries.emplace(r, p);
  }
  return out;
}

}  // namespace scottrank
