#include <gtest/gtest.h>

#include "scottrank/spectra.hpp"

namespace scottrank {
namespace {

const OrdCNF kOmega = OrdCNF::omega();
const OrdCNF kOmegaPlusOne = OrdCNF::omega() + OrdCNF::finite(1);

TEST(SpectraTest, Predicted) {
  EXPECT_EQ(predicted_spectrum({OrderSpec::finite(3)}, SpectrumMode::kWfc).ranks(),
            std::set<OrdCNF>{OrdCNF::finite(3)});
  EXPECT_EQ(predicted_spectrum({OrderSpec::limit_plus_zeta(kOmega)}, SpectrumMode::kWfc).ranks(),
            std::set<OrdCNF>{kOmegaPlusOne});
  EXPECT_EQ(predicted_spectrum({OrderSpec::limit_plus_zeta(kOmega)}, SpectrumMode::kWf).ranks(),
            std::set<OrdCNF>{kOmega});
  EXPECT_EQ(predicted_spectrum({OrderSpec::ordinal(kOmegaPlusOne)}, SpectrumMode::kWf).ranks(),
            std::set<OrdCNF>{kOmegaPlusOne});
  EXPECT_THROW(predicted_spectrum({OrderSpec::finite(1)}, SpectrumMode::kWf), Error);
}

TEST(SpectraTest, ProvenanceMerges) {
  auto d = predicted_spectrum({OrderSpec::finite(3), OrderSpec::ordinal(OrdCNF::finite(3))}, SpectrumMode::kWfc);
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries.begin()->second.size(), 2u);
}

TEST(SpectraTest, Union) {
  auto a = predicted_spectrum({OrderSpec::finite(3)}, SpectrumMode::kWfc);
  auto b = predicted_spectrum({OrderSpec::limit_plus_zeta(kOmega)}, SpectrumMode::kWfc);
  EXPECT_EQ(spectrum_union({a, b}).ranks(), (std::set<OrdCNF>{OrdCNF::finite(3), kOmegaPlusOne}));
  EXPECT_EQ(spectrum_union({a, a}), a);
  EXPECT_EQ(spectrum_union({a, b}), spectrum_union({b, a}));
  EXPECT_TRUE(spectrum_union({}).entries.empty());
}

TEST(SpectraTest, Cutoff) {
  auto d = predicted_spectrum({OrderSpec::finite(3), OrderSpec::limit_plus_zeta(kOmega)}, SpectrumMode::kWfc);
  EXPECT_EQ(spectrum_cutoff(d, kOmega).ranks(), std::set<OrdCNF>{kOmegaPlusOne});
  EXPECT_EQ(spectrum_cutoff(d, OrdCNF()), d);
  EXPECT_TRUE(spectrum_cutoff(SpectrumDescriptor{}, kOmega).entries.empty());
  EXPECT_EQ(spectrum_cutoff(spectrum_cutoff(d, OrdCNF::finite(2)), kOmega), spectrum_cutoff(d, kOmega));
}

TEST(SpectraTest, Patch) {
  auto d = predicted_spectrum({OrderSpec::finite(3), OrderSpec::limit_plus_zeta(kOmega)}, SpectrumMode::kWfc);
  EXPECT_EQ(spectrum_patch(d, kOmega, {OrdCNF::finite(1)}).ranks(),
            (std::set<OrdCNF>{OrdCNF::finite(1), kOmegaPlusOne}));
  EXPECT_EQ(spectrum_patch(d, OrdCNF(), {}), d);
  EXPECT_THROW(spectrum_patch(d, kOmega, {kOmega}), Error);
}

}  // namespace
}  // namespace scottrank
