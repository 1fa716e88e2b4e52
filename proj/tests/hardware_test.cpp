/* Copyright 2026 The LLM Roofline Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "llm_roofline/errors.hpp"
#include "llm_roofline/hardware.hpp"
#include "llm_roofline/presets.hpp"

namespace llm_roofline {
namespace {

HardwareSpec A6000() { return PresetHardware("nvidia-a6000"); }

TEST(HardwarePreset, A6000Constants) {
  const HardwareSpec hw = A6000();
  EXPECT_EQ(hw.Peak(Datatype::kFP16), 155e12);
  EXPECT_EQ(hw.Peak(Datatype::kINT8), 310e12);
  EXPECT_EQ(hw.bandwidth, 768e9);
  EXPECT_EQ(hw.capacity, 48e9);
  ASSERT_EQ(hw.links.size(), 1u);
  EXPECT_EQ(hw.links[0].name, "pcie");
  EXPECT_EQ(hw.links[0].bandwidth, 32e9);
  EXPECT_THROW(PresetHardware("nvidia-z9000"), RooflineError);
}

TEST(HardwarePreset, EveryBundledSpecValidates) {
  const PresetRegistry& presets = PresetRegistry::Default();
  ASSERT_GE(presets.HardwareNames().size(), 1u);
  for (const auto& name : presets.HardwareNames()) {
    const HardwareSpec& hw = presets.Hardware(name);
    EXPECT_NO_THROW(hw.Validate()) << name;
    EXPECT_TRUE(hw.Supports(Datatype::kFP16)) << name;
  }
}

TEST(LoadHardwareSpec, ParsesDocument) {
  const auto doc = nlohmann::json::parse(R"({
      "name": "toy", "bandwidth_bytes_per_s": 100, "capacity_bytes": 1000,
      "compute": {"FP16": 100, "INT8": 200},
      "links": [{"name": "host", "bandwidth_bytes_per_s": 10}]})");
  const HardwareSpec hw = LoadHardwareSpec(doc);
  EXPECT_EQ(hw.name, "toy");
  EXPECT_EQ(hw.Peak(Datatype::kINT8), 200);
  EXPECT_EQ(hw.FindLink("host").bandwidth, 10);
  EXPECT_DOUBLE_EQ(TurningPoint(hw, Datatype::kFP16), 1.0);
}

TEST(LoadHardwareSpec, Errors) {
  auto code_of = [](const char* text) {
    try {
      LoadHardwareSpec(nlohmann::json::parse(text));
    } catch (const RooflineError& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;  // unreachable in these cases
  };
  EXPECT_EQ(code_of(R"({"capacity_bytes": 1, "compute": {"FP16": 1}})"),
            ErrorCode::kMissingField);
  EXPECT_EQ(code_of(R"({"bandwidth_bytes_per_s": 0, "capacity_bytes": 1,
                        "compute": {"FP16": 1}})"),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of(R"({"bandwidth_bytes_per_s": 1, "capacity_bytes": 1,
                        "compute": {"BF17": 1}})"),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of(R"({"bandwidth_bytes_per_s": 1, "capacity_bytes": 1,
                        "compute": {"FP16": -5}})"),
            ErrorCode::kInvalidArgument);
}

TEST(AttainablePerformance, Llama7bA6000Points) {
  const HardwareSpec hw = A6000();
  const RooflinePoint q = AttainablePerformance(hw, Datatype::kFP16, 1024);
  EXPECT_EQ(q.attainable, 155e12);
  EXPECT_EQ(q.bound, Bound::kCompute);

  const RooflinePoint qk = AttainablePerformance(hw, Datatype::kFP16, 114);
  EXPECT_NEAR(qk.attainable, 8.755e13, 0.001e13);
  EXPECT_EQ(qk.bound, Bound::kMemory);

  const RooflinePoint zero = AttainablePerformance(hw, Datatype::kFP16, 0);
  EXPECT_EQ(zero.attainable, 0);
  EXPECT_EQ(zero.bound, Bound::kMemory);
}

TEST(AttainablePerformance, TieAtTurningPointIsCompute) {
  HardwareSpec hw;
  hw.name = "flat";
  hw.bandwidth = 4;
  hw.compute[Datatype::kFP16] = 4;
  EXPECT_EQ(TurningPoint(hw, Datatype::kFP16), 1.0);
  EXPECT_EQ(AttainablePerformance(hw, Datatype::kFP16, 1.0).bound,
            Bound::kCompute);
}

TEST(AttainablePerformance, UnsupportedDatatype) {
  try {
    AttainablePerformance(A6000(), Datatype::kFP8, 10);
    FAIL();
  } catch (const RooflineError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDatatype);
  }
  EXPECT_THROW(TurningPoint(A6000(), Datatype::kFP4), RooflineError);
}

TEST(TurningPoint, A6000) {
  EXPECT_NEAR(TurningPoint(A6000(), Datatype::kFP16), 201.8, 0.05);
  EXPECT_NEAR(TurningPoint(A6000(), Datatype::kINT8), 403.6, 0.05);
}

TEST(ResolveComputeDatatype, Examples) {
  const HardwareSpec hw = A6000();
  EXPECT_EQ(ResolveComputeDatatype({8, 8, 16}, hw), Datatype::kINT8);
  EXPECT_EQ(ResolveComputeDatatype({4, 16, 16}, hw), Datatype::kFP16);
  EXPECT_EQ(ResolveComputeDatatype({16, 16, 16}, hw), Datatype::kFP16);
  EXPECT_EQ(ResolveComputeDatatype({4, 4, 4}, hw), Datatype::kINT4);
  EXPECT_EQ(ResolveComputeDatatype({4, 8, 4}, hw), Datatype::kINT8);
}

TEST(ResolveComputeDatatype, CastsUpWhenNarrowTypeMissing) {
  const HardwareSpec h100 = PresetHardware("nvidia-h100-sxm");
  ASSERT_FALSE(h100.Supports(Datatype::kINT4));
  EXPECT_EQ(ResolveComputeDatatype({4, 4, 16}, h100), Datatype::kINT8);

  HardwareSpec fp_only;
  fp_only.bandwidth = 1;
  fp_only.compute = {{Datatype::kFP8, 2}, {Datatype::kFP16, 1}};
  EXPECT_EQ(ResolveComputeDatatype({8, 8, 8}, fp_only), Datatype::kFP8);
  EXPECT_EQ(ResolveComputeDatatype({2, 4, 8}, fp_only), Datatype::kFP8);
}

TEST(ResolveComputeDatatypeProperty, NeverNarrowerThanOperands) {
  const HardwareSpec hw = A6000();
  for (int w : {1, 2, 4, 8, 16}) {
    for (int a : {4, 8, 16}) {
      const Datatype dtype = ResolveComputeDatatype({w, a, 16}, hw);
      EXPECT_GE(DatatypeBits(dtype), std::max(w, a)) << w << "/" << a;
      EXPECT_TRUE(hw.Supports(dtype));
    }
  }
}

TEST(AttainablePerformanceProperty, PiecewiseLinearWithOneBreak) {
  const HardwareSpec hw = A6000();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_ai(-3, 5);
  for (Datatype dtype : {Datatype::kFP16, Datatype::kINT8, Datatype::kINT4}) {
    const double peak = hw.Peak(dtype);
    const double turning = TurningPoint(hw, dtype);
    double previous = -1;
    std::vector<double> ais;
    for (int i = 0; i < 2000; ++i) ais.push_back(std::pow(10.0, log_ai(rng)));
    std::sort(ais.begin(), ais.end());
    for (double ai : ais) {
      const RooflinePoint p = AttainablePerformance(hw, dtype, ai);
      EXPECT_GE(p.attainable, previous);
      EXPECT_LE(p.attainable, peak);
      EXPECT_LE(p.attainable, ai * hw.bandwidth);
      if (ai < turning) {
        EXPECT_EQ(p.bound, Bound::kMemory);
        EXPECT_DOUBLE_EQ(p.attainable, ai * hw.bandwidth);
      } else {
        EXPECT_EQ(p.bound, Bound::kCompute);
        EXPECT_EQ(p.attainable, peak);
      }
      previous = p.attainable;
    }
  }
}

TEST(AttainablePerformanceProperty, DoublingPeakOnlyLiftsComputeBound) {
  HardwareSpec base = A6000();
  HardwareSpec doubled = base;
  doubled.compute[Datatype::kFP16] *= 2;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ai_dist(0, 1000);
  for (int i = 0; i < 2000; ++i) {
    const double ai = ai_dist(rng);
    const RooflinePoint before = AttainablePerformance(base, Datatype::kFP16, ai);
    const RooflinePoint after =
        AttainablePerformance(doubled, Datatype::kFP16, ai);
    if (ai >= TurningPoint(doubled, Datatype::kFP16)) {
      EXPECT_DOUBLE_EQ(after.attainable, 2 * before.attainable);
    } else if (ai < TurningPoint(base, Datatype::kFP16)) {
      EXPECT_EQ(after.attainable, before.attainable);
    }
  }
}

TEST(AttainablePerformance, EffectiveBandwidthOverride) {
  const HardwareSpec hw = A6000();
  const RooflinePoint p = AttainablePerformance(hw, Datatype::kFP16, 10, 32e9);
  EXPECT_DOUBLE_EQ(p.attainable, 320e9);
  EXPECT_EQ(p.bound, Bound::kMemory);
}

}  // namespace
}  // namespace llm_roofline
