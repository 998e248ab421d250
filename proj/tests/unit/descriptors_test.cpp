#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vmnet/descriptors.hpp"
#include "vmnet/errors.hpp"

namespace vmnet {
namespace {

const PoolingWeights kDefaultWeights{};

TEST(Mac, Examples) {
  const auto c = mac(FeatureTensor(2, 2, 2, std::vector<float>(8, 5.0f)));
  EXPECT_NEAR(c[0], std::sqrt(0.5), 1e-7);
  EXPECT_NEAR(c[1], std::sqrt(0.5), 1e-7);

  const FeatureTensor t(2, 2, 2, {1, 9, 3, 2, 0, 0, 4, 1});
  const auto d = mac(t);
  EXPECT_NEAR(d[0], 9.0 / std::sqrt(97.0), 1e-7);
  EXPECT_NEAR(d[1], 4.0 / std::sqrt(97.0), 1e-7);

  EXPECT_TRUE(mac(FeatureTensor(3, 2, 2)).is_zero());
}

TEST(Vamac, Examples) {
  const FeatureTensor t(2, 2, 2, {1, 9, 3, 2, 0, 0, 4, 1});
  const auto ones = BinaryMask::ones(2, 2);
  EXPECT_EQ(vamac(t, ones, ones), mac(t));

  // combined mask [[1,0],[1,1]] removes the 9; pre-norm entries (3, 4)
  const auto v = vamac(t, BinaryMask(2, 2, {1, 0, 1, 1}), ones);
  EXPECT_NEAR(v[0], 0.6, 1e-7);
  EXPECT_NEAR(v[1], 0.8, 1e-7);

  EXPECT_THROW(vamac(t, BinaryMask::ones(2, 3), ones), ArgumentError);
}

TEST(Vamac, VariableMaskFixtureIsolatesTheBottomRightCell) {
  // channels sum to A = [[1,2],[3,10]]; p = 1 keeps only (1,1) where the channels are (2, 8).
  const FeatureTensor t(2, 2, 2, {1, 2, 1, 2, 0, 0, 2, 8});
  const auto vm = variable_mask(t, 1.0);
  const auto v = vamac(t, vm, BinaryMask::ones(2, 2));
  const auto expected = l2_normalize(std::vector<float>{2, 8});
  EXPECT_EQ(v, expected);
}

TEST(Vamac, MaskingOnlyLowersPreNormEntries) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = testing::random_tensor(rng, 5, 6, 6);
    const auto m = testing::random_mask(rng, 6, 6);
    const auto m_smaller = combine(m, testing::random_mask(rng, 6, 6));
    const auto full = apply_mask(t, m);
    const auto part = apply_mask(t, m_smaller);
    if (!m_smaller.subset_of(m)) continue;  // fallback fired
    for (std::size_t c = 0; c < 5; ++c) {
      const auto a = full.channel(c);
      const auto b = part.channel(c);
      EXPECT_LE(*std::max_element(b.begin(), b.end()), *std::max_element(a.begin(), a.end()));
    }
  }
}

TEST(PoolModes, ProseAndEquationAssignments) {
  EXPECT_EQ(pool_mode_for_scale(1, PoolingAssignment::kProse), PoolMode::kAvg);
  EXPECT_EQ(pool_mode_for_scale(2, PoolingAssignment::kProse), PoolMode::kLp);
  EXPECT_EQ(pool_mode_for_scale(3, PoolingAssignment::kProse), PoolMode::kMax);
  EXPECT_EQ(pool_mode_for_scale(1, PoolingAssignment::kEquation), PoolMode::kMax);
  EXPECT_EQ(pool_mode_for_scale(3, PoolingAssignment::kEquation), PoolMode::kAvg);
}

TEST(Grmaac, TwoByTwoWorkedExample) {
  const FeatureTensor t(1, 2, 2, {1, 2, 3, 4});
  const auto ones = BinaryMask::ones(2, 2);
  const PoolingWeights w{1.0, 1.0, 1.0, 1.0, PoolingAssignment::kProse};
  const auto raw = grmaac_raw(t, ones, ones, w);
  ASSERT_EQ(raw.size(), 1u);
  EXPECT_NEAR(raw[0], 22.5, 1e-12);
  EXPECT_FLOAT_EQ(grmaac(t, ones, ones, w)[0], 1.0f);
}

TEST(Grmaac, SinglePixelMapCollapsesToMac) {
  const FeatureTensor t(3, 1, 1, {0.2f, 0.5f, 0.1f});
  const auto ones = BinaryMask::ones(1, 1);
  const PoolingWeights w{0.0, 0.0, 1.0, 3.0, PoolingAssignment::kProse};
  const auto g = grmaac(t, ones, ones, w);
  const auto m = mac(t);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(g[c], m[c], 1e-7);
}

TEST(Grmaac, FullyMaskedWindowsContributeNothing) {
  // vmask keeps only the left column of a 4x4 map; scale-3 windows (side 2)
  // at column offsets 1 and 2 have zero coverage.
  std::mt19937 rng(31);
  const auto t = testing::random_tensor(rng, 3, 4, 4, 0.1f, 1.0f);
  std::vector<std::uint8_t> bits(16, 0);
  for (std::size_t i = 0; i < 4; ++i) bits[i * 4] = 1;
  const BinaryMask vm(4, 4, bits);
  const auto ones = BinaryMask::ones(4, 4);

  const PoolingWeights only_small{0.0, 0.0, 1.0, 3.0, PoolingAssignment::kProse};
  const auto raw = grmaac_raw(t, vm, ones, only_small);
  const double q[3] = {0.0, 0.0, 1.0};
  const auto ref = oracle::grmaac_raw(t, {bits.begin(), bits.end()}, std::vector<std::uint8_t>(16, 1), q, 3.0);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(raw[c], ref[c], 1e-12);

  // Cells outside the variable mask never reach the pooled sum.
  FeatureTensor cleared = t;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 1; j < 4; ++j) cleared.at(c, i, j) = 0.0f;
  const auto raw_cleared = grmaac_raw(cleared, vm, ones, only_small);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(raw[c], raw_cleared[c]);
}

TEST(Grmaac, AllOnesMasksGiveUnitCoverage) {
  std::mt19937 rng(37);
  const auto t = testing::random_tensor(rng, 4, 7, 7);
  const auto ones = BinaryMask::ones(7, 7);
  const auto raw = grmaac_raw(t, ones, ones, kDefaultWeights);
  std::vector<double> expected(4, 0.0);
  for (const auto& r : rmac_regions(7, 7)) {
    const auto mode = pool_mode_for_scale(r.scale_index, PoolingAssignment::kProse);
    const auto pooled = pool_region(t, r, mode, kDefaultWeights.p_pool);
    for (std::size_t c = 0; c < 4; ++c) expected[c] += kDefaultWeights.weight(r.scale_index) * pooled[c];
  }
  for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(raw[c], expected[c], 1e-12);
}

TEST(Grmaac, MatchesBruteForceForBothAssignments) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> dim(1, 9);
  for (auto assignment : {PoolingAssignment::kProse, PoolingAssignment::kEquation}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t h = dim(rng), w = dim(rng);
      const auto t = testing::random_sparse_tensor(rng, 3, h, w);
      const auto vm = variable_mask(t, 1.0);
      const auto sm = testing::random_mask(rng, h, w, 0.7);
      PoolingWeights pw = kDefaultWeights;
      pw.assignment = assignment;
      const auto got = grmaac(t, vm, sm, pw);
      const double q[3] = {pw.q1, pw.q2, pw.q3};
      const auto ref = oracle::normalized(oracle::grmaac_raw(
          t, {vm.bits().begin(), vm.bits().end()}, {sm.bits().begin(), sm.bits().end()}, q,
          pw.p_pool, assignment == PoolingAssignment::kProse));
      for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(got[c], ref[c], 1e-6);
    }
  }
}

TEST(Middle, MatchesVamacOnTheSameTensor) {
  std::mt19937 rng(43);
  const auto t = testing::random_tensor(rng, 6, 5, 5);
  const auto sal = testing::random_plane(rng, 10, 10);
  MaskConfig cfg;
  const auto vm = variable_mask(t, cfg.p);
  const auto sm = binarize_saliency(sal, 5, 5, cfg.saliency_threshold);
  EXPECT_EQ(middle_descriptor(t, sal, cfg), vamac(t, vm, sm));
}

TEST(Middle, ConstantTensorGivesConstantDirection) {
  const FeatureTensor mid(4, 3, 3, std::vector<float>(36, 1.5f));
  const auto d = middle_descriptor(mid, Plane(6, 6, 1.0f), MaskConfig{});
  for (std::size_t c = 0; c < 4; ++c) EXPECT_FLOAT_EQ(d[c], 0.5f);
}

TEST(Middle, WorkedExampleAtMiddleDims) {
  const FeatureTensor mid(2, 2, 2, {1, 2, 1, 2, 0, 0, 2, 8});
  const auto d = middle_descriptor(mid, Plane(4, 4, 1.0f), MaskConfig{});
  EXPECT_EQ(d, l2_normalize(std::vector<float>{2, 8}));
}

TEST(ExtractFeatureSet, DeterministicAndUnitNorm) {
  std::mt19937 rng(47);
  EngineConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const auto last = testing::random_tensor(rng, 16, 7, 7);
    const auto mid = testing::random_tensor(rng, 8, 14, 14);
    const auto sal = testing::random_plane(rng, 28, 28);
    const auto a = extract_feature_set("img", last, mid, sal, cfg);
    const auto b = extract_feature_set("img", last, mid, sal, cfg);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.vamac.dim(), 16u);
    EXPECT_EQ(a.grmaac.dim(), 16u);
    EXPECT_EQ(a.middle.dim(), 8u);
    EXPECT_NEAR(a.vamac.norm(), 1.0, 1e-6);
    EXPECT_NEAR(a.grmaac.norm(), 1.0, 1e-6);
    EXPECT_NEAR(a.middle.norm(), 1.0, 1e-6);
  }
  const auto last = testing::random_tensor(rng, 4, 3, 3);
  EXPECT_THROW(extract_feature_set("", last, last, Plane(3, 3, 1.0f), cfg), ArgumentError);
}

TEST(ExtractFeatureSet, FullSaliencyAndFlatSumReduceVamacToMac) {
  // A constant channel sum makes the variable mask all ones.
  const FeatureTensor last(2, 2, 2, {1, 3, 2, 0, 3, 1, 2, 4});
  const auto fs = extract_feature_set("x", last, last, Plane(2, 2, 1.0f), EngineConfig{});
  EXPECT_EQ(fs.vamac, mac(last));
}

TEST(Descriptors, ChannelPermutationPermutesEntries) {
  std::mt19937 rng(53);
  const auto t = testing::random_tensor(rng, 5, 6, 6);
  std::vector<std::size_t> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  FeatureTensor p(5, 6, 6);
  for (std::size_t c = 0; c < 5; ++c)
    std::copy(t.channel(perm[c]).begin(), t.channel(perm[c]).end(), p.channel(c).begin());
  const auto ones = BinaryMask::ones(6, 6);
  const auto vm = variable_mask(t, 1.0);
  const auto a = vamac(t, vm, ones);
  const auto b = vamac(p, variable_mask(p, 1.0), ones);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_NEAR(b[c], a[perm[c]], 1e-7);
}

TEST(Descriptors, PositiveScaleLeavesDirectionUnchanged) {
  std::mt19937 rng(59);
  EngineConfig cfg;
  for (float c : {0.01f, 1000.0f}) {
    const auto last = testing::random_tensor(rng, 8, 6, 6);
    const auto mid = testing::random_tensor(rng, 4, 12, 12);
    const auto sal = testing::random_plane(rng, 12, 12);
    const auto a = extract_feature_set("a", last, mid, sal, cfg);
    const auto b = extract_feature_set("a", testing::scaled(last, c), testing::scaled(mid, c), sal, cfg);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_NEAR(a.vamac[k], b.vamac[k], 1e-6);
      EXPECT_NEAR(a.grmaac[k], b.grmaac[k], 1e-6);
    }
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a.middle[k], b.middle[k], 1e-6);
  }
}

}  // namespace
}  // namespace vmnet
