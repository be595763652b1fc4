#include <doctest.h>

#include <stdexcept>

#include <bit>

#include "faultshield/fault.hpp"

using namespace faultshield;

namespace {

bool same_stats(const CampaignStats& a, const CampaignStats& b) {
  return a.scheme == b.scheme && a.w == b.w && a.eta == b.eta &&
         a.site == b.site && a.kind == b.kind && a.applicable == b.applicable &&
         a.samples == b.samples && a.detected == b.detected &&
         a.missed == b.missed && a.oracle_mismatches == b.oracle_mismatches;
}

}  // namespace

TEST_CASE("fault domain width per site") {
  Params p = make_params(24, 4, 3329);
  CHECK(fault_domain_bits({FaultSite::Alpha, FaultKind::Random, 1}, p) == 24);
  CHECK(fault_domain_bits({FaultSite::Beta, FaultKind::Burst, 2}, p) == 24);
  CHECK(fault_domain_bits(
            {FaultSite::Both, FaultKind::Random, 1, BothMode::Concatenated},
            p) == 48);
  CHECK(fault_domain_bits(
            {FaultSite::Both, FaultKind::Random, 1, BothMode::PerOperand},
            p) == 24);
}

TEST_CASE("fault applicability") {
  Params p = make_params(24, 4, 3329);
  CHECK(fault_applicable({FaultSite::Alpha, FaultKind::Random, 0}, p));
  CHECK(fault_applicable({FaultSite::Alpha, FaultKind::Random, 24}, p));
  CHECK_FALSE(fault_applicable({FaultSite::Alpha, FaultKind::Random, 25}, p));
  CHECK(fault_applicable(
      {FaultSite::Both, FaultKind::Random, 25, BothMode::Concatenated}, p));
  CHECK_FALSE(fault_applicable({FaultSite::Alpha, FaultKind::Burst, 1}, p));
  CHECK_FALSE(fault_applicable({FaultSite::Alpha, FaultKind::Burst, 0}, p));
  CHECK(fault_applicable({FaultSite::Alpha, FaultKind::Burst, 2}, p));
  CHECK(fault_applicable({FaultSite::Alpha, FaultKind::Burst, 24}, p));
}

TEST_CASE("sampling an inapplicable spec throws") {
  Params p = make_params(12, 4, 3329);
  SplitMix64 rng(1);
  CHECK_THROWS_WITH_AS(
      sample_fault_masks({FaultSite::Alpha, FaultKind::Burst, 1}, p, rng),
      doctest::Contains("at least 2 consecutive bits"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      sample_fault_masks({FaultSite::Alpha, FaultKind::Random, 13}, p, rng),
      doctest::Contains("12-bit injection domain"), std::invalid_argument);
}

TEST_CASE("random masks flip exactly eta distinct bits in the domain") {
  Params p = make_params(12, 4, 3329);
  SplitMix64 rng(2);
  for (unsigned eta : {1u, 3u, 7u, 12u}) {
    for (int t = 0; t < 300; ++t) {
      FaultMasks m = sample_fault_masks(
          {FaultSite::Alpha, FaultKind::Random, eta}, p, rng);
      REQUIRE(std::popcount(m.alpha_mask) == static_cast<int>(eta));
      REQUIRE((m.alpha_mask >> 12) == 0);
      REQUIRE(m.beta_mask == 0);
    }
  }
  // saturation: eta == domain forces the all-ones mask
  FaultMasks full = sample_fault_masks(
      {FaultSite::Alpha, FaultKind::Random, 12}, p, rng);
  CHECK(full.alpha_mask == 0xFFF);
}

TEST_CASE("eta 0 random is the no-injection control") {
  Params p = make_params(24, 8, 3329);
  SplitMix64 rng(3);
  FaultMasks m =
      sample_fault_masks({FaultSite::Both, FaultKind::Random, 0}, p, rng);
  CHECK(m.alpha_mask == 0);
  CHECK(m.beta_mask == 0);
}

TEST_CASE("burst masks are one contiguous run") {
  Params p = make_params(12, 4, 3329);
  SplitMix64 rng(4);
  for (unsigned eta : {2u, 3u, 5u, 12u}) {
    for (int t = 0; t < 300; ++t) {
      FaultMasks m = sample_fault_masks(
          {FaultSite::Beta, FaultKind::Burst, eta}, p, rng);
      u64 mask = m.beta_mask;
      REQUIRE(m.alpha_mask == 0);
      REQUIRE(mask != 0);
      REQUIRE((mask >> 12) == 0);
      unsigned start = static_cast<unsigned>(std::countr_zero(mask));
      REQUIRE((mask >> start) == (u64{1} << eta) - 1);  // contiguous
    }
  }
  // eta == domain: the run covers every bit, start pinned to 0
  FaultMasks full =
      sample_fault_masks({FaultSite::Beta, FaultKind::Burst, 12}, p, rng);
  CHECK(full.beta_mask == 0xFFF);
}

TEST_CASE("concatenated both-site masks split at the operand boundary") {
  Params p = make_params(4, 2, 13);
  SplitMix64 rng(5);
  FaultSpec spec{FaultSite::Both, FaultKind::Burst, 8, BothMode::Concatenated};
  FaultMasks m = sample_fault_masks(spec, p, rng);  // whole 8-bit domain
  CHECK(m.alpha_mask == 0xF);
  CHECK(m.beta_mask == 0xF);
  // the two halves together always hold exactly eta bits
  for (int t = 0; t < 500; ++t) {
    FaultMasks s = sample_fault_masks(
        {FaultSite::Both, FaultKind::Random, 5, BothMode::Concatenated}, p,
        rng);
    REQUIRE(std::popcount(s.alpha_mask) + std::popcount(s.beta_mask) == 5);
    REQUIRE((s.alpha_mask >> 4) == 0);
    REQUIRE((s.beta_mask >> 4) == 0);
  }
}

TEST_CASE("per-operand both-site masks draw eta bits on each side") {
  Params p = make_params(12, 4, 3329);
  SplitMix64 rng(6);
  for (int t = 0; t < 300; ++t) {
    FaultMasks m = sample_fault_masks(
        {FaultSite::Both, FaultKind::Random, 3, BothMode::PerOperand}, p, rng);
    REQUIRE(std::popcount(m.alpha_mask) == 3);
    REQUIRE(std::popcount(m.beta_mask) == 3);
  }
}

TEST_CASE("run_trial consumes the stream as alpha, beta, mask") {
  Params p = make_params(24, 8, 3329);
  FaultSpec spec{FaultSite::Both, FaultKind::Random, 3};
  SplitMix64 rng(77), replay(77);
  TrialOutcome t = run_trial(p, Scheme::Reswo, spec, rng);
  u64 a = replay.next() & p.operand_mask();
  u64 b = replay.next() & p.operand_mask();
  FaultMasks m = sample_fault_masks(spec, p, replay);
  CHECK(t.alpha == a);
  CHECK(t.beta == b);
  CHECK(t.alpha_mask == m.alpha_mask);
  CHECK(t.beta_mask == m.beta_mask);
  CHECK(t.alpha_faulty == (a ^ m.alpha_mask));
  CHECK(t.beta_faulty == (b ^ m.beta_mask));
}

TEST_CASE("run_trial with eta 0 never detects or corrupts") {
  Params p = make_params(24, 4, 3329);
  SplitMix64 rng(8);
  for (int t = 0; t < 200; ++t) {
    TrialOutcome out =
        run_trial(p, Scheme::Reno, {FaultSite::Alpha, FaultKind::Random, 0},
                  rng);
    REQUIRE_FALSE(out.detected);
    REQUIRE_FALSE(out.corrupted);
    REQUIRE(out.flagged_iterations == 0);
    REQUIRE(out.alpha_faulty == out.alpha);
  }
}

TEST_CASE("single-bit faults are missed exactly on multiples of q") {
  // One flipped alpha bit changes the product by +/- 2^pos * beta, so the
  // aggregate comparison fires iff q does not divide beta.
  Params p = make_params(12, 4, 3329);
  for (u64 alpha : {1ull, 1234ull, 4095ull}) {
    for (u64 beta = 0; beta < 4096; ++beta) {
      const bool expect = (beta % 3329) != 0;
      for (unsigned pos = 0; pos < 12; ++pos) {
        u64 af = alpha ^ (u64{1} << pos);
        MbrfdResult res =
            mbrfd_dual(af, beta, alpha, beta, p, Scheme::Reswo);
        REQUIRE(res.aggregate_flag == expect);
        if (res.aggregate_flag) REQUIRE(res.flagged_iterations > 0);
      }
    }
  }
}

TEST_CASE("miss_oracle examples") {
  TrialOutcome t;
  t.alpha = 5;
  t.beta = 3329;
  t.alpha_faulty = 7;  // product still a multiple of q
  t.beta_faulty = 3329;
  CHECK(miss_oracle(t, 3329));
  t.beta_faulty = 3330;
  CHECK_FALSE(miss_oracle(t, 3329));
}

TEST_CASE("detection agrees with the congruence oracle on random trials") {
  Params p = make_params(24, 8, 3329);
  SplitMix64 rng(9);
  int detected = 0, missed = 0;
  for (Scheme s : {Scheme::Reswo, Scheme::Reno, Scheme::Reso})
    for (FaultSite site : {FaultSite::Alpha, FaultSite::Beta, FaultSite::Both})
      for (FaultKind kind : {FaultKind::Random, FaultKind::Burst})
        for (unsigned eta : {1u, 2u, 5u, 11u}) {
          if (kind == FaultKind::Burst && eta < 2) continue;
          FaultSpec spec{site, kind, eta};
          for (int t = 0; t < 250; ++t) {
            TrialOutcome out = run_trial(p, s, spec, rng);
            REQUIRE(out.detected == !miss_oracle(out, p.q));
            if (out.detected) {
              ++detected;
              REQUIRE(out.flagged_iterations > 0);
            } else {
              ++missed;
            }
          }
        }
  CHECK(detected > 0);  // the sweep exercises both outcomes
  CHECK(missed < detected);
}

TEST_CASE("the detected bit is independent of the word split") {
  FaultSpec spec{FaultSite::Both, FaultKind::Burst, 5};
  Params p4 = make_params(24, 4, 3329);
  Params p8 = make_params(24, 8, 3329);
  Params p24 = make_params(24, 24, 3329);
  for (u64 trial = 0; trial < 400; ++trial) {
    u64 key = derive_key(31337, {0, 2, 1, 5, trial});
    SplitMix64 r4(key), r8(key), r24(key);
    bool d4 = run_trial(p4, Scheme::Reswo, spec, r4).detected;
    bool d8 = run_trial(p8, Scheme::Reswo, spec, r8).detected;
    bool d24 = run_trial(p24, Scheme::Reswo, spec, r24).detected;
    REQUIRE(d4 == d8);
    REQUIRE(d4 == d24);
  }
}

TEST_CASE("campaign grid ordering and NA rows") {
  CampaignConfig cfg;
  cfg.q = 3329;
  cfg.l = 12;
  cfg.schemes = {Scheme::Reno, Scheme::Reswo};
  cfg.ws = {12, 4};  // emitted ascending regardless of input order
  cfg.etas = {3, 1};  // kept in configured order
  cfg.sites = {FaultSite::Alpha, FaultSite::Both};
  cfg.kinds = {FaultKind::Random, FaultKind::Burst};
  cfg.samples = 60;
  cfg.seed = 5;
  cfg.workers = 1;
  std::vector<CampaignStats> stats = run_campaign(cfg);
  REQUIRE(stats.size() == 2 * 2 * 2 * 2 * 2);

  std::size_t idx = 0;
  for (Scheme s : {Scheme::Reno, Scheme::Reswo})
    for (unsigned w : {4u, 12u})
      for (unsigned eta : {3u, 1u})
        for (FaultSite site : {FaultSite::Alpha, FaultSite::Both})
          for (FaultKind kind : {FaultKind::Random, FaultKind::Burst}) {
            const CampaignStats& st = stats[idx++];
            REQUIRE(st.scheme == s);
            REQUIRE(st.w == w);
            REQUIRE(st.eta == eta);
            REQUIRE(st.site == site);
            REQUIRE(st.kind == kind);
            const bool na = (kind == FaultKind::Burst && eta < 2);
            REQUIRE(st.applicable == !na);
            if (na) {
              REQUIRE(st.samples == 0);
              REQUIRE(st.detected == 0);
              REQUIRE(st.missed == 0);
            } else {
              REQUIRE(st.samples == 60);
              REQUIRE(st.detected + st.missed == st.samples);
              REQUIRE(st.oracle_mismatches == 0);
            }
          }
}

TEST_CASE("campaign counts are reproducible and worker-count invariant") {
  CampaignConfig cfg;
  cfg.q = 3329;
  cfg.l = 24;
  cfg.schemes = {Scheme::Reso};
  cfg.ws = {4, 8};
  cfg.etas = {1, 5};
  cfg.sites = {FaultSite::Alpha};
  cfg.kinds = {FaultKind::Random};
  cfg.samples = 400;
  cfg.seed = 99;
  cfg.workers = 1;
  std::vector<CampaignStats> once = run_campaign(cfg);
  std::vector<CampaignStats> twice = run_campaign(cfg);
  cfg.workers = 3;
  std::vector<CampaignStats> sliced = run_campaign(cfg);
  REQUIRE(once.size() == twice.size());
  REQUIRE(once.size() == sliced.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    REQUIRE(same_stats(once[i], twice[i]));
    REQUIRE(same_stats(once[i], sliced[i]));
  }
  // identical trial keys: the two word sizes count the same detections
  REQUIRE(once.size() == 4);
  CHECK(once[0].detected == once[2].detected);  // eta 1, w 4 vs w 8
  CHECK(once[1].detected == once[3].detected);  // eta 5, w 4 vs w 8
}

TEST_CASE("efficiency accessor") {
  CampaignStats st;
  st.samples = 10000;
  st.detected = 9997;
  st.missed = 3;
  CHECK(st.efficiency_pct() == doctest::Approx(99.97));
  CampaignStats na;
  CHECK(na.efficiency_pct() == 0.0);
}

TEST_CASE("campaign config JSON round-trip") {
  CampaignConfig cfg;
  cfg.q = 12289;
  cfg.l = 14;
  cfg.schemes = {Scheme::Reswo, Scheme::Reso};
  cfg.ws = {7, 14};
  cfg.etas = {2, 4};
  cfg.sites = {FaultSite::Beta, FaultSite::Both};
  cfg.kinds = {FaultKind::Burst};
  cfg.both_mode = BothMode::PerOperand;
  cfg.samples = 1234;
  cfg.seed = 42;
  cfg.workers = 2;
  CampaignConfig back = campaign_config_from_json(campaign_config_to_json(cfg));
  CHECK(back.q == cfg.q);
  CHECK(back.l == cfg.l);
  CHECK(back.schemes == cfg.schemes);
  CHECK(back.ws == cfg.ws);
  CHECK(back.etas == cfg.etas);
  CHECK(back.sites == cfg.sites);
  CHECK(back.kinds == cfg.kinds);
  CHECK(back.both_mode == cfg.both_mode);
  CHECK(back.samples == cfg.samples);
  CHECK(back.seed == cfg.seed);
  CHECK(back.workers == cfg.workers);
}

TEST_CASE("campaign config accepts scalars and rejects unknown fields") {
  CampaignConfig cfg = campaign_config_from_json(
      R"({"scheme": "reno", "w": 8, "eta": 7, "site": "beta",
          "kind": "burst", "samples": 10})");
  CHECK(cfg.schemes == std::vector<Scheme>{Scheme::Reno});
  CHECK(cfg.ws == std::vector<unsigned>{8});
  CHECK(cfg.etas == std::vector<unsigned>{7});
  CHECK(cfg.sites == std::vector<FaultSite>{FaultSite::Beta});
  CHECK(cfg.kinds == std::vector<FaultKind>{FaultKind::Burst});
  CHECK(cfg.samples == 10);
  CHECK(cfg.q == 3329);  // untouched defaults
  CHECK(cfg.l == 24);

  CHECK_THROWS_WITH_AS(campaign_config_from_json(R"({"bogus": 1})"),
                       doctest::Contains("unknown campaign config field"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(campaign_config_from_json(R"({"scheme": "xyz"})"),
                       doctest::Contains("unknown scheme"),
                       std::invalid_argument);
  CHECK_THROWS_AS(campaign_config_from_json("[1,2]"), std::invalid_argument);
}

TEST_CASE("campaign config base supplies fields the document omits") {
  CampaignConfig base;
  base.seed = 777;
  base.samples = 5;
  CampaignConfig cfg = campaign_config_from_json(R"({"eta": 3})", base);
  CHECK(cfg.seed == 777);
  CHECK(cfg.samples == 5);
  CHECK(cfg.etas == std::vector<unsigned>{3});
  // a seed in the document beats the base
  CampaignConfig over = campaign_config_from_json(R"({"seed": 1})", base);
  CHECK(over.seed == 1);
}

TEST_CASE("campaign validation") {
  CampaignConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);
  CampaignConfig empty;
  empty.etas = {};
  CHECK_THROWS_AS(run_campaign(empty), std::invalid_argument);
  CampaignConfig bad;
  bad.ws = {5};  // 5 does not divide 24
  CHECK_THROWS_WITH_AS(run_campaign(bad), doctest::Contains("w must divide l"),
                       std::invalid_argument);
}

TEST_CASE("site and kind names round-trip") {
  for (FaultSite s : {FaultSite::Alpha, FaultSite::Beta, FaultSite::Both})
    CHECK(parse_site(site_name(s)) == s);
  for (FaultKind k : {FaultKind::Random, FaultKind::Burst})
    CHECK(parse_kind(kind_name(k)) == k);
  CHECK_FALSE(parse_site("gamma").has_value());
  CHECK_FALSE(parse_kind("spray").has_value());
}
