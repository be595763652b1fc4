#pragma once

#include <string>

#include "faultshield/mbrfd.hpp"
#include "faultshield/rng.hpp"

namespace faultshield {

enum class FaultSite { Alpha, Beta, Both };
enum class FaultKind { Random, Burst };

// How an eta-bit fault is spread when both operands are targeted:
// Concatenated treats alpha||beta as one 2l-bit domain (bit p < l lands in
// alpha, bit p >= l in beta); PerOperand injects eta bits into each operand
// independently.
enum class BothMode { Concatenated, PerOperand };

const char* site_name(FaultSite s);
const char* kind_name(FaultKind k);
std::optional<FaultSite> parse_site(std::string_view name);
std::optional<FaultKind> parse_kind(std::string_view name);

// One injection experiment: flip eta bits of the selected operand(s),
// either at distinct random positions or as one contiguous burst.
struct FaultSpec {
  FaultSite site = FaultSite::Alpha;
  FaultKind kind = FaultKind::Random;
  unsigned eta = 1;  // Random: 0 (control, no injection) .. domain bits;
                     // Burst: 2 .. domain bits
  BothMode both_mode = BothMode::Concatenated;
};

// Bit width of the injection domain: l per single operand, 2l for the
// concatenated Both domain.
unsigned fault_domain_bits(const FaultSpec& spec, const Params& p);

// Burst runs need at least 2 bits; the single-bit burst cell is the grid's
// not-applicable entry, reported as such rather than failed.
bool fault_applicable(const FaultSpec& spec, const Params& p);

// XOR masks to apply to each operand.  Random: eta distinct uniform
// positions (partial Fisher-Yates over the domain); Burst: eta consecutive
// positions from a uniform start in [0, domain - eta].
struct FaultMasks {
  u64 alpha_mask = 0;
  u64 beta_mask = 0;
};
FaultMasks sample_fault_masks(const FaultSpec& spec, const Params& p,
                              SplitMix64& rng);

inline u64 inject(u64 value, u64 mask) { return value ^ mask; }

struct TrialOutcome {
  u64 alpha = 0, beta = 0;                // clean operands
  u64 alpha_mask = 0, beta_mask = 0;      // injected flip positions
  u64 alpha_faulty = 0, beta_faulty = 0;  // operands seen by the main path
  bool detected = false;   // aggregate rho != rho_f
  bool corrupted = false;  // main-path result != clean (alpha*beta) mod q
  unsigned flagged_iterations = 0;
};

// Draws (alpha, beta) uniform over [0, 2^l), injects per spec into the main
// path only (the recomputation path reads clean operands), runs the dual-path
// word loop with canonical accumulation.  Draw order is fixed: alpha, beta,
// then the fault mask — the determinism contract depends on it.
TrialOutcome run_trial(const Params& p, Scheme s, const FaultSpec& spec,
                       SplitMix64& rng);

// Ground truth for one trial, by wide-integer congruence: the corruption is
// invisible to the accumulated comparison iff q divides
// (alpha'*beta' - alpha*beta).  Must equal NOT detected on every trial.
bool miss_oracle(const TrialOutcome& t, u64 q);

struct CampaignConfig {
  u64 q = 3329;
  unsigned l = 24;
  std::vector<Scheme> schemes = {Scheme::Reswo};
  std::vector<unsigned> ws = {4, 8, 24};
  std::vector<unsigned> etas = {1, 3, 5, 11, 17, 23};
  std::vector<FaultSite> sites = {FaultSite::Alpha, FaultSite::Beta,
                                  FaultSite::Both};
  std::vector<FaultKind> kinds = {FaultKind::Random, FaultKind::Burst};
  BothMode both_mode = BothMode::Concatenated;
  u64 samples = 1'500'000;
  u64 seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct CampaignStats {
  Scheme scheme = Scheme::Reswo;
  unsigned w = 0;
  unsigned eta = 0;
  FaultSite site = FaultSite::Alpha;
  FaultKind kind = FaultKind::Random;
  bool applicable = true;  // false: grid's N/A cell (burst with eta < 2)
  u64 samples = 0;
  u64 detected = 0;
  u64 missed = 0;
  // Trials where the congruence oracle disagreed with the detector; the
  // detection-completeness contract requires 0 on every cell.
  u64 oracle_mismatches = 0;

  double efficiency_pct() const {
    return samples ? 100.0 * static_cast<double>(detected) /
                         static_cast<double>(samples)
                   : 0.0;
  }
};

// Runs the full grid.  Cell order: schemes as configured, then w ascending,
// then etas as configured, then site (alpha, beta, both), then kind (random,
// burst).  Per-trial generators are keyed by
// derive_key(seed, {scheme, site, kind, eta, trial}) — w is deliberately
// absent from the key, so every word size replays the identical
// operand/fault stream; trial partitioning across workers cannot change any
// count (pure summation merge).
std::vector<CampaignStats> run_campaign(const CampaignConfig& cfg);

// Fields present in the document overwrite the corresponding `base` fields;
// everything else (defaults, an environment-derived seed) passes through.
CampaignConfig campaign_config_from_json(const std::string& text,
                                         CampaignConfig base = {});
std::string campaign_config_to_json(const CampaignConfig& cfg);

}  // namespace faultshield
