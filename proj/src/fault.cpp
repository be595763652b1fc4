#include "faultshield/fault.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace faultshield {

const char* site_name(FaultSite s) {
  switch (s) {
    case FaultSite::Alpha: return "alpha";
    case FaultSite::Beta: return "beta";
    case FaultSite::Both: return "both";
  }
  return "?";
}

const char* kind_name(FaultKind k) {
  switch (k) {
    case FaultKind::Random: return "random";
    case FaultKind::Burst: return "burst";
  }
  return "?";
}

std::optional<FaultSite> parse_site(std::string_view name) {
  if (name == "alpha") return FaultSite::Alpha;
  if (name == "beta") return FaultSite::Beta;
  if (name == "both") return FaultSite::Both;
  return std::nullopt;
}

std::optional<FaultKind> parse_kind(std::string_view name) {
  if (name == "random") return FaultKind::Random;
  if (name == "burst") return FaultKind::Burst;
  return std::nullopt;
}

unsigned fault_domain_bits(const FaultSpec& spec, const Params& p) {
  return (spec.site == FaultSite::Both &&
          spec.both_mode == BothMode::Concatenated)
             ? 2 * p.l
             : p.l;
}

bool fault_applicable(const FaultSpec& spec, const Params& p) {
  const unsigned domain = fault_domain_bits(spec, p);
  if (spec.eta > domain) return false;
  if (spec.kind == FaultKind::Burst && spec.eta < 2) return false;
  return true;
}

namespace {

// eta distinct uniform positions out of [0, domain) — partial Fisher-Yates
// over a stack array (domain <= 62).
u64 random_mask(unsigned eta, unsigned domain, SplitMix64& rng) {
  unsigned pos[62];
  for (unsigned i = 0; i < domain; ++i) pos[i] = i;
  u64 mask = 0;
  for (unsigned t = 0; t < eta; ++t) {
    unsigned pick =
        t + static_cast<unsigned>(rng.below(domain - t));
    std::swap(pos[t], pos[pick]);
    mask |= u64{1} << pos[t];
  }
  return mask;
}

u64 burst_mask(unsigned eta, unsigned domain, SplitMix64& rng) {
  u64 start = rng.below(domain - eta + 1);
  u64 run = (eta >= 64) ? ~u64{0} : (u64{1} << eta) - 1;
  return run << start;
}

u64 one_mask(const FaultSpec& spec, unsigned domain, SplitMix64& rng) {
  if (spec.kind == FaultKind::Random)
    return spec.eta ? random_mask(spec.eta, domain, rng) : 0;
  return burst_mask(spec.eta, domain, rng);
}

}  // namespace

FaultMasks sample_fault_masks(const FaultSpec& spec, const Params& p,
                              SplitMix64& rng) {
  if (!fault_applicable(spec, p)) {
    if (spec.kind == FaultKind::Burst && spec.eta < 2)
      throw std::invalid_argument(
          "not applicable: a burst needs at least 2 consecutive bits (eta=" +
          std::to_string(spec.eta) + ")");
    throw std::invalid_argument(
        "eta=" + std::to_string(spec.eta) + " exceeds the " +
        std::to_string(fault_domain_bits(spec, p)) + "-bit injection domain");
  }

  FaultMasks m;
  switch (spec.site) {
    case FaultSite::Alpha:
      m.alpha_mask = one_mask(spec, p.l, rng);
      break;
    case FaultSite::Beta:
      m.beta_mask = one_mask(spec, p.l, rng);
      break;
    case FaultSite::Both:
      if (spec.both_mode == BothMode::Concatenated) {
        u64 mask = one_mask(spec, 2 * p.l, rng);
        m.alpha_mask = mask & p.operand_mask();
        m.beta_mask = mask >> p.l;
      } else {
        m.alpha_mask = one_mask(spec, p.l, rng);
        m.beta_mask = one_mask(spec, p.l, rng);
      }
      break;
  }
  return m;
}

TrialOutcome run_trial(const Params& p, Scheme s, const FaultSpec& spec,
                       SplitMix64& rng) {
  TrialOutcome t;
  t.alpha = rng.next() & p.operand_mask();
  t.beta = rng.next() & p.operand_mask();
  FaultMasks m = sample_fault_masks(spec, p, rng);
  t.alpha_mask = m.alpha_mask;
  t.beta_mask = m.beta_mask;
  t.alpha_faulty = inject(t.alpha, m.alpha_mask);
  t.beta_faulty = inject(t.beta, m.beta_mask);

  MbrfdResult res = mbrfd_dual(t.alpha_faulty, t.beta_faulty, t.alpha, t.beta,
                               p, s);
  t.detected = res.aggregate_flag;
  t.corrupted = res.rho != oracle_modmul(t.alpha, t.beta, p.q);
  t.flagged_iterations = res.flagged_iterations;
  return t;
}

bool miss_oracle(const TrialOutcome& t, u64 q) {
  u64 clean = static_cast<u64>((static_cast<u128>(t.alpha) * t.beta) % q);
  u64 faulty = static_cast<u64>(
      (static_cast<u128>(t.alpha_faulty) * t.beta_faulty) % q);
  return clean == faulty;
}

namespace {

struct Cell {
  Scheme scheme;
  unsigned w;
  FaultSpec spec;
};

u64 scheme_code(Scheme s) { return static_cast<u64>(s); }

void validate_config(const CampaignConfig& cfg) {
  if (cfg.samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (cfg.schemes.empty() || cfg.ws.empty() || cfg.etas.empty() ||
      cfg.sites.empty() || cfg.kinds.empty())
    throw std::invalid_argument("campaign grid has an empty axis");
  for (unsigned w : cfg.ws) make_params(cfg.l, w, cfg.q);  // validates l, w, q
}

std::vector<Cell> grid_cells(const CampaignConfig& cfg) {
  auto dedup_keep_order = [](auto v) {
    auto seen_end = v.begin();
    for (auto it = v.begin(); it != v.end(); ++it)
      if (std::find(v.begin(), seen_end, *it) == seen_end)
        *seen_end++ = *it;
    v.erase(seen_end, v.end());
    return v;
  };
  std::vector<unsigned> ws = dedup_keep_order(cfg.ws);
  std::sort(ws.begin(), ws.end());
  std::vector<unsigned> etas = dedup_keep_order(cfg.etas);
  std::vector<Scheme> schemes = dedup_keep_order(cfg.schemes);

  auto has_site = [&](FaultSite s) {
    return std::find(cfg.sites.begin(), cfg.sites.end(), s) != cfg.sites.end();
  };
  auto has_kind = [&](FaultKind k) {
    return std::find(cfg.kinds.begin(), cfg.kinds.end(), k) != cfg.kinds.end();
  };

  std::vector<Cell> cells;
  for (Scheme scheme : schemes)
    for (unsigned w : ws)
      for (unsigned eta : etas)
        for (FaultSite site :
             {FaultSite::Alpha, FaultSite::Beta, FaultSite::Both}) {
          if (!has_site(site)) continue;
          for (FaultKind kind : {FaultKind::Random, FaultKind::Burst}) {
            if (!has_kind(kind)) continue;
            cells.push_back(
                {scheme, w, FaultSpec{site, kind, eta, cfg.both_mode}});
          }
        }
  return cells;
}

struct CellCounts {
  u64 detected = 0;
  u64 missed = 0;
  u64 mismatches = 0;
};

CellCounts run_cell_range(const CampaignConfig& cfg, const Params& p,
                          const Cell& cell, u64 lo, u64 hi) {
  CellCounts out;
  for (u64 trial = lo; trial < hi; ++trial) {
    SplitMix64 rng(derive_key(
        cfg.seed,
        {scheme_code(cell.scheme), static_cast<u64>(cell.spec.site),
         static_cast<u64>(cell.spec.kind), cell.spec.eta, trial}));
    TrialOutcome t = run_trial(p, cell.scheme, cell.spec, rng);
    out.detected += t.detected;
    out.missed += !t.detected;
    out.mismatches += (miss_oracle(t, p.q) == t.detected);
  }
  return out;
}

}  // namespace

std::vector<CampaignStats> run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  unsigned workers = cfg.workers;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }

  std::vector<CampaignStats> all;
  for (const Cell& cell : grid_cells(cfg)) {
    Params p = make_params(cfg.l, cell.w, cfg.q);
    CampaignStats st;
    st.scheme = cell.scheme;
    st.w = cell.w;
    st.eta = cell.spec.eta;
    st.site = cell.spec.site;
    st.kind = cell.spec.kind;

    if (!fault_applicable(cell.spec, p)) {
      st.applicable = false;
      all.push_back(st);
      continue;
    }

    st.samples = cfg.samples;
    const unsigned nthreads =
        static_cast<unsigned>(std::min<u64>(workers, cfg.samples));
    std::vector<CellCounts> parts(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
      u64 lo = cfg.samples * t / nthreads;
      u64 hi = cfg.samples * (t + 1) / nthreads;
      pool.emplace_back([&, t, lo, hi] {
        parts[t] = run_cell_range(cfg, p, cell, lo, hi);
      });
    }
    for (auto& th : pool) th.join();
    for (const CellCounts& c : parts) {
      st.detected += c.detected;
      st.missed += c.missed;
      st.oracle_mismatches += c.mismatches;
    }
    all.push_back(st);
  }
  return all;
}

namespace {

using nlohmann::json;

std::vector<std::string> as_string_list(const json& v, const char* field) {
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<std::string>());
  } else {
    throw std::invalid_argument(std::string(field) +
                                " must be a string or array of strings");
  }
  return out;
}

std::vector<u64> as_uint_list(const json& v, const char* field) {
  std::vector<u64> out;
  if (v.is_number_unsigned()) {
    out.push_back(v.get<u64>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<u64>());
  } else {
    throw std::invalid_argument(std::string(field) +
                                " must be an unsigned integer or array");
  }
  return out;
}

}  // namespace

CampaignConfig campaign_config_from_json(const std::string& text,
                                         CampaignConfig base) {
  json doc = json::parse(text);
  if (!doc.is_object())
    throw std::invalid_argument("campaign config must be a JSON object");

  CampaignConfig cfg = std::move(base);
  for (const auto& [key, value] : doc.items()) {
    if (key == "q") {
      cfg.q = value.get<u64>();
    } else if (key == "l") {
      cfg.l = value.get<unsigned>();
    } else if (key == "scheme" || key == "schemes") {
      cfg.schemes.clear();
      for (const std::string& name : as_string_list(value, key.c_str())) {
        auto s = parse_scheme(name);
        if (!s) throw std::invalid_argument("unknown scheme: " + name);
        cfg.schemes.push_back(*s);
      }
    } else if (key == "w" || key == "ws") {
      cfg.ws.clear();
      for (u64 w : as_uint_list(value, key.c_str()))
        cfg.ws.push_back(static_cast<unsigned>(w));
    } else if (key == "eta" || key == "etas") {
      cfg.etas.clear();
      for (u64 e : as_uint_list(value, key.c_str()))
        cfg.etas.push_back(static_cast<unsigned>(e));
    } else if (key == "site" || key == "sites") {
      cfg.sites.clear();
      for (const std::string& name : as_string_list(value, key.c_str())) {
        auto s = parse_site(name);
        if (!s) throw std::invalid_argument("unknown site: " + name);
        cfg.sites.push_back(*s);
      }
    } else if (key == "kind" || key == "kinds") {
      cfg.kinds.clear();
      for (const std::string& name : as_string_list(value, key.c_str())) {
        auto k = parse_kind(name);
        if (!k) throw std::invalid_argument("unknown kind: " + name);
        cfg.kinds.push_back(*k);
      }
    } else if (key == "both_mode") {
      std::string name = value.get<std::string>();
      if (name == "concatenated") cfg.both_mode = BothMode::Concatenated;
      else if (name == "per_operand") cfg.both_mode = BothMode::PerOperand;
      else throw std::invalid_argument("unknown both_mode: " + name);
    } else if (key == "samples") {
      cfg.samples = value.get<u64>();
    } else if (key == "seed") {
      cfg.seed = value.get<u64>();
    } else if (key == "workers") {
      cfg.workers = value.get<unsigned>();
    } else {
      throw std::invalid_argument("unknown campaign config field: " + key);
    }
  }
  return cfg;
}

std::string campaign_config_to_json(const CampaignConfig& cfg) {
  json doc;
  doc["q"] = cfg.q;
  doc["l"] = cfg.l;
  if (cfg.schemes.size() == 1) {
    doc["scheme"] = scheme_name(cfg.schemes[0]);
  } else {
    json arr = json::array();
    for (Scheme s : cfg.schemes) arr.push_back(scheme_name(s));
    doc["scheme"] = arr;
  }
  if (cfg.ws.size() == 1) {
    doc["w"] = cfg.ws[0];
  } else {
    doc["w"] = cfg.ws;
  }
  doc["etas"] = cfg.etas;
  {
    json arr = json::array();
    for (FaultSite s : cfg.sites) arr.push_back(site_name(s));
    doc["sites"] = arr;
  }
  {
    json arr = json::array();
    for (FaultKind k : cfg.kinds) arr.push_back(kind_name(k));
    doc["kinds"] = arr;
  }
  doc["both_mode"] = cfg.both_mode == BothMode::Concatenated ? "concatenated"
                                                             : "per_operand";
  doc["samples"] = cfg.samples;
  doc["seed"] = cfg.seed;
  doc["workers"] = cfg.workers;
  return doc.dump(2) + "\n";
}

}  // namespace faultshield
