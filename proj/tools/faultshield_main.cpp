#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "faultshield/fault.hpp"
#include "faultshield/ntt.hpp"
#include "faultshield/presets.hpp"
#include "faultshield/report.hpp"

namespace fs = faultshield;

namespace {

// Seed precedence: explicit --seed > config file entry > FAULTSHIELD_SEED
// environment variable > 0.
fs::u64 env_seed() {
  const char* env = std::getenv("FAULTSHIELD_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 0);
  if (end == env || *end != '\0')
    throw std::invalid_argument(std::string("FAULTSHIELD_SEED is not a ") +
                                "valid integer: " + env);
  return v;
}

fs::u64 parse_u64(const std::string& text, const char* what) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(text.c_str(), &end, 0);
  if (end == text.c_str() || *end != '\0')
    throw std::invalid_argument(std::string(what) + " is not a valid integer: " +
                                text);
  return v;
}

struct ParamArgs {
  std::string set_name;
  unsigned l = 0, w = 0;
  fs::u64 q = 0;
  fs::u32 n = 0;
};

void add_param_options(CLI::App* cmd, ParamArgs& a) {
  auto* set = cmd->add_option("--set", a.set_name,
                              "named parameter set (see `params --list`)");
  auto* l = cmd->add_option("--l", a.l, "operand bit-length");
  cmd->add_option("--w", a.w, "word size in bits (default: the set's w, or l)");
  cmd->add_option("--q", a.q, "modulus");
  cmd->add_option("--n", a.n, "polynomial degree (power of two)");
  set->excludes(l);
  l->excludes(set);
}

fs::Params resolve_params(CLI::App* cmd, const ParamArgs& a) {
  if (!a.set_name.empty()) {
    auto set = fs::find_parameter_set(a.set_name);
    if (!set) {
      std::string names;
      for (const auto& s : fs::parameter_sets())
        names += std::string(names.empty() ? "" : ", ") + std::string(s.name);
      throw std::invalid_argument("unknown parameter set '" + a.set_name +
                                  "' (available: " + names + ")");
    }
    unsigned w = cmd->count("--w") ? a.w : set->w;
    fs::u32 n = cmd->count("--n") ? a.n : set->n;
    return fs::make_params(set->l, w, set->q, n);
  }
  if (!cmd->count("--l"))
    throw std::invalid_argument("give either --set or explicit --l/--q");
  if (!cmd->count("--q"))
    throw std::invalid_argument("--q is required with --l");
  unsigned w = cmd->count("--w") ? a.w : a.l;
  return fs::make_params(a.l, w, a.q, a.n);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write to " + path);
  out << content;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

fs::Poly parse_poly(const std::string& text) {
  // Accept a JSON array or decimal one-per-line text.
  size_t first = text.find_first_not_of(" \t\r\n");
  fs::Poly poly;
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json doc = nlohmann::json::parse(text);
    for (const auto& v : doc) poly.push_back(v.get<fs::u64>());
    return poly;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    poly.push_back(parse_u64(line, "coefficient"));
  }
  return poly;
}

int cmd_params(CLI::App* cmd, const ParamArgs& args, bool list_sets) {
  if (list_sets) {
    std::printf("%-10s %3s %3s %9s %5s\n", "name", "l", "w", "q", "n");
    for (const auto& s : fs::parameter_sets())
      std::printf("%-10s %3u %3u %9llu %5u\n", std::string(s.name).c_str(),
                  s.l, s.w, static_cast<unsigned long long>(s.q), s.n);
    return 0;
  }
  fs::Params p = resolve_params(cmd, args);
  if (!args.set_name.empty()) std::printf("set: %s\n", args.set_name.c_str());
  std::printf("l: %u\nw: %u\nq: %llu\nk: %u\nmu: %llu\nwords: %u\n", p.l, p.w,
              static_cast<unsigned long long>(p.q), p.k,
              static_cast<unsigned long long>(p.mu), p.num_words);
  if (p.n) {
    std::printf("n: %u\n", p.n);
    try {
      std::printf("psi: %llu\n",
                  static_cast<unsigned long long>(fs::find_psi(p.n, p.q)));
    } catch (const std::exception& e) {
      std::printf("ntt: unsupported (%s)\n", e.what());
    }
  }
  return 0;
}

int cmd_reduce(CLI::App* cmd, const ParamArgs& pargs, fs::u64 alpha,
               fs::u64 beta, const std::string& scheme_name,
               const std::string& accum_name, const std::string& reso_name,
               const std::string& inject_alpha, const std::string& inject_beta,
               bool trace) {
  fs::Params p = resolve_params(cmd, pargs);
  auto scheme = fs::parse_scheme(scheme_name);
  if (!scheme)
    throw std::invalid_argument("unknown scheme: " + scheme_name +
                                " (expected reswo, reno or reso)");
  fs::MbrfdOptions opts;
  if (accum_name == "literal") opts.accum = fs::AccumMode::Literal;
  else if (accum_name != "corrected")
    throw std::invalid_argument("unknown accumulation mode: " + accum_name);
  if (reso_name == "literal") opts.reso = fs::ResoMode::Literal;
  else if (reso_name != "consistent")
    throw std::invalid_argument("unknown shifted-operand mode: " + reso_name);

  fs::u64 am = inject_alpha.empty() ? 0 : parse_u64(inject_alpha, "--inject-alpha");
  fs::u64 bm = inject_beta.empty() ? 0 : parse_u64(inject_beta, "--inject-beta");
  bool injected = am != 0 || bm != 0;

  fs::MbrfdResult res = fs::mbrfd_dual(alpha ^ am, beta ^ bm, alpha, beta, p,
                                       *scheme, opts, trace);
  std::printf("%llu\n", static_cast<unsigned long long>(res.rho));
  if (trace) {
    std::printf("# %-3s %-3s %22s %10s %10s %s\n", "i", "j", "c", "r", "r_f",
                "flag");
    for (const auto& it : res.iterations)
      std::printf("  %-3u %-3u %22llu %10llu %10llu %d\n", it.i, it.j,
                  static_cast<unsigned long long>(it.c),
                  static_cast<unsigned long long>(it.r),
                  static_cast<unsigned long long>(it.r_f), it.flag ? 1 : 0);
  }
  if (trace || injected) {
    std::printf("recomputed: %llu\naggregate_flag: %d\nflagged_iterations: %u\n",
                static_cast<unsigned long long>(res.rho_f),
                res.aggregate_flag ? 1 : 0, res.flagged_iterations);
  }
  return 0;
}

int cmd_ntt(CLI::App* cmd, const ParamArgs& pargs,
            const std::string& scheme_name, const std::string& in_path,
            bool impulse, bool zero, const std::string& out_path,
            bool json_out, bool reference, bool check, bool trace) {
  fs::Params p = resolve_params(cmd, pargs);
  if (p.n == 0)
    throw std::invalid_argument("the transform needs a degree: give --n or a "
                                "parameter set that carries one");
  auto scheme = fs::parse_scheme(scheme_name);
  if (!scheme) throw std::invalid_argument("unknown scheme: " + scheme_name);

  fs::TwiddleTable table;
  try {
    table = fs::gen_twiddles(p.n, p.q);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    if (pargs.set_name == "kyber")
      msg += "; the kyber128 set demonstrates the transform at n=128";
    throw std::invalid_argument(msg);
  }

  fs::Poly poly;
  if (impulse) {
    poly.assign(p.n, 0);
    poly[0] = 1;
  } else if (zero) {
    poly.assign(p.n, 0);
  } else if (!in_path.empty()) {
    poly = parse_poly(read_input(in_path));
  } else {
    throw std::invalid_argument("give an input: --in FILE, --impulse or --zero");
  }

  fs::Poly out_coeffs;
  fs::u64 fault_count = 0;
  if (reference) {
    out_coeffs = fs::ntt_reference(poly, table, p.q);
  } else {
    fs::NttResult res = fs::ntt_forward(poly, table, p, *scheme, trace);
    out_coeffs = std::move(res.coeffs);
    fault_count = res.fault_count;
    if (trace)
      for (const auto& st : res.trace)
        std::fprintf(stderr, "stage %u m=%u i=%u j=%u u=%llu v=%llu flag=%d\n",
                     st.stage, st.m, st.i, st.j,
                     static_cast<unsigned long long>(st.u),
                     static_cast<unsigned long long>(st.v),
                     st.fault_flag ? 1 : 0);
    if (check) {
      fs::Poly ref = fs::ntt_reference(poly, table, p.q);
      if (ref != out_coeffs) {
        std::fprintf(stderr, "check: MISMATCH against the reference loop\n");
        return 3;
      }
      std::fprintf(stderr, "check: ok (matches the reference loop)\n");
    }
  }

  std::string rendered;
  if (json_out) {
    nlohmann::json doc = out_coeffs;
    rendered = doc.dump() + "\n";
  } else {
    std::ostringstream buf;
    for (fs::u64 c : out_coeffs) buf << c << "\n";
    rendered = buf.str();
  }
  write_output(out_path, rendered);
  std::fprintf(stderr, "flagged_butterflies: %llu\n",
               static_cast<unsigned long long>(fault_count));
  return 0;
}

int cmd_campaign(CLI::App* cmd, const std::string& config_path,
                 std::vector<std::string>& schemes, std::vector<unsigned>& ws,
                 std::vector<unsigned>& etas, std::vector<std::string>& sites,
                 std::vector<std::string>& kinds, const std::string& both_mode,
                 unsigned l, fs::u64 q, fs::u64 samples, fs::u64 seed,
                 unsigned workers, const std::string& out_path,
                 const std::string& format, bool emit_config) {
  fs::CampaignConfig cfg;
  cfg.seed = env_seed();
  if (!config_path.empty())
    cfg = fs::campaign_config_from_json(read_input(config_path), cfg);

  if (cmd->count("--scheme")) {
    cfg.schemes.clear();
    for (const std::string& name : schemes) {
      auto s = fs::parse_scheme(name);
      if (!s) throw std::invalid_argument("unknown scheme: " + name);
      cfg.schemes.push_back(*s);
    }
  }
  if (cmd->count("--w")) cfg.ws = ws;
  if (cmd->count("--eta")) cfg.etas = etas;
  if (cmd->count("--site")) {
    cfg.sites.clear();
    for (const std::string& name : sites) {
      auto s = fs::parse_site(name);
      if (!s) throw std::invalid_argument("unknown site: " + name);
      cfg.sites.push_back(*s);
    }
  }
  if (cmd->count("--kind")) {
    cfg.kinds.clear();
    for (const std::string& name : kinds) {
      auto k = fs::parse_kind(name);
      if (!k) throw std::invalid_argument("unknown kind: " + name);
      cfg.kinds.push_back(*k);
    }
  }
  if (cmd->count("--both-mode")) {
    if (both_mode == "concatenated") cfg.both_mode = fs::BothMode::Concatenated;
    else if (both_mode == "per_operand") cfg.both_mode = fs::BothMode::PerOperand;
    else throw std::invalid_argument("unknown both-mode: " + both_mode);
  }
  if (cmd->count("--l")) cfg.l = l;
  if (cmd->count("--q")) cfg.q = q;
  if (cmd->count("--samples")) cfg.samples = samples;
  if (cmd->count("--seed")) cfg.seed = seed;
  if (cmd->count("--workers")) cfg.workers = workers;

  if (emit_config) {
    write_output(out_path, fs::campaign_config_to_json(cfg));
    return 0;
  }

  std::vector<fs::CampaignStats> stats = fs::run_campaign(cfg);
  fs::u64 oracle_mismatches = 0;
  for (const auto& s : stats) oracle_mismatches += s.oracle_mismatches;

  std::string rendered;
  if (format == "csv") {
    rendered = fs::campaign_csv(stats);
  } else if (format == "markdown") {
    rendered = fs::campaign_markdown(stats);
  } else if (format == "both") {
    rendered = fs::campaign_csv(stats) + "\n" + fs::campaign_markdown(stats);
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  write_output(out_path, rendered);
  if (oracle_mismatches) {
    std::fprintf(stderr,
                 "error: %llu trials disagreed with the congruence oracle\n",
                 static_cast<unsigned long long>(oracle_mismatches));
    return 4;
  }
  return 0;
}

int cmd_report(const std::string& tables_path, const std::string& format,
               const std::string& out_path) {
  fs::ResourceTables t = fs::load_resource_tables(tables_path);
  std::string rendered;
  if (format == "markdown") rendered = fs::overhead_report_markdown(t);
  else if (format == "csv") rendered = fs::overhead_report_csv(t);
  else throw std::invalid_argument("unknown format: " + format);
  write_output(out_path, rendered);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "faultshield: recomputation-based fault detection for word-wise "
      "Barrett reduction, with transform, campaign and cost tooling"};
  app.require_subcommand(1);

  // --- params ---
  auto* c_params = app.add_subcommand(
      "params", "derive and print the reduction constants");
  ParamArgs pa_params;
  add_param_options(c_params, pa_params);
  bool list_sets = false;
  c_params->add_flag("--list", list_sets, "list the named parameter sets");

  // --- reduce ---
  auto* c_reduce = app.add_subcommand(
      "reduce", "dual-path word-wise reduction of alpha * beta mod q");
  ParamArgs pa_reduce;
  fs::u64 r_alpha = 0, r_beta = 0;
  std::string r_scheme = "reswo", r_accum = "corrected",
              r_reso = "consistent", r_inj_a, r_inj_b;
  bool r_trace = false;
  c_reduce->add_option("alpha", r_alpha, "first operand")->required();
  c_reduce->add_option("beta", r_beta, "second operand")->required();
  add_param_options(c_reduce, pa_reduce);
  c_reduce->add_option("--scheme", r_scheme, "reswo | reno | reso");
  c_reduce->add_option("--accum", r_accum, "corrected | literal");
  c_reduce->add_option("--reso-mode", r_reso, "consistent | literal");
  c_reduce->add_option("--inject-alpha", r_inj_a,
                       "XOR mask applied to alpha on the main path only");
  c_reduce->add_option("--inject-beta", r_inj_b,
                       "XOR mask applied to beta on the main path only");
  c_reduce->add_flag("--trace", r_trace, "print every word-loop iteration");

  // --- ntt ---
  auto* c_ntt = app.add_subcommand(
      "ntt", "forward transform with the dual-path multiplier");
  ParamArgs pa_ntt;
  std::string n_scheme = "reswo", n_in, n_out = "-";
  bool n_impulse = false, n_zero = false, n_json_out = false,
       n_reference = false, n_check = false, n_trace = false;
  add_param_options(c_ntt, pa_ntt);
  c_ntt->add_option("--scheme", n_scheme, "reswo | reno | reso");
  c_ntt->add_option("--in", n_in,
                    "coefficient file: decimal lines or JSON array ('-' = stdin)");
  c_ntt->add_flag("--impulse", n_impulse, "use the unit impulse as input");
  c_ntt->add_flag("--zero", n_zero, "use the zero polynomial as input");
  c_ntt->add_option("--out", n_out, "output file ('-' = stdout)");
  c_ntt->add_flag("--json-out", n_json_out, "write output as a JSON array");
  c_ntt->add_flag("--reference", n_reference,
                  "run the plain reference loop instead");
  c_ntt->add_flag("--check", n_check,
                  "also run the reference loop and compare");
  c_ntt->add_flag("--trace", n_trace, "print stage records to stderr");

  // --- campaign ---
  auto* c_campaign = app.add_subcommand(
      "campaign", "Monte-Carlo fault-injection campaign over a grid");
  std::string g_config, g_both_mode = "concatenated", g_out,
              g_format = "csv";
  std::vector<std::string> g_schemes, g_sites, g_kinds;
  std::vector<unsigned> g_ws, g_etas;
  unsigned g_l = 24, g_workers = 0;
  fs::u64 g_q = 3329, g_samples = 1'500'000, g_seed = 0;
  bool g_emit_config = false;
  c_campaign->add_option("--config", g_config,
                         "JSON campaign description ('-' = stdin)");
  c_campaign->add_option("--scheme", g_schemes, "schemes to run")
      ->delimiter(',');
  c_campaign->add_option("--w", g_ws, "word sizes")->delimiter(',');
  c_campaign->add_option("--eta", g_etas, "fault-bit counts")->delimiter(',');
  c_campaign->add_option("--site", g_sites, "alpha | beta | both")
      ->delimiter(',');
  c_campaign->add_option("--kind", g_kinds, "random | burst")->delimiter(',');
  c_campaign->add_option("--both-mode", g_both_mode,
                         "concatenated | per_operand");
  c_campaign->add_option("--l", g_l, "operand bit-length");
  c_campaign->add_option("--q", g_q, "modulus");
  c_campaign->add_option("--samples", g_samples, "trials per grid cell");
  c_campaign->add_option("--seed", g_seed, "master seed");
  c_campaign->add_option("--workers", g_workers,
                         "worker threads (0 = hardware concurrency)");
  c_campaign->add_option("--out", g_out, "output file ('-' = stdout)");
  c_campaign->add_option("--format", g_format, "csv | markdown | both");
  c_campaign->add_flag("--emit-config", g_emit_config,
                       "print the effective config as JSON and exit");

  // --- report ---
  auto* c_report = app.add_subcommand(
      "report", "overhead and slice-effective-cost report");
  std::string t_tables = "data/paper_tables.json", t_format = "markdown",
              t_out;
  c_report->add_option("--tables", t_tables, "resource tables JSON file");
  c_report->add_option("--format", t_format, "markdown | csv");
  c_report->add_option("--out", t_out, "output file ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_params))
      return cmd_params(c_params, pa_params, list_sets);
    if (app.got_subcommand(c_reduce))
      return cmd_reduce(c_reduce, pa_reduce, r_alpha, r_beta, r_scheme,
                        r_accum, r_reso, r_inj_a, r_inj_b, r_trace);
    if (app.got_subcommand(c_ntt))
      return cmd_ntt(c_ntt, pa_ntt, n_scheme, n_in, n_impulse, n_zero, n_out,
                     n_json_out, n_reference, n_check, n_trace);
    if (app.got_subcommand(c_campaign))
      return cmd_campaign(c_campaign, g_config, g_schemes, g_ws, g_etas,
                          g_sites, g_kinds, g_both_mode, g_l, g_q, g_samples,
                          g_seed, g_workers, g_out, g_format, g_emit_config);
    if (app.got_subcommand(c_report))
      return cmd_report(t_tables, t_format, t_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
