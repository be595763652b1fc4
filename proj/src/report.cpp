#include "faultshield/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace faultshield {

std::string SecCost::to_string() const {
  i64 whole = eighths / 8;
  i64 frac = eighths % 8;  // counts are non-negative, so frac >= 0
  // Eighths are exact in three decimals; strip trailing zeros but keep one.
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03lld", static_cast<long long>(frac * 125));
  std::string digits(buf);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return std::to_string(whole) + "." + digits;
}

SecCost sec_cost(const ResourceCount& rc) {
  auto or_zero = [](i64 v) { return v >= 0 ? v : 0; };
  SecCost s;
  s.eighths = 2 * or_zero(rc.luts) + or_zero(rc.ffs) + 800 * or_zero(rc.dsps) +
              1600 * or_zero(rc.brams);
  return s;
}

double overhead_pct(i64 with_fd, i64 without_fd, i64 baseline) {
  if (baseline <= 0) throw std::invalid_argument("baseline must be positive");
  return 100.0 * static_cast<double>(with_fd - without_fd) /
         static_cast<double>(baseline);
}

std::string overhead_pct_str(i64 with_fd, i64 without_fd, i64 baseline) {
  if (baseline <= 0) throw std::invalid_argument("baseline must be positive");
  // Fixed-point with two digits, truncated toward zero: scale the exact
  // rational by 10^4 and integer-divide.
  i128 scaled = static_cast<i128>(with_fd - without_fd) * 10000 / baseline;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  i64 whole = static_cast<i64>(scaled / 100);
  i64 frac = static_cast<i64>(scaled % 100);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "",
                static_cast<long long>(whole), static_cast<long long>(frac));
  return buf;
}

std::string pct_round2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

namespace {

using nlohmann::json;

i64 opt_count(const json& obj, const char* key) {
  if (!obj.contains(key)) return -1;
  return obj[key].get<i64>();
}

ResourceCount parse_resources(const json& obj, const std::string& where) {
  if (!obj.is_object())
    throw std::invalid_argument(where + ": resource entry must be an object");
  ResourceCount rc;
  rc.slices = opt_count(obj, "slices");
  rc.luts = opt_count(obj, "luts");
  rc.ffs = opt_count(obj, "ffs");
  rc.dsps = opt_count(obj, "dsps");
  rc.brams = opt_count(obj, "brams");
  rc.power_mw = opt_count(obj, "power_mw");
  if (obj.contains("delay_ns")) {
    double ns = obj["delay_ns"].get<double>();
    rc.delay_ps = static_cast<i64>(ns * 1000.0 + 0.5);
  }
  for (i64 v : {rc.slices, rc.luts, rc.ffs, rc.dsps, rc.brams, rc.power_mw,
                rc.delay_ps})
    if (v < -1) throw std::invalid_argument(where + ": negative count");
  return rc;
}

std::string delay_ns_str(i64 ps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%03lld",
                static_cast<long long>(ps / 1000),
                static_cast<long long>(ps % 1000));
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

ResourceTables resource_tables_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.is_object())
    throw std::invalid_argument("tables file must hold a JSON object");
  ResourceTables t;
  t.device = doc.value("device", "");
  for (const auto& d : doc.value("designs", json::array())) {
    DesignRow row;
    row.algorithm = d.at("algorithm").get<std::string>();
    row.n = d.value("n", 0u);
    row.q = d.value("q", u64{0});
    row.ct_bu = parse_resources(d.at("ct_bu"), row.algorithm + "/ct_bu");
    row.barrett = parse_resources(d.at("barrett"), row.algorithm + "/barrett");
    row.barrett_with_fd = parse_resources(d.at("barrett_with_fd"),
                                          row.algorithm + "/barrett_with_fd");
    t.designs.push_back(std::move(row));
  }
  for (const auto& b : doc.value("blocks", json::array())) {
    BlockRow row;
    row.name = b.at("name").get<std::string>();
    row.rc = parse_resources(b, row.name);
    t.blocks.push_back(std::move(row));
  }
  if (t.designs.empty() && t.blocks.empty())
    throw std::invalid_argument("tables file contains no resource rows");
  return t;
}

ResourceTables load_resource_tables(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open tables file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (buf.str().empty())
    throw std::invalid_argument("tables file is empty: " + path);
  return resource_tables_from_json(buf.str());
}

namespace {

const BlockRow* find_block(const ResourceTables& t, std::string_view name) {
  for (const BlockRow& b : t.blocks)
    if (b.name == name) return &b;
  return nullptr;
}

std::string count_str(i64 v) { return v >= 0 ? std::to_string(v) : "-"; }

}  // namespace

std::string overhead_report_markdown(const ResourceTables& t) {
  std::ostringstream out;
  out << "# FPGA cost model\n";
  if (!t.device.empty()) out << "\nDevice: " << t.device << "\n";

  if (!t.designs.empty()) {
    out << "\n## Reduction-block detection overhead per design\n\n"
        << "Overhead of the guarded reduction block over the plain one, as a\n"
        << "percentage of the full butterfly unit's cost (subcomponent delta\n"
        << "over whole-unit baseline).\n\n"
        << "| design | n | q | slices % | luts % | ffs % | power % |\n"
        << "|---|---|---|---|---|---|---|\n";
    for (const DesignRow& d : t.designs) {
      out << "| " << d.algorithm << " | " << d.n << " | " << d.q;
      auto cell = [&](i64 with_fd, i64 without_fd, i64 base) {
        out << " | "
            << (base > 0 && with_fd >= 0 && without_fd >= 0
                    ? overhead_pct_str(with_fd, without_fd, base)
                    : std::string("-"));
      };
      cell(d.barrett_with_fd.slices, d.barrett.slices, d.ct_bu.slices);
      cell(d.barrett_with_fd.luts, d.barrett.luts, d.ct_bu.luts);
      cell(d.barrett_with_fd.ffs, d.barrett.ffs, d.ct_bu.ffs);
      cell(d.barrett_with_fd.power_mw, d.barrett.power_mw, d.ct_bu.power_mw);
      out << " |\n";
    }
  }

  if (!t.blocks.empty()) {
    out << "\n## Block breakdown\n\n"
        << "| block | slices | luts | ffs | dsps | brams | power_mw | "
           "delay_ns | sec |\n"
        << "|---|---|---|---|---|---|---|---|---|\n";
    for (const BlockRow& b : t.blocks) {
      out << "| " << b.name << " | " << count_str(b.rc.slices) << " | "
          << count_str(b.rc.luts) << " | " << count_str(b.rc.ffs) << " | "
          << count_str(b.rc.dsps) << " | " << count_str(b.rc.brams) << " | "
          << count_str(b.rc.power_mw) << " | "
          << (b.rc.delay_ps >= 0 ? delay_ns_str(b.rc.delay_ps)
                                 : std::string("-"))
          << " | " << sec_cost(b.rc).to_string() << " |\n";
    }

    const BlockRow* base = find_block(t, "ct_bu");
    if (base) {
      out << "\n## Recomputation-unit overhead over the butterfly unit\n\n"
          << "| unit | area % | luts % | ffs % | power % | delay % | sec |\n"
          << "|---|---|---|---|---|---|---|\n";
      for (const BlockRow& b : t.blocks) {
        if (b.name == "ct_bu" || b.name == "barrett") continue;
        out << "| " << b.name;
        // The unit is additional logic next to the baseline, so the cost
        // delta is the unit's own count; delay is not additive and uses the
        // measured unit delay against the baseline delay.
        auto add_cell = [&](i64 unit, i64 baseline) {
          out << " | "
              << (unit >= 0 && baseline > 0 ? overhead_pct_str(unit, 0, baseline)
                                            : std::string("-"));
        };
        add_cell(b.rc.slices, base->rc.slices);
        add_cell(b.rc.luts, base->rc.luts);
        add_cell(b.rc.ffs, base->rc.ffs);
        add_cell(b.rc.power_mw, base->rc.power_mw);
        out << " | "
            << (b.rc.delay_ps >= 0 && base->rc.delay_ps > 0
                    ? overhead_pct_str(b.rc.delay_ps, base->rc.delay_ps,
                                       base->rc.delay_ps)
                    : std::string("-"));
        out << " | " << sec_cost(b.rc).to_string() << " |\n";
      }
    }
  }
  return out.str();
}

std::string overhead_report_csv(const ResourceTables& t) {
  std::ostringstream out;
  out << "section,name,metric,value\n";
  for (const DesignRow& d : t.designs) {
    auto row = [&](const char* metric, i64 with_fd, i64 without_fd, i64 base) {
      if (base > 0 && with_fd >= 0 && without_fd >= 0)
        out << "design_overhead," << d.algorithm << "," << metric << ","
            << overhead_pct_str(with_fd, without_fd, base) << "\n";
    };
    row("slices_pct", d.barrett_with_fd.slices, d.barrett.slices,
        d.ct_bu.slices);
    row("luts_pct", d.barrett_with_fd.luts, d.barrett.luts, d.ct_bu.luts);
    row("ffs_pct", d.barrett_with_fd.ffs, d.barrett.ffs, d.ct_bu.ffs);
    row("power_pct", d.barrett_with_fd.power_mw, d.barrett.power_mw,
        d.ct_bu.power_mw);
  }
  const BlockRow* base = nullptr;
  for (const BlockRow& b : t.blocks) {
    out << "block," << b.name << ",sec," << sec_cost(b.rc).to_string() << "\n";
    if (b.name == "ct_bu") base = &b;
  }
  if (base) {
    for (const BlockRow& b : t.blocks) {
      if (b.name == "ct_bu" || b.name == "barrett") continue;
      auto row = [&](const char* metric, i64 unit, i64 bl) {
        if (unit >= 0 && bl > 0)
          out << "unit_overhead," << b.name << "," << metric << ","
              << overhead_pct_str(unit, 0, bl) << "\n";
      };
      row("area_pct", b.rc.slices, base->rc.slices);
      row("luts_pct", b.rc.luts, base->rc.luts);
      row("ffs_pct", b.rc.ffs, base->rc.ffs);
      row("power_pct", b.rc.power_mw, base->rc.power_mw);
      if (b.rc.delay_ps >= 0 && base->rc.delay_ps > 0)
        out << "unit_overhead," << b.name << ",delay_pct,"
            << overhead_pct_str(b.rc.delay_ps, base->rc.delay_ps,
                                base->rc.delay_ps)
            << "\n";
    }
  }
  return out.str();
}

std::string campaign_csv(const std::vector<CampaignStats>& stats) {
  if (stats.empty()) throw std::invalid_argument("no campaign rows to render");
  std::ostringstream out;
  out << "scheme,w,eta,site,kind,samples,detected,missed,efficiency_pct\n";
  for (const CampaignStats& s : stats) {
    out << scheme_name(s.scheme) << "," << s.w << "," << s.eta << ","
        << site_name(s.site) << "," << kind_name(s.kind) << "," << s.samples
        << "," << s.detected << "," << s.missed << ",";
    if (s.applicable) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", s.efficiency_pct());
      out << buf;
    } else {
      out << "NA";
    }
    out << "\n";
  }
  return out.str();
}

std::vector<CampaignStats> campaign_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "scheme,w,eta,site,kind,samples,detected,missed,efficiency_pct")
    throw std::invalid_argument("campaign CSV header mismatch");

  auto fields = [](const std::string& row) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : row) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };

  std::vector<CampaignStats> stats;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f = fields(line);
    if (f.size() != 9)
      throw std::invalid_argument("campaign CSV row has " +
                                  std::to_string(f.size()) + " fields: " + line);
    CampaignStats s;
    auto scheme = parse_scheme(f[0]);
    auto site = parse_site(f[3]);
    auto kind = parse_kind(f[4]);
    if (!scheme || !site || !kind)
      throw std::invalid_argument("campaign CSV row unparseable: " + line);
    s.scheme = *scheme;
    s.w = static_cast<unsigned>(std::stoul(f[1]));
    s.eta = static_cast<unsigned>(std::stoul(f[2]));
    s.site = *site;
    s.kind = *kind;
    s.samples = std::stoull(f[5]);
    s.detected = std::stoull(f[6]);
    s.missed = std::stoull(f[7]);
    s.applicable = f[8] != "NA";
    if (s.detected + s.missed != s.samples)
      throw std::invalid_argument("campaign CSV counts inconsistent: " + line);
    stats.push_back(s);
  }
  if (stats.empty()) throw std::invalid_argument("campaign CSV has no rows");
  return stats;
}

std::string campaign_markdown(const std::vector<CampaignStats>& stats) {
  if (stats.empty()) throw std::invalid_argument("no campaign rows to render");

  // Column identity: (site, kind) in canonical order of first appearance.
  struct Col {
    FaultSite site;
    FaultKind kind;
    bool operator==(const Col& o) const {
      return site == o.site && kind == o.kind;
    }
  };
  std::vector<Col> cols;
  for (FaultSite site : {FaultSite::Alpha, FaultSite::Beta, FaultSite::Both})
    for (FaultKind kind : {FaultKind::Random, FaultKind::Burst})
      for (const CampaignStats& s : stats)
        if (s.site == site && s.kind == kind) {
          cols.push_back({site, kind});
          break;
        }

  std::vector<Scheme> schemes;
  for (const CampaignStats& s : stats)
    if (std::find(schemes.begin(), schemes.end(), s.scheme) == schemes.end())
      schemes.push_back(s.scheme);

  std::ostringstream out;
  out << "# Detection efficiency (percent)\n";
  for (Scheme scheme : schemes) {
    out << "\n## scheme: " << scheme_name(scheme) << "\n";
    std::vector<unsigned> ws;
    for (const CampaignStats& s : stats)
      if (s.scheme == scheme &&
          std::find(ws.begin(), ws.end(), s.w) == ws.end())
        ws.push_back(s.w);
    std::sort(ws.begin(), ws.end());

    for (unsigned w : ws) {
      out << "\n### w = " << w << "\n\n| eta |";
      for (const Col& c : cols)
        out << " " << site_name(c.site) << " " << kind_name(c.kind) << " |";
      out << "\n|---|";
      for (size_t i = 0; i < cols.size(); ++i) out << "---|";
      out << "\n";

      std::vector<unsigned> etas;
      for (const CampaignStats& s : stats)
        if (s.scheme == scheme && s.w == w &&
            std::find(etas.begin(), etas.end(), s.eta) == etas.end())
          etas.push_back(s.eta);

      for (unsigned eta : etas) {
        out << "| " << eta << " |";
        for (const Col& c : cols) {
          const CampaignStats* cell = nullptr;
          for (const CampaignStats& s : stats)
            if (s.scheme == scheme && s.w == w && s.eta == eta &&
                s.site == c.site && s.kind == c.kind) {
              cell = &s;
              break;
            }
          if (!cell)
            out << " |";
          else if (!cell->applicable)
            out << " - |";
          else
            out << " " << pct_round2(cell->efficiency_pct()) << " |";
        }
        out << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace faultshield
