#pragma once

#include <string>

#include "faultshield/fault.hpp"

namespace faultshield {

// FPGA resource tuple for one synthesized block.  -1 marks a metric the
// loaded table omits (power and delay are optional; DSP/BRAM columns are
// absent from the per-design table).
struct ResourceCount {
  i64 slices = -1;
  i64 luts = -1;
  i64 ffs = -1;
  i64 dsps = -1;
  i64 brams = -1;
  i64 power_mw = -1;
  i64 delay_ps = -1;  // picoseconds, so 3-decimal ns values stay exact

  bool has(i64 v) const { return v >= 0; }
};

// Slice-effective cost 0.25*LUT + 0.125*FF + 100*DSP + 200*BRAM, held in
// exact eighths (8*SEC = 2*LUT + FF + 800*DSP + 1600*BRAM) so no float drift
// can reach a rendered digit.  Absent counts contribute nothing.
struct SecCost {
  i64 eighths = 0;
  double value() const { return static_cast<double>(eighths) / 8.0; }
  std::string to_string() const;  // exact decimal (.125 granularity)
};

SecCost sec_cost(const ResourceCount& rc);

// 100 * (with_fd - without_fd) / baseline as a double; baseline must be > 0.
double overhead_pct(i64 with_fd, i64 without_fd, i64 baseline);

// The same percentage rendered with exactly 2 decimals, truncated toward
// zero rather than rounded (100*52/573 = 9.0750..% prints as 9.07,
// not 9.08) — the convention the bundled tables' figures follow.
std::string overhead_pct_str(i64 with_fd, i64 without_fd, i64 baseline);

// Round-to-nearest 2-decimal rendering, for detection-efficiency displays.
std::string pct_round2(double v);

// One synthesized design (algorithm + transform size) with the measured
// cost of its butterfly unit and reduction blocks.
struct DesignRow {
  std::string algorithm;  // kyber / dilithium / falcon / ntru
  u32 n = 0;
  u64 q = 0;
  ResourceCount ct_bu;              // butterfly unit, the overhead baseline
  ResourceCount barrett;            // plain reduction block
  ResourceCount barrett_with_fd;    // reduction block + swapped-operand path
};

struct BlockRow {
  std::string name;  // ct_bu / barrett / reswo / reno / reso
  ResourceCount rc;
};

struct ResourceTables {
  std::string device;
  std::vector<DesignRow> designs;
  std::vector<BlockRow> blocks;  // standalone block breakdown (one design)
};

ResourceTables load_resource_tables(const std::string& path);
ResourceTables resource_tables_from_json(const std::string& text);

// Overhead/SEC report over the loaded tables: per-design area/LUT/FF/
// power overhead percentages, and the block breakdown with SEC and
// per-scheme overhead versus the plain reduction block.
std::string overhead_report_markdown(const ResourceTables& t);
std::string overhead_report_csv(const ResourceTables& t);

// Campaign renderings.  CSV header:
// scheme,w,eta,site,kind,samples,detected,missed,efficiency_pct
// (4-decimal efficiency; N/A cells carry zero counts and the literal NA).
std::string campaign_csv(const std::vector<CampaignStats>& stats);
std::vector<CampaignStats> campaign_from_csv(const std::string& text);

// Markdown grid: one section per scheme, one table per w (ascending), eta
// rows by first appearance, (site x kind) columns, "-" for N/A cells.
std::string campaign_markdown(const std::vector<CampaignStats>& stats);

}  // namespace faultshield
