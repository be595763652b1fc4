#include <doctest.h>

#include <stdexcept>

#include "faultshield/report.hpp"

using namespace faultshield;

namespace {

ResourceTables bundled_tables() {
  return load_resource_tables(std::string(FAULTSHIELD_REPO_DIR) +
                           "/data/paper_tables.json");
}

CampaignStats make_row(Scheme s, unsigned w, unsigned eta, FaultSite site,
                       FaultKind kind, u64 samples, u64 detected) {
  CampaignStats st;
  st.scheme = s;
  st.w = w;
  st.eta = eta;
  st.site = site;
  st.kind = kind;
  st.applicable = samples != 0;
  st.samples = samples;
  st.detected = detected;
  st.missed = samples - detected;
  return st;
}

}  // namespace

TEST_CASE("sec cost in exact eighths") {
  ResourceCount zero;
  zero.luts = 0;
  zero.ffs = 0;
  CHECK(sec_cost(zero).eighths == 0);
  CHECK(sec_cost(zero).to_string() == "0.0");

  ResourceCount bu;
  bu.luts = 972;
  bu.ffs = 239;
  bu.dsps = 2;
  bu.brams = 1;
  SecCost s = sec_cost(bu);
  CHECK(s.eighths == 5383);
  CHECK(s.value() == doctest::Approx(672.875));
  CHECK(s.to_string() == "672.875");

  ResourceCount one;
  one.luts = 4;  // 0.25 each
  CHECK(sec_cost(one).to_string() == "1.0");
  one.ffs = 2;   // + 0.25
  CHECK(sec_cost(one).to_string() == "1.25");
  // absent metrics (-1) contribute nothing
  ResourceCount sparse;
  sparse.dsps = 1;
  CHECK(sec_cost(sparse).eighths == 800);
  CHECK(sec_cost(sparse).to_string() == "100.0");
}

TEST_CASE("sec cost is additive") {
  ResourceCount a, b, both;
  a.luts = 190;
  a.ffs = 38;
  b.luts = 197;
  b.ffs = 48;
  both.luts = 190 + 197;
  both.ffs = 38 + 48;
  CHECK(sec_cost(a).eighths + sec_cost(b).eighths == sec_cost(both).eighths);
}

TEST_CASE("overhead percentage truncates toward zero at two decimals") {
  CHECK(overhead_pct_str(128, 76, 573) == "9.07");   // 9.0750.. not 9.08
  CHECK(overhead_pct_str(77, 52, 401) == "6.23");    // 6.2344..
  CHECK(overhead_pct_str(50, 38, 314) == "3.82");    // 3.8216..
  CHECK(overhead_pct_str(47, 33, 312) == "4.48");    // 4.4871..
  CHECK(overhead_pct_str(500, 500, 17) == "0.00");
  CHECK(overhead_pct_str(0, 5, 200) == "-2.50");
  CHECK(overhead_pct_str(3, 0, 200) == "1.50");
  CHECK(overhead_pct(128, 76, 573) == doctest::Approx(9.07504));
  CHECK_THROWS_AS(overhead_pct_str(1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(overhead_pct(1, 0, -5), std::invalid_argument);
}

TEST_CASE("round-to-nearest percentage rendering") {
  CHECK(pct_round2(99.96996) == "99.97");
  CHECK(pct_round2(100.0) == "100.00");
  CHECK(pct_round2(0.0) == "0.00");
  CHECK(pct_round2(9.076) == "9.08");
  CHECK(pct_round2(99.9649) == "99.96");
}

TEST_CASE("bundled resource tables load and reproduce the expected figures") {
  ResourceTables t = bundled_tables();
  CHECK(t.device.find("Artix-7") != std::string::npos);
  REQUIRE(t.designs.size() == 4);
  REQUIRE(t.blocks.size() == 5);

  const DesignRow& kyber = t.designs[0];
  CHECK(kyber.algorithm == "kyber");
  CHECK(kyber.n == 256);
  CHECK(kyber.q == 3329);
  CHECK(kyber.ct_bu.slices == 573);
  CHECK(kyber.barrett.slices == 76);
  CHECK(kyber.barrett_with_fd.slices == 128);
  CHECK(overhead_pct_str(kyber.barrett_with_fd.slices, kyber.barrett.slices,
                         kyber.ct_bu.slices) == "9.07");

  const char* want_sec[5] = {"672.875", "74.625", "52.25", "55.25", "50.75"};
  const char* want_name[5] = {"ct_bu", "barrett", "reswo", "reno", "reso"};
  for (int i = 0; i < 5; ++i) {
    CHECK(t.blocks[i].name == want_name[i]);
    CHECK(sec_cost(t.blocks[i].rc).to_string() == want_sec[i]);
  }
  // delay stored in integral picoseconds, exact for 3-decimal inputs
  CHECK(t.blocks[0].rc.delay_ps == 9390);
  CHECK(t.blocks[1].rc.delay_ps == 7177);
  // per-design rows do not report DSP/BRAM columns
  CHECK(kyber.ct_bu.dsps == -1);
  CHECK_FALSE(kyber.ct_bu.has(kyber.ct_bu.dsps));
}

TEST_CASE("markdown overhead report") {
  std::string md = overhead_report_markdown(bundled_tables());
  CHECK(md.find("| kyber | 256 | 3329 | 9.07 |") != std::string::npos);
  CHECK(md.find("| dilithium | 256 | 8380417 | 6.23 |") != std::string::npos);
  CHECK(md.find("| falcon | 512 | 12289 | 3.82 |") != std::string::npos);
  CHECK(md.find("| ntru | 2048 | 12289 | 4.48 |") != std::string::npos);
  CHECK(md.find("672.875") != std::string::npos);
  // unit-overhead table: unit cost over butterfly baseline, measured delay
  CHECK(md.find("| reswo | 9.07 |") != std::string::npos);
  CHECK(md.find("| reno | 9.77 |") != std::string::npos);
  CHECK(md.find("| reso | 8.90 |") != std::string::npos);
  CHECK(md.find(" 1.27 |") != std::string::npos);  // reswo delay
  CHECK(md.find(" 2.98 |") != std::string::npos);  // reno delay
  CHECK(md.find(" 2.34 |") != std::string::npos);  // reso delay
  // block table renders delays back in nanoseconds
  CHECK(md.find(" 9.39 |") != std::string::npos);
  CHECK(md.find(" 7.177 |") != std::string::npos);
}

TEST_CASE("csv overhead report") {
  std::string csv = overhead_report_csv(bundled_tables());
  CHECK(csv.rfind("section,name,metric,value\n", 0) == 0);
  CHECK(csv.find("design_overhead,kyber,slices_pct,9.07\n") !=
        std::string::npos);
  CHECK(csv.find("design_overhead,ntru,slices_pct,4.48\n") !=
        std::string::npos);
  CHECK(csv.find("block,ct_bu,sec,672.875\n") != std::string::npos);
  CHECK(csv.find("unit_overhead,reswo,area_pct,9.07\n") != std::string::npos);
  CHECK(csv.find("unit_overhead,reno,delay_pct,2.98\n") != std::string::npos);
  CHECK(csv.find("unit_overhead,reso,delay_pct,2.34\n") != std::string::npos);
  CHECK(csv.find("unit_overhead,reswo,delay_pct,1.27\n") != std::string::npos);
}

TEST_CASE("tables with no rows are rejected") {
  CHECK_THROWS_WITH_AS(resource_tables_from_json("{}"),
                       doctest::Contains("no resource rows"),
                       std::invalid_argument);
  CHECK_THROWS_AS(load_resource_tables("/nonexistent/tables.json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(resource_tables_from_json("[]"), std::invalid_argument);
}

TEST_CASE("campaign CSV rendering") {
  std::vector<CampaignStats> stats = {
      make_row(Scheme::Reswo, 4, 1, FaultSite::Alpha, FaultKind::Random,
               1500000, 1499549),
      make_row(Scheme::Reswo, 4, 1, FaultSite::Alpha, FaultKind::Burst, 0, 0),
  };
  std::string csv = campaign_csv(stats);
  CHECK(csv ==
        "scheme,w,eta,site,kind,samples,detected,missed,efficiency_pct\n"
        "reswo,4,1,alpha,random,1500000,1499549,451,99.9699\n"
        "reswo,4,1,alpha,burst,0,0,0,NA\n");
}

TEST_CASE("campaign CSV round-trips byte for byte") {
  std::vector<CampaignStats> stats = {
      make_row(Scheme::Reno, 8, 3, FaultSite::Beta, FaultKind::Burst, 10000,
               9991),
      make_row(Scheme::Reno, 8, 1, FaultSite::Beta, FaultKind::Burst, 0, 0),
      make_row(Scheme::Reso, 24, 23, FaultSite::Both, FaultKind::Random,
               12345, 12341),
  };
  std::string csv = campaign_csv(stats);
  std::vector<CampaignStats> back = campaign_from_csv(csv);
  REQUIRE(back.size() == stats.size());
  CHECK(campaign_csv(back) == csv);
  CHECK_FALSE(back[1].applicable);
  CHECK(back[2].samples == 12345);
}

TEST_CASE("campaign CSV parsing rejects malformed input") {
  CHECK_THROWS_WITH_AS(campaign_from_csv("wrong,header\n"),
                       doctest::Contains("header mismatch"),
                       std::invalid_argument);
  std::string hdr =
      "scheme,w,eta,site,kind,samples,detected,missed,efficiency_pct\n";
  CHECK_THROWS_WITH_AS(campaign_from_csv(hdr + "reswo,4,1,alpha,random,10,3\n"),
                       doctest::Contains("fields"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      campaign_from_csv(hdr + "reswo,4,1,alpha,random,10,3,3,60.0000\n"),
      doctest::Contains("counts inconsistent"), std::invalid_argument);
  CHECK_THROWS_AS(campaign_from_csv(hdr), std::invalid_argument);
}

TEST_CASE("campaign markdown layout") {
  std::vector<CampaignStats> stats = {
      // w given out of order on purpose; eta 1 burst is the N/A cell
      make_row(Scheme::Reswo, 8, 1, FaultSite::Alpha, FaultKind::Random, 10000,
               9997),
      make_row(Scheme::Reswo, 8, 1, FaultSite::Alpha, FaultKind::Burst, 0, 0),
      make_row(Scheme::Reswo, 4, 1, FaultSite::Alpha, FaultKind::Random, 10000,
               9997),
      make_row(Scheme::Reswo, 4, 1, FaultSite::Alpha, FaultKind::Burst, 0, 0),
  };
  std::string md = campaign_markdown(stats);
  CHECK(md.find("## scheme: reswo") != std::string::npos);
  std::size_t w4 = md.find("### w = 4");
  std::size_t w8 = md.find("### w = 8");
  REQUIRE(w4 != std::string::npos);
  REQUIRE(w8 != std::string::npos);
  CHECK(w4 < w8);  // ascending despite input order
  CHECK(md.find("| alpha random |") != std::string::npos);
  CHECK(md.find("| 1 | 99.97 | - |") != std::string::npos);
}
