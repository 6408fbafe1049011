#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "iris/datasets.hpp"
#include "iris/errors.hpp"
#include "iris/evalstats.hpp"
#include "iris/rng.hpp"

namespace iris {

namespace {

// Published segmentation-accuracy and recognition results, embedded as
// delimited text. Values are percentages, kept verbatim at published
// precision; read-only.
constexpr const char* kFixtureText = R"(table1,notredame,Op. A,100.00,0.00,0.00
table1,notredame,Osiris,92.24,1.31,7.48
table1,notredame,GST,89.22,1.88,11.17
table1,notredame,WAHET,87.63,2.36,14.08
table1,notredame,IFPP,85.35,2.79,16.79
table1,notredame,CAHT,80.51,3.67,20.57
table1,casia4i,Op. A,100.00,0.00,0.00
table1,casia4i,Osiris,92.74,5.22,9.72
table1,casia4i,GST,90.97,4.56,8.80
table1,casia4i,CAHT,89.27,6.29,12.17
table1,casia4i,WAHET,89.13,6.06,11.60
table1,casia4i,IFPP,84.98,7.71,14.51
table1,iitd,Op. A,100.00,0.00,0.00
table1,iitd,Osiris,89.36,4.61,8.04
table1,iitd,GST,89.29,6.15,10.73
table1,iitd,CAHT,86.28,8.54,15.47
table1,iitd,IFPP,85.46,9.13,16.40
table1,iitd,WAHET,82.56,10.11,17.80
table2,casia4i,Op. A,lg,100.00,0.92,99.73,2.26
table2,casia4i,Osiris,lg,92.74,1.04,99.66,3.52
table2,casia4i,GST,lg,90.97,2.97,99.07,8.86
table2,casia4i,CAHT,lg,89.27,1.22,99.53,3.19
table2,casia4i,WAHET,lg,89.13,1.89,99.38,4.03
table2,casia4i,IFPP,lg,84.98,8.10,95.63,17.27
table2,casia4i,Op. A,qsw,100.00,0.61,99.85,1.24
table2,casia4i,Osiris,qsw,92.74,0.73,99.75,1.88
table2,casia4i,GST,qsw,90.97,2.40,99.38,6.80
table2,casia4i,CAHT,qsw,89.27,0.99,99.65,1.72
table2,casia4i,WAHET,qsw,89.13,1.72,99.43,2.91
table2,casia4i,IFPP,qsw,84.98,8.78,94.90,16.74
table2,casia4i,Op. A,dct,100.00,0.78,99.96,4.51
table2,casia4i,Osiris,dct,92.74,1.36,99.84,7.40
table2,casia4i,GST,dct,90.97,13.72,99.01,32.58
table2,casia4i,CAHT,dct,89.27,1.34,99.64,4.45
table2,casia4i,WAHET,dct,89.13,2.34,98.99,6.78
table2,casia4i,IFPP,dct,84.98,10.83,94.79,39.01
table2,casia4i,Op. A,ko,100.00,13.31,93.92,68.78
table2,casia4i,Osiris,ko,92.74,14.01,93.23,75.47
table2,casia4i,GST,ko,90.97,13.72,92.54,54.10
table2,casia4i,CAHT,ko,89.27,13.50,96.47,41.74
table2,casia4i,WAHET,ko,89.13,14.04,93.25,68.04
table2,casia4i,IFPP,ko,84.98,19.06,87.77,74.97
table2,casia4i,Op. A,cr,100.00,6.50,98.30,49.29
table2,casia4i,Osiris,cr,92.74,10.04,96.16,59.26
table2,casia4i,GST,cr,90.97,14.38,90.01,92.32
table2,casia4i,CAHT,cr,89.27,6.45,97.82,37.21
table2,casia4i,WAHET,cr,89.13,7.82,96.60,39.81
table2,casia4i,IFPP,cr,84.98,21.44,85.56,62.74
table2,casia4i,Op. A,sift,100.00,3.39,99.14,18.62
table2,casia4i,Osiris,sift,92.74,3.49,99.08,18.30
table2,casia4i,GST,sift,90.97,3.88,98.76,23.97
table2,casia4i,CAHT,sift,89.27,3.35,99.03,18.13
table2,casia4i,WAHET,sift,89.13,3.81,98.88,22.03
table2,casia4i,IFPP,sift,84.98,7.52,96.34,92.55
table2,iitd,Op. A,lg,100.00,0.47,99.88,19.49
table2,iitd,Osiris,lg,89.36,1.40,99.62,19.49
table2,iitd,GST,lg,89.29,1.19,99.43,18.58
table2,iitd,CAHT,lg,86.28,1.85,99.13,16.03
table2,iitd,IFPP,lg,85.46,3.87,96.68,35.29
table2,iitd,WAHET,lg,82.56,6.82,98.27,27.51
table2,iitd,Op. A,qsw,100.00,0.47,99.86,21.92
table2,iitd,Osiris,qsw,89.36,1.21,99.68,19.86
table2,iitd,GST,qsw,89.29,1.23,99.52,18.33
table2,iitd,CAHT,qsw,86.28,1.72,99.15,14.24
table2,iitd,IFPP,qsw,85.46,4.36,96.03,37.96
table2,iitd,WAHET,qsw,82.56,7.43,97.99,29.90
table2,iitd,Op. A,dct,100.00,0.65,99.88,21.87
table2,iitd,Osiris,dct,89.36,2.25,99.41,23.22
table2,iitd,GST,dct,89.29,1.76,99.52,21.23
table2,iitd,CAHT,dct,86.28,1.72,99.32,17.71
table2,iitd,IFPP,dct,85.46,4.62,96.94,41.89
table2,iitd,WAHET,dct,82.56,6.60,98.62,42.43
table2,iitd,Op. A,ko,100.00,2.28,99.28,22.90
table2,iitd,Osiris,ko,89.36,5.73,98.38,35.48
table2,iitd,GST,ko,89.29,3.51,98.88,19.39
table2,iitd,CAHT,ko,86.28,3.11,98.35,19.75
table2,iitd,IFPP,ko,85.46,6.69,93.86,36.23
table2,iitd,WAHET,ko,82.56,9.78,96.50,29.18
table2,iitd,Op. A,cr,100.00,1.58,99.71,25.25
table2,iitd,Osiris,cr,89.36,6.47,97.18,31.79
table2,iitd,GST,cr,89.29,6.32,97.09,29.93
table2,iitd,CAHT,cr,86.28,2.66,98.33,24.29
table2,iitd,IFPP,cr,85.46,10.90,92.99,41.60
table2,iitd,WAHET,cr,82.56,9.88,94.06,39.37
table2,iitd,Op. A,sift,100.00,0.69,99.84,28.79
table2,iitd,Osiris,sift,89.36,0.78,99.77,31.11
table2,iitd,GST,sift,89.29,1.51,99.34,27.33
table2,iitd,CAHT,sift,86.28,1.82,99.11,29.11
table2,iitd,IFPP,sift,85.46,1.16,98.43,65.71
table2,iitd,WAHET,sift,82.56,3.74,99.63,27.45
table2,notredame,Op. A,lg,100.00,23.50,86.08,42.22
table2,notredame,Osiris,lg,92.24,24.65,84.98,48.07
table2,notredame,GST,lg,89.22,24.57,85.24,47.83
table2,notredame,WAHET,lg,87.63,24.58,81.20,54.54
table2,notredame,IFPP,lg,85.35,27.99,84.91,49.16
table2,notredame,CAHT,lg,80.51,28.18,81.20,64.68
table2,notredame,Op. A,qsw,100.00,22.95,86.48,36.67
table2,notredame,Osiris,qsw,92.24,24.45,85.18,41.56
table2,notredame,GST,qsw,89.22,23.77,85.89,42.92
table2,notredame,WAHET,qsw,87.63,24.22,82.40,49.53
table2,notredame,IFPP,qsw,85.35,27.32,85.46,43.87
table2,notredame,CAHT,qsw,80.51,27.23,82.21,64.22
table2,notredame,Op. A,dct,100.00,24.12,85.05,56.09
table2,notredame,Osiris,dct,92.24,25.49,83.74,62.87
table2,notredame,GST,dct,89.22,26.87,82.54,68.60
table2,notredame,WAHET,dct,87.63,26.58,81.48,78.68
table2,notredame,IFPP,dct,85.35,28.87,82.71,66.64
table2,notredame,CAHT,dct,80.51,27.63,80.77,81.71
table2,notredame,Op. A,ko,100.00,30.50,77.46,82.96
table2,notredame,Osiris,ko,92.24,29.81,78.03,87.82
table2,notredame,GST,ko,89.22,27.89,80.31,81.43
table2,notredame,WAHET,ko,87.63,32.42,73.72,89.09
table2,notredame,IFPP,ko,85.35,33.90,74.96,84.16
table2,notredame,CAHT,ko,80.51,33.51,73.10,88.10
table2,notredame,Op. A,cr,100.00,25.69,82.80,93.53
table2,notredame,Osiris,cr,92.24,29.36,78.75,97.71
table2,notredame,GST,cr,89.22,28.73,78.33,95.30
table2,notredame,WAHET,cr,87.63,28.38,74.94,95.17
table2,notredame,IFPP,cr,85.35,31.58,79.63,94.70
table2,notredame,CAHT,cr,80.51,31.32,75.73,95.50
table2,notredame,Op. A,sift,100.00,25.19,84.02,60.88
table2,notredame,Osiris,sift,92.24,25.53,83.88,63.81
table2,notredame,GST,sift,89.22,27.32,83.66,62.99
table2,notredame,WAHET,sift,87.63,25.32,82.25,63.41
table2,notredame,IFPP,sift,85.35,25.62,84.11,62.43
table2,notredame,CAHT,sift,80.51,27.56,84.10,62.88
)";

// Frozen FNV-1a checksum over the fixture text above. A mismatch means the
// embedded values were edited.
constexpr std::uint64_t kFixtureChecksum = 0x243C1F85BF983768ULL;

double parse_cell(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) raise("ParseError", "bad fixture number: " + s);
  return v;
}

PaperTables parse_fixture() {
  if (fnv1a64(kFixtureText) != kFixtureChecksum)
    raise("InvariantViolation", "paper tables fixture failed its checksum");

  PaperTables tables;
  std::istringstream in(kFixtureText);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        f.push_back(line.substr(start));
        break;
      }
      f.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (f[0] == "table1") {
      tables.segmentation_rows.push_back(
          {f[1], f[2], parse_cell(f[3]), parse_cell(f[4]), parse_cell(f[5])});
    } else if (f[0] == "table2") {
      tables.combination_rows.push_back({f[1], f[2], f[3], parse_cell(f[4]),
                                         parse_cell(f[5]), parse_cell(f[6]),
                                         parse_cell(f[7])});
    } else {
      raise("ParseError", "unknown fixture row kind: " + f[0]);
    }
  }

  // Cross-table consistency: every recognition row repeats the segmentation
  // F-measure of its (database, segmentation) pair.
  for (const CombinationRow& row : tables.combination_rows) {
    bool found = false;
    for (const SegmentationRow& seg : tables.segmentation_rows) {
      if (seg.database == row.database && seg.segmentation == row.segmentation) {
        if (seg.fmeasure != row.fmeasure)
          raise("InvariantViolation", "fixture F-measure mismatch for " +
                                          row.database + "/" + row.segmentation);
        found = true;
        break;
      }
    }
    if (!found)
      raise("InvariantViolation",
            "fixture misses segmentation row for " + row.database + "/" +
                row.segmentation);
  }
  return tables;
}

}  // namespace

const PaperTables& paper_tables() {
  static const PaperTables tables = parse_fixture();
  return tables;
}

std::vector<Table3Entry> recompute_table3(const PaperTables& tables) {
  // Column order: per database, per feature, the six segmentations in the
  // fixture's published order.
  std::vector<std::string> databases;
  std::vector<std::string> features;
  for (const CombinationRow& row : tables.combination_rows) {
    if (std::find(databases.begin(), databases.end(), row.database) ==
        databases.end())
      databases.push_back(row.database);
    if (std::find(features.begin(), features.end(), row.feature) ==
        features.end())
      features.push_back(row.feature);
  }

  const auto has_ties = [](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j]) return true;
    return false;
  };

  std::vector<Table3Entry> out;
  for (const std::string& db : databases) {
    for (const std::string& feat : features) {
      std::vector<double> f, eer_neg, auc, op_neg, eer, op;
      for (const CombinationRow& row : tables.combination_rows) {
        if (row.database != db || row.feature != feat) continue;
        f.push_back(row.fmeasure);
        eer.push_back(row.eer);
        auc.push_back(row.auc);
        op.push_back(row.op001);
        eer_neg.push_back(-row.eer);
        op_neg.push_back(-row.op001);
      }
      Table3Entry e;
      e.database = db;
      e.feature = feat;
      e.rho_eer = spearman(f, eer_neg);
      e.rho_auc = spearman(f, auc);
      e.rho_op001 = spearman(f, op_neg);
      e.eer_ties = has_ties(eer) || has_ties(f);
      e.auc_ties = has_ties(auc) || has_ties(f);
      e.op001_ties = has_ties(op) || has_ties(f);
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace iris
