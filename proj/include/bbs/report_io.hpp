#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbs/gasket.hpp"
#include "bbs/sparse_matrix.hpp"
#include "bbs/spectrum.hpp"

namespace bbs {

// "%.12g"; all emitted floating values go through this.
std::string format_number(double v);
double round_significant(double v);

// "# cluster_gap=1e-08 match_tolerance=1e-06 max_n=12"
std::string settings_comment(const SpectrumSettings& s);

nlohmann::json spectrum_to_json(const SpectrumReport& report, const SpectrumSettings& settings);

struct TableRow {
  unsigned n;
  std::string label;
  std::uint64_t multiplicity;
};

// Non-negative labeled eigenvalues other than 1. For k = 1 every such value is
// listed; for other systems only multiplicities >= 2, as in the published tables.
std::vector<TableRow> table_rows(const SpectrumReport& report);
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows,
                     const SpectrumSettings& settings);

struct Histogram {
  std::vector<double> edges;          // bins + 1 edges over [-1, 1]
  std::vector<std::uint64_t> counts;  // sums to the report's dimension
};
Histogram histogram(const SpectrumReport& report, unsigned bins = 200);
void write_histogram_csv(std::ostream& out, const Histogram& h, const SpectrumSettings& settings);

// "dim 2^n" header, then "row col value" lines sorted by column.
void write_triplets(std::ostream& out, const SparseIntMatrix& m, unsigned level);

// "index,image"
void write_sigma_csv(std::ostream& out, const GasketPermutation& s);
// Rows g^(1)..g^(n) as 0/1 strings.
void write_gasket_rows(std::ostream& out, unsigned n);

}  // namespace bbs
