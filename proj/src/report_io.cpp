#include "bbs/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace bbs {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

double round_significant(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string settings_comment(const SpectrumSettings& s) {
  return "# cluster_gap=" + format_number(s.cluster_gap) +
         " match_tolerance=" + format_number(s.match_tolerance) +
         " max_n=" + std::to_string(s.max_dense_level);
}

nlohmann::json spectrum_to_json(const SpectrumReport& report, const SpectrumSettings& settings) {
  nlohmann::json j;
  const bool bbs = report.system.kind == SystemKind::Bbs;
  j["system"] = bbs ? "bbs" : report.system.kind == SystemKind::Lamplighter ? "lamplighter"
                                                                            : "custom";
  j["k"] = bbs ? report.system.capacity : 1;
  j["n"] = report.level;
  j["scale"] = report.scale;
  j["settings"] = {{"cluster_gap", round_significant(settings.cluster_gap)},
                   {"match_tolerance", round_significant(settings.match_tolerance)},
                   {"max_n", settings.max_dense_level}};
  nlohmann::json values = nlohmann::json::array();
  for (const SpectrumEntry& e : report.entries) {
    nlohmann::json v;
    v["label"] = descriptor_label(e.descriptor);
    v["value"] = round_significant(e.value);
    if (const auto* c = std::get_if<EigenCos>(&e.descriptor)) {
      v["p"] = c->p;
      v["q"] = c->q;
    }
    v["multiplicity"] = e.multiplicity;
    values.push_back(std::move(v));
  }
  j["eigenvalues"] = std::move(values);
  j["warnings"] = report.warnings;
  return j;
}

std::vector<TableRow> table_rows(const SpectrumReport& report) {
  const bool k1 = report.system.kind == SystemKind::Bbs && report.system.capacity == 1;
  std::vector<const SpectrumEntry*> picked;
  for (const SpectrumEntry& e : report.entries) {
    if (std::holds_alternative<EigenOne>(e.descriptor) || e.value < -1e-12) continue;
    if (!k1 && e.multiplicity < 2) continue;
    picked.push_back(&e);
  }
  // Column order of the published tables: rationals by value, then
  // cos(p pi/q) by q and p, then anything unlabeled.
  auto key = [](const SpectrumEntry* e) {
    if (const auto* c = std::get_if<EigenCos>(&e->descriptor)) {
      return std::make_tuple(1, c->q, c->p, e->value);
    }
    const int kind = std::holds_alternative<EigenRational>(e->descriptor) ? 0 : 2;
    return std::make_tuple(kind, 0, 0, e->value);
  };
  std::stable_sort(picked.begin(), picked.end(),
                   [&](const SpectrumEntry* a, const SpectrumEntry* b) { return key(a) < key(b); });
  std::vector<TableRow> rows;
  for (const SpectrumEntry* e : picked) {
    rows.push_back({report.level, descriptor_label(e->descriptor), e->multiplicity});
  }
  return rows;
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows,
                     const SpectrumSettings& settings) {
  out << settings_comment(settings) << '\n' << "n,label,multiplicity\n";
  for (const TableRow& r : rows) out << r.n << ',' << r.label << ',' << r.multiplicity << '\n';
}

Histogram histogram(const SpectrumReport& report, unsigned bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  for (unsigned i = 0; i <= bins; ++i) h.edges.push_back(-1.0 + 2.0 * i / bins);
  for (const SpectrumEntry& e : report.entries) {
    const double pos = (e.value + 1.0) / 2.0 * bins;
    const long idx = std::clamp(static_cast<long>(std::floor(pos)), 0L, static_cast<long>(bins) - 1);
    h.counts[static_cast<std::size_t>(idx)] += e.multiplicity;
  }
  return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& h, const SpectrumSettings& settings) {
  out << settings_comment(settings) << '\n' << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << format_number(h.edges[i]) << ',' << format_number(h.edges[i + 1]) << ','
        << h.counts[i] << '\n';
  }
}

void write_triplets(std::ostream& out, const SparseIntMatrix& m, unsigned level) {
  out << "dim 2^" << level << '\n';
  for (const Triplet& e : m.entries()) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

void write_sigma_csv(std::ostream& out, const GasketPermutation& s) {
  out << "index,image\n";
  for (std::size_t j = 0; j < s.image.size(); ++j) out << j << ',' << s.image[j] << '\n';
}

void write_gasket_rows(std::ostream& out, unsigned n) {
  for (unsigned r = 1; r <= n; ++r) {
    for (std::uint8_t b : gasket_row(r)) out << static_cast<char>('0' + b);
    out << '\n';
  }
}

}  // namespace bbs
